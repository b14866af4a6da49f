#include "gdesign/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "gdesign/errors.hpp"

#ifndef GDESIGN_DEFAULT_DATA_DIR
#define GDESIGN_DEFAULT_DATA_DIR "data"
#endif

namespace gdesign {

bool CorpusEntry::serves(GraphId g) const {
  return std::find(graph_indices.begin(), graph_indices.end(), g) != graph_indices.end();
}

BaseDecomposition CorpusEntry::restrict_to(GraphId g) const {
  BaseDecomposition out{decomposition.name + " " + to_string(g), decomposition.target, decomposition.rule, {}};
  for (const auto& b : decomposition.bases) {
    if (b.graph == g) out.bases.push_back(b);
  }
  return out;
}

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream is{std::string(line)};
  std::string w;
  while (is >> w) words.push_back(w);
  return words;
}

std::string_view strip_comment(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

struct RecordBuilder {
  std::string name;
  int header_line = 0;
  std::optional<TargetKind> kind;
  int point_count = -1;
  std::vector<std::vector<Point>> parts;
  std::vector<Segment> segments;
  std::optional<int> orbits;
  std::vector<PlacedBlock> bases;
};

class LineParser {
 public:
  LineParser(const std::string& source, int line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_, what); }

  long integer(const std::string& word) const {
    long value = 0;
    std::size_t used = 0;
    try {
      value = std::stol(word, &used);
    } catch (const std::logic_error&) {
      fail("expected an integer, got '" + word + "'");
    }
    if (used != word.size()) fail("expected an integer, got '" + word + "'");
    return value;
  }

  GraphId graph(const std::string& word) const {
    try {
      return parse_graph_id(word);
    } catch (const UnknownGraph& e) {
      fail(e.what());
    }
  }

 private:
  const std::string& source_;
  int line_;
};

CorpusEntry finish(RecordBuilder& r, const std::string& source, int end_line) {
  LineParser p(source, end_line);
  if (!r.kind) p.fail("record '" + r.name + "' has no target line");
  if (!r.orbits) p.fail("record '" + r.name + "' has no orbits line");
  if (*r.kind == TargetKind::Complete && !r.parts.empty()) p.fail("complete target with part lines");
  TargetGraph target = TargetGraph::complete(0);
  try {
    target = *r.kind == TargetKind::Complete ? TargetGraph::complete(r.point_count)
                                             : TargetGraph::multipartite(r.point_count, r.parts);
  } catch (const InputError& e) {
    p.fail(std::string("parts are not a partition: ") + e.what());
  }
  std::optional<DevelopmentRule> rule;
  try {
    rule.emplace(r.segments, *r.orbits, r.point_count);
  } catch (const InputError& e) {
    p.fail(e.what());
  }
  std::set<GraphId> graphs;
  for (const auto& b : r.bases) graphs.insert(b.graph);
  CorpusEntry entry{BaseDecomposition{r.name, std::move(target), std::move(*rule), std::move(r.bases)},
                    std::vector<GraphId>(graphs.begin(), graphs.end()),
                    source + ":" + std::to_string(r.header_line)};
  return entry;
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(std::string_view text, const std::string& source_name) {
  std::vector<CorpusEntry> out;
  std::optional<RecordBuilder> rec;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto words = split_words(strip_comment(raw));
    if (words.empty()) continue;
    LineParser p(source_name, line_no);
    const std::string& kw = words[0];
    if (kw == "decomp") {
      if (rec) p.fail("'decomp' inside record '" + rec->name + "' (missing 'end')");
      if (words.size() != 2) p.fail("expected: decomp <name>");
      rec.emplace();
      rec->name = words[1];
      rec->header_line = line_no;
      continue;
    }
    if (!rec) p.fail("'" + kw + "' outside a decomp record");
    if (kw == "target") {
      if (words.size() != 3) p.fail("expected: target complete|multipartite <N>");
      if (rec->kind) p.fail("duplicate target line");
      if (words[1] == "complete") {
        rec->kind = TargetKind::Complete;
      } else if (words[1] == "multipartite") {
        rec->kind = TargetKind::Multipartite;
      } else {
        p.fail("unknown target kind '" + words[1] + "'");
      }
      const long n = p.integer(words[2]);
      if (n < 0 || n > 1'000'000) p.fail("point count out of range");
      rec->point_count = static_cast<int>(n);
    } else if (kw == "part") {
      if (!rec->kind || *rec->kind != TargetKind::Multipartite) p.fail("'part' requires a multipartite target");
      if (words.size() < 2) p.fail("empty part");
      std::vector<Point> part;
      for (std::size_t i = 1; i < words.size(); ++i) {
        const long x = p.integer(words[i]);
        if (x < 0 || x >= rec->point_count) p.fail("point " + words[i] + " out of range");
        part.push_back(static_cast<Point>(x));
      }
      rec->parts.push_back(std::move(part));
    } else if (kw == "segment") {
      if (words.size() != 4) p.fail("expected: segment <start> <length> <stride>");
      rec->segments.push_back(Segment{static_cast<Point>(p.integer(words[1])), static_cast<int>(p.integer(words[2])),
                                      static_cast<int>(p.integer(words[3]))});
    } else if (kw == "orbits") {
      if (words.size() != 2) p.fail("expected: orbits <J>");
      const long j = p.integer(words[1]);
      if (j < 1) p.fail("orbit count must be positive");
      rec->orbits = static_cast<int>(j);
    } else if (kw == "base") {
      if (words.size() != 2 + kGraphVertices) p.fail("expected: base <graph-id> z1 .. z6");
      if (!rec->kind) p.fail("'base' before 'target'");
      PlacedBlock b{p.graph(words[1]), {}};
      for (int k = 0; k < kGraphVertices; ++k) {
        const long x = p.integer(words[2 + k]);
        if (x < 0 || x >= rec->point_count) p.fail("point " + words[2 + k] + " out of range");
        b.points[k] = static_cast<Point>(x);
      }
      for (int a = 0; a < kGraphVertices; ++a) {
        for (int c = a + 1; c < kGraphVertices; ++c) {
          if (b.points[a] == b.points[c]) p.fail("base block repeats point " + std::to_string(b.points[a]));
        }
      }
      rec->bases.push_back(b);
    } else if (kw == "end") {
      if (words.size() != 1) p.fail("unexpected tokens after 'end'");
      out.push_back(finish(*rec, source_name, line_no));
      rec.reset();
    } else {
      p.fail("unknown keyword '" + kw + "'");
    }
  }
  if (rec) throw ParseError(source_name, line_no, "record '" + rec->name + "' is missing 'end'");
  return out;
}

std::string serialize(const CorpusEntry& entry) {
  const auto& d = entry.decomposition;
  std::ostringstream os;
  os << "decomp " << d.name << '\n';
  os << "target " << (d.target.kind() == TargetKind::Complete ? "complete " : "multipartite ")
     << d.target.point_count() << '\n';
  for (const auto& part : d.target.parts()) {
    os << "part";
    for (Point x : part) os << ' ' << x;
    os << '\n';
  }
  for (const auto& s : d.rule.segments()) os << "segment " << s.start << ' ' << s.length << ' ' << s.stride << '\n';
  os << "orbits " << d.rule.orbits() << '\n';
  for (const auto& b : d.bases) {
    os << "base " << to_string(b.graph);
    for (Point x : b.points) os << ' ' << x;
    os << '\n';
  }
  os << "end\n";
  return os.str();
}

std::string serialize(const std::vector<CorpusEntry>& entries) {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += '\n';
    out += serialize(entries[i]);
  }
  return out;
}

std::vector<std::pair<GraphId, VerificationReport>> verify_entry(const CorpusEntry& entry, int workers) {
  std::vector<std::pair<GraphId, VerificationReport>> out;
  for (GraphId g : entry.graph_indices) {
    out.emplace_back(g, verify_decomposition(entry.restrict_to(g), CountingMethod::Triangular, workers));
  }
  return out;
}

// ------------------------------------------------------------------ errata

std::vector<Erratum> parse_errata(std::string_view text, const std::string& source_name) {
  std::vector<Erratum> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    LineParser p(source_name, line_no);
    std::string justification;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      justification = raw.substr(hash + 1);
      const auto first = justification.find_first_not_of(" \t");
      justification = first == std::string::npos ? "" : justification.substr(first);
    }
    const auto words = split_words(strip_comment(raw));
    if (words.empty()) continue;
    // patch <record> <index> <gid> z*6 => <gid> z*6
    if (words[0] != "patch" || words.size() != 18 || words[10] != "=>") {
      p.fail("expected: patch <record> <base-index> <gid> z1..z6 => <gid> z1..z6  # justification");
    }
    if (justification.empty()) p.fail("erratum without a justification comment");
    Erratum e;
    e.record = words[1];
    const long idx = p.integer(words[2]);
    if (idx < 0) p.fail("negative base index");
    e.base_index = static_cast<std::size_t>(idx);
    e.before.graph = p.graph(words[3]);
    e.after.graph = p.graph(words[11]);
    for (int k = 0; k < kGraphVertices; ++k) {
      e.before.points[k] = static_cast<Point>(p.integer(words[4 + k]));
      e.after.points[k] = static_cast<Point>(p.integer(words[12 + k]));
    }
    e.justification = justification;
    e.source = source_name + ":" + std::to_string(line_no);
    out.push_back(std::move(e));
  }
  return out;
}

void apply_errata(std::vector<CorpusEntry>& entries, const std::vector<Erratum>& errata) {
  for (const auto& e : errata) {
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const CorpusEntry& c) { return c.decomposition.name == e.record; });
    if (it == entries.end()) throw InputError(e.source + ": erratum names unknown record '" + e.record + "'");
    auto& bases = it->decomposition.bases;
    if (e.base_index >= bases.size()) throw InputError(e.source + ": base index out of range");
    if (bases[e.base_index] != e.before) {
      throw InputError(e.source + ": erratum does not match the stored block");
    }
    for (Point x : e.after.points) {
      if (x < 0 || x >= it->decomposition.target.point_count()) {
        throw InputError(e.source + ": corrected point out of range");
      }
    }
    edges_of_block(e.after);
    bases[e.base_index] = e.after;
    std::set<GraphId> graphs;
    for (const auto& b : bases) graphs.insert(b.graph);
    it->graph_indices.assign(graphs.begin(), graphs.end());
  }
}

// ------------------------------------------------------------------ Corpus

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Corpus Corpus::load_directory(const std::filesystem::path& dir, bool strict) {
  if (!std::filesystem::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> decomp_files, errata_files;
  for (const auto& item : std::filesystem::recursive_directory_iterator(dir)) {
    if (!item.is_regular_file()) continue;
    if (item.path().extension() == ".decomp") decomp_files.push_back(item.path());
    if (item.path().extension() == ".errata") errata_files.push_back(item.path());
  }
  std::sort(decomp_files.begin(), decomp_files.end());
  std::sort(errata_files.begin(), errata_files.end());

  std::vector<CorpusEntry> entries;
  for (const auto& f : decomp_files) {
    auto parsed = parse_corpus(read_text_file(f), f.filename().string());
    std::move(parsed.begin(), parsed.end(), std::back_inserter(entries));
  }
  for (const auto& f : errata_files) apply_errata(entries, parse_errata(read_text_file(f), f.filename().string()));

  if (strict) {
    for (const auto& entry : entries) {
      for (const auto& [g, report] : verify_entry(entry)) {
        if (report.pass) continue;
        const auto& d = report.defects.front();
        std::ostringstream os;
        os << entry.source << ": " << entry.decomposition.name << ' ' << to_string(g) << " fails: pair {"
           << d.pair.lo << ',' << d.pair.hi << "} covered " << d.count << " times";
        if (!d.blocks.empty()) os << " (developed block " << d.blocks.front() << ')';
        throw VerificationFailure(os.str());
      }
    }
  }
  return Corpus(std::move(entries));
}

std::optional<BaseDecomposition> Corpus::lookup(const ShapeKey& shape, GraphId g) const {
  for (const auto& e : entries_) {
    if (e.serves(g) && e.shape() == shape) return e.restrict_to(g);
  }
  return std::nullopt;
}

std::vector<ShapeKey> Corpus::shapes_for(GraphId g) const {
  std::set<ShapeKey> shapes;
  for (const auto& e : entries_) {
    if (e.serves(g)) shapes.insert(e.shape());
  }
  return {shapes.begin(), shapes.end()};
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("DESIGN_DATA_DIR"); env != nullptr && *env != '\0') return env;
  // source tree first, then the installed copy
  if (std::filesystem::is_directory(GDESIGN_DEFAULT_DATA_DIR)) return GDESIGN_DEFAULT_DATA_DIR;
  return GDESIGN_INSTALLED_DATA_DIR;
}

}  // namespace gdesign
