#include "gdesign_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gdesign/catalog.hpp"
#include "gdesign/corpus.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/gdd.hpp"
#include "gdesign/nonexistence.hpp"
#include "gdesign/spectrum.hpp"

namespace gdesign::cli {

std::string write_design(const Design& design) {
  std::ostringstream os;
  os << "# design " << to_string(design.graph) << " order " << design.order << "\n";
  os << "# blocks " << design.blocks.size() << "\n";
  for (const auto& step : design.trail) os << "# plan: " << step << "\n";
  auto blocks = design.blocks;
  std::sort(blocks.begin(), blocks.end());
  for (const auto& b : blocks) {
    os << to_string(b.graph) << ':';
    for (Point p : b.points) os << ' ' << p;
    os << '\n';
  }
  return os.str();
}

Design parse_design(std::string_view text, const std::string& source_name) {
  Design d;
  bool have_header = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string word, gid, order_word;
      long order = -1;
      if (hs >> word && word == "design") {
        if (!(hs >> gid >> order_word >> order) || order_word != "order" || order < 0) {
          throw ParseError(source_name, lineno, "malformed design header");
        }
        d.graph = parse_graph_id(gid);
        d.order = static_cast<int>(order);
        have_header = true;
      }
      continue;
    }
    if (!have_header) throw ParseError(source_name, lineno, "block before the '# design <gid> order <n>' header");
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(source_name, lineno, "expected '<gid>: z1 .. z6'");
    PlacedBlock b{};
    try {
      b.graph = parse_graph_id(line.substr(0, colon));
    } catch (const InputError& e) {
      throw ParseError(source_name, lineno, e.what());
    }
    if (b.graph != d.graph) throw ParseError(source_name, lineno, "block graph differs from the header");
    std::istringstream bs(line.substr(colon + 1));
    for (auto& p : b.points) {
      long v = -1;
      if (!(bs >> v)) throw ParseError(source_name, lineno, "expected six points");
      if (v < 0 || v >= d.order) throw ParseError(source_name, lineno, "point " + std::to_string(v) + " out of range");
      p = static_cast<Point>(v);
    }
    std::string extra;
    if (bs >> extra) throw ParseError(source_name, lineno, "trailing text after six points");
    d.blocks.push_back(b);
  }
  if (!have_header) throw ParseError(source_name, lineno, "missing '# design <gid> order <n>' header");
  return d;
}

namespace {

struct Common {
  std::string data_dir;
  int workers = 1;
  std::uint64_t seed = 0;
  double timeout_s = 60.0;

  BuildOptions build_options() const {
    BuildOptions o;
    if (!data_dir.empty()) o.data_dir = data_dir;
    o.workers = workers;
    o.seed = seed;
    o.search_timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
    return o;
  }
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

bool looks_like_design(const std::string& text) { return text.find("# design ") != std::string::npos; }

// ------------------------------------------------------------------ verify

int verify_entries(const std::vector<CorpusEntry>& entries, int workers, std::ostream& out) {
  std::size_t pass = 0, fail = 0;
  for (const auto& e : entries) {
    for (const auto& [g, rep] : verify_entry(e, workers)) {
      out << e.shape().to_string() << ' ' << to_string(g) << ": " << rep.summary() << '\n';
      (rep.pass ? pass : fail)++;
    }
  }
  out << "total: " << pass << " PASS, " << fail << " FAIL\n";
  return fail == 0 ? kOk : kVerificationFailed;
}

int cmd_verify(const std::vector<std::string>& files, const std::string& dir, const Common& c, std::ostream& out) {
  if (!dir.empty()) {
    const auto corpus = Corpus::load_directory(dir, false);
    return verify_entries(corpus.entries(), c.workers, out);
  }
  std::vector<CorpusEntry> entries;
  std::size_t fail = 0;
  for (const auto& f : files) {
    const auto text = read_text_file(f);
    if (looks_like_design(text)) {
      const auto d = parse_design(text, f);
      const auto rep = verify_design(d, c.workers);
      out << "K_" << d.order << ' ' << to_string(d.graph) << ": " << rep.summary() << '\n';
      if (!rep.pass) ++fail;
      continue;
    }
    auto parsed = parse_corpus(text, f);
    entries.insert(entries.end(), parsed.begin(), parsed.end());
  }
  const int status = entries.empty() ? kOk : verify_entries(entries, c.workers, out);
  return fail > 0 ? kVerificationFailed : status;
}

// ------------------------------------------------------------------ build / status / feasibility

void print_refusal(GraphId g, long n, std::ostream& out) {
  const auto status = spectrum_status(g, n);
  out << to_string(status) << ": " << spectrum_reason(g, n) << '\n';
  if (status == SpectrumStatus::Nonexistent && n != 5) out << feasibility_check(g, n).render();
}

int cmd_build(const std::string& graph, long n, const std::string& out_path, bool plan_only, const Common& c,
              std::ostream& out, std::ostream& err) {
  const GraphId g = parse_graph_id(graph);
  if (!is_target_graph(g)) throw UnknownGraph("designs are built only for n3, n6, n8, n10, n13");
  if (n < 0) throw InputError("order must be non-negative");
  auto builder = SpectrumBuilder::from_data_dir(c.build_options());
  if (plan_only) {
    out << builder->plan_tree(g, n);
    return builder->plan(g, n).kind == PlanKind::Unsupported ? kUnsupported : kOk;
  }
  const auto status = spectrum_status(g, n);
  if (status == SpectrumStatus::Inadmissible) {
    err << to_string(status) << ": " << spectrum_reason(g, n) << '\n';
    return kUsage;
  }
  if (status != SpectrumStatus::Exists && !(n <= 1)) {
    print_refusal(g, n, err);
    return kUnsupported;
  }
  const auto outcome = builder->build(g, n);
  write_output(out_path, write_design(*outcome.design), out);
  if (!out_path.empty() && out_path != "-") {
    out << "K_" << n << ' ' << to_string(g) << ": " << outcome.design->blocks.size() << " blocks written to "
        << out_path << '\n';
  }
  return kOk;
}

int cmd_status(const std::string& graph, long n, std::ostream& out) {
  const GraphId g = parse_graph_id(graph);
  out << to_string(spectrum_status(g, n)) << " (" << spectrum_reason(g, n) << ")\n";
  return kOk;
}

int cmd_feasibility(const std::string& graph, long n, std::ostream& out) {
  const GraphId g = parse_graph_id(graph);
  const auto r = feasibility_check(g, n);
  out << r.render();
  return kOk;
}

// ------------------------------------------------------------------ gdd

struct GddArgs {
  std::string kind;
  int k = 0;
  int q = 0;
  std::string derive = "drop-point";
  std::string type;
  std::string in;
  std::string out;
  int group = -1;
  int keep = 0;
};

int cmd_gdd(const GddArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  Gdd g;
  std::set<int> sizes;
  if (a.kind == "td") {
    g = transversal_gdd(a.k, a.q);
    sizes = {a.k};
  } else if (a.kind == "affine") {
    const auto plane = affine_plane(a.q);
    if (a.derive == "drop-class") {
      g = plane_to_gdd(plane, PlaneDerivation::AffineDropClass, a.q);
    } else if (a.derive == "drop-point") {
      g = plane_to_gdd(plane, PlaneDerivation::AffineDropPoint, 0);
    } else {
      throw InputError("--derive is drop-class or drop-point");
    }
  } else if (a.kind == "projective") {
    g = plane_to_gdd(projective_plane(a.q), PlaneDerivation::ProjectiveDropPoint, 0);
  } else if (a.kind == "truncate" || a.kind == "verify") {
    if (a.in.empty()) throw InputError("--in is required");
    const auto all = parse_gdd_file(read_text_file(a.in), a.in);
    if (all.size() != 1) throw InputError(a.in + " must hold exactly one GDD");
    g = all.front();
    if (a.kind == "truncate") {
      const std::size_t grp = a.group < 0 ? g.groups.size() - 1 : static_cast<std::size_t>(a.group);
      g = truncate(g, grp, a.keep);
    }
  } else if (a.kind == "search") {
    FindOptions fo;
    if (!c.data_dir.empty()) fo.data_dir = c.data_dir;
    fo.seed = c.seed;
    fo.timeout = std::chrono::milliseconds(static_cast<long long>(c.timeout_s * 1000));
    g = find_gdd(a.k, parse_group_type(a.type), fo);
    sizes = {a.k};
  } else {
    throw InputError("--kind is td, affine, projective, truncate, search or verify");
  }
  const auto rep = verify_gdd(g, sizes);
  write_output(a.out, serialize(g), out);
  err << g.name << " type " << to_string(g.type()) << ": " << rep.summary() << '\n';
  return rep.pass ? kOk : kVerificationFailed;
}

// ------------------------------------------------------------------ audit

struct Cell {
  std::string text;
  int code = kOk;
};

int cmd_audit(long max_n, int jobs, const Common& c, std::ostream& out) {
  auto builder = SpectrumBuilder::from_data_dir(c.build_options());
  const auto graphs = target_graphs();
  std::vector<long> orders;
  for (long n = 2; n <= max_n; ++n) {
    if (satisfies_congruences(graphs.front(), n)) orders.push_back(n);
  }

  auto cell_for = [&](GraphId g, long n) {
    const auto status = spectrum_status(g, n);
    if (status != SpectrumStatus::Exists) return Cell{std::string(to_string(status)), kOk};
    try {
      const auto d = builder->design(g, n);
      const auto rep = verify_design(*d, 1);
      if (!rep.pass) return Cell{"FAIL", kVerificationFailed};
      return Cell{"verified", kOk};
    } catch (const VerificationFailure& e) {
      return Cell{"FAIL", kVerificationFailed};
    } catch (const Error& e) {
      return Cell{"unsupported", kUnsupported};
    }
  };

  // Columns are independent; each worker takes whole graphs so memo reuse stays local.
  std::map<std::pair<int, long>, Cell> cells;
  std::vector<std::future<std::vector<std::pair<long, Cell>>>> futures;
  std::size_t next = 0;
  auto run_graph = [&](GraphId g) {
    std::vector<std::pair<long, Cell>> col;
    for (long n : orders) col.emplace_back(n, cell_for(g, n));
    return col;
  };
  while (next < graphs.size()) {
    futures.clear();
    std::vector<GraphId> batch;
    for (int j = 0; j < std::max(1, jobs) && next < graphs.size(); ++j) batch.push_back(graphs[next++]);
    for (GraphId g : batch) futures.push_back(std::async(std::launch::async, run_graph, g));
    for (std::size_t j = 0; j < batch.size(); ++j) {
      for (auto& [n, cell] : futures[j].get()) cells[{static_cast<int>(batch[j]), n}] = cell;
    }
  }

  int code = kOk;
  std::size_t verified = 0, excepted = 0, failed = 0;
  out << std::setw(5) << "n";
  for (GraphId g : graphs) out << std::setw(14) << to_string(g);
  out << '\n';
  for (long n : orders) {
    out << std::setw(5) << n;
    for (GraphId g : graphs) {
      const auto& cell = cells[{static_cast<int>(g), n}];
      out << std::setw(14) << cell.text;
      if (cell.text == "verified") {
        ++verified;
      } else if (cell.code == kOk) {
        ++excepted;
      } else {
        ++failed;
      }
      code = std::max(code, cell.code == kVerificationFailed ? 10 : cell.code);
    }
    out << '\n';
  }
  out << "verified " << verified << ", not constructible " << excepted << ", failed or unsupported " << failed << '\n';
  return code == 10 ? kVerificationFailed : code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decompositions of complete graphs into ten-edge graphs on six vertices", "gdesign"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--data-dir", common.data_dir, "corpus directory (default: $DESIGN_DATA_DIR or the installed data)");
  app.add_option("--workers", common.workers, "threads for pair counting")->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "seed for GDD search");
  app.add_option("--timeout", common.timeout_s, "GDD search budget in seconds")->check(CLI::PositiveNumber);

  std::vector<std::string> files;
  std::string dir;
  auto* verify = app.add_subcommand("verify", "verify corpus files, a corpus directory, or design files");
  verify->add_option("--file", files, "corpus or design file (repeatable)");
  verify->add_option("--dir", dir, "corpus directory, read recursively");
  verify->require_option(1, 2);

  std::string graph, out_path;
  long order = -1;
  bool plan_only = false;
  auto* build = app.add_subcommand("build", "construct and verify a design");
  build->add_option("--graph", graph, "n3, n6, n8, n10 or n13")->required();
  build->add_option("--order", order, "order n")->required();
  build->add_option("--out", out_path, "output file (default stdout)");
  build->add_flag("--plan", plan_only, "print the recipe tree without building");

  auto* status = app.add_subcommand("status", "spectrum status of one order");
  status->add_option("--graph", graph)->required();
  status->add_option("--order", order)->required();

  auto* feas = app.add_subcommand("feasibility", "degree-partition counting check");
  feas->add_option("--graph", graph)->required();
  feas->add_option("--order", order)->required();

  GddArgs ga;
  auto* gdd = app.add_subcommand("gdd", "build, truncate, search or verify GDD files");
  gdd->add_option("--kind", ga.kind, "td, affine, projective, truncate, search, verify")->required();
  gdd->add_option("--k", ga.k, "block size");
  gdd->add_option("--q", ga.q, "side or plane order");
  gdd->add_option("--derive", ga.derive, "affine: drop-class or drop-point");
  gdd->add_option("--type", ga.type, "group type for search, e.g. \"2^7\"");
  gdd->add_option("--in", ga.in, "input GDD file");
  gdd->add_option("--group", ga.group, "truncate: group index (default last)");
  gdd->add_option("--keep", ga.keep, "truncate: points kept");
  gdd->add_option("--out", ga.out, "output file (default stdout)");

  long max_n = 300;
  int jobs = 1;
  auto* audit = app.add_subcommand("audit", "build and verify every admissible order up to --max");
  audit->add_option("--max", max_n)->check(CLI::NonNegativeNumber);
  audit->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  for (auto* sub : {verify, build, status, feas, gdd, audit}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(files, dir, common, out);
    if (*build) return cmd_build(graph, order, out_path, plan_only, common, out, err);
    if (*status) return cmd_status(graph, order, out);
    if (*feas) return cmd_feasibility(graph, order, out);
    if (*gdd) return cmd_gdd(ga, common, out, err);
    if (*audit) return cmd_audit(max_n, jobs, common, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const UnsupportedOrder& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const SearchTimeout& e) {
    err << "search timed out: " << e.what() << '\n';
    return kUnsupported;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUnsupported;
  }
  return kUsage;
}

}  // namespace gdesign::cli
