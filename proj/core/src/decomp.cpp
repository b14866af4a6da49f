#include "gdesign/decomp.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "gdesign/errors.hpp"

namespace gdesign {

PointPair make_pair_sorted(Point a, Point b) { return a < b ? PointPair{a, b} : PointPair{b, a}; }

// ---------------------------------------------------------------- ShapeKey

ShapeKey ShapeKey::complete(int n) { return ShapeKey{TargetKind::Complete, n, {}}; }

ShapeKey ShapeKey::multipartite(std::vector<int> sizes) {
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  int total = 0;
  for (int s : sizes) total += s;
  return ShapeKey{TargetKind::Multipartite, total, std::move(sizes)};
}

int ShapeKey::point_count() const { return order; }

std::string ShapeKey::to_string() const {
  if (kind == TargetKind::Complete) return "K_" + std::to_string(order);
  // ascending sizes, runs of six or more written s^r: "K_{1^39,21}"
  std::vector<int> sizes(part_sizes.rbegin(), part_sizes.rend());
  std::string out = "K_{";
  bool first = true;
  for (std::size_t i = 0; i < sizes.size();) {
    std::size_t j = i;
    while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
    const std::size_t run = j - i;
    if (run >= 6) {
      if (!first) out += ',';
      out += std::to_string(sizes[i]) + "^" + std::to_string(run);
      first = false;
    } else {
      for (std::size_t r = 0; r < run; ++r) {
        if (!first) out += ',';
        out += std::to_string(sizes[i]);
        first = false;
      }
    }
    i = j;
  }
  return out + "}";
}

ShapeKey parse_shape_key(const std::string& text) {
  auto fail = [&]() -> ShapeKey { throw InputError("bad shape key '" + text + "'"); };
  if (text.size() < 3 || text[0] != 'K' || text[1] != '_') return fail();
  std::string body = text.substr(2);
  if (body.front() != '{') {
    for (char c : body) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
    }
    return ShapeKey::complete(std::stoi(body));
  }
  if (body.back() != '}') return fail();
  body = body.substr(1, body.size() - 2);
  std::vector<int> sizes;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto caret = item.find('^');
    try {
      if (caret == std::string::npos) {
        sizes.push_back(std::stoi(item));
      } else {
        const int size = std::stoi(item.substr(0, caret));
        const int count = std::stoi(item.substr(caret + 1));
        sizes.insert(sizes.end(), count, size);
      }
    } catch (const std::logic_error&) {
      return fail();
    }
  }
  if (sizes.size() < 2) return fail();
  for (int s : sizes) {
    if (s <= 0) return fail();
  }
  return ShapeKey::multipartite(std::move(sizes));
}

// ------------------------------------------------------------- TargetGraph

TargetGraph TargetGraph::complete(int point_count) {
  if (point_count < 0) throw InputError("negative point count");
  TargetGraph t;
  t.kind_ = TargetKind::Complete;
  t.point_count_ = point_count;
  return t;
}

TargetGraph TargetGraph::multipartite(int point_count, std::vector<std::vector<Point>> parts) {
  if (point_count < 0) throw InputError("negative point count");
  TargetGraph t;
  t.kind_ = TargetKind::Multipartite;
  t.point_count_ = point_count;
  t.part_of_.assign(point_count, -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw InputError("empty part");
    for (Point p : parts[i]) {
      if (p < 0 || p >= point_count) {
        throw InputError("part point " + std::to_string(p) + " out of range 0.." + std::to_string(point_count - 1));
      }
      if (t.part_of_[p] != -1) throw InputError("parts are not disjoint at point " + std::to_string(p));
      t.part_of_[p] = static_cast<int>(i);
    }
  }
  for (int p = 0; p < point_count; ++p) {
    if (t.part_of_[p] == -1) throw InputError("parts do not cover point " + std::to_string(p));
  }
  t.parts_ = std::move(parts);
  return t;
}

bool TargetGraph::is_edge(Point a, Point b) const {
  if (a == b) return false;
  if (kind_ == TargetKind::Complete) return true;
  return part_of_[a] != part_of_[b];
}

long long TargetGraph::edge_count() const {
  const long long n = point_count_;
  long long total = n * (n - 1) / 2;
  for (const auto& part : parts_) {
    const long long s = static_cast<long long>(part.size());
    total -= s * (s - 1) / 2;
  }
  return total;
}

ShapeKey TargetGraph::shape() const {
  if (kind_ == TargetKind::Complete) return ShapeKey::complete(point_count_);
  std::vector<int> sizes;
  for (const auto& part : parts_) sizes.push_back(static_cast<int>(part.size()));
  return ShapeKey::multipartite(std::move(sizes));
}

// ------------------------------------------------------------------ blocks

std::array<PointPair, kGraphEdges> edges_of_block(const PlacedBlock& block) {
  for (int a = 0; a < kGraphVertices; ++a) {
    for (int b = a + 1; b < kGraphVertices; ++b) {
      if (block.points[a] == block.points[b]) {
        throw InputError("block repeats point " + std::to_string(block.points[a]));
      }
    }
  }
  const auto& graph = get_graph(block.graph);
  std::array<PointPair, kGraphEdges> out{};
  for (int e = 0; e < kGraphEdges; ++e) {
    out[e] = make_pair_sorted(block.points[graph.edges[e].a - 1], block.points[graph.edges[e].b - 1]);
  }
  return out;
}

// -------------------------------------------------------- DevelopmentRule

DevelopmentRule::DevelopmentRule(std::vector<Segment> segments, int orbits, int point_count)
    : segments_(std::move(segments)), orbits_(orbits), point_count_(point_count) {
  if (orbits_ < 1) throw InputError("orbit count must be positive");
  std::vector<Segment> sorted = segments_;
  std::sort(sorted.begin(), sorted.end(), [](const Segment& a, const Segment& b) { return a.start < b.start; });
  Point next = 0;
  for (const auto& s : sorted) {
    if (s.length < 1) throw InputError("segment length must be positive");
    if (s.stride < 0) throw InputError("segment stride must be non-negative");
    if (s.start < next) throw InputError("segments overlap at point " + std::to_string(s.start));
    if (s.start > next) throw InputError("segments do not cover point set (gap at " + std::to_string(next) + ")");
    next = s.start + s.length;
  }
  if (next != point_count_) throw InputError("segments do not cover point set");
}

DevelopmentRule DevelopmentRule::identity(int point_count) {
  if (point_count == 0) return DevelopmentRule({}, 1, 0);
  return DevelopmentRule({Segment{0, point_count, 0}}, 1, point_count);
}

Point DevelopmentRule::apply(int j, Point x) const {
  if (j < 0 || j >= orbits_) throw InputError("orbit index " + std::to_string(j) + " out of range");
  for (const auto& s : segments_) {
    if (x >= s.start && x < s.start + s.length) {
      const long long offset = (static_cast<long long>(x - s.start) + static_cast<long long>(s.stride) * j) % s.length;
      return s.start + static_cast<Point>(offset);
    }
  }
  throw InputError("point " + std::to_string(x) + " lies outside every segment");
}

Point apply_map(const DevelopmentRule& rule, int j, Point x) { return rule.apply(j, x); }

std::vector<PlacedBlock> develop(const BaseDecomposition& base) {
  std::vector<PlacedBlock> out;
  out.reserve(base.bases.size() * static_cast<std::size_t>(base.rule.orbits()));
  for (const auto& b : base.bases) {
    for (int j = 0; j < base.rule.orbits(); ++j) {
      PlacedBlock img{b.graph, {}};
      for (int k = 0; k < kGraphVertices; ++k) img.points[k] = base.rule.apply(j, b.points[k]);
      out.push_back(img);
    }
  }
  return out;
}

// ------------------------------------------------------------ verification

namespace {

std::size_t tri_index(PointPair p) {
  return static_cast<std::size_t>(p.hi) * static_cast<std::size_t>(p.hi - 1) / 2 + static_cast<std::size_t>(p.lo);
}

std::uint64_t pair_key(PointPair p) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.hi)) << 32) | static_cast<std::uint32_t>(p.lo);
}

void check_points(const TargetGraph& target, std::span<const PlacedBlock> blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (Point p : blocks[i].points) {
      if (p < 0 || p >= target.point_count()) {
        throw InputError("block " + std::to_string(i) + " uses point " + std::to_string(p) + " outside 0.." +
                         std::to_string(target.point_count() - 1));
      }
    }
    edges_of_block(blocks[i]);
  }
}

// Both counters fill a dense triangular vector.
std::vector<std::uint32_t> count_triangular(std::span<const PlacedBlock> blocks, std::size_t cells) {
  std::vector<std::uint32_t> counts(cells, 0);
  for (const auto& b : blocks) {
    for (const auto& e : edges_of_block(b)) ++counts[tri_index(e)];
  }
  return counts;
}

std::vector<std::uint32_t> count_hashed(std::span<const PlacedBlock> blocks, std::size_t cells) {
  std::unordered_map<std::uint64_t, std::uint32_t> multiset;
  multiset.reserve(blocks.size() * kGraphEdges);
  for (const auto& b : blocks) {
    for (const auto& e : edges_of_block(b)) ++multiset[pair_key(e)];
  }
  std::vector<std::uint32_t> counts(cells, 0);
  for (const auto& [key, c] : multiset) {
    const PointPair p{static_cast<Point>(key & 0xffffffffu), static_cast<Point>(key >> 32)};
    counts[tri_index(p)] = c;
  }
  return counts;
}

}  // namespace

VerificationReport verify_blocks(const TargetGraph& target, std::span<const PlacedBlock> blocks, CountingMethod method,
                                 int workers) {
  check_points(target, blocks);
  const int n = target.point_count();
  const std::size_t cells = n < 2 ? 0 : static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  auto count = [&](std::span<const PlacedBlock> chunk) {
    return method == CountingMethod::Triangular ? count_triangular(chunk, cells) : count_hashed(chunk, cells);
  };

  std::vector<std::uint32_t> counts;
  workers = std::max(1, std::min<int>(workers, static_cast<int>(blocks.size())));
  if (workers <= 1) {
    counts = count(blocks);
  } else {
    std::vector<std::vector<std::uint32_t>> partial(workers);
    std::vector<std::thread> threads;
    const std::size_t per = (blocks.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t lo = std::min(blocks.size(), per * w);
      const std::size_t hi = std::min(blocks.size(), lo + per);
      threads.emplace_back([&, w, lo, hi] { partial[w] = count(blocks.subspan(lo, hi - lo)); });
    }
    for (auto& t : threads) t.join();
    counts.assign(cells, 0);
    for (const auto& part : partial) {
      for (std::size_t i = 0; i < cells; ++i) counts[i] += part[i];
    }
  }

  VerificationReport report;
  report.block_count = blocks.size();
  report.target_edges = target.edge_count();
  std::vector<std::size_t> defect_cells;
  for (Point hi = 1; hi < n; ++hi) {
    for (Point lo = 0; lo < hi; ++lo) {
      const PointPair p{lo, hi};
      const std::uint32_t c = counts[tri_index(p)];
      const bool edge = target.is_edge(lo, hi);
      if (edge && c == 1) {
        ++report.pairs_covered_once;
      } else if (c != (edge ? 1u : 0u)) {
        report.defects.push_back(PairDefect{p, static_cast<int>(c), edge, {}});
      }
    }
  }
  if (!report.defects.empty()) {
    std::unordered_map<std::uint64_t, std::size_t> where;
    for (std::size_t i = 0; i < report.defects.size(); ++i) where[pair_key(report.defects[i].pair)] = i;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (const auto& e : edges_of_block(blocks[b])) {
        if (auto it = where.find(pair_key(e)); it != where.end()) report.defects[it->second].blocks.push_back(b);
      }
    }
  }
  report.pass = report.defects.empty();
  return report;
}

VerificationReport verify_decomposition(const BaseDecomposition& base, CountingMethod method, int workers) {
  for (const auto& b : base.bases) {
    for (Point p : b.points) {
      if (p < 0 || p >= base.target.point_count()) {
        throw InputError(base.name + ": base block point " + std::to_string(p) + " outside the target");
      }
    }
  }
  const auto blocks = develop(base);
  return verify_blocks(base.target, blocks, method, workers);
}

VerificationReport verify_design(const Design& design, int workers) {
  return verify_blocks(TargetGraph::complete(design.order), design.blocks, CountingMethod::Triangular, workers);
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << (pass ? "PASS" : "FAIL") << ' ' << block_count << " blocks " << pairs_covered_once << " pairs";
  if (!pass) {
    os << " (" << target_edges << " expected, " << defects.size() << " defective pairs)";
  }
  return os.str();
}

}  // namespace gdesign
