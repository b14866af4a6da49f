#include "gdesign/catalog.hpp"

#include <charconv>
#include <numeric>

#include "gdesign/errors.hpp"

namespace gdesign {
namespace {

constexpr std::array<int, kGraphVertices> degrees_of(const std::array<LabelEdge, kGraphEdges>& edges) {
  std::array<int, kGraphVertices> deg{};
  for (const auto& e : edges) {
    ++deg[e.a - 1];
    ++deg[e.b - 1];
  }
  return deg;
}

constexpr TenEdgeGraph make(GraphId id, std::string_view atlas, std::array<LabelEdge, kGraphEdges> edges) {
  return TenEdgeGraph{id, atlas, edges, degrees_of(edges)};
}

// Edge lists with the fixed vertex labelling used by every stored base block.
constexpr std::array<TenEdgeGraph, 15> kCatalog = {{
    make(GraphId::n1, "G179", {{{4, 3}, {4, 2}, {4, 1}, {6, 2}, {6, 1}, {5, 2}, {5, 1}, {3, 2}, {3, 1}, {2, 1}}}),
    make(GraphId::n2, "G180", {{{4, 3}, {4, 2}, {4, 1}, {6, 3}, {6, 1}, {5, 2}, {5, 1}, {3, 2}, {3, 1}, {2, 1}}}),
    make(GraphId::n3, "G177", {{{5, 3}, {5, 2}, {5, 1}, {4, 3}, {4, 2}, {4, 1}, {6, 1}, {3, 2}, {3, 1}, {2, 1}}}),
    make(GraphId::n4, "G182", {{{5, 3}, {5, 2}, {5, 1}, {4, 3}, {4, 2}, {4, 1}, {6, 2}, {6, 1}, {3, 1}, {2, 1}}}),
    make(GraphId::n5, "G186", {{{5, 3}, {5, 2}, {5, 1}, {4, 3}, {4, 2}, {4, 1}, {6, 3}, {6, 2}, {3, 1}, {2, 1}}}),
    make(GraphId::n6, "G189", {{{6, 2}, {6, 3}, {6, 1}, {5, 2}, {5, 3}, {5, 1}, {4, 2}, {4, 3}, {4, 1}, {2, 1}}}),
    make(GraphId::n7, "G183", {{{5, 3}, {5, 2}, {5, 1}, {4, 6}, {4, 2}, {4, 1}, {3, 2}, {3, 1}, {6, 1}, {2, 1}}}),
    make(GraphId::n8, "G190", {{{6, 4}, {6, 2}, {6, 1}, {5, 3}, {5, 2}, {5, 1}, {4, 2}, {4, 1}, {3, 2}, {3, 1}}}),
    make(GraphId::n9, "G176", {{{5, 4}, {5, 3}, {5, 2}, {5, 1}, {4, 3}, {4, 2}, {4, 1}, {3, 2}, {3, 1}, {2, 1}}}),
    make(GraphId::n10, "G178", {{{4, 3}, {4, 2}, {4, 5}, {4, 1}, {6, 1}, {3, 2}, {3, 5}, {3, 1}, {2, 5}, {2, 1}}}),
    make(GraphId::n11, "G181", {{{4, 3}, {4, 5}, {4, 2}, {4, 1}, {6, 2}, {6, 1}, {3, 5}, {3, 2}, {3, 1}, {2, 1}}}),
    make(GraphId::n12, "G185", {{{3, 2}, {3, 5}, {3, 4}, {3, 1}, {6, 4}, {6, 1}, {2, 5}, {2, 4}, {2, 1}, {5, 1}}}),
    make(GraphId::n13, "G187", {{{6, 4}, {6, 3}, {6, 1}, {5, 3}, {5, 2}, {5, 1}, {4, 2}, {4, 1}, {3, 1}, {2, 1}}}),
    make(GraphId::n14, "G184", {{{3, 6}, {3, 4}, {3, 2}, {3, 1}, {5, 4}, {5, 2}, {5, 1}, {6, 2}, {4, 1}, {2, 1}}}),
    make(GraphId::n15, "G188", {{{2, 5}, {2, 4}, {2, 3}, {2, 1}, {6, 4}, {6, 3}, {6, 1}, {5, 3}, {5, 1}, {4, 1}}}),
}};

constexpr std::array<GraphId, 5> kTargets = {GraphId::n3, GraphId::n6, GraphId::n8, GraphId::n10, GraphId::n13};

int index_of(GraphId id) {
  const int i = static_cast<int>(id);
  if (i < 1 || i > 15) {
    throw UnknownGraph("unknown graph index " + std::to_string(i));
  }
  return i - 1;
}

void require_target(GraphId id) {
  if (!is_target_graph(id)) {
    throw UnknownGraph("graph " + to_string(id) + " is not one of n3, n6, n8, n10, n13");
  }
}

}  // namespace

const TenEdgeGraph& get_graph(GraphId id) { return kCatalog[index_of(id)]; }

std::span<const TenEdgeGraph> all_graphs() { return kCatalog; }

std::span<const GraphId> target_graphs() { return kTargets; }

bool is_target_graph(GraphId id) {
  for (GraphId t : kTargets) {
    if (t == id) return true;
  }
  return false;
}

GraphId parse_graph_id(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == 'n' || digits.front() == 'N')) {
    digits.remove_prefix(1);
  }
  int value = 0;
  const auto* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, value);
  if (digits.empty() || ec != std::errc{} || ptr != end || value < 1 || value > 15) {
    throw UnknownGraph("unknown graph identifier '" + std::string(text) + "'");
  }
  return static_cast<GraphId>(value);
}

std::string to_string(GraphId id) { return "n" + std::to_string(index_of(id) + 1); }

int degree_gcd(GraphId id) {
  int g = 0;
  for (int d : get_graph(id).degrees) g = std::gcd(g, d);
  return g;
}

bool satisfies_congruences(GraphId id, long n) {
  if (n < 0) return false;
  const long d = degree_gcd(id);
  const long two_e = 2L * kGraphEdges;
  if (n <= 1) return true;
  return (n - 1) % d == 0 && (n * (n - 1)) % two_e == 0;
}

bool is_admissible(GraphId id, long n) {
  if (n < 0) return false;
  if (n > 1 && n < kGraphVertices) {
    index_of(id);
    return false;
  }
  return satisfies_congruences(id, n);
}

std::string_view to_string(SpectrumStatus status) {
  switch (status) {
    case SpectrumStatus::TooSmallOrTrivial: return "TooSmallOrTrivial";
    case SpectrumStatus::Inadmissible: return "Inadmissible";
    case SpectrumStatus::Nonexistent: return "Nonexistent";
    case SpectrumStatus::Unknown: return "Unknown";
    case SpectrumStatus::Exists: return "Exists";
  }
  return "?";
}

SpectrumStatus spectrum_status(GraphId id, long n) {
  require_target(id);
  if (n < 0) return SpectrumStatus::Inadmissible;
  if (n <= 1) return SpectrumStatus::TooSmallOrTrivial;
  // Order 5 meets the congruences but a six-vertex graph cannot fit in K_5.
  if (n == 5) return SpectrumStatus::Nonexistent;
  if (!is_admissible(id, n)) return SpectrumStatus::Inadmissible;
  if (n == 16) {
    return (id == GraphId::n8 || id == GraphId::n13) ? SpectrumStatus::Nonexistent : SpectrumStatus::Unknown;
  }
  if (n == 20 && id == GraphId::n13) return SpectrumStatus::Nonexistent;
  return SpectrumStatus::Exists;
}

std::string spectrum_reason(GraphId id, long n) {
  switch (spectrum_status(id, n)) {
    case SpectrumStatus::TooSmallOrTrivial:
      return "K_" + std::to_string(n) + " has no edges; the empty design";
    case SpectrumStatus::Inadmissible:
      if (degree_gcd(id) == 1) return "order fails n(n-1) = 0 (mod 20)";
      return "order fails n(n-1) = 0 (mod 20) or n - 1 = 0 (mod " + std::to_string(degree_gcd(id)) + ")";
    case SpectrumStatus::Nonexistent:
      if (n == 5) return "K_5 has fewer than six vertices";
      return "degree-partition counting certificate; run feasibility";
    case SpectrumStatus::Unknown:
      return "open problem: existence of an order-16 design is unresolved";
    case SpectrumStatus::Exists:
      return "constructible";
  }
  return {};
}

}  // namespace gdesign
