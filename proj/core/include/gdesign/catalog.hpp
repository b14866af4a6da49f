#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

namespace gdesign {

/// The 15 graphs on six vertices with ten edges, numbered n1..n15.
enum class GraphId : int {
  n1 = 1, n2, n3, n4, n5, n6, n7, n8, n9, n10, n11, n12, n13, n14, n15
};

inline constexpr int kGraphVertices = 6;
inline constexpr int kGraphEdges = 10;

/// Edge between vertex labels 1..6.
struct LabelEdge {
  int a;
  int b;
};

struct TenEdgeGraph {
  GraphId id;
  std::string_view atlas_id;
  std::array<LabelEdge, kGraphEdges> edges;
  std::array<int, kGraphVertices> degrees;  // degrees[k] is the degree of label k+1
};

const TenEdgeGraph& get_graph(GraphId id);
std::span<const TenEdgeGraph> all_graphs();

/// The five graphs whose spectra this library constructs.
std::span<const GraphId> target_graphs();
bool is_target_graph(GraphId id);

/// Parses "n3" or "3"; throws UnknownGraph.
GraphId parse_graph_id(std::string_view text);
std::string to_string(GraphId id);

/// gcd of the vertex degrees, with gcd(a, 0) = a.
int degree_gcd(GraphId id);

/// Necessary arithmetic conditions for a design of order n.
bool is_admissible(GraphId id, long n);

/// Congruence part of admissibility only (ignores the n <= 1 or n >= 6 clause).
bool satisfies_congruences(GraphId id, long n);

enum class SpectrumStatus { TooSmallOrTrivial, Inadmissible, Nonexistent, Unknown, Exists };

std::string_view to_string(SpectrumStatus status);

/// Known existence status of a design of order n for one of the five target graphs.
/// Throws UnknownGraph for any other graph.
SpectrumStatus spectrum_status(GraphId id, long n);

/// Short human-readable justification for spectrum_status.
std::string spectrum_reason(GraphId id, long n);

}  // namespace gdesign
