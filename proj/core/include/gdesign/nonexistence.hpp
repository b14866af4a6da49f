#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdesign/catalog.hpp"

namespace gdesign {

/// How often each distinct degree value occurs among a label's incidences:
/// counts[i] copies of degree_values[i], summing (with weights) to n - 1.
struct DegreeType {
  std::vector<int> counts;

  bool is_pure() const;
  /// "{4,4,4,3}" in the order of the given degree values.
  std::string to_string(const std::vector<int>& degree_values) const;
};

/// One pure-label count vector that solves the linear system but breaks a pair capacity.
struct CapacityViolation {
  std::vector<long long> solution;     // one full solution per type; empty if none was found in budget
  std::vector<long long> pure_counts;  // counts of the pure types, zero elsewhere
  std::vector<int> degree_class;    // the degree values whose pure labels are counted
  long long labels = 0;
  long long required_pairs = 0;     // C(labels, 2)
  int edges_within = 0;             // graph edges joining two vertices of those degrees
  long long capacity = 0;           // blocks * edges_within
};

struct DegreeTypeSystem {
  GraphId graph = GraphId::n1;
  long n = 0;
  long long blocks = 0;
  std::vector<int> degree_values;   // distinct, descending
  std::vector<int> multiplicity;    // vertices of each degree value
  std::vector<DegreeType> types;
};

struct Certificate {
  enum class Stage { Linear, Capacity };

  DegreeTypeSystem system;
  Stage stage = Stage::Linear;
  /// Capacity stage: one entry per surviving assignment of pure-type counts.
  std::vector<CapacityViolation> violations;

  /// Plain text, one constraint per line; identical for identical input.
  std::string render() const;
};

struct FeasibilityResult {
  bool feasible = false;
  DegreeTypeSystem system;
  std::vector<long long> witness;        // a solution surviving the refinement (feasible only)
  bool undecided = false;                // feasible only because the completion search ran out of budget
  std::optional<Certificate> certificate;  // infeasible only

  std::string render() const;
};

DegreeTypeSystem degree_type_system(GraphId graph, long n);

/// Throws InputError for inadmissible n or graphs with an isolated vertex.
FeasibilityResult feasibility_check(GraphId graph, long n);

}  // namespace gdesign
