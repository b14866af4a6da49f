#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gdesign/catalog.hpp"

namespace gdesign {

using Point = std::int32_t;

struct PointPair {
  Point lo;
  Point hi;

  auto operator<=>(const PointPair&) const = default;
};

PointPair make_pair_sorted(Point a, Point b);

enum class TargetKind { Complete, Multipartite };

/// Lookup key for a target: (Complete, n) or (Multipartite, part sizes sorted non-increasing).
struct ShapeKey {
  TargetKind kind = TargetKind::Complete;
  int order = 0;
  std::vector<int> part_sizes;

  static ShapeKey complete(int n);
  static ShapeKey multipartite(std::vector<int> sizes);

  int point_count() const;
  /// "K_21", "K_{10,10,10,15}", "K_{4^6,5}" style.
  std::string to_string() const;

  auto operator<=>(const ShapeKey&) const = default;
};

/// Parses the to_string() form back into a key ("K_{1^39,21}" etc.).
ShapeKey parse_shape_key(const std::string& text);

class TargetGraph {
 public:
  static TargetGraph complete(int point_count);
  /// Parts must partition 0..N-1 and be nonempty; throws InputError otherwise.
  static TargetGraph multipartite(int point_count, std::vector<std::vector<Point>> parts);

  TargetKind kind() const { return kind_; }
  int point_count() const { return point_count_; }
  const std::vector<std::vector<Point>>& parts() const { return parts_; }

  /// True iff {a, b} is an edge of the target (distinct points in different parts).
  bool is_edge(Point a, Point b) const;
  long long edge_count() const;
  ShapeKey shape() const;

 private:
  TargetKind kind_ = TargetKind::Complete;
  int point_count_ = 0;
  std::vector<std::vector<Point>> parts_;
  std::vector<int> part_of_;
};

struct PlacedBlock {
  GraphId graph = GraphId::n1;
  std::array<Point, kGraphVertices> points{};

  auto operator<=>(const PlacedBlock&) const = default;
};

/// The ten point pairs covered by a placed copy of its graph. Throws on repeated points.
std::array<PointPair, kGraphEdges> edges_of_block(const PlacedBlock& block);

/// Piece of a development rule: x in [start, start+length) maps to
/// start + ((x - start + stride * j) mod length) under orbit j.
struct Segment {
  Point start = 0;
  int length = 1;
  int stride = 0;

  auto operator<=>(const Segment&) const = default;
};

class DevelopmentRule {
 public:
  /// Segments must tile 0..N-1 exactly; orbits >= 1.
  DevelopmentRule(std::vector<Segment> segments, int orbits, int point_count);

  /// J = 1 with a single stride-0 segment.
  static DevelopmentRule identity(int point_count);

  const std::vector<Segment>& segments() const { return segments_; }
  int orbits() const { return orbits_; }
  int point_count() const { return point_count_; }

  Point apply(int j, Point x) const;

  bool operator==(const DevelopmentRule&) const = default;

 private:
  std::vector<Segment> segments_;
  int orbits_;
  int point_count_;
};

Point apply_map(const DevelopmentRule& rule, int j, Point x);

struct BaseDecomposition {
  std::string name;
  TargetGraph target;
  DevelopmentRule rule;
  std::vector<PlacedBlock> bases;
};

/// Every base block under every orbit, base index major, orbit index minor.
std::vector<PlacedBlock> develop(const BaseDecomposition& base);

struct PairDefect {
  PointPair pair;
  int count = 0;
  bool is_target_edge = false;
  std::vector<std::size_t> blocks;  // indices into the verified block list
};

struct VerificationReport {
  bool pass = false;
  std::size_t block_count = 0;
  long long target_edges = 0;
  long long pairs_covered_once = 0;
  std::vector<PairDefect> defects;

  std::string summary() const;
};

enum class CountingMethod { Triangular, Hashed };

/// Exact-once coverage of every target edge and nothing else. `workers` > 1
/// splits the blocks across threads with private counters. Blocks with points
/// outside the target or repeated points throw InputError.
VerificationReport verify_blocks(const TargetGraph& target, std::span<const PlacedBlock> blocks,
                                 CountingMethod method = CountingMethod::Triangular, int workers = 1);

VerificationReport verify_decomposition(const BaseDecomposition& base,
                                        CountingMethod method = CountingMethod::Triangular, int workers = 1);

/// A decomposition of K_n into one graph.
struct Design {
  GraphId graph = GraphId::n1;
  int order = 0;
  std::vector<PlacedBlock> blocks;
  std::vector<std::string> trail;  // construction steps, outermost first
};

VerificationReport verify_design(const Design& design, int workers = 1);

}  // namespace gdesign
