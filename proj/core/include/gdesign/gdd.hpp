#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gdesign/decomp.hpp"

namespace gdesign {

/// GF(q) for the bundled prime powers, elements 0..q-1 in polynomial
/// representation (digit i of the base-p expansion is the coefficient of x^i).
class FiniteField {
 public:
  int order() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return k_; }
  /// Low-to-high coefficients of the monic modulus (just {0, 1} for prime fields).
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  /// Throws InputError for 0.
  int inv(int a) const;

 private:
  friend FiniteField make_field(int q);
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * q_ + b; }

  int q_ = 0, p_ = 0, k_ = 0;
  std::vector<int> modulus_;
  std::vector<int> add_, mul_, neg_, inv_;
};

/// Supported q: primes below 128 and 4, 8, 9, 16, 25, 27, 32, 49.
FiniteField make_field(int q);
bool is_supported_field_order(int q);

using LatinSquare = std::vector<std::vector<int>>;

/// L_a(x, y) = a*x + y for a = 1..m (field element labels).
std::vector<LatinSquare> mols(int q, int m);
bool is_latin(const LatinSquare& square);
bool are_orthogonal(const LatinSquare& a, const LatinSquare& b);

/// Multiset of group sizes as (size, count), sizes descending. "11^6 7^1" etc.
using GroupType = std::vector<std::pair<int, int>>;

GroupType parse_group_type(std::string_view text);
std::string to_string(const GroupType& type);
GroupType normalize(GroupType type);

struct Gdd {
  std::string name;
  int point_count = 0;
  std::vector<std::vector<Point>> groups;
  std::vector<std::vector<Point>> blocks;
  /// Parallel classes as indices into `blocks`.
  std::optional<std::vector<std::vector<std::size_t>>> resolution;

  GroupType type() const;
  std::set<int> block_sizes() const;
};

struct GddReport {
  bool pass = false;
  std::size_t block_count = 0;
  long long cross_pairs = 0;
  std::vector<std::string> problems;

  std::string summary() const;
};

/// Checks the partition, exact cross-pair coverage, within-group emptiness,
/// and (when given) block sizes, group type and resolution.
GddReport verify_gdd(const Gdd& gdd, const std::set<int>& expected_block_sizes = {},
                     const GroupType& expected_type = {});

/// k-GDD of type q^k from k-2 MOLS of side q. Points: group g holds g*q .. g*q+q-1.
Gdd transversal_gdd(int k, int q);

/// Type 1^k with one block.
Gdd trivial_gdd(int k);
/// One group of n points and no blocks.
Gdd single_group_gdd(int n);

struct Plane {
  int order = 0;
  int point_count = 0;
  bool affine = false;
  std::vector<std::vector<Point>> lines;
  /// Parallel classes for affine planes (q+1 classes of q lines); empty for projective.
  std::vector<std::vector<std::size_t>> classes;
};

Plane affine_plane(int q);
Plane projective_plane(int q);

enum class PlaneDerivation { AffineDropClass, ProjectiveDropPoint, AffineDropPoint };

/// `index` is the class or point being removed.
Gdd plane_to_gdd(const Plane& plane, PlaneDerivation mode, int index = 0);

/// Keeps the first `keep` points of `group`, deleting the rest everywhere.
/// Points are renumbered in increasing order; any resolution is dropped.
Gdd truncate(const Gdd& gdd, std::size_t group, int keep);

struct FindOptions {
  std::optional<std::filesystem::path> data_dir;  // default_data_dir() when empty
  std::uint64_t seed = 0;
  std::chrono::milliseconds timeout{60'000};
  bool use_bundled = true;
  bool use_cyclic = true;
  bool use_backtracking = true;
};

/// Bundled data, then a difference search over Z_v (uniform types), then
/// backtracking. Throws SearchTimeout or UnsupportedOrder; never returns an
/// unverified object.
Gdd find_gdd(int k, const GroupType& type, const FindOptions& options = {});

/// Resolvable 4-GDD of type 4^{3t+1} with 4t parallel classes. t = 1 comes from
/// AG(2,4); t >= 2 needs data/gdd/rbibd_<12t+4>.gdd.
Gdd rgdd_for_prop31(int t, const std::optional<std::filesystem::path>& data_dir = std::nullopt);

/// `gdd` / `points` / `group` / `block` / `class` / `end` records.
std::vector<Gdd> parse_gdd_file(std::string_view text, const std::string& source_name = "<gdd>");
std::string serialize(const Gdd& gdd);

}  // namespace gdesign
