#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gdesign/decomp.hpp"
#include "gdesign/gdd.hpp"

namespace gdesign {

/// A verified decomposition of one target shape, points 0..N-1.
struct Ingredient {
  TargetGraph target = TargetGraph::complete(0);
  std::vector<PlacedBlock> blocks;
  std::string origin;
};

/// Resolves shapes to decompositions for one graph. Implementations must be
/// safe for concurrent calls.
class IngredientLibrary {
 public:
  virtual ~IngredientLibrary() = default;
  /// Throws UnsupportedOrder (naming the shape) when the shape cannot be supplied.
  virtual std::shared_ptr<const Ingredient> resolve(const ShapeKey& shape, GraphId graph) const = 0;
};

/// Point p of the GDD owns the run [start(p), start(p) + weight(p)); the extra
/// point, when present, is the last point. Every block becomes a multipartite
/// ingredient on its runs and every group a complete ingredient on its runs
/// plus the extra point. The result is verified against K_N before returning.
Design inflate_and_fill(const Gdd& gdd, const std::vector<int>& weights, int extra_point,
                        const IngredientLibrary& library, GraphId graph, int workers = 1);

struct Prop31Parameters {
  int i = 10;
  int t = 1;
  int x = 0;
  int p = 0;
  int y = 0;
  int q = 0;
  int e = 0;

  long order() const { return 12L * i * t + 4L * i + static_cast<long>(x) * p + static_cast<long>(y) * q + e; }
};

/// The resolvable 4-GDD of type 4^{3t+1} with the first x classes extended by a
/// point of weight p and the next y classes by a point of weight q; those new
/// points form one extra group. A {4,5}-GDD of type 4^{3t+1} (x+y)^1.
Gdd prop31_gdd(const Gdd& rgdd, int x, int y);

Design proposition_3_1(const Prop31Parameters& params, const IngredientLibrary& library, GraphId graph,
                       const std::optional<std::filesystem::path>& data_dir = std::nullopt, int workers = 1);

}  // namespace gdesign
