#include "gdesign/wilson.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gdesign/errors.hpp"

namespace gdesign {

namespace {

struct Run {
  Point start;
  int size;
};

void place(const Ingredient& ing, const std::vector<Point>& image, GraphId graph, std::vector<PlacedBlock>& out) {
  for (const auto& b : ing.blocks) {
    if (b.graph != graph) throw VerificationFailure(ing.origin + " holds a block of another graph");
    PlacedBlock nb{graph, {}};
    for (int k = 0; k < kGraphVertices; ++k) nb.points[k] = image[b.points[k]];
    out.push_back(nb);
  }
}

// Ingredient point -> target point, parts matched to runs by size with ties on position.
std::vector<Point> multipartite_image(const Ingredient& ing, std::vector<Run> runs) {
  auto parts = ing.target.parts();
  for (auto& part : parts) std::sort(part.begin(), part.end());
  std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  std::stable_sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.start < b.start;
  });
  std::vector<Point> image(ing.target.point_count(), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t k = 0; k < parts[i].size(); ++k) image[parts[i][k]] = runs[i].start + static_cast<Point>(k);
  }
  return image;
}

}  // namespace

Design inflate_and_fill(const Gdd& gdd, const std::vector<int>& weights, int extra_point,
                        const IngredientLibrary& library, GraphId graph, int workers) {
  if (static_cast<int>(weights.size()) != gdd.point_count) throw InputError("one weight per GDD point is required");
  if (extra_point != 0 && extra_point != 1) throw InputError("extra point flag must be 0 or 1");
  if (std::any_of(weights.begin(), weights.end(), [](int w) { return w < 0; })) {
    throw InputError("weights must be non-negative");
  }
  std::vector<Point> start(gdd.point_count + 1, 0);
  for (int p = 0; p < gdd.point_count; ++p) start[p + 1] = start[p] + weights[p];
  const int order = start.back() + extra_point;
  const Point extra = order - 1;

  Design d;
  d.graph = graph;
  d.order = order;
  for (const auto& block : gdd.blocks) {
    std::vector<Run> runs;
    std::vector<int> sizes;
    for (Point p : block) {
      if (weights[p] == 0) continue;
      runs.push_back({start[p], weights[p]});
      sizes.push_back(weights[p]);
    }
    if (runs.size() < 2) continue;
    const auto shape = ShapeKey::multipartite(sizes);
    const auto ing = library.resolve(shape, graph);
    if (ing->target.shape() != shape) throw VerificationFailure(ing->origin + " does not have shape " + shape.to_string());
    place(*ing, multipartite_image(*ing, runs), graph, d.blocks);
  }
  for (const auto& group : gdd.groups) {
    std::vector<Point> pts;
    for (Point p : group) {
      for (int k = 0; k < weights[p]; ++k) pts.push_back(start[p] + k);
    }
    if (extra_point) pts.push_back(extra);
    std::sort(pts.begin(), pts.end());
    if (pts.size() < 2) continue;
    const auto shape = ShapeKey::complete(static_cast<int>(pts.size()));
    const auto ing = library.resolve(shape, graph);
    if (ing->target.shape() != shape) throw VerificationFailure(ing->origin + " does not have shape " + shape.to_string());
    place(*ing, pts, graph, d.blocks);
  }
  std::sort(d.blocks.begin(), d.blocks.end());

  const auto report = verify_design(d, workers);
  if (!report.pass) {
    std::ostringstream os;
    os << "inflated design of order " << order << " over " << gdd.name << " fails: " << report.summary();
    throw VerificationFailure(os.str());
  }
  return d;
}

Gdd prop31_gdd(const Gdd& rgdd, int x, int y) {
  if (!rgdd.resolution) throw InputError("class extension needs a resolved GDD");
  const auto& classes = *rgdd.resolution;
  if (x < 0 || y < 0 || static_cast<std::size_t>(x + y) > classes.size()) {
    throw InputError("x + y exceeds the number of parallel classes");
  }
  Gdd g;
  g.name = rgdd.name + " with " + std::to_string(x + y) + " classes extended";
  g.point_count = rgdd.point_count + x + y;
  g.groups = rgdd.groups;
  g.blocks = rgdd.blocks;
  std::vector<Point> hole;
  for (int c = 0; c < x + y; ++c) {
    const Point np = rgdd.point_count + c;
    hole.push_back(np);
    for (std::size_t bi : classes[c]) g.blocks[bi].push_back(np);
  }
  if (!hole.empty()) g.groups.push_back(std::move(hole));
  return g;
}

Design proposition_3_1(const Prop31Parameters& prm, const IngredientLibrary& library, GraphId graph,
                       const std::optional<std::filesystem::path>& data_dir, int workers) {
  if (prm.e != 0 && prm.e != 1) throw InputError("e must be 0 or 1");
  if (prm.i < 1 || prm.x < 0 || prm.y < 0) throw InputError("bad parameters");
  if (prm.x + prm.y > 4 * prm.t) throw InputError("x + y exceeds 4t");
  if ((prm.x > 0 && prm.p < 1) || (prm.y > 0 && prm.q < 1)) throw InputError("p and q must be positive when used");

  const Gdd rgdd = rgdd_for_prop31(prm.t, data_dir);
  const Gdd g = prop31_gdd(rgdd, prm.x, prm.y);
  const auto rep = verify_gdd(g);
  if (!rep.pass) throw VerificationFailure(g.name + ": " + rep.summary());

  std::vector<int> weights(g.point_count, prm.i);
  for (int c = 0; c < prm.x + prm.y; ++c) weights[rgdd.point_count + c] = c < prm.x ? prm.p : prm.q;
  Design d = inflate_and_fill(g, weights, prm.e, library, graph, workers);
  if (d.order != prm.order()) throw VerificationFailure("order arithmetic mismatch");
  return d;
}

}  // namespace gdesign
