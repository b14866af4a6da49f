#include "gdesign/spectrum.hpp"

#include <algorithm>
#include <condition_variable>
#include <future>
#include <set>
#include <sstream>

#include "gdesign/errors.hpp"

namespace gdesign {

// ------------------------------------------------------------------ recipes

std::string GddRecipe::describe() const {
  std::ostringstream os;
  switch (source) {
    case Source::Trivial:
      os << "trivial GDD 1^" << k << " (one block)";
      break;
    case Source::Transversal:
      os << k << "-GDD " << q << "^" << k << " from " << k - 2 << " MOLS of side " << q;
      break;
    case Source::AffineDropClass:
      os << q << "-GDD " << q << "^" << q << " from AG(2," << q << ") minus a parallel class";
      break;
    case Source::AffineDropPoint:
      os << q << "-GDD " << q - 1 << "^" << q + 1 << " from AG(2," << q << ") minus a point";
      break;
    case Source::ProjectiveDropPoint:
      os << q + 1 << "-GDD " << q << "^" << q + 1 << " from PG(2," << q << ") minus a point";
      break;
    case Source::Search:
      os << k << "-GDD " << to_string(search_type) << " (bundled or searched)";
      break;
  }
  if (truncate_keep) os << ", last group cut to " << *truncate_keep << " points";
  return os.str();
}

std::vector<int> WeightRule::apply(const Gdd& gdd) const {
  std::vector<int> w(gdd.point_count, base);
  if (special_group) {
    const std::size_t g = *special_group == SIZE_MAX ? gdd.groups.size() - 1 : *special_group;
    if (g >= gdd.groups.size()) throw InputError("weight rule names a missing group");
    auto pts = gdd.groups[g];
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i) w[pts[i]] = i < special_first.size() ? special_first[i] : special_rest;
  }
  return w;
}

std::string WeightRule::describe() const {
  std::ostringstream os;
  os << "weight " << base;
  if (special_group) {
    os << "; " << (*special_group == SIZE_MAX ? std::string("last group") : "group " + std::to_string(*special_group))
       << ":";
    for (int x : special_first) os << ' ' << x;
    os << (special_first.empty() ? " all " : " then ") << special_rest;
  }
  return os.str();
}

std::string ConstructionPlan::describe() const {
  std::ostringstream os;
  os << "order " << order << " " << to_string(graph) << ": ";
  switch (kind) {
    case PlanKind::Empty:
      os << "empty design";
      break;
    case PlanKind::Status:
      os << to_string(status);
      break;
    case PlanKind::Direct:
      os << "stored decomposition";
      break;
    case PlanKind::Recipe:
      os << gdd->describe() << "; " << weights.describe() << (extra_point ? "; extra point" : "");
      break;
    case PlanKind::Table2: {
      const auto& p = *table2;
      os << "resolvable 4-GDD 4^" << 3 * p.t + 1 << " inflated by " << p.i << ", x=" << p.x << " p=" << p.p
         << " y=" << p.y << " q=" << p.q << " e=" << p.e;
      break;
    }
    case PlanKind::Unsupported:
      os << "no construction available";
      break;
  }
  if (!citation.empty()) os << " [" << citation << "]";
  return os.str();
}

namespace {

using S = GddRecipe::Source;
constexpr std::size_t kLast = SIZE_MAX;

struct RecipeEntry {
  long order;
  std::vector<int> graphs;  // graph numbers
  GddRecipe gdd;
  WeightRule weights;
  int e;
  const char* note;
};

GddRecipe trivial(int k) { return {S::Trivial, k, 0, {}, std::nullopt}; }
GddRecipe td(int k, int q, std::optional<int> keep = std::nullopt) { return {S::Transversal, k, q, {}, keep}; }
GddRecipe plane(S s, int q, std::optional<int> keep = std::nullopt) { return {s, 0, q, {}, keep}; }
GddRecipe search(int k, int g, int u) { return {S::Search, k, 0, {{g, u}}, std::nullopt}; }
WeightRule uniform(int w) { return {w, std::nullopt, {}, 0}; }
WeightRule special(int base, std::size_t group, std::vector<int> first, int rest) {
  return {base, group, std::move(first), rest};
}

const std::vector<RecipeEntry>& recipe_table() {
  const std::vector<int> all{3, 6, 8, 10, 13}, four{3, 6, 8, 10}, n13{13}, n6n8{6, 8};
  static const std::vector<RecipeEntry> table{
      {60, n6n8, td(3, 2), uniform(10), 0, "K_20, K_{10,10,10}; 3-GDD 2^3"},
      {60, n13, trivial(40), special(1, kLast, {}, 21), 0, "K_21, K_{1^39,21}"},
      {61, n6n8, td(3, 2), uniform(10), 1, "K_21, K_{10,10,10}; 3-GDD 2^3"},
      {80, n6n8, trivial(4), uniform(20), 0, "K_20, K_{20,20,20,20}"},
      {80, n13, trivial(56), special(1, kLast, {}, 25), 0, "K_25, K_{1^55,25}"},
      {81, all, trivial(4), uniform(20), 1, "K_21, K_{20,20,20,20}"},
      {96, n6n8, plane(S::AffineDropClass, 4), special(5, 0, {}, 9), 0, "K_20, K_36, K_{5,5,5,9}; 4-GDD 4^4"},
      {100, all, trivial(4), uniform(25), 0, "K_25, K_{25,25,25,25}"},
      {101, all, plane(S::ProjectiveDropPoint, 4), uniform(5), 1, "K_21, K_{5,5,5,5,5}; 5-GDD 4^5"},
      {105, {3}, trivial(5), uniform(21), 0, "K_21, K_{21,21,21,21,21}"},
      {105, {6, 10}, td(5, 7), uniform(3), 0, "K_21, K_{3,3,3,3,3}; 5-GDD 7^5"},
      {120, four, plane(S::AffineDropPoint, 5), uniform(5), 0, "K_20, K_{5,5,5,5,5}; 5-GDD 4^6"},
      {120, n13, trivial(5), special(21, kLast, {}, 36), 0, "K_21, K_36, K_{21,21,21,21,36}"},
      {121, all, plane(S::AffineDropPoint, 5), uniform(5), 1, "K_21, K_{5,5,5,5,5}; 5-GDD 4^6"},
      {125, all, td(5, 5), uniform(5), 0, "K_25, K_{5,5,5,5,5}; 5-GDD 5^5"},
      {136, four, plane(S::ProjectiveDropPoint, 5), special(4, 0, {}, 7), 1, "K_21, K_36, K_{4,4,4,4,4,7}; 6-GDD 5^6"},
      {140, four, search(4, 2, 7), uniform(10), 0, "K_20, K_{10,10,10,10}; 4-GDD 2^7"},
      {140, n13, trivial(100), special(1, kLast, {}, 41), 0, "K_41, K_{1^99,41}"},
      {141, all, search(4, 2, 7), uniform(10), 1, "K_21, K_{10,10,10,10}; 4-GDD 2^7"},
      {145, all, plane(S::AffineDropPoint, 5), uniform(6), 1, "K_25, K_{6,6,6,6,6}; 5-GDD 4^6"},
      {156, n6n8, plane(S::AffineDropClass, 4, 3), special(10, kLast, {15}, 10), 1,
       "K_36, K_41, K_{10,10,10}, K_{10,10,10,10}, K_{10,10,10,15}; {3,4}-GDD 4^3 3^1"},
      {165, all, plane(S::AffineDropClass, 4), special(10, 0, {15}, 10), 0,
       "K_40, K_45, K_{10,10,10,10}, K_{10,10,10,15}; 4-GDD 4^4"},
      {176, all, td(5, 7), uniform(5), 1, "K_36, K_{5,5,5,5,5}; 5-GDD 7^5"},
      {180, all, plane(S::ProjectiveDropPoint, 3), uniform(15), 0, "K_45, K_{15,15,15,15}; 4-GDD 3^4"},
      {245, all, plane(S::AffineDropPoint, 5), special(10, 0, {15}, 10), 0,
       "K_40, K_45, K_{10,10,10,10,10}, K_{10,10,10,10,15}; 5-GDD 4^6"},
      {256, four, td(7, 9, 8), special(4, kLast, {}, 5), 0, "K_36, K_40, K_{4^6}, K_{4^6,5}; {6,7}-GDD 9^6 8^1"},
      {256, n13, td(7, 9, 4), special(4, kLast, {}, 10), 0, "K_36, K_40, K_{4^6}, K_{4^6,10}; {6,7}-GDD 9^6 4^1"},
      {260, four, search(4, 2, 13), uniform(10), 0, "K_20, K_{10,10,10,10}; 4-GDD 2^13"},
      {260, n13, td(5, 7), special(8, 0, {3, 3, 3, 3}, 8), 0, "K_36, K_56, K_{8,8,8,8,8}, K_{8,8,8,8,3}; 5-GDD 7^5"},
      {261, all, search(4, 2, 13), uniform(10), 1, "K_21, K_{10,10,10,10}; 4-GDD 2^13"},
      {265, all, td(6, 11), uniform(4), 1, "K_45, K_{4^6}; 6-GDD 11^6"},
      {276, all, td(5, 11), uniform(5), 1, "K_56, K_{5,5,5,5,5}; 5-GDD 11^5"},
      {285, four, td(7, 11, 4), special(4, kLast, {}, 5), 1, "K_21, K_45, K_{4^6}, K_{4^6,5}; {6,7}-GDD 11^6 4^1"},
      {285, n13, td(7, 11, 2), special(4, kLast, {}, 10), 1, "K_21, K_45, K_{4^6}, K_{4^6,10}; {6,7}-GDD 11^6 2^1"},
      {296, all, search(4, 4, 7), special(10, 0, {15, 15, 15}, 10), 1,
       "K_41, K_56, K_{10,10,10,10}, K_{10,10,10,15}; 4-GDD 4^7"},
      {300, four, td(7, 11, 7), special(4, kLast, {}, 5), 1, "K_36, K_45, K_{4^6}, K_{4^6,5}; {6,7}-GDD 11^6 7^1"},
      {300, n13, td(7, 11, 3), special(4, kLast, {15}, 10), 1,
       "K_36, K_45, K_{4^6}, K_{4^6,10}, K_{4^6,15}; {6,7}-GDD 11^6 3^1"},
  };
  return table;
}

struct Table2Row {
  int c;
  int t_min;
  int x, p, y, q, e;
};

// n = 120t + 40 + c with i = 10
constexpr Table2Row kTable2[] = {
    {0, 1, 0, 0, 0, 0, 0},     {140, 2, 0, 0, 7, 20, 0}, {40, 1, 0, 0, 2, 20, 0},  {60, 1, 0, 0, 3, 20, 0},
    {80, 1, 0, 0, 4, 20, 0},   {100, 2, 0, 0, 5, 20, 0}, {1, 1, 0, 0, 0, 0, 1},    {21, 1, 0, 0, 1, 20, 1},
    {41, 1, 0, 0, 2, 20, 1},   {61, 1, 0, 0, 3, 20, 1},  {81, 1, 0, 0, 4, 20, 1},  {101, 2, 0, 0, 5, 20, 1},
    {125, 2, 3, 15, 4, 20, 0}, {25, 1, 1, 10, 1, 15, 0}, {45, 1, 3, 15, 0, 0, 0},  {65, 1, 3, 15, 1, 20, 0},
    {85, 2, 3, 15, 2, 20, 0},  {105, 2, 3, 15, 3, 20, 0}, {136, 2, 1, 15, 6, 20, 1}, {36, 1, 1, 15, 1, 20, 1},
    {56, 1, 1, 15, 2, 20, 1},  {76, 1, 1, 15, 3, 20, 1}, {96, 2, 1, 15, 4, 20, 1}, {116, 2, 1, 15, 5, 20, 1},
};

}  // namespace

std::optional<Prop31Parameters> table2_parameters(long n) {
  for (const auto& r : kTable2) {
    const long rest = n - 40 - r.c;
    if (rest <= 0 || rest % 120 != 0) continue;
    const long t = rest / 120;
    if (t < r.t_min) continue;
    return Prop31Parameters{10, static_cast<int>(t), r.x, r.p, r.y, r.q, r.e};
  }
  return std::nullopt;
}

ConstructionPlan recipe_for(GraphId graph, long n, const Corpus& corpus) {
  ConstructionPlan plan;
  plan.graph = graph;
  plan.order = n;
  plan.status = spectrum_status(graph, n);
  if (n >= 0 && n <= 1) {
    plan.kind = PlanKind::Empty;
    return plan;
  }
  if (plan.status != SpectrumStatus::Exists) {
    plan.kind = PlanKind::Status;
    plan.citation = spectrum_reason(graph, n);
    return plan;
  }
  if (corpus.lookup(ShapeKey::complete(static_cast<int>(n)), graph)) {
    plan.kind = PlanKind::Direct;
    for (const auto& e : corpus.entries()) {
      if (e.serves(graph) && e.shape() == ShapeKey::complete(static_cast<int>(n))) {
        plan.citation = e.decomposition.name + " (" + e.source + ")";
        break;
      }
    }
    return plan;
  }
  const int gnum = static_cast<int>(graph);
  for (const auto& r : recipe_table()) {
    if (r.order != n || std::find(r.graphs.begin(), r.graphs.end(), gnum) == r.graphs.end()) continue;
    plan.kind = PlanKind::Recipe;
    plan.gdd = r.gdd;
    plan.weights = r.weights;
    plan.extra_point = r.e;
    plan.citation = r.note;
    return plan;
  }
  if (auto p = table2_parameters(n)) {
    plan.kind = PlanKind::Table2;
    plan.table2 = p;
    std::ostringstream os;
    os << "120t + 40 + " << n - 40 - 120L * p->t << ", t = " << p->t;
    plan.citation = os.str();
    return plan;
  }
  plan.kind = PlanKind::Unsupported;
  plan.citation = "no recipe or table row reaches this order";
  return plan;
}

// ------------------------------------------------------------------ builder

struct SpectrumBuilder::Memo {
  using Key = std::pair<int, long>;
  std::mutex mutex;
  std::map<Key, std::shared_future<std::shared_ptr<const Design>>> designs;
  std::map<std::pair<int, ShapeKey>, std::shared_ptr<const Ingredient>> multipartite;
  std::map<std::string, Gdd> gdds;
};

namespace {

// Orders under construction on this thread, innermost last.
thread_local std::vector<std::pair<int, long>> tl_in_progress;

}  // namespace

SpectrumBuilder::SpectrumBuilder(std::shared_ptr<const Corpus> corpus, BuildOptions options)
    : corpus_(std::move(corpus)), options_(std::move(options)), memo_(std::make_unique<Memo>()) {
  if (!corpus_) throw InputError("builder needs a corpus");
}

SpectrumBuilder::~SpectrumBuilder() = default;

std::shared_ptr<SpectrumBuilder> SpectrumBuilder::from_data_dir(BuildOptions options) {
  const auto dir = options.data_dir ? *options.data_dir : default_data_dir();
  auto corpus = std::make_shared<const Corpus>(Corpus::load_directory(dir, true));
  options.data_dir = dir;
  return std::make_shared<SpectrumBuilder>(std::move(corpus), std::move(options));
}

ConstructionPlan SpectrumBuilder::plan(GraphId graph, long n) const { return recipe_for(graph, n, *corpus_); }

Gdd SpectrumBuilder::gdd_for(const GddRecipe& r) const {
  const std::string key = r.describe();
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->gdds.find(key); it != memo_->gdds.end()) return it->second;
  }
  Gdd g;
  switch (r.source) {
    case S::Trivial:
      g = trivial_gdd(r.k);
      break;
    case S::Transversal:
      g = transversal_gdd(r.k, r.q);
      break;
    case S::AffineDropClass:
      g = plane_to_gdd(affine_plane(r.q), PlaneDerivation::AffineDropClass, r.q);
      break;
    case S::AffineDropPoint:
      g = plane_to_gdd(affine_plane(r.q), PlaneDerivation::AffineDropPoint, 0);
      break;
    case S::ProjectiveDropPoint:
      g = plane_to_gdd(projective_plane(r.q), PlaneDerivation::ProjectiveDropPoint, 0);
      break;
    case S::Search: {
      FindOptions fo;
      fo.data_dir = options_.data_dir;
      fo.seed = options_.seed;
      fo.timeout = options_.search_timeout;
      g = find_gdd(r.k, r.search_type, fo);
      break;
    }
  }
  if (r.truncate_keep) g = truncate(g, g.groups.size() - 1, *r.truncate_keep);
  const auto rep = verify_gdd(g);
  if (!rep.pass) throw VerificationFailure(key + ": " + rep.summary());
  std::lock_guard lock(memo_->mutex);
  return memo_->gdds.emplace(key, std::move(g)).first->second;
}

std::shared_ptr<const Ingredient> SpectrumBuilder::resolve(const ShapeKey& shape, GraphId graph) const {
  if (shape.kind == TargetKind::Complete) {
    auto d = design(graph, shape.order);
    auto ing = std::make_shared<Ingredient>();
    ing->target = TargetGraph::complete(d->order);
    ing->blocks = d->blocks;
    ing->origin = "K_" + std::to_string(d->order) + " " + to_string(graph);
    return ing;
  }
  const std::pair<int, ShapeKey> key{static_cast<int>(graph), shape};
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->multipartite.find(key); it != memo_->multipartite.end()) return it->second;
  }
  auto base = corpus_->lookup(shape, graph);
  if (!base) throw UnsupportedOrder("no stored decomposition of " + shape.to_string() + " for " + to_string(graph));
  const auto report = verify_decomposition(*base, CountingMethod::Triangular, options_.workers);
  if (!report.pass) throw VerificationFailure(base->name + ": " + report.summary());
  auto ing = std::make_shared<Ingredient>();
  ing->target = base->target;
  ing->blocks = develop(*base);
  ing->origin = base->name;
  std::lock_guard lock(memo_->mutex);
  return memo_->multipartite.emplace(key, std::move(ing)).first->second;
}

std::shared_ptr<const Design> SpectrumBuilder::construct(const ConstructionPlan& plan) const {
  auto d = std::make_shared<Design>();
  d->graph = plan.graph;
  d->order = static_cast<int>(plan.order);
  switch (plan.kind) {
    case PlanKind::Empty:
      return d;
    case PlanKind::Direct: {
      auto base = corpus_->lookup(ShapeKey::complete(d->order), plan.graph);
      d->blocks = develop(*base);
      std::sort(d->blocks.begin(), d->blocks.end());
      break;
    }
    case PlanKind::Recipe: {
      const Gdd g = gdd_for(*plan.gdd);
      auto built = inflate_and_fill(g, plan.weights.apply(g), plan.extra_point, *this, plan.graph, options_.workers);
      d->blocks = std::move(built.blocks);
      break;
    }
    case PlanKind::Table2: {
      auto built = proposition_3_1(*plan.table2, *this, plan.graph, options_.data_dir, options_.workers);
      d->blocks = std::move(built.blocks);
      break;
    }
    case PlanKind::Status:
    case PlanKind::Unsupported:
      throw UnsupportedOrder(plan.describe());
  }
  if (d->order != plan.order) throw VerificationFailure("order mismatch in " + plan.describe());
  d->trail.push_back(plan.describe());
  const auto report = verify_design(*d, options_.workers);
  if (!report.pass) throw VerificationFailure(plan.describe() + ": " + report.summary());
  return d;
}

std::shared_ptr<const Design> SpectrumBuilder::design(GraphId graph, long n) const {
  if (!is_target_graph(graph)) throw UnknownGraph("designs are built only for n3, n6, n8, n10, n13");
  const auto status = spectrum_status(graph, n);
  if (status != SpectrumStatus::Exists && !(n >= 0 && n <= 1)) {
    throw UnsupportedOrder("no design of order " + std::to_string(n) + " for " + to_string(graph) + ": " +
                           spectrum_reason(graph, n));
  }
  const Memo::Key key{static_cast<int>(graph), n};
  if (std::find(tl_in_progress.begin(), tl_in_progress.end(), key) != tl_in_progress.end()) {
    throw Error("construction cycle at order " + std::to_string(n) + " for " + to_string(graph));
  }
  if (!tl_in_progress.empty() && tl_in_progress.back().first == key.first && tl_in_progress.back().second <= n) {
    throw Error("ingredient order " + std::to_string(n) + " does not decrease");
  }

  std::promise<std::shared_ptr<const Design>> promise;
  std::shared_future<std::shared_ptr<const Design>> future;
  bool owner = false;
  {
    std::lock_guard lock(memo_->mutex);
    auto it = memo_->designs.find(key);
    if (it == memo_->designs.end()) {
      future = promise.get_future().share();
      memo_->designs.emplace(key, future);
      owner = true;
    } else {
      future = it->second;
    }
  }
  if (owner) {
    tl_in_progress.push_back(key);
    try {
      promise.set_value(construct(plan(graph, n)));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
    tl_in_progress.pop_back();
  }
  return future.get();
}

BuildOutcome SpectrumBuilder::build(GraphId graph, long n) const {
  BuildOutcome out;
  out.status = spectrum_status(graph, n);
  out.message = spectrum_reason(graph, n);
  if ((n >= 0 && n <= 1) || out.status == SpectrumStatus::Exists) out.design = design(graph, n);
  return out;
}

namespace {

void tree(const SpectrumBuilder& b, GraphId graph, long n, int depth, std::set<long>& seen, std::ostringstream& os) {
  const auto plan = b.plan(graph, n);
  os << std::string(2 * depth, ' ') << plan.describe();
  if (seen.count(n)) {
    os << " (above)\n";
    return;
  }
  os << '\n';
  seen.insert(n);
  std::set<ShapeKey> shapes;
  std::set<long> completes;
  auto add_profile = [&](const Gdd& g, const std::vector<int>& w, int e) {
    for (const auto& blk : g.blocks) {
      std::vector<int> sizes;
      for (Point p : blk) {
        if (w[p] > 0) sizes.push_back(w[p]);
      }
      if (sizes.size() >= 2) shapes.insert(ShapeKey::multipartite(sizes));
    }
    for (const auto& grp : g.groups) {
      long m = e;
      for (Point p : grp) m += w[p];
      if (m >= 2) completes.insert(m);
    }
  };
  try {
    if (plan.kind == PlanKind::Recipe) {
      const Gdd g = b.gdd_for(*plan.gdd);
      add_profile(g, plan.weights.apply(g), plan.extra_point);
    } else if (plan.kind == PlanKind::Table2) {
      const auto& p = *plan.table2;
      const Gdd g = prop31_gdd(rgdd_for_prop31(p.t, b.options().data_dir), p.x, p.y);
      std::vector<int> w(g.point_count, p.i);
      const int base_points = 12 * p.t + 4;
      for (int c = 0; c < p.x + p.y; ++c) w[base_points + c] = c < p.x ? p.p : p.q;
      add_profile(g, w, p.e);
    }
  } catch (const Error& e) {
    os << std::string(2 * depth + 2, ' ') << "unavailable: " << e.what() << '\n';
    return;
  }
  for (const auto& s : shapes) {
    os << std::string(2 * depth + 2, ' ') << s.to_string() << ": "
       << (b.corpus().lookup(s, graph) ? "stored decomposition" : "MISSING") << '\n';
  }
  for (auto it = completes.rbegin(); it != completes.rend(); ++it) tree(b, graph, *it, depth + 1, seen, os);
}

}  // namespace

std::string SpectrumBuilder::plan_tree(GraphId graph, long n) const {
  std::ostringstream os;
  std::set<long> seen;
  tree(*this, graph, n, 0, seen, os);
  return os.str();
}

BuildOutcome build_design(GraphId graph, long n) {
  static std::once_flag once;
  static std::shared_ptr<SpectrumBuilder> builder;
  std::call_once(once, [] { builder = SpectrumBuilder::from_data_dir(); });
  return builder->build(graph, n);
}

}  // namespace gdesign
