#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gdesign/catalog.hpp"
#include "gdesign/corpus.hpp"
#include "gdesign/gdd.hpp"
#include "gdesign/wilson.hpp"

namespace gdesign {

/// Where the master GDD of a recipe comes from. Truncation, when present,
/// keeps `truncate_keep` points of the last group.
struct GddRecipe {
  enum class Source { Trivial, Transversal, AffineDropClass, AffineDropPoint, ProjectiveDropPoint, Search };

  Source source = Source::Trivial;
  int k = 0;  // block size (Trivial: number of points)
  int q = 0;  // side or plane order
  GroupType search_type;
  std::optional<int> truncate_keep;

  std::string describe() const;
};

/// Weight `base` everywhere except the special group, whose points (in
/// increasing order) take `special_first` and then `special_rest`.
struct WeightRule {
  int base = 1;
  std::optional<std::size_t> special_group;  // nullopt, or an index (SIZE_MAX means the last group)
  std::vector<int> special_first;
  int special_rest = 0;

  std::vector<int> apply(const Gdd& gdd) const;
  std::string describe() const;
};

enum class PlanKind { Empty, Status, Direct, Recipe, Table2, Unsupported };

struct ConstructionPlan {
  PlanKind kind = PlanKind::Status;
  GraphId graph = GraphId::n3;
  long order = 0;
  SpectrumStatus status = SpectrumStatus::Unknown;
  std::string citation;

  std::optional<GddRecipe> gdd;  // Recipe
  WeightRule weights;            // Recipe
  int extra_point = 0;           // Recipe
  std::optional<Prop31Parameters> table2;

  std::string describe() const;
};

/// Inflation parameters (i = 10) for n = 120t + 40 + c, if some row covers n.
std::optional<Prop31Parameters> table2_parameters(long n);

/// Direct corpus design, else an explicit recipe, else an inflation row, else a status.
ConstructionPlan recipe_for(GraphId graph, long n, const Corpus& corpus);

struct BuildOptions {
  std::optional<std::filesystem::path> data_dir;
  int workers = 1;
  std::uint64_t seed = 0;
  std::chrono::milliseconds search_timeout{60'000};
};

struct BuildOutcome {
  SpectrumStatus status = SpectrumStatus::Unknown;
  std::shared_ptr<const Design> design;  // set for Exists and for orders 0 and 1
  std::string message;
};

/// Builds verified designs with a per-(graph, order) memo. Safe to share
/// across threads; concurrent requests for one key compute it once.
class SpectrumBuilder : public IngredientLibrary {
 public:
  SpectrumBuilder(std::shared_ptr<const Corpus> corpus, BuildOptions options = {});
  ~SpectrumBuilder() override;

  /// Loads the corpus from the data directory in strict mode.
  static std::shared_ptr<SpectrumBuilder> from_data_dir(BuildOptions options = {});

  ConstructionPlan plan(GraphId graph, long n) const;
  /// The recipe tree down to corpus designs, without building anything.
  std::string plan_tree(GraphId graph, long n) const;

  /// Throws UnsupportedOrder when a plan needs missing data, VerificationFailure on a bad result.
  BuildOutcome build(GraphId graph, long n) const;
  /// The verified design; throws UnsupportedOrder unless the status is Exists.
  std::shared_ptr<const Design> design(GraphId graph, long n) const;

  std::shared_ptr<const Ingredient> resolve(const ShapeKey& shape, GraphId graph) const override;

  const Corpus& corpus() const { return *corpus_; }
  const BuildOptions& options() const { return options_; }
  Gdd gdd_for(const GddRecipe& recipe) const;

 private:
  struct Memo;
  std::shared_ptr<const Design> construct(const ConstructionPlan& plan) const;

  std::shared_ptr<const Corpus> corpus_;
  BuildOptions options_;
  std::unique_ptr<Memo> memo_;
};

/// Process-wide builder over default_data_dir().
BuildOutcome build_design(GraphId graph, long n);

}  // namespace gdesign
