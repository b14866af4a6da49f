#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "gdesign/corpus.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/nonexistence.hpp"
#include "gdesign/spectrum.hpp"

using namespace gdesign;

namespace {

const Corpus& corpus() {
  static const Corpus c = Corpus::load_directory(GDESIGN_TEST_DATA_DIR, true);
  return c;
}

std::vector<PointPair> edge_multiset(const std::vector<PlacedBlock>& blocks) {
  std::vector<PointPair> out;
  out.reserve(blocks.size() * kGraphEdges);
  for (const auto& b : blocks) {
    for (const auto& e : edges_of_block(b)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("apply_map is a bijection for every orbit of every corpus rule") {
  std::mt19937_64 rng(20200419);
  for (const auto& e : corpus().entries()) {
    const auto& rule = e.decomposition.rule;
    const int n = rule.point_count();
    for (int x = 0; x < n; ++x) REQUIRE(apply_map(rule, 0, x) == x);
    std::uniform_int_distribution<int> pick(0, rule.orbits() - 1);
    for (int trial = 0; trial < 8; ++trial) {
      const int j = pick(rng);
      std::vector<char> hit(n, 0);
      for (int x = 0; x < n; ++x) {
        const Point y = apply_map(rule, j, x);
        REQUIRE(y >= 0);
        REQUIRE(y < n);
        hit[y] = 1;
      }
      CHECK_MESSAGE(std::all_of(hit.begin(), hit.end(), [](char c) { return c == 1; }), e.source << " j=" << j);
    }
  }
}

TEST_CASE("develop count law and counting identity") {
  for (const auto& e : corpus().entries()) {
    for (GraphId g : e.graph_indices) {
      const auto base = e.restrict_to(g);
      const auto blocks = develop(base);
      CHECK(blocks.size() == base.bases.size() * static_cast<std::size_t>(base.rule.orbits()));
      CHECK(static_cast<long long>(blocks.size()) * kGraphEdges == base.target.edge_count());
    }
  }
}

TEST_CASE("triangular and hashed counting agree on the corpus") {
  for (const auto& e : corpus().entries()) {
    for (GraphId g : e.graph_indices) {
      const auto base = e.restrict_to(g);
      const auto a = verify_decomposition(base, CountingMethod::Triangular);
      const auto b = verify_decomposition(base, CountingMethod::Hashed);
      CHECK(a.pass == b.pass);
      CHECK(a.pairs_covered_once == b.pairs_covered_once);
    }
  }
}

TEST_CASE("single-point mutations that change the edge multiset break verification") {
  std::mt19937_64 rng(7);
  const auto& entries = corpus().entries();
  int tested = 0;
  int attempts = 0;
  while (tested < 100 && attempts < 10000) {
    ++attempts;
    const auto& e = entries[std::uniform_int_distribution<std::size_t>(0, entries.size() - 1)(rng)];
    const GraphId g = e.graph_indices[std::uniform_int_distribution<std::size_t>(0, e.graph_indices.size() - 1)(rng)];
    auto base = e.restrict_to(g);
    auto& block = base.bases[std::uniform_int_distribution<std::size_t>(0, base.bases.size() - 1)(rng)];
    const int slot = std::uniform_int_distribution<int>(0, kGraphVertices - 1)(rng);
    const Point value = std::uniform_int_distribution<Point>(0, base.target.point_count() - 1)(rng);
    if (std::find(block.points.begin(), block.points.end(), value) != block.points.end()) continue;
    const auto before = edge_multiset(develop(e.restrict_to(g)));
    block.points[slot] = value;
    if (edge_multiset(develop(base)) == before) continue;
    ++tested;
    CHECK_FALSE_MESSAGE(verify_decomposition(base).pass, e.source << ' ' << to_string(g));
  }
  CHECK(tested == 100);
}

TEST_CASE("GDD counting identity on every recipe GDD") {
  BuildOptions o;
  o.data_dir = GDESIGN_TEST_DATA_DIR;
  const auto b = SpectrumBuilder::from_data_dir(o);
  std::set<std::string> seen;
  for (GraphId g : target_graphs()) {
    for (long n = 6; n <= 300; ++n) {
      if (spectrum_status(g, n) != SpectrumStatus::Exists) continue;
      const auto plan = b->plan(g, n);
      Gdd gdd;
      if (plan.kind == PlanKind::Recipe) {
        gdd = b->gdd_for(*plan.gdd);
      } else if (plan.kind == PlanKind::Table2) {
        gdd = prop31_gdd(rgdd_for_prop31(plan.table2->t, GDESIGN_TEST_DATA_DIR), plan.table2->x, plan.table2->y);
      } else {
        continue;
      }
      if (!seen.insert(gdd.name).second) continue;
      long long lhs = 0, total = 0, within = 0;
      for (const auto& blk : gdd.blocks) lhs += static_cast<long long>(blk.size()) * (blk.size() - 1) / 2;
      for (const auto& grp : gdd.groups) {
        total += static_cast<long long>(grp.size());
        within += static_cast<long long>(grp.size()) * (grp.size() - 1) / 2;
      }
      CHECK_MESSAGE(lhs == total * (total - 1) / 2 - within, gdd.name);
      CHECK(verify_gdd(gdd).pass);
    }
  }
  CHECK(seen.size() >= 15);
}

TEST_CASE("feasibility is never refuted where a design was built") {
  BuildOptions o;
  o.data_dir = GDESIGN_TEST_DATA_DIR;
  const auto b = SpectrumBuilder::from_data_dir(o);
  for (GraphId g : target_graphs()) {
    for (long n = 6; n <= 160; ++n) {
      if (spectrum_status(g, n) != SpectrumStatus::Exists) continue;
      const auto d = b->design(g, n);
      REQUIRE(verify_design(*d).pass);
      CHECK_MESSAGE(feasibility_check(g, n).feasible, to_string(g) << ' ' << n);
    }
  }
}
