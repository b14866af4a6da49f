#include "doctest.h"

#include <algorithm>
#include <set>

#include "gdesign/corpus.hpp"
#include "gdesign/decomp.hpp"
#include "gdesign/errors.hpp"

using namespace gdesign;

namespace {

std::set<std::pair<Point, Point>> pairs_of(const PlacedBlock& b) {
  std::set<std::pair<Point, Point>> out;
  for (const auto& e : edges_of_block(b)) out.insert({e.lo, e.hi});
  return out;
}

const Corpus& corpus() {
  static const Corpus c = Corpus::load_directory(GDESIGN_TEST_DATA_DIR, false);
  return c;
}

}  // namespace

TEST_CASE("apply_map examples") {
  const DevelopmentRule k20({{0, 19, 1}, {19, 1, 0}}, 19, 20);
  CHECK(apply_map(k20, 7, 19) == 19);
  CHECK(apply_map(k20, 7, 15) == 3);
  const DevelopmentRule k1x39_21({{0, 39, 1}, {39, 21, 7}}, 3, 60);
  CHECK(apply_map(k1x39_21, 2, 40) == 54);
  CHECK(apply_map(k1x39_21, 0, 40) == 40);
  const auto id = DevelopmentRule::identity(15);
  CHECK(id.orbits() == 1);
  CHECK(apply_map(id, 0, 14) == 14);
}

TEST_CASE("development rules reject bad tilings") {
  CHECK_THROWS_AS(DevelopmentRule({{0, 10, 1}}, 3, 11), InputError);
  CHECK_THROWS_AS(DevelopmentRule({{0, 6, 1}, {5, 6, 1}}, 3, 11), InputError);
  CHECK_THROWS_AS(DevelopmentRule({{0, 11, 1}}, 0, 11), InputError);
}

TEST_CASE("edges_of_block") {
  const PlacedBlock b{GraphId::n3, {17, 16, 13, 6, 11, 19}};
  const std::set<std::pair<Point, Point>> expected{{11, 13}, {11, 16}, {11, 17}, {6, 13}, {6, 16},
                                                   {6, 17},  {17, 19}, {13, 16}, {13, 17}, {16, 17}};
  CHECK(pairs_of(b) == expected);

  const PlacedBlock id{GraphId::n8, {0, 1, 2, 3, 4, 5}};
  std::set<std::pair<Point, Point>> table;
  for (const auto& e : get_graph(GraphId::n8).edges) table.insert(std::minmax(e.a - 1, e.b - 1));
  CHECK(pairs_of(id) == table);

  const PlacedBlock b13{GraphId::n13, {0, 1, 2, 4, 7, 12}};
  std::set<Point> nbrs;
  for (const auto& [a, c] : pairs_of(b13)) {
    if (a == 0) nbrs.insert(c);
  }
  CHECK(nbrs == std::set<Point>{1, 2, 4, 7, 12});

  CHECK_THROWS_AS(edges_of_block(PlacedBlock{GraphId::n3, {0, 1, 2, 3, 4, 4}}), InputError);
}

TEST_CASE("shape keys") {
  CHECK(ShapeKey::complete(21).to_string() == "K_21");
  const auto s = ShapeKey::multipartite({21, 1, 1, 1, 1, 1, 1, 1});
  CHECK(s.to_string() == "K_{1^7,21}");
  CHECK(s.point_count() == 28);
  CHECK(parse_shape_key("K_{1^7,21}") == s);
  CHECK(parse_shape_key("K_{10,10,10,15}") == ShapeKey::multipartite({15, 10, 10, 10}));
  CHECK(parse_shape_key("K_36") == ShapeKey::complete(36));
}

TEST_CASE("develop and verify K_21 for n3") {
  const auto base = corpus().lookup(ShapeKey::complete(21), GraphId::n3);
  REQUIRE(base);
  const auto blocks = develop(*base);
  CHECK(blocks.size() == 21);
  for (auto method : {CountingMethod::Triangular, CountingMethod::Hashed}) {
    const auto rep = verify_decomposition(*base, method);
    CHECK(rep.pass);
    CHECK(rep.pairs_covered_once == 210);
    CHECK(rep.summary() == "PASS 21 blocks 210 pairs");
  }

  auto broken = *base;
  auto& pts = broken.bases.front().points;
  auto it = std::find(pts.begin(), pts.end(), 13);
  REQUIRE(it != pts.end());
  *it = 14;
  const auto rep = verify_decomposition(broken);
  CHECK_FALSE(rep.pass);
  const bool has_zero = std::any_of(rep.defects.begin(), rep.defects.end(), [](const PairDefect& d) { return d.count == 0; });
  const bool has_two = std::any_of(rep.defects.begin(), rep.defects.end(), [](const PairDefect& d) { return d.count == 2; });
  CHECK(has_zero);
  CHECK(has_two);
}

TEST_CASE("develop counts") {
  const auto k36 = corpus().lookup(ShapeKey::complete(36), GraphId::n13);
  REQUIRE(k36);
  CHECK(k36->bases.size() == 7);
  CHECK(k36->rule.orbits() == 9);
  CHECK(develop(*k36).size() == 63);

  const auto k3x5 = corpus().lookup(ShapeKey::multipartite({3, 3, 3, 3, 3}), GraphId::n10);
  REQUIRE(k3x5);
  CHECK(k3x5->rule.orbits() == 1);
  CHECK(develop(*k3x5) == k3x5->bases);
}

TEST_CASE("K_{21,21,21,21,21} for n3 covers 4410 cross pairs") {
  const auto base = corpus().lookup(ShapeKey::multipartite({21, 21, 21, 21, 21}), GraphId::n3);
  REQUIRE(base);
  const auto rep = verify_decomposition(*base);
  CHECK(rep.pass);
  CHECK(rep.pairs_covered_once == 4410);
  CHECK(base->bases.size() * base->rule.orbits() * 10 == 4410);
}

TEST_CASE("multipartite targets") {
  const auto t = TargetGraph::multipartite(5, {{0, 1}, {2, 3, 4}});
  CHECK(t.edge_count() == 6);
  CHECK(t.is_edge(0, 2));
  CHECK_FALSE(t.is_edge(2, 4));
  CHECK(t.shape() == ShapeKey::multipartite({3, 2}));
  CHECK_THROWS_AS(TargetGraph::multipartite(5, {{0, 1}, {1, 2, 3, 4}}), InputError);
  CHECK_THROWS_AS(TargetGraph::multipartite(5, {{0, 1}, {2, 3}}), InputError);
  CHECK(TargetGraph::complete(7).edge_count() == 21);
}

TEST_CASE("a within-part edge fails verification") {
  const auto target = TargetGraph::multipartite(12, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}});
  const std::vector<PlacedBlock> blocks{{GraphId::n3, {0, 1, 2, 3, 4, 5}}};
  const auto rep = verify_blocks(target, blocks);
  CHECK_FALSE(rep.pass);
  CHECK(std::any_of(rep.defects.begin(), rep.defects.end(), [](const PairDefect& d) { return !d.is_target_edge; }));
}

TEST_CASE("verify_design checks a complete target") {
  Design d;
  d.graph = GraphId::n3;
  d.order = 21;
  d.blocks = develop(*corpus().lookup(ShapeKey::complete(21), GraphId::n3));
  CHECK(verify_design(d).pass);
  CHECK(verify_design(d, 4).pass);
  d.blocks.pop_back();
  CHECK_FALSE(verify_design(d).pass);
}
