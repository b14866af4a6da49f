#include "doctest.h"

#include "gdesign/errors.hpp"
#include "gdesign/nonexistence.hpp"

using namespace gdesign;

namespace {

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("n8 order 16: two equal label classes overflow the pair capacity") {
  const auto r = feasibility_check(GraphId::n8, 16);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.certificate);
  const auto& c = *r.certificate;
  CHECK(c.stage == Certificate::Stage::Capacity);
  CHECK(c.system.blocks == 12);
  CHECK(c.system.types.size() == 2);
  REQUIRE(c.violations.size() == 1);
  const auto& v = c.violations.front();
  CHECK(v.solution == std::vector<long long>{8, 8});
  CHECK(v.labels == 8);
  CHECK(v.required_pairs == 28);
  CHECK(v.edges_within == 2);
  CHECK(v.capacity == 24);
  CHECK(contains(c.render(), "C(8,2) = 28 pairs > capacity 12*2 = 24"));
}

TEST_CASE("n13 order 16: no edge joins two degree-5 labels") {
  const auto r = feasibility_check(GraphId::n13, 16);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.certificate);
  REQUIRE(r.certificate->violations.size() == 1);
  const auto& v = r.certificate->violations.front();
  CHECK(v.solution == std::vector<long long>{4, 12});
  CHECK(v.degree_class == std::vector<int>{5});
  CHECK(v.labels == 4);
  CHECK(v.capacity == 0);
  CHECK(v.required_pairs == 6);
}

TEST_CASE("n13 order 20: the only label type forces 40 != 19") {
  const auto r = feasibility_check(GraphId::n13, 20);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.certificate);
  const auto& c = *r.certificate;
  CHECK(c.stage == Certificate::Stage::Linear);
  REQUIRE(c.system.types.size() == 1);
  CHECK(c.system.types[0].to_string(c.system.degree_values) == "{5,5,3,3,3}");
  CHECK(c.system.blocks == 19);
  CHECK(contains(c.render(), "degree 5 incidences 2*20 = 40 != 19"));
}

TEST_CASE("order 16 is not refuted for n3, n6, n10") {
  for (GraphId g : {GraphId::n3, GraphId::n6, GraphId::n10}) {
    const auto r = feasibility_check(g, 16);
    CHECK(r.feasible);
    CHECK_FALSE(r.certificate);
    CHECK_FALSE(r.witness.empty());
  }
}

TEST_CASE("certificates are deterministic") {
  CHECK(feasibility_check(GraphId::n8, 16).render() == feasibility_check(GraphId::n8, 16).render());
}

TEST_CASE("witness solves the linear system") {
  for (GraphId g : target_graphs()) {
    for (long n : {21L, 36L, 41L}) {
      const auto r = feasibility_check(g, n);
      REQUIRE(r.feasible);
      const auto& s = r.system;
      REQUIRE(r.witness.size() == s.types.size());
      long long labels = 0;
      for (auto x : r.witness) labels += x;
      CHECK(labels == n);
      for (std::size_t d = 0; d < s.degree_values.size(); ++d) {
        long long inc = 0;
        for (std::size_t t = 0; t < s.types.size(); ++t) inc += r.witness[t] * s.types[t].counts[d];
        CHECK(inc == s.blocks * s.multiplicity[d]);
      }
    }
  }
}

TEST_CASE("degree types sum to n - 1") {
  const auto s = degree_type_system(GraphId::n3, 16);
  CHECK(s.types.size() == 27);
  for (const auto& t : s.types) {
    int sum = 0;
    for (std::size_t d = 0; d < s.degree_values.size(); ++d) sum += t.counts[d] * s.degree_values[d];
    CHECK(sum == 15);
  }
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS(feasibility_check(GraphId::n3, 17), InputError);
  CHECK_THROWS_AS(feasibility_check(GraphId::n9, 21), InputError);
}
