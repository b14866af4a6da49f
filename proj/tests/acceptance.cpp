// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "gdesign/corpus.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/nonexistence.hpp"
#include "gdesign/spectrum.hpp"

using namespace gdesign;
using Clock = std::chrono::steady_clock;

namespace {

std::filesystem::path g_data;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Check {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) note << what;
    ok = false;
  }
};

std::shared_ptr<SpectrumBuilder> builder() {
  static const auto b = [] {
    BuildOptions o;
    o.data_dir = g_data;
    return SpectrumBuilder::from_data_dir(o);
  }();
  return b;
}

long long pairs(long long n) { return n * (n - 1) / 2; }

bool counting_identity(const Gdd& g) {
  long long lhs = 0, total = 0, within = 0;
  for (const auto& b : g.blocks) lhs += pairs(static_cast<long long>(b.size()));
  for (const auto& grp : g.groups) {
    total += static_cast<long long>(grp.size());
    within += pairs(static_cast<long long>(grp.size()));
  }
  return lhs == pairs(total) - within;
}

Check criterion1() {
  Check c;
  const auto corpus = Corpus::load_directory(g_data, false);
  const int orders[] = {20, 21, 25, 36, 40, 41, 45, 56, 60, 61, 65, 76, 80, 85, 96, 105, 116, 136, 156};
  const auto t0 = Clock::now();
  int designs = 0;
  for (int n : orders) {
    int served = 0;
    for (const auto& e : corpus.entries()) {
      if (e.shape() != ShapeKey::complete(n)) continue;
      for (GraphId g : e.graph_indices) {
        const auto t1 = Clock::now();
        const auto rep = verify_decomposition(e.restrict_to(g));
        const double dt = seconds_since(t1);
        c.expect(rep.pass, e.source + " " + to_string(g) + " fails");
        c.expect(rep.block_count == static_cast<std::size_t>(n * (n - 1) / 20), "block count at K_" + std::to_string(n));
        c.expect(dt < 1.0, "K_" + std::to_string(n) + " took over 1 s");
        ++served;
        ++designs;
      }
    }
    c.expect(served > 0, "no stored design of order " + std::to_string(n));
  }
  const double total = seconds_since(t0);
  c.expect(total < 30.0, "total over 30 s");
  c.note << (c.ok ? "" : "; ") << designs << " designs in " << total << " s";
  return c;
}

Check criterion2() {
  Check c;
  const auto corpus = Corpus::load_directory(g_data, false);
  const auto t0 = Clock::now();
  int decomps = 0;
  bool saw_big = false, saw_mixed = false;
  for (const auto& e : corpus.entries()) {
    if (e.shape().kind != TargetKind::Multipartite) continue;
    for (GraphId g : e.graph_indices) {
      const auto base = e.restrict_to(g);
      const auto rep = verify_decomposition(base);
      c.expect(rep.pass, e.source + " " + to_string(g) + " fails");
      c.expect(rep.pairs_covered_once == base.target.edge_count(), "edge count at " + e.source);
      ++decomps;
      if (e.shape() == ShapeKey::multipartite({21, 21, 21, 21, 21})) {
        saw_big = true;
        c.expect(rep.pairs_covered_once == 4410, "K_{21,21,21,21,21} pair count");
      }
      if (e.shape() == ShapeKey::multipartite({36, 21, 21, 21, 21})) {
        saw_mixed = true;
        const long long expected = pairs(120) - 4 * pairs(21) - pairs(36);
        c.expect(static_cast<long long>(base.bases.size()) * base.rule.orbits() * 10 == expected,
                 "K_{21,21,21,21,36} counting identity");
      }
    }
  }
  c.expect(saw_big && saw_mixed, "large multipartite cases missing");
  const double total = seconds_since(t0);
  c.expect(total < 30.0, "total over 30 s");
  c.note << (c.ok ? "" : "; ") << decomps << " decompositions in " << total << " s";
  return c;
}

Check criterion3() {
  Check c;
  const auto a = feasibility_check(GraphId::n8, 16);
  c.expect(!a.feasible && a.certificate && a.certificate->violations.size() == 1, "(n8,16) not refuted by capacity");
  if (a.certificate && !a.certificate->violations.empty()) {
    const auto& v = a.certificate->violations.front();
    c.expect(v.solution == std::vector<long long>{8, 8}, "(n8,16) |A|,|B| != 8,8");
    c.expect(v.required_pairs == 28 && v.capacity == 24, "(n8,16) not 28 > 24");
  }
  const auto b = feasibility_check(GraphId::n13, 16);
  c.expect(!b.feasible && b.certificate && b.certificate->violations.size() == 1, "(n13,16) not refuted by capacity");
  if (b.certificate && !b.certificate->violations.empty()) {
    const auto& v = b.certificate->violations.front();
    c.expect(v.labels == 4 && v.capacity == 0, "(n13,16) not |A| = 4 with zero capacity");
  }
  const auto d = feasibility_check(GraphId::n13, 20);
  c.expect(!d.feasible && d.certificate && d.certificate->stage == Certificate::Stage::Linear, "(n13,20) not linear");
  if (d.certificate) {
    const auto& s = d.certificate->system;
    c.expect(s.types.size() == 1 && s.types[0].to_string(s.degree_values) == "{5,5,3,3,3}", "(n13,20) partition");
    c.expect(d.certificate->render().find("2*20 = 40 != 19") != std::string::npos, "(n13,20) not 40 != 19");
  }
  return c;
}

Check criterion4() {
  Check c;
  auto check = [&](const Gdd& g, std::set<int> sizes, const std::string& type, std::size_t blocks) {
    const auto rep = verify_gdd(g, sizes, parse_group_type(type));
    c.expect(rep.pass && counting_identity(g), g.name + ": " + rep.summary());
    if (blocks) c.expect(g.blocks.size() == blocks, g.name + " block count");
  };
  const std::pair<int, int> tds[] = {{3, 2}, {4, 3}, {4, 4}, {5, 4}, {5, 5}, {5, 7}, {5, 11}, {6, 5}, {7, 9}, {7, 11}};
  for (auto [k, q] : tds) check(transversal_gdd(k, q), {k}, std::to_string(q) + "^" + std::to_string(k), q * q);
  check(plane_to_gdd(affine_plane(4), PlaneDerivation::AffineDropClass, 4), {4}, "4^4", 16);
  check(plane_to_gdd(projective_plane(4), PlaneDerivation::ProjectiveDropPoint), {5}, "4^5", 16);
  check(plane_to_gdd(affine_plane(5), PlaneDerivation::AffineDropPoint), {5}, "4^6", 24);
  const auto td11 = transversal_gdd(7, 11);
  for (int keep : {7, 4, 3, 2}) check(truncate(td11, 6, keep), {6, 7}, "11^6 " + std::to_string(keep) + "^1", 0);
  const auto td9 = transversal_gdd(7, 9);
  for (int keep : {8, 4}) check(truncate(td9, 6, keep), {6, 7}, "9^6 " + std::to_string(keep) + "^1", 0);
  check(truncate(plane_to_gdd(affine_plane(4), PlaneDerivation::AffineDropClass, 4), 3, 3), {3, 4}, "4^3 3^1", 0);
  FindOptions fo;
  fo.data_dir = g_data;
  for (auto [type, blocks] : {std::pair{"2^7", 14}, std::pair{"2^13", 52}, std::pair{"4^7", 56}}) {
    const auto t0 = Clock::now();
    try {
      check(find_gdd(4, parse_group_type(type), fo), {4}, type, blocks);
    } catch (const Error& e) {
      c.expect(false, std::string(type) + ": " + e.what());
    }
    c.expect(seconds_since(t0) < 60.0, std::string(type) + " over 60 s");
  }
  return c;
}

Check criterion5() {
  Check c;
  const long orders[] = {160, 161, 181, 185, 196, 200, 201, 205, 216, 220, 221, 225, 236, 240, 241};
  int built = 0;
  double worst = 0;
  for (long n : orders) {
    const auto p = table2_parameters(n);
    c.expect(p && p->t == 1, "order " + std::to_string(n) + " has no t = 1 row");
    if (!p || p->t != 1) continue;
    for (GraphId g : target_graphs()) {
      const auto t0 = Clock::now();
      try {
        const auto d = proposition_3_1(*p, *builder(), g, g_data);
        c.expect(d.order == n && verify_design(d).pass, to_string(g) + " order " + std::to_string(n) + " fails");
        ++built;
      } catch (const Error& e) {
        c.expect(false, to_string(g) + " order " + std::to_string(n) + ": " + e.what());
      }
      const double dt = seconds_since(t0);
      worst = std::max(worst, dt);
      c.expect(dt < 10.0, "order " + std::to_string(n) + " over 10 s");
    }
  }
  c.note << (c.ok ? "" : "; ") << built << " designs, slowest " << worst << " s";
  return c;
}

Check criterion6() {
  Check c;
  const auto t0 = Clock::now();
  std::set<std::pair<long, int>> missing;
  int verified = 0;
  for (long n = 2; n <= 300; ++n) {
    if (!satisfies_congruences(GraphId::n3, n)) continue;
    for (GraphId g : target_graphs()) {
      try {
        const auto r = builder()->build(g, n);
        if (r.design && verify_design(*r.design).pass && r.design->order == n) {
          ++verified;
          continue;
        }
      } catch (const Error&) {
      }
      missing.insert({n, static_cast<int>(g)});
    }
  }
  std::set<std::pair<long, int>> expected;
  for (GraphId g : target_graphs()) {
    expected.insert({5, static_cast<int>(g)});
    expected.insert({16, static_cast<int>(g)});
  }
  expected.insert({20, static_cast<int>(GraphId::n13)});
  c.expect(missing == expected, "exception set differs from {5; 16; 20 for n13}");
  c.expect(spectrum_status(GraphId::n8, 16) == SpectrumStatus::Nonexistent &&
               spectrum_status(GraphId::n13, 16) == SpectrumStatus::Nonexistent &&
               spectrum_status(GraphId::n3, 16) == SpectrumStatus::Unknown &&
               spectrum_status(GraphId::n6, 16) == SpectrumStatus::Unknown &&
               spectrum_status(GraphId::n10, 16) == SpectrumStatus::Unknown &&
               spectrum_status(GraphId::n13, 20) == SpectrumStatus::Nonexistent,
           "order 16/20 statuses");
  const double total = seconds_since(t0);
  c.expect(total < 600.0, "sweep over 10 min");
  c.note << (c.ok ? "" : "; ") << verified << " verified designs in " << total << " s";
  return c;
}

std::vector<PointPair> edge_multiset(const std::vector<PlacedBlock>& blocks) {
  std::vector<PointPair> out;
  for (const auto& b : blocks) {
    for (const auto& e : edges_of_block(b)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Check criterion7() {
  Check c;
  const auto corpus = Corpus::load_directory(g_data, false);
  std::mt19937_64 rng(1);

  for (const auto& e : corpus.entries()) {
    const auto& rule = e.decomposition.rule;
    const int n = rule.point_count();
    for (int x = 0; x < n; ++x) c.expect(apply_map(rule, 0, x) == x, e.source + " j=0 not identity");
    for (int trial = 0; trial < 8; ++trial) {
      const int j = std::uniform_int_distribution<int>(0, rule.orbits() - 1)(rng);
      std::vector<char> hit(n, 0);
      for (int x = 0; x < n; ++x) hit[apply_map(rule, j, x)] = 1;
      c.expect(std::count(hit.begin(), hit.end(), 1) == n, e.source + " map not bijective");
    }
    for (GraphId g : e.graph_indices) {
      const auto base = e.restrict_to(g);
      c.expect(develop(base).size() == base.bases.size() * static_cast<std::size_t>(rule.orbits()),
               e.source + " develop count");
    }
  }

  int mutations = 0;
  for (int attempt = 0; mutations < 100 && attempt < 10000; ++attempt) {
    const auto& e = corpus.entries()[std::uniform_int_distribution<std::size_t>(0, corpus.entries().size() - 1)(rng)];
    const GraphId g = e.graph_indices[std::uniform_int_distribution<std::size_t>(0, e.graph_indices.size() - 1)(rng)];
    auto base = e.restrict_to(g);
    auto& block = base.bases[std::uniform_int_distribution<std::size_t>(0, base.bases.size() - 1)(rng)];
    const Point value = std::uniform_int_distribution<Point>(0, base.target.point_count() - 1)(rng);
    if (std::find(block.points.begin(), block.points.end(), value) != block.points.end()) continue;
    const auto before = edge_multiset(develop(e.restrict_to(g)));
    block.points[std::uniform_int_distribution<int>(0, kGraphVertices - 1)(rng)] = value;
    if (edge_multiset(develop(base)) == before) continue;
    ++mutations;
    c.expect(!verify_decomposition(base).pass, e.source + " mutation still passes");
  }
  c.expect(mutations == 100, "fewer than 100 effective mutations");

  std::set<std::string> gdds;
  int sound = 0;
  for (GraphId g : target_graphs()) {
    for (long n = 6; n <= 300; ++n) {
      if (spectrum_status(g, n) != SpectrumStatus::Exists) continue;
      const auto plan = builder()->plan(g, n);
      std::optional<Gdd> gdd;
      if (plan.kind == PlanKind::Recipe) gdd = builder()->gdd_for(*plan.gdd);
      if (plan.kind == PlanKind::Table2) {
        gdd = prop31_gdd(rgdd_for_prop31(plan.table2->t, g_data), plan.table2->x, plan.table2->y);
      }
      if (gdd && gdds.insert(gdd->name).second) c.expect(counting_identity(*gdd), gdd->name + " counting identity");
      const auto d = builder()->design(g, n);
      if (verify_design(*d).pass) {
        c.expect(feasibility_check(g, n).feasible, to_string(g) + " order " + std::to_string(n) + " refuted");
        ++sound;
      }
    }
  }
  c.note << (c.ok ? "" : "; ") << mutations << " mutations, " << gdds.size() << " GDDs, " << sound
         << " soundness checks";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  g_data = argc > 1 ? std::filesystem::path(argv[1]) : default_data_dir();
  const std::pair<const char*, std::function<Check()>> criteria[] = {
      {"stored complete designs verify", criterion1},
      {"stored multipartite decompositions verify", criterion2},
      {"nonexistence certificates", criterion3},
      {"GDD substrate", criterion4},
      {"inflation of the resolvable 4-GDD at t = 1", criterion5},
      {"spectrum sweep to 300", criterion6},
      {"property suites", criterion7},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.note << "exception: " << e.what();
    }
    std::cout << "criterion " << index++ << ": " << (c.ok ? "PASS" : "FAIL") << "  " << name;
    const auto note = c.note.str();
    if (!note.empty()) std::cout << " (" << note << ')';
    std::cout << std::endl;
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
