#include "gdesign/nonexistence.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "gdesign/errors.hpp"

namespace gdesign {

bool DegreeType::is_pure() const {
  return std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }) == 1;
}

std::string DegreeType::to_string(const std::vector<int>& degree_values) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (int c = 0; c < counts[i]; ++c) {
      if (!first) out += ',';
      out += std::to_string(degree_values[i]);
      first = false;
    }
  }
  return out + "}";
}

DegreeTypeSystem degree_type_system(GraphId graph, long n) {
  if (!is_admissible(graph, n)) {
    throw InputError("order " + std::to_string(n) + " is not admissible for " + to_string(graph));
  }
  const auto& g = get_graph(graph);
  DegreeTypeSystem sys;
  sys.graph = graph;
  sys.n = n;
  sys.blocks = static_cast<long long>(n) * (n - 1) / (2 * kGraphEdges);
  for (int d : g.degrees) {
    if (d == 0) throw InputError(to_string(graph) + " has an isolated vertex; the degree system is unbounded");
    auto it = std::find(sys.degree_values.begin(), sys.degree_values.end(), d);
    if (it == sys.degree_values.end()) {
      sys.degree_values.push_back(d);
      sys.multiplicity.push_back(1);
    } else {
      ++sys.multiplicity[it - sys.degree_values.begin()];
    }
  }
  // sort descending by degree value, carrying multiplicities along
  std::vector<std::size_t> order(sys.degree_values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return sys.degree_values[a] > sys.degree_values[b]; });
  std::vector<int> dv, mu;
  for (auto i : order) {
    dv.push_back(sys.degree_values[i]);
    mu.push_back(sys.multiplicity[i]);
  }
  sys.degree_values = dv;
  sys.multiplicity = mu;

  // all count vectors with sum(count_i * d_i) = n - 1, lexicographically descending
  const int k = static_cast<int>(dv.size());
  std::vector<int> cur(k, 0);
  std::function<void(int, long)> rec = [&](int i, long left) {
    if (i == k) {
      if (left == 0) sys.types.push_back(DegreeType{cur});
      return;
    }
    for (long c = left / dv[i]; c >= 0; --c) {
      cur[i] = static_cast<int>(c);
      rec(i + 1, left - c * dv[i]);
    }
    cur[i] = 0;
  };
  if (n >= 1) rec(0, n - 1);
  return sys;
}

namespace {

// Searches for mixed-type counts with `labels` labels and `need[d]` incidences
// of each degree. Labels are chosen as a multiset (non-decreasing type index)
// with types ordered by distance from the average label, so feasible systems
// resolve after a few nodes. `exhausted` is false when the node budget ran out.
class Completion {
 public:
  Completion(const DegreeTypeSystem& sys, const std::vector<std::size_t>& mixed, std::uint64_t budget)
      : sys_(sys), mixed_(mixed), budget_(budget) {}

  std::optional<std::vector<long long>> find(long long labels, std::vector<long long> need, bool& exhausted) {
    const std::size_t k = need.size();
    order_ = mixed_;
    if (labels > 0) {
      auto dist = [&](std::size_t t) {
        long long s = 0;
        for (std::size_t d = 0; d < k; ++d) s += std::llabs(sys_.types[t].counts[d] * labels - need[d]);
        return s;
      };
      std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return dist(a) < dist(b); });
    }
    lo_.assign(order_.size() + 1, std::vector<int>(k, 1 << 30));
    hi_.assign(order_.size() + 1, std::vector<int>(k, -1));
    for (std::size_t j = order_.size(); j-- > 0;) {
      for (std::size_t d = 0; d < k; ++d) {
        const int c = sys_.types[order_[j]].counts[d];
        lo_[j][d] = std::min(lo_[j + 1][d], c);
        hi_[j][d] = std::max(hi_[j + 1][d], c);
      }
    }
    x_.assign(order_.size(), 0);
    nodes_ = 0;
    blown_ = false;
    const bool ok = rec(0, labels, need);
    exhausted = !blown_;
    if (!ok) return std::nullopt;
    std::vector<long long> out(sys_.types.size(), 0);
    for (std::size_t j = 0; j < order_.size(); ++j) out[order_[j]] = x_[j];
    return out;
  }

 private:
  bool rec(std::size_t from, long long labels, std::vector<long long>& need) {
    const std::size_t k = need.size();
    if (labels == 0) {
      return std::all_of(need.begin(), need.end(), [](long long r) { return r == 0; });
    }
    if (from == order_.size()) return false;
    for (std::size_t d = 0; d < k; ++d) {
      if (need[d] < labels * lo_[from][d] || need[d] > labels * hi_[from][d]) return false;
    }
    if (++nodes_ > budget_) {
      blown_ = true;
      return false;
    }
    for (std::size_t j = from; j < order_.size() && !blown_; ++j) {
      const auto& c = sys_.types[order_[j]].counts;
      bool fits = true;
      for (std::size_t d = 0; d < k; ++d) fits = fits && c[d] <= need[d];
      if (!fits) continue;
      for (std::size_t d = 0; d < k; ++d) need[d] -= c[d];
      ++x_[j];
      const bool ok = rec(j, labels - 1, need);
      for (std::size_t d = 0; d < k; ++d) need[d] += c[d];
      if (ok) return true;
      --x_[j];
    }
    return false;
  }

  const DegreeTypeSystem& sys_;
  std::vector<std::size_t> mixed_;
  std::vector<std::size_t> order_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool blown_ = false;
  std::vector<std::vector<int>> lo_, hi_;
  std::vector<long long> x_;
};

long long choose2(long long m) { return m * (m - 1) / 2; }

constexpr std::uint64_t kCompletionBudget = 200'000;

}  // namespace

FeasibilityResult feasibility_check(GraphId graph, long n) {
  FeasibilityResult result;
  result.system = degree_type_system(graph, n);
  const auto& sys = result.system;
  const std::size_t k = sys.degree_values.size();
  const auto& g = get_graph(graph);

  std::vector<std::size_t> pure_idx(k, sys.types.size());  // type index of the pure type per degree
  std::vector<std::size_t> mixed;
  for (std::size_t t = 0; t < sys.types.size(); ++t) {
    if (sys.types[t].is_pure()) {
      for (std::size_t d = 0; d < k; ++d) {
        if (sys.types[t].counts[d] > 0) pure_idx[d] = t;
      }
    } else {
      mixed.push_back(t);
    }
  }

  // degree classes with a pure type, smallest first, higher degrees first within a size
  std::vector<std::size_t> with_pure;
  for (std::size_t d = 0; d < k; ++d) {
    if (pure_idx[d] < sys.types.size()) with_pure.push_back(d);
  }
  std::vector<std::vector<std::size_t>> classes;
  for (unsigned mask = 1; mask < (1u << with_pure.size()); ++mask) {
    std::vector<std::size_t> u;
    for (std::size_t i = 0; i < with_pure.size(); ++i) {
      if (mask & (1u << i)) u.push_back(with_pure[i]);
    }
    classes.push_back(std::move(u));
  }
  std::stable_sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  auto edges_within = [&](const std::vector<std::size_t>& u) {
    int e = 0;
    for (const auto& edge : g.edges) {
      const int da = g.degrees[edge.a - 1], db = g.degrees[edge.b - 1];
      const bool ina = std::any_of(u.begin(), u.end(), [&](auto d) { return sys.degree_values[d] == da; });
      const bool inb = std::any_of(u.begin(), u.end(), [&](auto d) { return sys.degree_values[d] == db; });
      if (ina && inb) ++e;
    }
    return e;
  };

  std::vector<long long> target(k);
  for (std::size_t d = 0; d < k; ++d) target[d] = sys.blocks * sys.multiplicity[d];

  Completion completion(sys, mixed, kCompletionBudget);
  std::vector<CapacityViolation> violations;
  std::vector<long long> pure(k, 0);
  bool found_feasible = false;

  std::function<void(std::size_t, long long, std::vector<long long>&)> over_pure =
      [&](std::size_t i, long long labels, std::vector<long long>& need) {
        if (found_feasible) return;
        if (i == with_pure.size()) {
          bool exhausted = true;
          auto rest = completion.find(labels, need, exhausted);
          if (!rest && exhausted) return;  // not a solution
          std::vector<long long> solution;
          if (rest) {
            solution = *rest;
            for (std::size_t d : with_pure) solution[pure_idx[d]] = pure[d];
          }
          for (const auto& u : classes) {
            long long m = 0;
            for (auto d : u) m += pure[d];
            const int e = edges_within(u);
            if (choose2(m) > sys.blocks * e) {
              CapacityViolation v;
              v.solution = std::move(solution);
              v.pure_counts.assign(sys.types.size(), 0);
              for (std::size_t d : with_pure) v.pure_counts[pure_idx[d]] = pure[d];
              for (auto d : u) v.degree_class.push_back(sys.degree_values[d]);
              v.labels = m;
              v.required_pairs = choose2(m);
              v.edges_within = e;
              v.capacity = sys.blocks * e;
              violations.push_back(std::move(v));
              return;
            }
          }
          found_feasible = true;
          result.witness = std::move(solution);
          result.undecided = !rest;
          return;
        }
        const std::size_t d = with_pure[i];
        const int c = sys.types[pure_idx[d]].counts[d];
        const long long most = std::min(labels, need[d] / c);
        for (long long x = 0; x <= most && !found_feasible; ++x) {
          pure[d] = x;
          need[d] -= x * c;
          over_pure(i + 1, labels - x, need);
          need[d] += x * c;
        }
        pure[d] = 0;
      };
  over_pure(0, n, target);

  if (found_feasible) {
    result.feasible = true;
    return result;
  }
  Certificate cert;
  cert.system = sys;
  cert.stage = violations.empty() ? Certificate::Stage::Linear : Certificate::Stage::Capacity;
  cert.violations = std::move(violations);
  result.certificate = std::move(cert);
  return result;
}

namespace {

void render_system(std::ostringstream& os, const DegreeTypeSystem& sys) {
  os << "graph " << to_string(sys.graph) << ", order " << sys.n << '\n';
  os << "blocks b = " << sys.n << "*" << sys.n - 1 << "/20 = " << sys.blocks << '\n';
  os << "vertex degrees:";
  for (std::size_t d = 0; d < sys.degree_values.size(); ++d) {
    os << ' ' << sys.degree_values[d] << " x" << sys.multiplicity[d];
  }
  os << '\n';
  os << "label types (degree multisets summing to " << sys.n - 1 << "): " << sys.types.size() << '\n';
  for (std::size_t t = 0; t < sys.types.size(); ++t) {
    os << "  t" << t + 1 << " = " << sys.types[t].to_string(sys.degree_values) << '\n';
  }
  os << "labels:";
  for (std::size_t t = 0; t < sys.types.size(); ++t) os << (t ? " + t" : " t") << t + 1;
  if (sys.types.empty()) os << " 0";
  os << " = " << sys.n << '\n';
  for (std::size_t d = 0; d < sys.degree_values.size(); ++d) {
    os << "degree " << sys.degree_values[d] << " incidences:";
    bool any = false;
    for (std::size_t t = 0; t < sys.types.size(); ++t) {
      const int c = sys.types[t].counts[d];
      if (c == 0) continue;
      os << (any ? " + " : " ") << c << "*t" << t + 1;
      any = true;
    }
    if (!any) os << " 0";
    os << " = " << sys.blocks << "*" << sys.multiplicity[d] << " = " << sys.blocks * sys.multiplicity[d] << '\n';
  }
}

void render_solution(std::ostringstream& os, const std::vector<long long>& solution) {
  os << "solution";
  bool any = false;
  for (std::size_t t = 0; t < solution.size(); ++t) {
    if (solution[t] == 0) continue;
    os << (any ? ", t" : " t") << t + 1 << " = " << solution[t];
    any = true;
  }
  if (!any) os << " all zero";
  os << '\n';
}

}  // namespace

std::string Certificate::render() const {
  std::ostringstream os;
  render_system(os, system);
  if (stage == Stage::Linear) {
    if (system.types.size() == 1) {
      // the label equation forces the single type; show the first broken incidence count
      const auto& c = system.types[0].counts;
      for (std::size_t d = 0; d < c.size(); ++d) {
        const long long lhs = static_cast<long long>(c[d]) * system.n;
        const long long rhs = system.blocks * system.multiplicity[d];
        if (lhs != rhs) {
          os << "forced t1 = " << system.n << ": degree " << system.degree_values[d] << " incidences " << c[d] << "*"
             << system.n << " = " << lhs << " != " << rhs << '\n';
          break;
        }
      }
    }
    os << "no non-negative integer solution\n";
  } else {
    for (const auto& v : violations) {
      if (v.solution.empty()) {
        os << "pure";
        render_solution(os, v.pure_counts);
      } else {
        render_solution(os, v.solution);
      }
      os << "pure labels of degree {";
      for (std::size_t i = 0; i < v.degree_class.size(); ++i) os << (i ? "," : "") << v.degree_class[i];
      os << "}: " << v.labels << " labels need C(" << v.labels << ",2) = " << v.required_pairs
         << " pairs > capacity " << system.blocks << "*" << v.edges_within << " = " << v.capacity << '\n';
    }
  }
  os << "Infeasible\n";
  return os.str();
}

std::string FeasibilityResult::render() const {
  if (certificate) return certificate->render();
  std::ostringstream os;
  render_system(os, system);
  if (undecided) {
    os << "no refutation found; completion search budget exhausted\n";
  } else {
    render_solution(os, witness);
  }
  os << "Feasible\n";
  return os.str();
}

}  // namespace gdesign
