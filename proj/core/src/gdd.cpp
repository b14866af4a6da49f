#include "gdesign/gdd.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "gdesign/corpus.hpp"
#include "gdesign/errors.hpp"

namespace gdesign {

// ------------------------------------------------------------------ fields

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Monic irreducible moduli, coefficients low to high.
const std::map<int, std::vector<int>>& bundled_moduli() {
  static const std::map<int, std::vector<int>> m{
      {4, {1, 1, 1}},           // x^2 + x + 1
      {8, {1, 1, 0, 1}},        // x^3 + x + 1
      {9, {1, 0, 1}},           // x^2 + 1
      {16, {1, 1, 0, 0, 1}},    // x^4 + x + 1
      {25, {2, 1, 1}},          // x^2 + x + 2
      {27, {1, 2, 0, 1}},       // x^3 + 2x + 1
      {32, {1, 0, 1, 0, 0, 1}}, // x^5 + x^2 + 1
      {49, {1, 0, 1}},          // x^2 + 1
  };
  return m;
}

std::vector<int> digits(int a, int p, int k) {
  std::vector<int> d(k);
  for (int i = 0; i < k; ++i, a /= p) d[i] = a % p;
  return d;
}

int undigits(const std::vector<int>& d, int p) {
  int a = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
  return a;
}

}  // namespace

bool is_supported_field_order(int q) {
  return (is_prime(q) && q < 128) || bundled_moduli().count(q) > 0;
}

int FiniteField::inv(int a) const {
  if (a <= 0 || a >= q_) throw InputError("no inverse for " + std::to_string(a) + " in GF(" + std::to_string(q_) + ")");
  return inv_[a];
}

FiniteField make_field(int q) {
  if (!is_supported_field_order(q)) throw InputError("unsupported field order " + std::to_string(q));
  FiniteField f;
  f.q_ = q;
  if (is_prime(q)) {
    f.p_ = q;
    f.k_ = 1;
    f.modulus_ = {0, 1};
  } else {
    f.modulus_ = bundled_moduli().at(q);
    f.k_ = static_cast<int>(f.modulus_.size()) - 1;
    f.p_ = 2;
    while (q % f.p_ != 0) ++f.p_;
  }
  const int p = f.p_, k = f.k_;
  const auto n = static_cast<std::size_t>(q);
  f.add_.resize(n * n);
  f.mul_.resize(n * n);
  f.neg_.resize(n);
  f.inv_.assign(n, 0);
  for (int a = 0; a < q; ++a) {
    const auto da = digits(a, p, k);
    std::vector<int> na(k);
    for (int i = 0; i < k; ++i) na[i] = (p - da[i]) % p;
    f.neg_[a] = undigits(na, p);
    for (int b = 0; b < q; ++b) {
      const auto db = digits(b, p, k);
      std::vector<int> s(k);
      for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      f.add_[f.idx(a, b)] = undigits(s, p);

      std::vector<int> prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      }
      // reduce by the monic modulus from the top degree down
      for (int deg = 2 * k - 2; deg >= k; --deg) {
        const int c = prod[deg];
        if (c == 0) continue;
        for (int i = 0; i <= k; ++i) prod[deg - k + i] = ((prod[deg - k + i] - c * f.modulus_[i]) % p + p) % p;
      }
      prod.resize(k);
      f.mul_[f.idx(a, b)] = undigits(prod, p);
    }
  }
  for (int a = 1; a < q; ++a) {
    for (int b = 1; b < q; ++b) {
      if (f.mul_[f.idx(a, b)] == 1) {
        f.inv_[a] = b;
        break;
      }
    }
    if (f.inv_[a] == 0) throw InputError("bundled modulus for GF(" + std::to_string(q) + ") is reducible");
  }
  return f;
}

// ------------------------------------------------------------------ MOLS

std::vector<LatinSquare> mols(int q, int m) {
  if (m < 1 || m > q - 1) {
    throw InputError("cannot build " + std::to_string(m) + " MOLS of side " + std::to_string(q));
  }
  const FiniteField f = make_field(q);
  std::vector<LatinSquare> out;
  for (int a = 1; a <= m; ++a) {
    LatinSquare sq(q, std::vector<int>(q));
    for (int x = 0; x < q; ++x) {
      for (int y = 0; y < q; ++y) sq[x][y] = f.add(f.mul(a, x), y);
    }
    out.push_back(std::move(sq));
  }
  return out;
}

bool is_latin(const LatinSquare& sq) {
  const auto n = sq.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (sq[i].size() != n) return false;
    std::vector<char> row(n, 0), col(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      const int r = sq[i][j], c = sq[j][i];
      if (r < 0 || c < 0 || static_cast<std::size_t>(r) >= n || static_cast<std::size_t>(c) >= n) return false;
      if (row[r]++ || col[c]++) return false;
    }
  }
  return true;
}

bool are_orthogonal(const LatinSquare& a, const LatinSquare& b) {
  const auto n = a.size();
  if (b.size() != n) return false;
  std::vector<char> seen(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      auto& s = seen[static_cast<std::size_t>(a[x][y]) * n + b[x][y]];
      if (s) return false;
      s = 1;
    }
  }
  return true;
}

// ------------------------------------------------------------------ group types

GroupType normalize(GroupType type) {
  std::map<int, int, std::greater<>> merged;
  for (auto [size, count] : type) {
    if (size < 0 || count < 0) throw InputError("negative group size or count");
    if (size > 0 && count > 0) merged[size] += count;
  }
  return {merged.begin(), merged.end()};
}

GroupType parse_group_type(std::string_view text) {
  GroupType type;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    const auto caret = tok.find('^');
    try {
      std::size_t used = 0;
      const int size = std::stoi(tok.substr(0, caret), &used);
      if (used != (caret == std::string::npos ? tok.size() : caret)) throw std::invalid_argument(tok);
      int count = 1;
      if (caret != std::string::npos) {
        const auto rest = tok.substr(caret + 1);
        count = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(tok);
      }
      type.emplace_back(size, count);
    } catch (const std::logic_error&) {
      throw InputError("bad group type token '" + tok + "'");
    }
  }
  if (type.empty()) throw InputError("empty group type");
  return normalize(std::move(type));
}

std::string to_string(const GroupType& type) {
  std::string out;
  for (auto [size, count] : normalize(type)) {
    if (!out.empty()) out += ' ';
    out += std::to_string(size) + "^" + std::to_string(count);
  }
  return out;
}

GroupType Gdd::type() const {
  GroupType t;
  for (const auto& g : groups) t.emplace_back(static_cast<int>(g.size()), 1);
  return normalize(std::move(t));
}

std::set<int> Gdd::block_sizes() const {
  std::set<int> s;
  for (const auto& b : blocks) s.insert(static_cast<int>(b.size()));
  return s;
}

// ------------------------------------------------------------------ verification

std::string GddReport::summary() const {
  std::ostringstream os;
  os << (pass ? "PASS " : "FAIL ") << block_count << " blocks " << cross_pairs << " cross pairs";
  if (!pass && !problems.empty()) os << ": " << problems.front();
  return os.str();
}

GddReport verify_gdd(const Gdd& gdd, const std::set<int>& expected_block_sizes, const GroupType& expected_type) {
  GddReport r;
  r.block_count = gdd.blocks.size();
  const int v = gdd.point_count;
  auto problem = [&](std::string s) {
    if (r.problems.size() < 20) r.problems.push_back(std::move(s));
  };
  if (v < 0) {
    problem("negative point count");
    return r;
  }
  std::vector<int> group_of(v, -1);
  for (std::size_t g = 0; g < gdd.groups.size(); ++g) {
    if (gdd.groups[g].empty()) problem("group " + std::to_string(g) + " is empty");
    for (Point x : gdd.groups[g]) {
      if (x < 0 || x >= v) {
        problem("group point " + std::to_string(x) + " out of range");
        continue;
      }
      if (group_of[x] >= 0) problem("point " + std::to_string(x) + " in two groups");
      group_of[x] = static_cast<int>(g);
    }
  }
  for (int x = 0; x < v; ++x) {
    if (group_of[x] < 0) problem("point " + std::to_string(x) + " in no group");
  }
  if (!r.problems.empty()) return r;

  long long cross = 0;
  for (const auto& g : gdd.groups) cross += static_cast<long long>(g.size()) * (v - static_cast<long long>(g.size()));
  r.cross_pairs = cross / 2;

  std::vector<int> count(static_cast<std::size_t>(v) * v, 0);
  for (std::size_t bi = 0; bi < gdd.blocks.size(); ++bi) {
    const auto& b = gdd.blocks[bi];
    if (b.size() < 2) problem("block " + std::to_string(bi) + " has fewer than 2 points");
    if (!expected_block_sizes.empty() && !expected_block_sizes.count(static_cast<int>(b.size()))) {
      problem("block " + std::to_string(bi) + " has unexpected size " + std::to_string(b.size()));
    }
    bool in_range = true;
    for (Point x : b) {
      if (x < 0 || x >= v) {
        problem("block " + std::to_string(bi) + " point " + std::to_string(x) + " out of range");
        in_range = false;
      }
    }
    if (!in_range) continue;
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        const auto p = make_pair_sorted(b[i], b[j]);
        if (p.lo == p.hi) {
          problem("block " + std::to_string(bi) + " repeats point " + std::to_string(p.lo));
          continue;
        }
        ++count[static_cast<std::size_t>(p.lo) * v + p.hi];
      }
    }
  }
  for (Point a = 0; a < v; ++a) {
    for (Point b = a + 1; b < v; ++b) {
      const int c = count[static_cast<std::size_t>(a) * v + b];
      const bool same = group_of[a] == group_of[b];
      if (same && c != 0) {
        problem("within-group pair {" + std::to_string(a) + "," + std::to_string(b) + "} covered " +
                std::to_string(c) + " times");
      } else if (!same && c != 1) {
        problem("cross pair {" + std::to_string(a) + "," + std::to_string(b) + "} covered " + std::to_string(c) +
                " times");
      }
    }
  }
  if (!expected_type.empty() && normalize(expected_type) != gdd.type()) {
    problem("type " + to_string(gdd.type()) + " differs from expected " + to_string(expected_type));
  }
  if (gdd.resolution) {
    std::vector<int> used(gdd.blocks.size(), 0);
    for (std::size_t c = 0; c < gdd.resolution->size(); ++c) {
      std::vector<int> hit(v, 0);
      for (std::size_t bi : (*gdd.resolution)[c]) {
        if (bi >= gdd.blocks.size()) {
          problem("class " + std::to_string(c) + " names missing block " + std::to_string(bi));
          continue;
        }
        ++used[bi];
        for (Point x : gdd.blocks[bi]) {
          if (x >= 0 && x < v) ++hit[x];
        }
      }
      for (int x = 0; x < v; ++x) {
        if (hit[x] != 1) {
          problem("class " + std::to_string(c) + " covers point " + std::to_string(x) + " " +
                  std::to_string(hit[x]) + " times");
          break;
        }
      }
    }
    for (std::size_t bi = 0; bi < used.size(); ++bi) {
      if (used[bi] != 1) {
        problem("block " + std::to_string(bi) + " lies in " + std::to_string(used[bi]) + " classes");
        break;
      }
    }
  }
  r.pass = r.problems.empty();
  return r;
}

// ------------------------------------------------------------------ constructions

Gdd transversal_gdd(int k, int q) {
  if (k < 3) throw InputError("transversal GDD needs k >= 3");
  if (k - 2 > q - 1) {
    throw InputError("need " + std::to_string(k - 2) + " MOLS of side " + std::to_string(q) + ", have at most " +
                     std::to_string(q - 1));
  }
  const FiniteField f = make_field(q);
  Gdd g;
  g.name = "TD " + std::to_string(k) + "-GDD " + std::to_string(q) + "^" + std::to_string(k);
  g.point_count = k * q;
  for (int c = 0; c < k; ++c) {
    std::vector<Point> grp(q);
    std::iota(grp.begin(), grp.end(), c * q);
    g.groups.push_back(std::move(grp));
  }
  for (int x = 0; x < q; ++x) {
    for (int y = 0; y < q; ++y) {
      std::vector<Point> b{x, q + y};
      for (int a = 1; a <= k - 2; ++a) b.push_back((a + 1) * q + f.add(f.mul(a, x), y));
      g.blocks.push_back(std::move(b));
    }
  }
  return g;
}

Gdd trivial_gdd(int k) {
  if (k < 1) throw InputError("trivial GDD needs k >= 1");
  Gdd g;
  g.name = "1^" + std::to_string(k);
  g.point_count = k;
  std::vector<Point> b(k);
  std::iota(b.begin(), b.end(), 0);
  for (Point x : b) g.groups.push_back({x});
  if (k >= 2) g.blocks.push_back(std::move(b));
  return g;
}

Gdd single_group_gdd(int n) {
  if (n < 1) throw InputError("single-group GDD needs n >= 1");
  Gdd g;
  g.name = std::to_string(n) + "^1";
  g.point_count = n;
  g.groups.emplace_back(n);
  std::iota(g.groups[0].begin(), g.groups[0].end(), 0);
  return g;
}

Plane affine_plane(int q) {
  const FiniteField f = make_field(q);
  Plane pl;
  pl.order = q;
  pl.point_count = q * q;
  pl.affine = true;
  // point (x, y) is x*q + y; class m < q holds y = m x + c, class q holds x = c
  for (int m = 0; m <= q; ++m) {
    std::vector<std::size_t> cls;
    for (int c = 0; c < q; ++c) {
      std::vector<Point> line;
      for (int x = 0; x < q; ++x) {
        line.push_back(m < q ? x * q + f.add(f.mul(m, x), c) : c * q + x);
      }
      std::sort(line.begin(), line.end());
      cls.push_back(pl.lines.size());
      pl.lines.push_back(std::move(line));
    }
    pl.classes.push_back(std::move(cls));
  }
  return pl;
}

Plane projective_plane(int q) {
  const FiniteField f = make_field(q);
  std::vector<std::array<int, 3>> pts;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) pts.push_back({1, a, b});
  }
  for (int b = 0; b < q; ++b) pts.push_back({0, 1, b});
  pts.push_back({0, 0, 1});
  Plane pl;
  pl.order = q;
  pl.point_count = static_cast<int>(pts.size());
  for (const auto& l : pts) {
    std::vector<Point> line;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& p = pts[i];
      const int dot = f.add(f.add(f.mul(l[0], p[0]), f.mul(l[1], p[1])), f.mul(l[2], p[2]));
      if (dot == 0) line.push_back(static_cast<Point>(i));
    }
    pl.lines.push_back(std::move(line));
  }
  return pl;
}

namespace {

// Renumbers the kept points 0.. in increasing order.
Gdd compact(const std::string& name, int v, const std::vector<char>& keep, std::vector<std::vector<Point>> groups,
            std::vector<std::vector<Point>> blocks) {
  std::vector<Point> newid(v, -1);
  Point next = 0;
  for (int x = 0; x < v; ++x) {
    if (keep[x]) newid[x] = next++;
  }
  Gdd g;
  g.name = name;
  g.point_count = next;
  auto remap = [&](std::vector<Point>& s) {
    std::vector<Point> out;
    for (Point x : s) {
      if (keep[x]) out.push_back(newid[x]);
    }
    std::sort(out.begin(), out.end());
    s = std::move(out);
  };
  for (auto& grp : groups) {
    remap(grp);
    if (!grp.empty()) g.groups.push_back(std::move(grp));
  }
  for (auto& b : blocks) {
    remap(b);
    if (b.size() >= 2) g.blocks.push_back(std::move(b));
  }
  return g;
}

}  // namespace

Gdd plane_to_gdd(const Plane& plane, PlaneDerivation mode, int index) {
  const int q = plane.order;
  const int v = plane.point_count;
  switch (mode) {
    case PlaneDerivation::AffineDropClass: {
      if (!plane.affine) throw InputError("affine_drop_class needs an affine plane");
      if (index < 0 || index >= static_cast<int>(plane.classes.size())) throw InputError("class index out of range");
      Gdd g;
      g.name = std::to_string(q) + "-GDD " + std::to_string(q) + "^" + std::to_string(q) + " from AG(2," +
               std::to_string(q) + ")";
      g.point_count = v;
      for (std::size_t li : plane.classes[index]) g.groups.push_back(plane.lines[li]);
      std::vector<std::vector<std::size_t>> res;
      for (int c = 0; c < static_cast<int>(plane.classes.size()); ++c) {
        if (c == index) continue;
        std::vector<std::size_t> cls;
        for (std::size_t li : plane.classes[c]) {
          cls.push_back(g.blocks.size());
          g.blocks.push_back(plane.lines[li]);
        }
        res.push_back(std::move(cls));
      }
      g.resolution = std::move(res);
      return g;
    }
    case PlaneDerivation::ProjectiveDropPoint:
    case PlaneDerivation::AffineDropPoint: {
      const bool affine = mode == PlaneDerivation::AffineDropPoint;
      if (plane.affine != affine) throw InputError("plane kind does not match the derivation");
      if (index < 0 || index >= v) throw InputError("point index out of range");
      std::vector<std::vector<Point>> groups, blocks;
      for (const auto& line : plane.lines) {
        if (std::find(line.begin(), line.end(), index) != line.end()) {
          groups.push_back(line);
        } else {
          blocks.push_back(line);
        }
      }
      std::vector<char> keep(v, 1);
      keep[index] = 0;
      const int k = affine ? q : q + 1;
      const int gsize = affine ? q - 1 : q;
      const std::string name = std::to_string(k) + "-GDD " + std::to_string(gsize) + "^" + std::to_string(q + 1) +
                               (affine ? " from AG(2," : " from PG(2,") + std::to_string(q) + ")";
      return compact(name, v, keep, std::move(groups), std::move(blocks));
    }
  }
  throw InputError("unknown plane derivation");
}

Gdd truncate(const Gdd& gdd, std::size_t group, int keep) {
  if (group >= gdd.groups.size()) throw InputError("group index out of range");
  const auto& grp = gdd.groups[group];
  if (keep < 0 || keep > static_cast<int>(grp.size())) throw InputError("keep count out of range");
  if (gdd.block_sizes().size() > 1) throw InputError("truncation needs a uniform block size");
  std::vector<char> alive(gdd.point_count, 1);
  std::vector<Point> sorted = grp;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = keep; i < sorted.size(); ++i) alive[sorted[i]] = 0;
  auto out = compact(gdd.name + " truncated", gdd.point_count, alive, gdd.groups, gdd.blocks);
  out.name = gdd.name + " keep " + std::to_string(keep);
  return out;
}

// ------------------------------------------------------------------ file format

std::vector<Gdd> parse_gdd_file(std::string_view text, const std::string& source_name) {
  std::vector<Gdd> out;
  std::optional<Gdd> cur;
  std::vector<std::vector<std::size_t>> classes;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& what) { throw ParseError(source_name, line_no, what); };
  auto ints = [&](const std::vector<std::string>& w, long lo, long hi) {
    std::vector<long> vals;
    for (std::size_t i = 1; i < w.size(); ++i) {
      std::size_t used = 0;
      long x = 0;
      try {
        x = std::stol(w[i], &used);
      } catch (const std::logic_error&) {
        fail("expected an integer, got '" + w[i] + "'");
      }
      if (used != w[i].size()) fail("expected an integer, got '" + w[i] + "'");
      if (x < lo || x > hi) fail("value " + w[i] + " out of range");
      vals.push_back(x);
    }
    return vals;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> w;
    for (std::string t; ls >> t;) w.push_back(t);
    if (w.empty()) continue;
    if (w[0] == "gdd") {
      if (cur) fail("'gdd' inside an open record");
      if (w.size() != 2) fail("expected: gdd <name>");
      cur.emplace();
      cur->name = w[1];
      cur->point_count = -1;
      classes.clear();
      continue;
    }
    if (!cur) fail("'" + w[0] + "' outside a gdd record");
    if (w[0] == "points") {
      if (w.size() != 2 || cur->point_count >= 0) fail("expected a single: points <v>");
      cur->point_count = static_cast<int>(ints(w, 0, 1'000'000)[0]);
    } else if (w[0] == "group" || w[0] == "block") {
      if (cur->point_count < 0) fail("'" + w[0] + "' before 'points'");
      if (w.size() < 2) fail("empty " + w[0]);
      std::vector<Point> pts;
      for (long x : ints(w, 0, cur->point_count - 1)) pts.push_back(static_cast<Point>(x));
      (w[0] == "group" ? cur->groups : cur->blocks).push_back(std::move(pts));
    } else if (w[0] == "class") {
      if (w.size() < 2) fail("empty class");
      std::vector<std::size_t> cls;
      for (long x : ints(w, 0, 1'000'000'000)) cls.push_back(static_cast<std::size_t>(x));
      classes.push_back(std::move(cls));
    } else if (w[0] == "end") {
      if (w.size() != 1) fail("unexpected tokens after 'end'");
      if (cur->point_count < 0) fail("record has no points line");
      for (const auto& cls : classes) {
        for (std::size_t bi : cls) {
          if (bi >= cur->blocks.size()) fail("class names missing block " + std::to_string(bi));
        }
      }
      if (!classes.empty()) cur->resolution = classes;
      out.push_back(std::move(*cur));
      cur.reset();
    } else {
      fail("unknown keyword '" + w[0] + "'");
    }
  }
  if (cur) throw ParseError(source_name, line_no, "record '" + cur->name + "' is missing 'end'");
  return out;
}

std::string serialize(const Gdd& gdd) {
  std::ostringstream os;
  std::string name = gdd.name.empty() ? "unnamed" : gdd.name;
  std::replace_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c) || c == '#'; }, '_');
  os << "gdd " << name << "\npoints " << gdd.point_count << '\n';
  auto line = [&](const char* kw, const auto& items) {
    os << kw;
    for (auto x : items) os << ' ' << x;
    os << '\n';
  };
  for (const auto& g : gdd.groups) line("group", g);
  for (const auto& b : gdd.blocks) line("block", b);
  if (gdd.resolution) {
    for (const auto& c : *gdd.resolution) line("class", c);
  }
  os << "end\n";
  return os.str();
}

// ------------------------------------------------------------------ search

namespace {

using Clock = std::chrono::steady_clock;

class Budget {
 public:
  explicit Budget(std::chrono::milliseconds limit) : deadline_(Clock::now() + limit), limit_(limit) {}
  bool expired() {
    if (++ticks_ % 4096 != 0) return false;
    return Clock::now() > deadline_;
  }
  std::chrono::milliseconds limit() const { return limit_; }
  std::uint64_t nodes() const { return ticks_; }

 private:
  Clock::time_point deadline_;
  std::chrono::milliseconds limit_;
  std::uint64_t ticks_ = 0;
};

struct Timeout {};

void canonicalize(Gdd& g) {
  for (auto& b : g.blocks) std::sort(b.begin(), b.end());
  std::sort(g.blocks.begin(), g.blocks.end());
}

std::vector<std::vector<Point>> groups_for(const GroupType& type) {
  std::vector<std::vector<Point>> groups;
  Point next = 0;
  for (auto [size, count] : type) {
    for (int c = 0; c < count; ++c) {
      std::vector<Point> g(size);
      std::iota(g.begin(), g.end(), next);
      next += size;
      groups.push_back(std::move(g));
    }
  }
  return groups;
}

// Base blocks over Z_v whose differences hit every non-multiple of u once;
// groups are the residue classes mod u.
class CyclicSearch {
 public:
  CyclicSearch(int k, int g, int u, std::mt19937_64& rng, bool shuffle, Budget& budget)
      : k_(k), v_(g * u), u_(u), rng_(rng), shuffle_(shuffle), budget_(budget), used_(v_, 0) {
    for (int d = 0; d < v_; d += u_) used_[d] = 1;
  }

  std::optional<std::vector<std::vector<Point>>> run() {
    for (int d = 1; d < v_; ++d) {
      if (d % u_ != 0 && (2 * d) % v_ == 0) return std::nullopt;  // would need a short orbit
    }
    if (rec()) return bases_;
    return std::nullopt;
  }

 private:
  bool rec() {
    if (budget_.expired()) throw Timeout{};
    int d = 1;
    while (d < v_ && used_[d]) ++d;
    if (d == v_) return true;
    std::vector<Point> block{0, d};
    mark_pair(0, d, 1);
    std::vector<Point> cands;
    for (Point c = 1; c < v_; ++c) {
      if (c != d) cands.push_back(c);
    }
    if (shuffle_) std::shuffle(cands.begin(), cands.end(), rng_);
    const bool ok = extend(block, cands, 0);
    mark_pair(0, d, -1);
    return ok;
  }

  bool extend(std::vector<Point>& block, const std::vector<Point>& cands, std::size_t from) {
    if (static_cast<int>(block.size()) == k_) {
      bases_.push_back(block);
      if (rec()) return true;
      bases_.pop_back();
      return false;
    }
    for (std::size_t i = from; i < cands.size(); ++i) {
      const Point c = cands[i];
      if (!fits(block, c)) continue;
      for (Point x : block) mark_pair(x, c, 1);
      block.push_back(c);
      if (extend(block, cands, i + 1)) return true;
      block.pop_back();
      for (Point x : block) mark_pair(x, c, -1);
    }
    return false;
  }

  bool fits(const std::vector<Point>& block, Point c) {
    std::vector<int> seen;
    for (Point x : block) {
      const int d1 = ((c - x) % v_ + v_) % v_;
      const int d2 = v_ - d1;
      if (d1 == 0 || used_[d1] || used_[d2]) return false;
      for (int s : seen) {
        if (s == d1 || s == d2) return false;
      }
      seen.push_back(d1);
      seen.push_back(d2);
    }
    return true;
  }

  void mark_pair(Point a, Point b, int delta) {
    const int d1 = ((b - a) % v_ + v_) % v_;
    used_[d1] += delta;
    used_[v_ - d1] += delta;
  }
  int k_, v_, u_;
  std::mt19937_64& rng_;
  bool shuffle_;
  Budget& budget_;
  std::vector<int> used_;
  std::vector<std::vector<Point>> bases_;
};

// Exact cover of the cross pairs by k-sets, always extending the
// lexicographically smallest uncovered pair.
class BlockSearch {
 public:
  BlockSearch(int k, std::vector<std::vector<Point>> groups, std::mt19937_64& rng, bool shuffle, Budget& budget)
      : k_(k), rng_(rng), shuffle_(shuffle), budget_(budget) {
    for (const auto& g : groups) v_ += static_cast<int>(g.size());
    group_of_.assign(v_, 0);
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (Point x : groups[i]) group_of_[x] = static_cast<int>(i);
    }
    covered_.assign(static_cast<std::size_t>(v_) * v_, 0);
  }

  std::optional<std::vector<std::vector<Point>>> run() {
    if (rec(0)) return blocks_;
    return std::nullopt;
  }

 private:
  bool open(Point a, Point b) const {
    return group_of_[a] != group_of_[b] && !covered_[static_cast<std::size_t>(a) * v_ + b];
  }
  void set(Point a, Point b, char val) {
    covered_[static_cast<std::size_t>(a) * v_ + b] = val;
    covered_[static_cast<std::size_t>(b) * v_ + a] = val;
  }

  bool rec(Point start) {
    if (budget_.expired()) throw Timeout{};
    for (Point a = start; a < v_; ++a) {
      for (Point b = a + 1; b < v_; ++b) {
        if (!open(a, b)) continue;
        std::vector<Point> cands;
        for (Point c = b + 1; c < v_; ++c) {
          if (open(a, c) && open(b, c)) cands.push_back(c);
        }
        if (shuffle_) std::shuffle(cands.begin(), cands.end(), rng_);
        std::vector<Point> block{a, b};
        set(a, b, 1);
        const bool ok = extend(block, cands, 0, a);
        set(a, b, 0);
        return ok;
      }
    }
    return true;
  }

  bool extend(std::vector<Point>& block, const std::vector<Point>& cands, std::size_t from, Point a) {
    if (static_cast<int>(block.size()) == k_) {
      blocks_.push_back(block);
      if (rec(a)) return true;
      blocks_.pop_back();
      return false;
    }
    for (std::size_t i = from; i < cands.size(); ++i) {
      const Point c = cands[i];
      bool ok = true;
      for (Point x : block) ok = ok && open(x, c);
      if (!ok) continue;
      for (Point x : block) set(x, c, 1);
      block.push_back(c);
      if (extend(block, cands, i + 1, a)) return true;
      block.pop_back();
      for (Point x : block) set(x, c, 0);
    }
    return false;
  }

  int k_;
  int v_ = 0;
  std::mt19937_64& rng_;
  bool shuffle_;
  Budget& budget_;
  std::vector<int> group_of_;
  std::vector<char> covered_;
  std::vector<std::vector<Point>> blocks_;
};

std::filesystem::path gdd_dir(const std::optional<std::filesystem::path>& data_dir) {
  return (data_dir ? *data_dir : default_data_dir()) / "gdd";
}

}  // namespace

Gdd find_gdd(int k, const GroupType& raw_type, const FindOptions& options) {
  const GroupType type = normalize(raw_type);
  if (k < 2 || type.empty()) throw InputError("find_gdd needs k >= 2 and a nonempty type");
  const std::set<int> sizes{k};
  const std::string label = std::to_string(k) + "-GDD of type " + to_string(type);

  if (options.use_bundled) {
    const auto dir = gdd_dir(options.data_dir);
    if (std::filesystem::is_directory(dir)) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".gdd") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        for (auto& g : parse_gdd_file(read_text_file(f), f.filename().string())) {
          if (g.block_sizes() != sizes || g.type() != type) continue;
          const auto rep = verify_gdd(g, sizes, type);
          if (!rep.pass) throw VerificationFailure(f.filename().string() + ": " + rep.summary());
          return g;
        }
      }
    }
  }

  std::mt19937_64 rng(options.seed);
  Budget budget(options.timeout);
  try {
    if (options.use_cyclic && type.size() == 1) {
      const auto [g, u] = type.front();
      const int v = g * u;
      if ((v - g) % (k * (k - 1)) == 0) {
        CyclicSearch search(k, g, u, rng, options.seed != 0, budget);
        if (auto bases = search.run()) {
          Gdd out;
          out.name = label + " (cyclic)";
          out.point_count = v;
          for (int r = 0; r < u; ++r) {
            std::vector<Point> grp;
            for (int x = r; x < v; x += u) grp.push_back(x);
            out.groups.push_back(std::move(grp));
          }
          for (const auto& base : *bases) {
            for (int t = 0; t < v; ++t) {
              std::vector<Point> b;
              for (Point x : base) b.push_back((x + t) % v);
              out.blocks.push_back(std::move(b));
            }
          }
          canonicalize(out);
          if (verify_gdd(out, sizes, type).pass) return out;
          throw VerificationFailure("cyclic search produced an invalid " + label);
        }
      }
    }
    if (options.use_backtracking) {
      auto groups = groups_for(type);
      BlockSearch search(k, groups, rng, options.seed != 0, budget);
      if (auto blocks = search.run()) {
        Gdd out;
        out.name = label + " (search)";
        out.groups = std::move(groups);
        for (const auto& g : out.groups) out.point_count += static_cast<int>(g.size());
        out.blocks = std::move(*blocks);
        canonicalize(out);
        const auto rep = verify_gdd(out, sizes, type);
        if (!rep.pass) throw VerificationFailure("search produced an invalid " + label + ": " + rep.summary());
        return out;
      }
    }
  } catch (const Timeout&) {
    throw SearchTimeout("no " + label + " found within " + std::to_string(budget.limit().count()) + " ms (" +
                        std::to_string(budget.nodes()) + " nodes)");
  }
  throw UnsupportedOrder("no " + label + " exists in bundled data or the enabled searches");
}

Gdd rgdd_for_prop31(int t, const std::optional<std::filesystem::path>& data_dir) {
  if (t < 1) throw InputError("t must be positive");
  const int v = 12 * t + 4;
  const GroupType type{{4, 3 * t + 1}};
  Gdd out;
  if (t == 1) {
    out = plane_to_gdd(affine_plane(4), PlaneDerivation::AffineDropClass, 4);
    out.name = "4-RGDD 4^4 from AG(2,4)";
  } else {
    const auto path = gdd_dir(data_dir) / ("rbibd_" + std::to_string(v) + ".gdd");
    if (!std::filesystem::exists(path)) {
      throw UnsupportedOrder("a resolvable 4-GDD of type 4^" + std::to_string(3 * t + 1) + " needs " +
                             path.filename().string());
    }
    const auto designs = parse_gdd_file(read_text_file(path), path.filename().string());
    if (designs.size() != 1 || !designs[0].resolution || designs[0].point_count != v) {
      throw InputError(path.filename().string() + " is not a single resolved design on " + std::to_string(v) +
                       " points");
    }
    const Gdd& d = designs[0];
    const auto rep = verify_gdd(d, {4}, {{1, v}});
    if (!rep.pass) throw VerificationFailure(path.filename().string() + ": " + rep.summary());
    // the first class becomes the groups, renumbered to runs of four
    const auto& first = d.resolution->front();
    std::vector<Point> newid(v, -1);
    Point next = 0;
    for (std::size_t bi : first) {
      auto grp = d.blocks[bi];
      std::sort(grp.begin(), grp.end());
      std::vector<Point> mapped;
      for (Point x : grp) {
        newid[x] = next;
        mapped.push_back(next++);
      }
      out.groups.push_back(std::move(mapped));
    }
    out.name = "4-RGDD 4^" + std::to_string(3 * t + 1) + " from " + path.filename().string();
    out.point_count = v;
    std::vector<std::vector<std::size_t>> res;
    for (std::size_t c = 1; c < d.resolution->size(); ++c) {
      std::vector<std::size_t> cls;
      for (std::size_t bi : (*d.resolution)[c]) {
        std::vector<Point> b;
        for (Point x : d.blocks[bi]) b.push_back(newid[x]);
        std::sort(b.begin(), b.end());
        cls.push_back(out.blocks.size());
        out.blocks.push_back(std::move(b));
      }
      res.push_back(std::move(cls));
    }
    out.resolution = std::move(res);
  }
  const auto rep = verify_gdd(out, {4}, type);
  if (!rep.pass || out.resolution->size() != static_cast<std::size_t>(4 * t)) {
    throw VerificationFailure(out.name + ": " + rep.summary());
  }
  return out;
}

}  // namespace gdesign
