#include "cuspidal/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <mutex>
#include <set>
#include <tuple>

#include "cuspidal/error.hpp"

namespace cuspidal {

// ---------------------------------------------------------------------------
// Cartan types

std::string CartanType::str() const
{
  return (short_roots ? "~" : "") + std::string(1, series) + std::to_string(rank);
}

void check_cartan_type(CartanType const &t)
{
  bool ok = false;
  switch (t.series) {
  case 'A': ok = t.rank >= 1; break;
  case 'B':
  case 'C': ok = t.rank >= 2; break;
  case 'D': ok = t.rank >= 2; break;
  case 'E': ok = t.rank >= 6 && t.rank <= 8; break;
  case 'F': ok = t.rank == 4; break;
  case 'G': ok = t.rank == 2; break;
  default: break;
  }
  if (ok && t.rank > 40)
    ok = false;
  if (!ok)
    throw Error("invalid-type", "no Cartan type " + std::string(1, t.series) + std::to_string(t.rank));
}

TypeDecomposition normalize_type(CartanType const &t)
{
  if (t.rank <= 0)
    return {};
  bool sh = t.short_roots;
  switch (t.series) {
  case 'B':
    if (t.rank == 1)
      return {CartanType{'A', 1, true}};
    break;
  case 'C':
    if (t.rank == 1)
      return {CartanType{'A', 1, sh}};
    if (t.rank == 2)
      return {CartanType{'B', 2, false}};
    break;
  case 'D':
    if (t.rank == 1)
      return {};
    if (t.rank == 2)
      return {CartanType{'A', 1, sh}, CartanType{'A', 1, sh}};
    if (t.rank == 3)
      return {CartanType{'A', 3, sh}};
    break;
  default: break;
  }
  CartanType r = t;
  if (r.series != 'A' && r.series != 'D' && r.series != 'E')
    r.short_roots = false;
  return {r};
}

TypeDecomposition canonical(TypeDecomposition t)
{
  auto key = [](CartanType const &c) {
    return std::make_tuple(c.series == 'A', c.series, -c.rank, c.short_roots);
  };
  std::sort(t.begin(), t.end(), [&](CartanType const &a, CartanType const &b) { return key(a) < key(b); });
  return t;
}

std::string type_string(TypeDecomposition const &t0)
{
  TypeDecomposition t = canonical(t0);
  if (t.empty())
    return "T";
  std::string out;
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i])
      ++j;
    if (!out.empty())
      out += "x";
    out += t[i].str();
    if (j - i > 1)
      out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

namespace {

std::vector<std::string> split_factors(std::string const &s)
{
  std::string norm;
  for (std::size_t i = 0; i < s.size(); ++i) {
    // U+00D7 multiplication sign
    if (static_cast<unsigned char>(s[i]) == 0xC3 && i + 1 < s.size() &&
        static_cast<unsigned char>(s[i + 1]) == 0x97) {
      norm += 'x';
      ++i;
    } else if (s[i] == '*') {
      norm += 'x';
    } else if (s[i] != ' ') {
      norm += s[i];
    }
  }
  std::vector<std::string> parts;
  std::string cur;
  for (char c : norm) {
    if (c == 'x') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

} // namespace

CartanType parse_cartan_type(std::string const &s)
{
  auto t = parse_types(s);
  if (t.size() != 1)
    throw Error("parse", "expected a single irreducible type, got '" + s + "'");
  return t[0];
}

TypeDecomposition parse_types(std::string const &s)
{
  if (s.empty() || s == "T")
    return {};
  TypeDecomposition out;
  for (auto const &part : split_factors(s)) {
    std::size_t i = 0;
    bool sh = false;
    if (i < part.size() && part[i] == '~') {
      sh = true;
      ++i;
    }
    if (i >= part.size() || part[i] < 'A' || part[i] > 'G')
      throw Error("parse", "bad type factor '" + part + "' in '" + s + "'");
    char series = part[i++];
    std::size_t j = i;
    while (j < part.size() && std::isdigit(static_cast<unsigned char>(part[j])))
      ++j;
    if (j == i)
      throw Error("parse", "missing rank in '" + part + "'");
    int rank = std::stoi(part.substr(i, j - i));
    int mult = 1;
    if (j < part.size()) {
      if (part[j] != '^' || j + 1 >= part.size())
        throw Error("parse", "bad exponent in '" + part + "'");
      std::string e = part.substr(j + 1);
      if (!std::all_of(e.begin(), e.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error("parse", "bad exponent in '" + part + "'");
      mult = std::stoi(e);
    }
    CartanType t{series, rank, sh};
    if (rank > 0 && !(series == 'B' && rank == 1) && !(series == 'C' && rank == 1) &&
        !(series == 'D' && rank == 1))
      check_cartan_type(t);
    for (int m = 0; m < mult; ++m)
      for (auto const &c : normalize_type(t))
        out.push_back(c);
  }
  return canonical(out);
}

std::uint64_t weyl_order_formula(CartanType const &t)
{
  check_cartan_type(t);
  auto fact = [](int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i)
      if (__builtin_mul_overflow(r, static_cast<std::uint64_t>(i), &r))
        throw Error("overflow", "Weyl group order");
    return r;
  };
  int n = t.rank;
  switch (t.series) {
  case 'A': return fact(n + 1);
  case 'B':
  case 'C': return fact(n) << n;
  case 'D': return n == 2 ? 4 : fact(n) << (n - 1);
  case 'E': return n == 6 ? 51840 : n == 7 ? 2903040 : 696729600;
  case 'F': return 1152;
  default: return 12;
  }
}

std::size_t root_count_formula(CartanType const &t)
{
  check_cartan_type(t);
  std::size_t n = static_cast<std::size_t>(t.rank);
  switch (t.series) {
  case 'A': return n * (n + 1);
  case 'B':
  case 'C': return 2 * n * n;
  case 'D': return 2 * n * (n - 1);
  case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
  case 'F': return 48;
  default: return 12;
  }
}

// ---------------------------------------------------------------------------
// Root systems

namespace {

// Symmetric integer form on the simple roots, Bourbaki numbering.
IntMatrix gram_of(CartanType const &t)
{
  std::size_t n = static_cast<std::size_t>(t.rank);
  IntMatrix g(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    g[i][i] = 2;
  auto bond = [&](std::size_t a, std::size_t b, std::int64_t v) { g[a][b] = g[b][a] = v; };
  switch (t.series) {
  case 'A':
    for (std::size_t i = 0; i + 1 < n; ++i)
      bond(i, i + 1, -1);
    break;
  case 'B':
    for (std::size_t i = 0; i + 1 < n; ++i)
      bond(i, i + 1, -1);
    g[n - 1][n - 1] = 1;
    break;
  case 'C':
    for (std::size_t i = 0; i + 2 < n; ++i)
      bond(i, i + 1, -1);
    bond(n - 2, n - 1, -2);
    g[n - 1][n - 1] = 4;
    break;
  case 'D':
    for (std::size_t i = 0; i + 2 < n; ++i)
      bond(i, i + 1, -1);
    bond(n - 3, n - 1, -1);
    break;
  case 'E':
    bond(0, 2, -1);
    bond(1, 3, -1);
    for (std::size_t i = 2; i + 1 < n; ++i)
      bond(i, i + 1, -1);
    break;
  case 'F':
    g[0][0] = g[1][1] = 4;
    bond(0, 1, -2);
    bond(1, 2, -2);
    bond(2, 3, -1);
    break;
  case 'G':
    g[1][1] = 6;
    bond(0, 1, -3);
    break;
  default: throw Error("invalid-type", "unknown series");
  }
  return g;
}

} // namespace

RootSystem::RootSystem() : d_(std::make_shared<Data>()) {}

RootSystem::RootSystem(TypeDecomposition const &components)
{
  auto d = std::make_shared<Data>();
  TypeDecomposition flat;
  for (auto const &c : components) {
    for (auto t : normalize_type(c)) {
      check_cartan_type(t);
      t.short_roots = false;
      flat.push_back(t);
    }
  }
  d->type = flat;
  for (auto const &t : flat)
    d->rank += static_cast<std::size_t>(t.rank);
  std::size_t n = d->rank;
  d->gram.assign(n, IntVector(n, 0));
  std::size_t off = 0;
  for (auto const &t : flat) {
    auto g = gram_of(t);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        d->gram[off + i][off + j] = g[i][j];
    d->component_nodes.emplace_back(static_cast<int>(off), static_cast<int>(off + g.size()));
    off += g.size();
  }
  d->cartan.assign(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d->cartan[i][j] = 2 * d->gram[i][j] / d->gram[i][i];

  // Closure under simple reflections.
  std::set<IntVector> seen;
  std::deque<IntVector> queue;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    IntVector b = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t c = 0;
      for (std::size_t j = 0; j < n; ++j)
        c += b[j] * d->cartan[i][j];
      if (c == 0)
        continue;
      IntVector r = b;
      r[i] -= c;
      if (seen.insert(r).second)
        queue.push_back(r);
    }
  }
  std::vector<IntVector> pos;
  for (auto const &v : seen)
    if (std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x >= 0; }))
      pos.push_back(v);
  auto ht = [](IntVector const &v) {
    std::int64_t h = 0;
    for (auto x : v)
      h += x;
    return h;
  };
  std::sort(pos.begin(), pos.end(), [&](IntVector const &a, IntVector const &b) {
    auto ha = ht(a), hb = ht(b);
    if (ha != hb)
      return ha < hb;
    return a > b;
  });
  if (pos.size() * 2 != seen.size())
    throw Error("internal", "root closure is not symmetric");
  d->roots = pos;
  for (auto const &v : pos) {
    IntVector m = v;
    for (auto &x : m)
      x = -x;
    d->roots.push_back(m);
  }
  for (std::size_t i = 0; i < d->roots.size(); ++i)
    d->index[d->roots[i]] = static_cast<int>(i);

  std::size_t R = d->roots.size();
  d->inner.assign(R, std::vector<std::int64_t>(R, 0));
  std::vector<IntVector> gv(R, IntVector(n, 0));
  for (std::size_t a = 0; a < R; ++a)
    for (std::size_t i = 0; i < n; ++i)
      if (d->roots[a][i] != 0)
        for (std::size_t j = 0; j < n; ++j)
          gv[a][j] += d->roots[a][i] * d->gram[i][j];
  for (std::size_t a = 0; a < R; ++a)
    for (std::size_t b = 0; b < R; ++b) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n; ++j)
        s += gv[a][j] * d->roots[b][j];
      d->inner[a][b] = s;
    }
  d->reflections.assign(R, Perm(R));
  for (std::size_t a = 0; a < R; ++a)
    for (std::size_t b = 0; b < R; ++b) {
      std::int64_t c = 2 * d->inner[b][a] / d->inner[a][a];
      if (c == 0) {
        d->reflections[a][b] = static_cast<std::uint32_t>(b);
        continue;
      }
      IntVector r = d->roots[b];
      for (std::size_t j = 0; j < n; ++j)
        r[j] -= c * d->roots[a][j];
      d->reflections[a][b] = static_cast<std::uint32_t>(d->index.at(r));
    }
  d_ = d;
}

IntMatrix cartan_matrix(CartanType const &t)
{
  check_cartan_type(t);
  if (t.series == 'D' && t.rank < 3)
    throw Error("invalid-type", "D2 has no connected diagram; use A1xA1");
  auto g = gram_of(t);
  IntMatrix c(g.size(), IntVector(g.size(), 0));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      c[i][j] = 2 * g[i][j] / g[i][i];
  return c;
}

RootSystem build_root_system(CartanType const &t)
{
  check_cartan_type(t);
  return RootSystem(TypeDecomposition{t});
}

std::optional<int> RootSystem::index_of(IntVector const &v) const
{
  auto it = d_->index.find(v);
  if (it == d_->index.end())
    return std::nullopt;
  return it->second;
}

int RootSystem::negative(int i) const
{
  int n = static_cast<int>(num_positive());
  return i < n ? i + n : i - n;
}

std::int64_t RootSystem::height(int i) const
{
  std::int64_t h = 0;
  for (auto x : d_->roots[i])
    h += x;
  return h;
}

std::int64_t RootSystem::inner_vec(IntVector const &a, IntVector const &b) const
{
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j)
        s += a[i] * d_->gram[i][j] * b[j];
  return s;
}

int RootSystem::component_of_root(int i) const
{
  auto const &v = d_->roots[i];
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0)
      for (std::size_t c = 0; c < d_->component_nodes.size(); ++c)
        if (static_cast<int>(j) >= d_->component_nodes[c].first &&
            static_cast<int>(j) < d_->component_nodes[c].second)
          return static_cast<int>(c);
  throw Error("internal", "zero root");
}

int RootSystem::highest_root(int component) const
{
  for (int i = static_cast<int>(num_positive()) - 1; i >= 0; --i)
    if (component_of_root(i) == component)
      return i;
  throw Error("invalid-argument", "no such component");
}

std::int64_t RootSystem::long_norm(int component) const
{
  auto [a, b] = d_->component_nodes.at(static_cast<std::size_t>(component));
  std::int64_t m = 0;
  for (int i = a; i < b; ++i)
    m = std::max(m, d_->gram[i][i]);
  return m;
}

// ---------------------------------------------------------------------------
// Subsystems and their types

std::vector<int> reflection_closure(RootSystem const &rs, std::vector<int> const &gens)
{
  std::vector<bool> in(rs.size(), false);
  std::vector<int> out;
  for (int g : gens)
    if (!in[g]) {
      in[g] = true;
      out.push_back(g);
    }
  for (std::size_t k = 0; k < out.size(); ++k)
    for (int g : gens) {
      int r = static_cast<int>(rs.reflection(g)[out[k]]);
      if (!in[r]) {
        in[r] = true;
        out.push_back(r);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> span_closure(RootSystem const &rs, std::vector<int> const &gens)
{
  // Echelon basis of the span over the rationals.
  std::size_t n = rs.rank();
  RatMatrix basis;
  std::vector<std::size_t> pivots;
  auto reduce = [&](RatVector v) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Rational c = v[pivots[k]];
      if (!c.is_zero())
        for (std::size_t j = 0; j < n; ++j)
          v[j] -= c * basis[k][j];
    }
    return v;
  };
  for (int g : gens) {
    RatVector v(n);
    for (std::size_t j = 0; j < n; ++j)
      v[j] = Rational(rs.root(g)[j]);
    v = reduce(v);
    std::size_t p = 0;
    while (p < n && v[p].is_zero())
      ++p;
    if (p == n)
      continue;
    Rational c = v[p];
    for (auto &x : v)
      x /= c;
    for (auto &row : basis) {
      Rational f = row[p];
      if (!f.is_zero())
        for (std::size_t j = 0; j < n; ++j)
          row[j] -= f * v[j];
    }
    basis.push_back(v);
    pivots.push_back(p);
  }
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(rs.size()); ++i) {
    RatVector v(n);
    for (std::size_t j = 0; j < n; ++j)
      v[j] = Rational(rs.root(i)[j]);
    v = reduce(v);
    if (std::all_of(v.begin(), v.end(), [](Rational const &x) { return x.is_zero(); }))
      out.push_back(i);
  }
  return out;
}

std::vector<int> subsystem_base(RootSystem const &rs, std::vector<int> const &roots)
{
  std::vector<bool> in(rs.size(), false);
  std::vector<int> pos;
  for (int r : roots)
    if (rs.is_positive(r)) {
      in[r] = true;
      pos.push_back(r);
    }
  std::sort(pos.begin(), pos.end());
  std::vector<int> base;
  std::size_t n = rs.rank();
  for (int b : pos) {
    bool decomposable = false;
    for (int g : pos) {
      if (g == b || rs.height(g) >= rs.height(b))
        continue;
      IntVector d = rs.root(b);
      for (std::size_t j = 0; j < n; ++j)
        d[j] -= rs.root(g)[j];
      auto idx = rs.index_of(d);
      if (idx && in[*idx]) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable)
      base.push_back(b);
  }
  return base;
}

namespace {

bool positive_definite(RootSystem const &rs, std::vector<int> const &base)
{
  for (std::size_t k = 1; k <= base.size(); ++k) {
    IntMatrix m(k, IntVector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        m[i][j] = rs.inner(base[i], base[j]);
    if (determinant(m) <= 0)
      return false;
  }
  return true;
}

Component classify(RootSystem const &rs, std::vector<int> const &nodes)
{
  std::size_t k = nodes.size();
  auto adj = [&](std::size_t a, std::size_t b) { return a != b && rs.inner(nodes[a], nodes[b]) != 0; };
  auto mult = [&](std::size_t a, std::size_t b) {
    return rs.pairing(nodes[a], nodes[b]) * rs.pairing(nodes[b], nodes[a]);
  };
  std::vector<int> deg(k, 0);
  std::int64_t maxmult = 0;
  std::size_t mu = 0, mv = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (adj(a, b)) {
        ++deg[a];
        if (mult(a, b) > maxmult) {
          maxmult = mult(a, b);
          mu = a;
          mv = b;
        }
      }
  std::int64_t long_n = rs.long_norm(rs.component_of_root(nodes[0]));
  auto walk = [&](std::size_t start, std::size_t avoid) {
    std::vector<std::size_t> path{start};
    std::size_t prev = avoid, cur = start;
    while (true) {
      std::size_t next = k;
      for (std::size_t b = 0; b < k; ++b)
        if (b != prev && adj(cur, b)) {
          next = b;
          break;
        }
      if (next == k)
        break;
      path.push_back(next);
      prev = cur;
      cur = next;
    }
    return path;
  };
  auto to_roots = [&](std::vector<std::size_t> const &pos) {
    std::vector<int> r;
    for (auto p : pos)
      r.push_back(nodes[p]);
    return r;
  };
  auto first_end = [&]() {
    for (std::size_t a = 0; a < k; ++a)
      if (deg[a] <= 1)
        return a;
    throw Error("internal", "diagram without end node");
  };

  Component c;
  if (k == 1) {
    c.type = CartanType{'A', 1, rs.norm(nodes[0]) < long_n};
    c.nodes = nodes;
    return c;
  }
  if (maxmult == 3) {
    std::size_t s = rs.norm(nodes[0]) < rs.norm(nodes[1]) ? 0 : 1;
    c.type = CartanType{'G', 2, false};
    c.nodes = {nodes[s], nodes[1 - s]};
    return c;
  }
  if (maxmult == 2) {
    if (k == 2) {
      std::size_t l = rs.norm(nodes[0]) > rs.norm(nodes[1]) ? 0 : 1;
      c.type = CartanType{'B', 2, false};
      c.nodes = {nodes[l], nodes[1 - l]};
      return c;
    }
    if (deg[mu] == 2 && deg[mv] == 2) {
      auto path = walk(first_end(), k);
      if (rs.norm(nodes[path.front()]) < rs.norm(nodes[path.back()]))
        std::reverse(path.begin(), path.end());
      c.type = CartanType{'F', 4, false};
      c.nodes = to_roots(path);
      return c;
    }
    std::size_t e = deg[mu] == 1 ? mu : mv;
    std::size_t other = e == mu ? mv : mu;
    auto path = walk(e, k);
    std::reverse(path.begin(), path.end());
    bool b_type = rs.norm(nodes[e]) < rs.norm(nodes[other]);
    c.type = CartanType{b_type ? 'B' : 'C', static_cast<int>(k), false};
    c.nodes = to_roots(path);
    return c;
  }
  bool sh = rs.norm(nodes[0]) < long_n;
  std::size_t branch = k;
  for (std::size_t a = 0; a < k; ++a)
    if (deg[a] >= 3)
      branch = a;
  if (branch == k) {
    c.type = CartanType{'A', static_cast<int>(k), sh};
    c.nodes = to_roots(walk(first_end(), k));
    return c;
  }
  std::vector<std::vector<std::size_t>> arms;
  for (std::size_t b = 0; b < k; ++b)
    if (adj(branch, b))
      arms.push_back(walk(b, branch));
  std::sort(arms.begin(), arms.end(), [](auto const &x, auto const &y) {
    if (x.size() != y.size())
      return x.size() < y.size();
    return x.front() < y.front();
  });
  if (arms.size() != 3)
    throw Error("not-finite-type", "branch node of degree > 3");
  std::vector<std::size_t> order;
  if (arms[0].size() == 1 && arms[1].size() == 1) {
    order.assign(arms[2].rbegin(), arms[2].rend());
    order.push_back(branch);
    order.push_back(arms[0][0]);
    order.push_back(arms[1][0]);
    c.type = CartanType{'D', static_cast<int>(k), sh};
  } else if (arms[0].size() == 1 && arms[1].size() == 2 && arms[2].size() <= 4) {
    order = {arms[1][1], arms[0][0], arms[1][0], branch};
    for (auto p : arms[2])
      order.push_back(p);
    c.type = CartanType{'E', static_cast<int>(k), sh};
  } else {
    throw Error("not-finite-type", "unexpected branch shape");
  }
  c.nodes = to_roots(order);
  return c;
}

} // namespace

std::vector<Component> decompose(RootSystem const &rs, std::vector<int> const &base)
{
  if (!positive_definite(rs, base))
    throw Error("not-finite-type", "roots do not form a simple system of finite type");
  std::vector<int> comp(base.size(), -1);
  std::vector<Component> out;
  int nc = 0;
  for (std::size_t s = 0; s < base.size(); ++s) {
    if (comp[s] >= 0)
      continue;
    std::vector<std::size_t> stack{s};
    comp[s] = nc;
    std::vector<std::size_t> members;
    while (!stack.empty()) {
      auto a = stack.back();
      stack.pop_back();
      members.push_back(a);
      for (std::size_t b = 0; b < base.size(); ++b)
        if (comp[b] < 0 && rs.inner(base[a], base[b]) != 0) {
          comp[b] = nc;
          stack.push_back(b);
        }
    }
    std::sort(members.begin(), members.end());
    std::vector<int> nodes;
    for (auto m : members)
      nodes.push_back(base[m]);
    out.push_back(classify(rs, nodes));
    ++nc;
  }
  return out;
}

TypeDecomposition type_of(RootSystem const &rs, std::vector<int> const &base)
{
  TypeDecomposition t;
  for (auto const &c : decompose(rs, base))
    t.push_back(c.type);
  return canonical(t);
}

std::optional<TypeDecomposition> try_type_of(RootSystem const &rs, std::vector<int> const &base)
{
  if (!positive_definite(rs, base))
    return std::nullopt;
  return type_of(rs, base);
}

std::vector<int> opposition_involution(CartanType const &t)
{
  std::size_t k = static_cast<std::size_t>(t.rank);
  std::vector<int> p(k);
  for (std::size_t i = 0; i < k; ++i)
    p[i] = static_cast<int>(i);
  if (t.series == 'A') {
    for (std::size_t i = 0; i < k; ++i)
      p[i] = static_cast<int>(k - 1 - i);
  } else if (t.series == 'D' && k % 2 == 1) {
    std::swap(p[k - 2], p[k - 1]);
  } else if (t.series == 'E' && k == 6) {
    std::swap(p[0], p[5]);
    std::swap(p[2], p[4]);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Diagrams

Diagram dynkin_diagram(RootSystem const &rs)
{
  Diagram d;
  for (int i = 0; i < static_cast<int>(rs.rank()); ++i)
    d.nodes.push_back(i);
  return d;
}

Diagram extended_diagram(RootSystem const &rs)
{
  if (!rs.irreducible())
    throw Error("reducible", "extended diagram needs an irreducible root system");
  Diagram d = dynkin_diagram(rs);
  d.extended = true;
  d.affine_nodes.push_back(static_cast<int>(d.nodes.size()));
  d.nodes.push_back(rs.negative(rs.highest_root(0)));
  return d;
}

Diagram extended_diagram_of(RootSystem const &rs, std::vector<int> const &base)
{
  Diagram d;
  d.extended = true;
  for (auto const &c : decompose(rs, base)) {
    for (int n : c.nodes)
      d.nodes.push_back(n);
    auto roots = reflection_closure(rs, c.nodes);
    int best = -1;
    for (int r : roots)
      if (rs.is_positive(r) && (best < 0 || rs.height(r) > rs.height(best)))
        best = r;
    d.affine_nodes.push_back(static_cast<int>(d.nodes.size()));
    d.nodes.push_back(rs.negative(best));
  }
  return d;
}

std::vector<Bond> diagram_bonds(RootSystem const &rs, Diagram const &d)
{
  std::vector<Bond> out;
  for (std::size_t a = 0; a < d.nodes.size(); ++a)
    for (std::size_t b = a + 1; b < d.nodes.size(); ++b) {
      int x = d.nodes[a], y = d.nodes[b];
      std::int64_t m = rs.pairing(x, y) * rs.pairing(y, x);
      if (m == 0)
        continue;
      Bond bd;
      bd.a = static_cast<int>(a);
      bd.b = static_cast<int>(b);
      bd.multiplicity = static_cast<int>(m);
      if (rs.norm(x) > rs.norm(y))
        bd.longer = bd.a;
      else if (rs.norm(y) > rs.norm(x))
        bd.longer = bd.b;
      out.push_back(bd);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Weyl groups

struct WeylGroup::Cache
{
  std::once_flag once;
  PermGroup group;
};

WeylGroup::WeylGroup(RootSystem rs) : rs_(std::move(rs)), cache_(std::make_shared<Cache>())
{
  for (int i = 0; i < static_cast<int>(rs_.size()); ++i)
    roots_.push_back(i);
  for (int i = 0; i < static_cast<int>(rs_.rank()); ++i)
    base_.push_back(i);
}

WeylGroup::WeylGroup(RootSystem rs, std::vector<int> const &generating_roots)
  : rs_(std::move(rs)), cache_(std::make_shared<Cache>())
{
  roots_ = reflection_closure(rs_, generating_roots);
  base_ = subsystem_base(rs_, roots_);
}

std::vector<Perm> WeylGroup::generators() const
{
  std::vector<Perm> g;
  for (int b : base_)
    g.push_back(rs_.reflection(b));
  return g;
}

PermGroup const &WeylGroup::chain() const
{
  std::call_once(cache_->once, [this] { cache_->group = PermGroup(rs_.size(), generators()); });
  return cache_->group;
}

namespace {

// BFS of the orbit of x under reflections in `gens`; parent links give words.
struct RootOrbit
{
  std::vector<int> parent;     // previous root, -1 at x, -2 if not reached
  std::vector<int> via;        // reflecting root used
};

RootOrbit root_orbit(RootSystem const &rs, std::vector<int> const &gens, int x)
{
  RootOrbit o;
  o.parent.assign(rs.size(), -2);
  o.via.assign(rs.size(), -1);
  o.parent[x] = -1;
  std::vector<int> queue{x};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    int r = queue[k];
    for (int g : gens) {
      int s = static_cast<int>(rs.reflection(g)[r]);
      if (o.parent[s] != -2)
        continue;
      o.parent[s] = r;
      o.via[s] = g;
      queue.push_back(s);
    }
  }
  return o;
}

// Element u of the reflection group with u(x) = y, following orbit parents.
Perm transport(RootSystem const &rs, RootOrbit const &o, int y)
{
  std::vector<int> word;
  for (int r = y; o.parent[r] != -1; r = o.parent[r])
    word.push_back(o.via[r]);
  Perm u = identity_perm(rs.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    u = compose(rs.reflection(*it), u);
  return u;
}

std::vector<int> orthogonal_positive(RootSystem const &rs, std::vector<int> const &roots, int t)
{
  std::vector<int> out;
  for (int r : roots)
    if (rs.is_positive(r) && rs.inner(r, t) == 0)
      out.push_back(r);
  return out;
}

} // namespace

std::optional<Perm> WeylGroup::map_tuple(std::vector<int> const &from, std::vector<int> const &to) const
{
  if (from.size() != to.size())
    return std::nullopt;
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (rs_.inner(from[i], from[j]) != rs_.inner(to[i], to[j]))
        return std::nullopt;
  std::vector<int> gens;
  for (int r : roots_)
    if (rs_.is_positive(r))
      gens.push_back(r);
  Perm w = identity_perm(rs_.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    int x = static_cast<int>(w[from[i]]);
    auto orb = root_orbit(rs_, gens, x);
    if (orb.parent[to[i]] == -2)
      return std::nullopt;
    w = compose(transport(rs_, orb, to[i]), w);
    gens = orthogonal_positive(rs_, gens, to[i]);
  }
  return w;
}

std::uint64_t WeylGroup::order_by_orbits() const
{
  std::uint64_t order = 1;
  std::vector<int> gens;
  for (int r : roots_)
    if (rs_.is_positive(r))
      gens.push_back(r);
  while (!gens.empty()) {
    int x = gens.front();
    auto orb = root_orbit(rs_, gens, x);
    std::uint64_t size = 0;
    for (auto p : orb.parent)
      if (p != -2)
        ++size;
    order *= size;
    gens = orthogonal_positive(rs_, gens, x);
  }
  return order;
}

// ---------------------------------------------------------------------------
// Conjugacy of subsystems

namespace {

// Order base nodes so that each node after the first of its component is
// adjacent to an earlier one; Cartan checks then prune early.
std::vector<int> search_order(RootSystem const &rs, std::vector<int> const &base)
{
  std::vector<int> out;
  std::vector<bool> used(base.size(), false);
  for (std::size_t s = 0; s < base.size(); ++s) {
    if (used[s])
      continue;
    used[s] = true;
    std::size_t start = out.size();
    out.push_back(base[s]);
    for (std::size_t k = start; k < out.size(); ++k)
      for (std::size_t b = 0; b < base.size(); ++b)
        if (!used[b] && rs.inner(out[k], base[b]) != 0) {
          used[b] = true;
          out.push_back(base[b]);
        }
  }
  return out;
}

struct ConjugatorSearch
{
  RootSystem const &rs;
  std::vector<int> from;
  std::vector<int> targets;
  std::vector<int> chosen;
  std::vector<bool> used;
  bool collect_all = false;
  std::vector<std::pair<std::vector<int>, Perm>> found = {};

  std::optional<Perm> run(std::size_t level, Perm const &w, std::vector<int> const &gens)
  {
    if (level == from.size()) {
      if (collect_all) {
        found.emplace_back(chosen, w);
        return std::nullopt;
      }
      return w;
    }
    int s = from[level];
    int x = static_cast<int>(w[s]);
    std::optional<RootOrbit> orb;
    for (std::size_t c = 0; c < targets.size(); ++c) {
      if (used[c])
        continue;
      int t = targets[c];
      if (rs.norm(t) != rs.norm(s))
        continue;
      bool ok = true;
      for (std::size_t j = 0; j < level && ok; ++j)
        ok = rs.inner(t, chosen[j]) == rs.inner(s, from[j]);
      if (!ok)
        continue;
      if (!orb)
        orb = root_orbit(rs, gens, x);
      if (orb->parent[t] == -2)
        continue;
      Perm w2 = compose(transport(rs, *orb, t), w);
      used[c] = true;
      chosen.push_back(t);
      auto r = run(level + 1, w2, orthogonal_positive(rs, gens, t));
      chosen.pop_back();
      used[c] = false;
      if (r)
        return r;
    }
    return std::nullopt;
  }
};

} // namespace

std::optional<Perm> find_conjugator(WeylGroup const &w, std::vector<int> const &s1,
                                    std::vector<int> const &s2)
{
  RootSystem const &rs = w.root_system();
  auto b1 = subsystem_base(rs, reflection_closure(rs, s1));
  auto b2 = subsystem_base(rs, reflection_closure(rs, s2));
  std::vector<bool> in_group(rs.size(), false);
  for (int r : w.subsystem_roots())
    in_group[r] = true;
  for (int r : b2)
    if (!in_group[r])
      throw Error("unsupported", "target subsystem is not contained in the acting reflection group");
  if (b1.size() != b2.size() || type_of(rs, b1) != type_of(rs, b2))
    return std::nullopt;
  ConjugatorSearch search{rs, search_order(rs, b1), b2, {}, std::vector<bool>(b2.size(), false)};
  std::vector<int> gens;
  for (int r : w.subsystem_roots())
    if (rs.is_positive(r))
      gens.push_back(r);
  return search.run(0, identity_perm(rs.size()), gens);
}

bool subsystems_conjugate(WeylGroup const &w, std::vector<int> const &s1, std::vector<int> const &s2)
{
  return find_conjugator(w, s1, s2).has_value();
}

std::vector<BaseSymmetry> base_stabilizer_representatives(WeylGroup const &w, std::vector<int> const &base)
{
  RootSystem const &rs = w.root_system();
  auto order = search_order(rs, base);
  ConjugatorSearch search{rs, order, base, {}, std::vector<bool>(base.size(), false)};
  search.collect_all = true;
  std::vector<int> gens;
  for (int r : w.subsystem_roots())
    if (rs.is_positive(r))
      gens.push_back(r);
  search.run(0, identity_perm(rs.size()), gens);
  std::vector<BaseSymmetry> out;
  for (auto &[chosen, perm] : search.found) {
    BaseSymmetry b;
    for (int x : base)
      b.image.push_back(static_cast<int>(perm[x]));
    b.element = std::move(perm);
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](BaseSymmetry const &a, BaseSymmetry const &b) { return a.image < b.image; });
  // The identity symmetry (image == base) goes first.
  auto it = std::find_if(out.begin(), out.end(), [&](BaseSymmetry const &b) { return b.image == base; });
  if (it != out.end())
    std::rotate(out.begin(), it, it + 1);
  return out;
}

std::vector<Perm> diagram_automorphisms(RootSystem const &rs)
{
  std::size_t n = rs.rank();
  auto const &g = rs.gram();
  std::vector<Perm> out;
  std::vector<int> img(n, -1);
  std::vector<bool> used(n, false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      Perm p(rs.size());
      for (int r = 0; r < static_cast<int>(rs.size()); ++r) {
        IntVector v(n, 0);
        for (std::size_t j = 0; j < n; ++j)
          v[img[j]] = rs.root(r)[j];
        p[r] = static_cast<std::uint32_t>(*rs.index_of(v));
      }
      out.push_back(p);
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || g[c][c] != g[i][i])
        continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = g[c][img[j]] == g[i][j];
      if (!ok)
        continue;
      used[c] = true;
      img[i] = static_cast<int>(c);
      rec(i + 1);
      used[c] = false;
    }
  };
  rec(0);
  return out;
}

bool conjugate_up_to_diagram_automorphism(RootSystem const &rs, std::vector<int> const &s1,
                                          std::vector<int> const &s2)
{
  WeylGroup w(rs);
  for (auto const &sigma : diagram_automorphisms(rs)) {
    std::vector<int> img;
    for (int r : s2)
      img.push_back(static_cast<int>(sigma[r]));
    if (subsystems_conjugate(w, s1, img))
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Enumeration and partition

std::vector<std::vector<int>> enumerate_subsets_of_type(RootSystem const &rs, Diagram const &d,
                                                        TypeDecomposition const &target0)
{
  TypeDecomposition target = canonical(target0);
  int want = 0;
  for (auto const &t : target)
    want += t.rank;
  std::size_t m = d.nodes.size();
  if (m > 24)
    throw Error("invalid-argument", "diagram too large for subset enumeration");
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != want)
      continue;
    std::vector<int> sub;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i))
        sub.push_back(d.nodes[i]);
    auto t = try_type_of(rs, sub);
    if (t && *t == target)
      out.push_back(sub);
  }
  return out;
}

std::vector<SubdiagramClass> partition_into_classes(WeylGroup const &w,
                                                    std::vector<std::vector<int>> const &subsets)
{
  RootSystem const &rs = w.root_system();
  std::vector<SubdiagramClass> classes;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::vector<int> s = subsets[i];
    std::sort(s.begin(), s.end());
    auto t = type_of(rs, subsystem_base(rs, reflection_closure(rs, s)));
    bool placed = false;
    for (auto &c : classes) {
      if (c.type != t)
        continue;
      if (subsystems_conjugate(w, s, c.members.front())) {
        c.members.push_back(s);
        c.input_positions.push_back(i);
        c.representative = std::min(c.representative, s);
        placed = true;
        break;
      }
    }
    if (!placed) {
      SubdiagramClass c;
      c.representative = s;
      c.type = t;
      c.members.push_back(s);
      c.input_positions.push_back(i);
      classes.push_back(std::move(c));
    }
  }
  return classes;
}

std::vector<SubdiagramClass> levi_subsets_up_to_conjugacy(RootSystem const &rs)
{
  std::size_t n = rs.rank();
  if (n > 24)
    throw Error("invalid-argument", "rank too large for Levi enumeration");
  std::uint32_t full = (1u << n) - 1;
  auto nodes_of = [&](std::uint32_t mask) {
    std::vector<int> v;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i))
        v.push_back(static_cast<int>(i));
    return v;
  };
  auto component_with = [&](std::uint32_t mask, int s) {
    std::uint32_t comp = 1u << s;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < n; ++i)
        if ((mask & (1u << i)) && !(comp & (1u << i)))
          for (std::size_t j = 0; j < n; ++j)
            if ((comp & (1u << j)) && rs.gram()[i][j] != 0) {
              comp |= 1u << i;
              grew = true;
              break;
            }
    }
    return comp;
  };
  std::map<std::uint32_t, std::vector<int>> opp_cache; // component mask -> image node per node
  auto opposition = [&](std::uint32_t comp) -> std::vector<int> const & {
    auto it = opp_cache.find(comp);
    if (it != opp_cache.end())
      return it->second;
    auto c = decompose(rs, nodes_of(comp)).at(0);
    auto p = opposition_involution(c.type);
    std::vector<int> img(n, -1);
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
      img[c.nodes[i]] = c.nodes[p[i]];
    return opp_cache.emplace(comp, img).first->second;
  };

  std::vector<int> cls(full + 1, -1);
  std::vector<std::vector<std::uint32_t>> orbits;
  for (std::uint32_t start = 0; start <= full; ++start) {
    if (cls[start] >= 0)
      continue;
    int id = static_cast<int>(orbits.size());
    std::vector<std::uint32_t> orbit{start};
    cls[start] = id;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      std::uint32_t J = orbit[k];
      for (std::size_t s = 0; s < n; ++s) {
        if (J & (1u << s))
          continue;
        std::uint32_t K = J | (1u << s);
        std::uint32_t C = component_with(K, static_cast<int>(s));
        auto const &img = opposition(C);
        std::uint32_t J2 = J & ~C;
        for (std::size_t i = 0; i < n; ++i)
          if ((C & (1u << i)) && i != s)
            J2 |= 1u << img[i];
        if (cls[J2] < 0) {
          cls[J2] = id;
          orbit.push_back(J2);
        }
      }
    }
    orbits.push_back(orbit);
  }

  std::vector<SubdiagramClass> out;
  for (auto const &orbit : orbits) {
    SubdiagramClass c;
    for (auto m : orbit)
      c.members.push_back(nodes_of(m));
    std::sort(c.members.begin(), c.members.end());
    c.representative = c.members.front();
    c.type = type_of(rs, c.representative);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](SubdiagramClass const &a, SubdiagramClass const &b) {
    if (a.representative.size() != b.representative.size())
      return a.representative.size() < b.representative.size();
    return a.representative < b.representative;
  });
  return out;
}

} // namespace cuspidal
