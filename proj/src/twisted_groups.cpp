#include "cuspidal/twisted_groups.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <unordered_set>

#include "cuspidal/error.hpp"

namespace cuspidal {

std::size_t PermHash::operator()(Perm const &p) const
{
  std::size_t h = 1469598103934665603ull;
  for (auto x : p) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

FiniteGroup::FiniteGroup(std::size_t degree, std::vector<Perm> const &generators, std::uint64_t limit)
    : degree_(degree)
{
  for (auto const &g : generators)
    if (g.size() != degree || !is_permutation(g))
      throw Error("invalid-permutation", "generator is not a permutation of degree " + std::to_string(degree));
  Perm id = identity_perm(degree);
  std::unordered_set<Perm, PermHash> seen{id};
  std::vector<Perm> todo{id};
  while (!todo.empty()) {
    Perm x = std::move(todo.back());
    todo.pop_back();
    for (auto const &g : generators) {
      Perm y = cuspidal::compose(x, g);
      if (seen.insert(y).second) {
        if (seen.size() > limit)
          throw Error("order-bound", "group order exceeds " + std::to_string(limit));
        todo.push_back(std::move(y));
      }
    }
  }
  elements_.assign(seen.begin(), seen.end());
  std::sort(elements_.begin(), elements_.end());
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i)
    index_.emplace(elements_[i], static_cast<int>(i));
  inverse_.resize(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i)
    inverse_[i] = index_of(cuspidal::inverse(elements_[i]));
  for (auto const &g : generators) {
    int k = index_of(g);
    if (k != 0 && std::find(generators_.begin(), generators_.end(), k) == generators_.end())
      generators_.push_back(k);
  }
}

int FiniteGroup::index_of(Perm const &p) const
{
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

int FiniteGroup::mul(int a, int b) const
{
  return index_of(cuspidal::compose(element(a), element(b)));
}

int FiniteGroup::element_order(int a) const
{
  return static_cast<int>(perm_order(element(a)));
}

namespace {

int automorphism_order(std::vector<int> const &map)
{
  std::vector<int> cur = map;
  int k = 1;
  while (true) {
    bool id = true;
    for (std::size_t i = 0; i < cur.size() && id; ++i)
      id = cur[i] == static_cast<int>(i);
    if (id)
      return k;
    for (auto &x : cur)
      x = map[static_cast<std::size_t>(x)];
    ++k;
  }
}

Automorphism from_map(std::vector<int> map)
{
  Automorphism a;
  a.order = automorphism_order(map);
  a.map = std::move(map);
  return a;
}

// Orbits of 0..n-1 under the maps in `steps`, ordered by smallest member.
TwistedClassPartition orbits(std::size_t n, std::vector<std::function<int(int)>> const &steps)
{
  TwistedClassPartition p;
  p.class_of.assign(n, -1);
  for (std::size_t start = 0; start < n; ++start) {
    if (p.class_of[start] >= 0)
      continue;
    int c = static_cast<int>(p.classes.size());
    std::vector<int> members{static_cast<int>(start)};
    p.class_of[start] = c;
    for (std::size_t k = 0; k < members.size(); ++k)
      for (auto const &f : steps) {
        int y = f(members[k]);
        if (p.class_of[static_cast<std::size_t>(y)] < 0) {
          p.class_of[static_cast<std::size_t>(y)] = c;
          members.push_back(y);
        }
      }
    std::sort(members.begin(), members.end());
    p.classes.push_back(std::move(members));
  }
  return p;
}

// ---- modular arithmetic -------------------------------------------------

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p)
{
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t p)
{
  std::int64_t r = 1;
  a %= p;
  if (a < 0)
    a += p;
  while (e > 0) {
    if (e & 1)
      r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::int64_t invmod(std::int64_t a, std::int64_t p)
{
  return powmod(a, p - 2, p);
}

bool is_prime(std::int64_t n)
{
  if (n < 2)
    return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

std::int64_t primitive_root(std::int64_t p)
{
  std::vector<std::int64_t> factors;
  std::int64_t m = p - 1;
  for (std::int64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0)
        m /= d;
    }
  if (m > 1)
    factors.push_back(m);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors)
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok)
      return g;
  }
  return 1;
}

using ModMatrix = std::vector<std::vector<std::int64_t>>;

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> rref(ModMatrix &m, std::int64_t p)
{
  std::vector<std::size_t> pivots;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t k = r;
    while (k < rows && m[k][c] == 0)
      ++k;
    if (k == rows)
      continue;
    std::swap(m[k], m[r]);
    std::int64_t inv = invmod(m[r][c], p);
    for (auto &x : m[r])
      x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < rows; ++i)
      if (i != r && m[i][c] != 0) {
        std::int64_t f = m[i][c];
        for (std::size_t j = c; j < cols; ++j)
          m[i][j] = ((m[i][j] - mulmod(f, m[r][j], p)) % p + p) % p;
      }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

// Basis of {x : m x = 0} for a square matrix.
ModMatrix kernel(ModMatrix m, std::int64_t p)
{
  std::size_t n = m.empty() ? 0 : m[0].size();
  auto pivots = rref(m, p);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots)
    is_pivot[c] = true;
  ModMatrix out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f])
      continue;
    std::vector<std::int64_t> v(n, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = (p - m[i][f]) % p;
    out.push_back(std::move(v));
  }
  return out;
}

// ---- Dixon-Schneider ----------------------------------------------------

struct AbstractGroup
{
  std::size_t n = 0;
  std::function<int(int, int)> mul;
  std::vector<int> inv;
  std::vector<int> gens;
};

struct RawTable
{
  TwistedClassPartition classes;
  std::vector<std::vector<Cyclotomic>> values;
  std::vector<std::int64_t> degrees;
  std::int64_t prime = 0;
};

struct Subspace
{
  // Rows are basis vectors in reduced echelon form; pivots[i] is the pivot of row i.
  ModMatrix rows;
  std::vector<std::size_t> pivots;
};

Subspace make_subspace(ModMatrix rows, std::int64_t p)
{
  Subspace s;
  s.pivots = rref(rows, p);
  s.rows = std::move(rows);
  return s;
}

bool try_prime(AbstractGroup const &g, TwistedClassPartition const &cls, std::vector<int> const &orders,
               std::int64_t e, std::int64_t p, RawTable &out)
{
  std::size_t r = cls.size();
  std::int64_t n = static_cast<std::int64_t>(g.n);
  std::vector<std::int64_t> size(r);
  std::vector<std::size_t> inverse_class(r);
  for (std::size_t k = 0; k < r; ++k) {
    size[k] = static_cast<std::int64_t>(cls.classes[k].size());
    inverse_class[k] = static_cast<std::size_t>(cls.class_of[static_cast<std::size_t>(g.inv[cls.representative(k)])]);
  }

  // (A_i)[j][k] = #{x in C_i : x^-1 z_k in C_j}
  auto class_matrix = [&](std::size_t i) {
    ModMatrix a(r, std::vector<std::int64_t>(r, 0));
    for (int x : cls.classes[i]) {
      int xi = g.inv[static_cast<std::size_t>(x)];
      for (std::size_t k = 0; k < r; ++k) {
        int y = g.mul(xi, cls.representative(k));
        a[static_cast<std::size_t>(cls.class_of[static_cast<std::size_t>(y)])][k] += 1;
      }
    }
    for (auto &row : a)
      for (auto &v : row)
        v %= p;
    return a;
  };

  ModMatrix id(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    id[i][i] = 1;
  std::vector<Subspace> spaces{make_subspace(id, p)};
  std::vector<Subspace> done;

  // Small classes first: their matrices are cheapest.
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return size[a] < size[b]; });

  for (std::size_t i : order) {
    if (spaces.empty())
      break;
    if (i == 0)
      continue;
    ModMatrix a = class_matrix(i);
    std::vector<Subspace> next;
    for (auto &s : spaces) {
      std::size_t d = s.rows.size();
      // A applied to the basis, read off at the pivot coordinates.
      ModMatrix rmat(d, std::vector<std::int64_t>(d, 0));
      std::vector<std::vector<std::int64_t>> images(d, std::vector<std::int64_t>(r, 0));
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t j = 0; j < r; ++j) {
          std::int64_t acc = 0;
          for (std::size_t k = 0; k < r; ++k)
            if (a[j][k] && s.rows[b][k])
              acc = (acc + mulmod(a[j][k], s.rows[b][k], p)) % p;
          images[b][j] = acc;
        }
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; ++c)
          rmat[c][b] = images[b][s.pivots[c]];
      std::size_t found = 0;
      std::vector<Subspace> pieces;
      for (std::int64_t lambda = 0; lambda < p && found < d; ++lambda) {
        ModMatrix shifted = rmat;
        for (std::size_t c = 0; c < d; ++c)
          shifted[c][c] = ((shifted[c][c] - lambda) % p + p) % p;
        ModMatrix ker = kernel(shifted, p);
        if (ker.empty())
          continue;
        found += ker.size();
        ModMatrix vecs;
        for (auto const &kv : ker) {
          std::vector<std::int64_t> v(r, 0);
          for (std::size_t b = 0; b < d; ++b)
            if (kv[b])
              for (std::size_t j = 0; j < r; ++j)
                v[j] = (v[j] + mulmod(kv[b], s.rows[b][j], p)) % p;
          vecs.push_back(std::move(v));
        }
        pieces.push_back(make_subspace(std::move(vecs), p));
      }
      if (found != d)
        return false;
      for (auto &piece : pieces)
        (piece.rows.size() == 1 ? done : next).push_back(std::move(piece));
    }
    spaces = std::move(next);
  }
  if (!spaces.empty())
    return false;

  std::int64_t root = primitive_root(p);
  std::int64_t eps = powmod(root, (p - 1) / e, p);
  std::vector<std::vector<int>> powers(r);
  for (std::size_t k = 0; k < r; ++k) {
    int z = cls.representative(k);
    int o = orders[static_cast<std::size_t>(z)];
    int cur = 0;
    for (int l = 0; l < o; ++l) {
      powers[k].push_back(cls.class_of[static_cast<std::size_t>(cur)]);
      cur = g.mul(cur, z);
    }
  }

  RawTable t;
  t.classes = cls;
  t.prime = p;
  std::int64_t degree_square_sum = 0;
  for (auto const &s : done) {
    std::vector<std::int64_t> w = s.rows[0];
    if (w[0] == 0)
      return false;
    std::int64_t scale = invmod(w[0], p);
    for (auto &x : w)
      x = mulmod(x, scale, p);
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < r; ++k)
      sum = (sum + mulmod(mulmod(w[k], w[inverse_class[k]], p), invmod(size[k] % p, p), p)) % p;
    if (sum == 0)
      return false;
    std::int64_t target = mulmod(n % p, invmod(sum, p), p);
    std::int64_t deg = 0;
    for (std::int64_t d = 1; d * d <= n; ++d)
      if (mulmod(d, d, p) == target) {
        deg = d;
        break;
      }
    if (deg == 0)
      return false;
    std::vector<std::int64_t> chi(r);
    for (std::size_t k = 0; k < r; ++k)
      chi[k] = mulmod(mulmod(deg, w[k], p), invmod(size[k] % p, p), p);
    std::vector<Cyclotomic> values(r);
    for (std::size_t k = 0; k < r; ++k) {
      int o = static_cast<int>(powers[k].size());
      std::int64_t zeta = powmod(eps, e / o, p);
      std::int64_t zeta_inv = invmod(zeta, p);
      std::int64_t o_inv = invmod(o, p);
      std::vector<Rational> mult(static_cast<std::size_t>(o), Rational(0));
      std::int64_t total = 0;
      for (int j = 0; j < o; ++j) {
        std::int64_t acc = 0;
        std::int64_t step = powmod(zeta_inv, j, p);
        std::int64_t f = 1;
        for (int l = 0; l < o; ++l) {
          acc = (acc + mulmod(chi[static_cast<std::size_t>(powers[k][static_cast<std::size_t>(l)])], f, p)) % p;
          f = mulmod(f, step, p);
        }
        std::int64_t m = mulmod(acc, o_inv, p);
        if (m > deg)
          return false;
        mult[static_cast<std::size_t>(j)] = Rational(m);
        total += m;
      }
      if (total != deg)
        return false;
      values[k] = Cyclotomic::from_exponents(o, mult);
    }
    degree_square_sum += deg * deg;
    t.values.push_back(std::move(values));
    t.degrees.push_back(deg);
  }
  if (degree_square_sum != n || t.values.size() != r)
    return false;
  out = std::move(t);
  return true;
}

RawTable dixon_schneider(AbstractGroup const &g)
{
  std::vector<std::function<int(int)>> steps;
  for (int s : g.gens)
    steps.push_back([&g, s](int x) { return g.mul(g.mul(s, x), g.inv[static_cast<std::size_t>(s)]); });
  TwistedClassPartition cls = orbits(g.n, steps);
  if (g.n == 1)
    return RawTable{cls, {{Cyclotomic(1)}}, {1}, 0};

  std::vector<int> orders(g.n, 1);
  std::int64_t e = 1;
  for (std::size_t x = 1; x < g.n; ++x) {
    int o = 1;
    int cur = static_cast<int>(x);
    while (cur != 0) {
      cur = g.mul(cur, static_cast<int>(x));
      ++o;
    }
    orders[x] = o;
    e = std::lcm(e, static_cast<std::int64_t>(o));
  }

  std::int64_t bound = 2 * static_cast<std::int64_t>(std::sqrt(static_cast<double>(g.n))) + 2;
  std::int64_t p = (bound / e + 1) * e + 1;
  for (int attempt = 0; attempt < 40; p += e) {
    if (!is_prime(p))
      continue;
    ++attempt;
    RawTable t;
    if (try_prime(g, cls, orders, e, p, t))
      return t;
  }
  throw Error("internal", "character table computation did not split");
}

AbstractGroup abstract(FiniteGroup const &g)
{
  AbstractGroup a;
  a.n = g.order();
  a.mul = [&g](int x, int y) { return g.mul(x, y); };
  for (std::size_t i = 0; i < g.order(); ++i)
    a.inv.push_back(g.inv(static_cast<int>(i)));
  a.gens = g.generators();
  return a;
}

std::vector<std::size_t> phi_class_map(FiniteGroup const &g, CharacterTable const &t, Automorphism const &phi)
{
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < t.classes.size(); ++k)
    out.push_back(static_cast<std::size_t>(
        t.classes.class_of[static_cast<std::size_t>(phi(t.classes.representative(k)))]));
  (void)g;
  return out;
}

} // namespace

Automorphism identity_automorphism(FiniteGroup const &g)
{
  std::vector<int> map(g.order());
  std::iota(map.begin(), map.end(), 0);
  return from_map(std::move(map));
}

Automorphism automorphism_from_images(FiniteGroup const &g, std::vector<Perm> const &images)
{
  std::vector<Perm> gens;
  for (int k : g.generators())
    gens.push_back(g.element(k));
  return automorphism_from_images(g, gens, images);
}

Automorphism automorphism_from_images(FiniteGroup const &g, std::vector<Perm> const &gens,
                                      std::vector<Perm> const &images)
{
  if (images.size() != gens.size())
    throw Error("invalid-argument", "need one image per generator");
  std::vector<int> src, img;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    int s = g.index_of(gens[i]);
    int k = g.index_of(images[i]);
    if (s < 0)
      throw Error("invalid-argument", "generator is not in the group");
    if (k < 0)
      throw Error("invalid-argument", "generator image is not in the group");
    src.push_back(s);
    img.push_back(k);
  }
  std::vector<int> map(g.order(), -1);
  map[0] = 0;
  std::vector<int> todo{0};
  while (!todo.empty()) {
    int x = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < src.size(); ++i) {
      int y = g.mul(x, src[i]);
      int fy = g.mul(map[static_cast<std::size_t>(x)], img[i]);
      if (map[static_cast<std::size_t>(y)] < 0) {
        map[static_cast<std::size_t>(y)] = fy;
        todo.push_back(y);
      } else if (map[static_cast<std::size_t>(y)] != fy) {
        throw Error("invalid-argument", "generator images do not define a homomorphism");
      }
    }
  }
  std::vector<bool> hit(g.order(), false);
  for (int v : map) {
    if (v < 0)
      throw Error("invalid-argument", "the given elements do not generate the group");
    if (hit[static_cast<std::size_t>(v)])
      throw Error("invalid-argument", "generator images do not define a bijection");
    hit[static_cast<std::size_t>(v)] = true;
  }
  return from_map(std::move(map));
}

Automorphism conjugation_automorphism(FiniteGroup const &g, Perm const &t)
{
  if (t.size() != g.degree() || !is_permutation(t))
    throw Error("invalid-permutation", "conjugating element has the wrong degree");
  Perm ti = cuspidal::inverse(t);
  std::vector<int> map(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    int k = g.index_of(cuspidal::compose(cuspidal::compose(t, g.element(static_cast<int>(i))), ti));
    if (k < 0)
      throw Error("invalid-argument", "conjugating element does not normalize the group");
    map[i] = k;
  }
  return from_map(std::move(map));
}

Automorphism compose(Automorphism const &a, Automorphism const &b)
{
  std::vector<int> map(b.map.size());
  for (std::size_t i = 0; i < map.size(); ++i)
    map[i] = a(b(static_cast<int>(i)));
  return from_map(std::move(map));
}

Automorphism inverse(Automorphism const &a)
{
  std::vector<int> map(a.map.size());
  for (std::size_t i = 0; i < map.size(); ++i)
    map[static_cast<std::size_t>(a.map[i])] = static_cast<int>(i);
  return from_map(std::move(map));
}

Automorphism restrict_automorphism(FiniteGroup const &g, Automorphism const &phi, FiniteGroup const &sub)
{
  std::vector<int> map(sub.order());
  for (std::size_t i = 0; i < sub.order(); ++i) {
    int k = g.index_of(sub.element(static_cast<int>(i)));
    if (k < 0)
      throw Error("invalid-argument", "subgroup is not contained in the group");
    int j = sub.index_of(g.element(phi(k)));
    if (j < 0)
      throw Error("invalid-argument", "automorphism does not preserve the subgroup");
    map[i] = j;
  }
  return from_map(std::move(map));
}

TwistedClassPartition twisted_classes(FiniteGroup const &g, Automorphism const &phi)
{
  if (phi.map.size() != g.order())
    throw Error("invalid-argument", "automorphism of a different group");
  std::vector<std::function<int(int)>> steps;
  for (int w : g.generators())
    steps.push_back([&g, &phi, w](int u) { return g.mul(g.mul(phi(w), u), g.inv(w)); });
  return orbits(g.order(), steps);
}

std::size_t twisted_centralizer_order(FiniteGroup const &g, Automorphism const &phi, int w)
{
  std::size_t count = 0;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (g.mul(g.mul(phi(static_cast<int>(x)), w), g.inv(static_cast<int>(x))) == w)
      ++count;
  return count;
}

CharacterTable character_table(FiniteGroup const &g)
{
  if (g.order() > kCharacterTableBound)
    throw Error("order-bound", "character tables are limited to order " + std::to_string(kCharacterTableBound));
  RawTable raw = dixon_schneider(abstract(g));
  std::vector<std::size_t> idx(raw.values.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto trivial = [&](std::size_t a) {
    return std::all_of(raw.values[a].begin(), raw.values[a].end(), [](Cyclotomic const &v) { return v == Cyclotomic(1); });
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    bool ta = trivial(a), tb = trivial(b);
    if (ta != tb)
      return ta;
    if (raw.degrees[a] != raw.degrees[b])
      return raw.degrees[a] < raw.degrees[b];
    return raw.values[a] < raw.values[b];
  });
  CharacterTable t;
  t.classes = raw.classes;
  t.prime = raw.prime;
  for (auto i : idx) {
    t.values.push_back(raw.values[i]);
    t.degrees.push_back(raw.degrees[i]);
  }
  return t;
}

std::string check_character_table(FiniteGroup const &g, CharacterTable const &t)
{
  std::size_t r = t.classes.size();
  if (t.classes.class_of.size() != g.order())
    return "class partition does not cover the group";
  // The classes must be the conjugacy classes.
  for (std::size_t k = 0; k < r; ++k)
    for (int x : t.classes.classes[k])
      for (int s : g.generators())
        if (t.classes.class_of[static_cast<std::size_t>(g.mul(g.mul(s, x), g.inv(s)))] != static_cast<int>(k))
          return "classes are not unions of conjugacy classes";
  auto conj = twisted_classes(g, identity_automorphism(g));
  if (conj.size() != r)
    return "number of classes differs from the number of conjugacy classes";
  if (t.values.size() != r)
    return "number of characters differs from the number of classes";
  Rational n(static_cast<std::int64_t>(g.order()));
  for (std::size_t a = 0; a < r; ++a) {
    if (t.values[a].size() != r)
      return "character " + std::to_string(a) + " has the wrong length";
    if (!(t.values[a][static_cast<std::size_t>(t.classes.class_of[0])] == Cyclotomic(t.degrees[a])))
      return "degree of character " + std::to_string(a) + " differs from its value at 1";
    for (std::size_t b = a; b < r; ++b) {
      Cyclotomic s(0);
      for (std::size_t k = 0; k < r; ++k)
        s += Cyclotomic(static_cast<std::int64_t>(t.classes.classes[k].size())) * t.values[a][k] *
             t.values[b][k].conj();
      if (!(s == Cyclotomic(a == b ? n : Rational(0))))
        return "first orthogonality fails for characters " + std::to_string(a) + ", " + std::to_string(b);
    }
  }
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = k; l < r; ++l) {
      Cyclotomic s(0);
      for (std::size_t a = 0; a < r; ++a)
        s += t.values[a][k] * t.values[a][l].conj();
      Cyclotomic want = k == l ? Cyclotomic(n / Rational(static_cast<std::int64_t>(t.classes.classes[k].size())))
                               : Cyclotomic(0);
      if (!(s == want))
        return "second orthogonality fails for classes " + std::to_string(k) + ", " + std::to_string(l);
    }
  return {};
}

std::vector<std::size_t> extendable_irreducibles(FiniteGroup const &g, CharacterTable const &t,
                                                 Automorphism const &phi)
{
  auto cmap = phi_class_map(g, t, phi);
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < t.size(); ++a) {
    bool stable = true;
    for (std::size_t k = 0; k < cmap.size() && stable; ++k)
      stable = t.values[a][cmap[k]] == t.values[a][k];
    if (stable)
      out.push_back(a);
  }
  return out;
}

int CosetCharacters::find(std::size_t chi) const
{
  for (std::size_t k = 0; k < base.size(); ++k)
    if (base[k] == chi)
      return static_cast<int>(k);
  return -1;
}

CosetCharacters extend_characters(FiniteGroup const &g, CharacterTable const &t, Automorphism const &phi)
{
  CosetCharacters out;
  out.phi = phi;
  out.twisted = twisted_classes(g, phi);
  auto stable = extendable_irreducibles(g, t, phi);
  if (phi.is_identity()) {
    for (auto a : stable) {
      out.base.push_back(a);
      std::vector<Cyclotomic> v;
      for (std::size_t c = 0; c < out.twisted.size(); ++c)
        v.push_back(t.value(a, out.twisted.representative(c)));
      out.values.push_back(std::move(v));
      bool rational = std::all_of(out.values.back().begin(), out.values.back().end(),
                                  [](Cyclotomic const &x) { return x.is_rational(); });
      out.normalization.push_back(rational ? "rational" : "argument");
    }
    return out;
  }

  // g x| <phi> with elements (k, w) = phi^k w and w phi = phi phi(w).
  int m = phi.order;
  std::size_t n = g.order();
  std::vector<std::vector<int>> power(static_cast<std::size_t>(m));
  power[0].resize(n);
  std::iota(power[0].begin(), power[0].end(), 0);
  for (int k = 1; k < m; ++k) {
    power[static_cast<std::size_t>(k)].resize(n);
    for (std::size_t x = 0; x < n; ++x)
      power[static_cast<std::size_t>(k)][x] = phi(power[static_cast<std::size_t>(k - 1)][x]);
  }
  AbstractGroup big;
  big.n = n * static_cast<std::size_t>(m);
  big.mul = [&](int a, int b) {
    int k1 = a / static_cast<int>(n), w1 = a % static_cast<int>(n);
    int k2 = b / static_cast<int>(n), w2 = b % static_cast<int>(n);
    int w = g.mul(power[static_cast<std::size_t>(k2)][static_cast<std::size_t>(w1)], w2);
    return ((k1 + k2) % m) * static_cast<int>(n) + w;
  };
  big.inv.resize(big.n);
  for (int k = 0; k < m; ++k)
    for (std::size_t w = 0; w < n; ++w) {
      int kk = (m - k) % m;
      int wi = g.inv(power[static_cast<std::size_t>(kk)][w]);
      big.inv[static_cast<std::size_t>(k) * n + w] = kk * static_cast<int>(n) + wi;
    }
  big.gens = g.generators();
  big.gens.push_back(static_cast<int>(n));
  RawTable raw = dixon_schneider(big);

  for (auto a : stable) {
    std::vector<std::vector<Cyclotomic>> candidates;
    for (std::size_t psi = 0; psi < raw.values.size(); ++psi) {
      bool restricts = true;
      for (std::size_t k = 0; k < t.classes.size() && restricts; ++k) {
        int z = t.classes.representative(k);
        restricts = raw.values[psi][static_cast<std::size_t>(raw.classes.class_of[static_cast<std::size_t>(z)])] ==
                    t.values[a][k];
      }
      if (!restricts)
        continue;
      std::vector<Cyclotomic> v;
      for (std::size_t c = 0; c < out.twisted.size(); ++c) {
        int u = static_cast<int>(n) + out.twisted.representative(c);
        v.push_back(raw.values[psi][static_cast<std::size_t>(raw.classes.class_of[static_cast<std::size_t>(u)])]);
      }
      candidates.push_back(std::move(v));
    }
    if (candidates.size() != static_cast<std::size_t>(m))
      throw Error("internal", "wrong number of extensions of a stable character");
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (std::all_of(candidates[i].begin(), candidates[i].end(), [](Cyclotomic const &x) { return x.is_rational(); }))
        pool.push_back(i);
    bool rational = !pool.empty();
    if (!rational) {
      pool.resize(candidates.size());
      std::iota(pool.begin(), pool.end(), 0);
    }
    auto argument = [&](std::size_t i) {
      for (auto const &x : candidates[i])
        if (!x.is_zero()) {
          double arg = std::arg(x.to_complex());
          return arg < -1e-12 ? arg + 2 * std::numbers::pi : std::max(arg, 0.0);
        }
      throw Error("internal", "extension vanishes on the whole coset");
    };
    std::size_t best = pool[0];
    for (auto i : pool)
      if (argument(i) < argument(best))
        best = i;
    out.base.push_back(a);
    out.values.push_back(candidates[best]);
    out.normalization.push_back(rational ? "rational" : "argument");
  }
  return out;
}

std::vector<Cyclotomic> extend_character(FiniteGroup const &g, CharacterTable const &t, Automorphism const &phi,
                                         std::size_t chi)
{
  if (chi >= t.size())
    throw Error("invalid-argument", "character index out of range");
  auto stable = extendable_irreducibles(g, t, phi);
  if (std::find(stable.begin(), stable.end(), chi) == stable.end())
    throw Error("invalid-argument", "character " + std::to_string(chi) + " is not stable under the automorphism");
  auto all = extend_characters(g, t, phi);
  return all.values[static_cast<std::size_t>(all.find(chi))];
}

} // namespace cuspidal
