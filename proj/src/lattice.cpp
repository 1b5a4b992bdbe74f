#include "cuspidal/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "cuspidal/error.hpp"

namespace cuspidal {

namespace {

IntMatrix to_integer(RatMatrix const &m, char const *what)
{
  IntMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto const &x : m[i]) {
      if (!x.is_integer())
        throw Error("internal", std::string(what) + " is not integral");
      r[i].push_back(x.num());
    }
  return r;
}

RatMatrix rat_transpose(RatMatrix const &a)
{
  if (a.empty())
    return {};
  RatMatrix t(a[0].size(), RatVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j)
      t[j][i] = a[i][j];
  return t;
}

RatVector rat_vector(IntVector const &v)
{
  return RatVector(v.begin(), v.end());
}

// Weight coordinates of the simple roots: row i is <alpha_i, alpha_j^vee>.
IntMatrix simple_root_weights(RootSystem const &rs)
{
  return transpose(rs.cartan());
}

} // namespace

std::int64_t FiniteAbelianGroup::order() const
{
  std::int64_t o = 1;
  for (auto d : invariant_factors)
    o *= d;
  return o;
}

std::string FiniteAbelianGroup::str() const
{
  if (invariant_factors.empty())
    return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i)
    os << (i ? "x" : "") << "Z/" << invariant_factors[i];
  return os.str();
}

std::vector<IntVector> FiniteAbelianGroup::elements() const
{
  std::vector<IntVector> out{IntVector(invariant_factors.size(), 0)};
  for (std::size_t i = invariant_factors.size(); i-- > 0;) {
    std::vector<IntVector> next;
    for (std::int64_t a = 0; a < invariant_factors[i]; ++a)
      for (auto e : out) {
        e[i] = a;
        next.push_back(std::move(e));
      }
    out.swap(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t FiniteAbelianGroup::element_order(IntVector const &e) const
{
  std::int64_t o = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::int64_t d = invariant_factors[i];
    std::int64_t a = ((e[i] % d) + d) % d;
    o = std::lcm(o, d / std::gcd(a, d));
  }
  return o;
}

FiniteAbelianGroup FiniteAbelianGroup::from_relations(IntMatrix const &relations,
                                                      std::size_t generators)
{
  FiniteAbelianGroup g;
  if (relations.empty())
    return g;
  auto s = smith_normal_form(relations, generators);
  for (auto d : s.diagonal())
    if (d > 1)
      g.invariant_factors.push_back(d);
  return g;
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(IntVector const &orders)
{
  IntMatrix rel;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    IntVector r(orders.size(), 0);
    r[i] = orders[i];
    rel.push_back(r);
  }
  return from_relations(rel, orders.size());
}

std::int64_t prime_to_p(std::int64_t n, int p)
{
  if (p <= 1 || n == 0)
    return n;
  while (n % p == 0)
    n /= p;
  return n;
}

FiniteAbelianGroup prime_to_p_part(FiniteAbelianGroup const &g, int p)
{
  FiniteAbelianGroup r;
  for (auto d : g.invariant_factors) {
    auto q = prime_to_p(d, p);
    if (q > 1)
      r.invariant_factors.push_back(q);
  }
  return r;
}

RootDatum::RootDatum(RootSystem rs, IntMatrix const &extra_generators, std::string label)
  : rs_(std::move(rs)), label_(std::move(label))
{
  std::size_t n = rs_.rank();
  IntMatrix gens = simple_root_weights(rs_);
  for (auto const &g : extra_generators) {
    if (g.size() != n)
      throw Error("invalid-argument", "lattice generator has the wrong length");
    gens.push_back(g);
  }
  basis_ = hermite_basis(gens, n);
  weight_to_root_ = inverse(to_rational(simple_root_weights(rs_)));

  // Y = {c : <lambda, c> in Z for lambda in X}: dual basis of X in root coordinates.
  RatMatrix x_roots;
  for (auto const &b : basis_)
    x_roots.push_back(to_root_coordinates(b));
  cochar_ = hermite_basis(to_integer(rat_transpose(inverse(x_roots)), "cocharacter basis"), n);
}

IntVector RootDatum::root_weight(int i) const
{
  IntMatrix m = simple_root_weights(rs_);
  IntVector w(rs_.rank(), 0);
  IntVector const &c = rs_.root(i);
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t j = 0; j < w.size(); ++j)
      w[j] += c[k] * m[k][j];
  return w;
}

RatVector RootDatum::to_root_coordinates(IntVector const &weight) const
{
  return row_times(rat_vector(weight), weight_to_root_);
}

bool RootDatum::contains(IntVector const &weight) const
{
  return in_lattice(rat_vector(weight), basis_);
}

std::int64_t RootDatum::index_over_root_lattice() const
{
  std::int64_t q = std::llabs(determinant(simple_root_weights(rs_)));
  std::int64_t x = std::llabs(determinant(basis_));
  return q / x;
}

RootDatum make_root_datum(CartanType const &t, std::string const &label0)
{
  check_cartan_type(t);
  RootSystem rs({t});
  std::size_t n = static_cast<std::size_t>(t.rank);
  auto unit = [&](std::size_t i, std::int64_t k = 1) {
    IntVector v(n, 0);
    v[i] = k;
    return v;
  };
  auto bad = [&]() -> RootDatum {
    throw Error("invalid-type", "isogeny label '" + label0 + "' does not apply to " + t.str());
  };

  std::string label = label0;
  if (label == "SL" || (label == "Spin" && (t.series == 'B' || t.series == 'D')) ||
      (label == "Sp" && t.series == 'C'))
    label = "sc";
  if (label == "PGL" || (label == "PSp" && t.series == 'C') ||
      (label == "SO" && t.series == 'B') || (label == "PSO" && t.series == 'D'))
    label = "ad";
  if ((label == "SL" || label == "PGL") && t.series != 'A')
    return bad();

  if (label == "sc")
    return RootDatum(rs, identity_matrix(n), "sc");
  if (label == "ad")
    return RootDatum(rs, {}, "ad");
  if (t.series == 'D' && label == "SO")
    return RootDatum(rs, {unit(0)}, "SO");
  if (t.series == 'D' && label == "HalfSpin") {
    if (n % 2 != 0)
      return bad();
    return RootDatum(rs, {unit(n - 1)}, "HalfSpin");
  }
  for (std::string prefix : {"SL_mod_", "SLmod:"}) {
    if (t.series != 'A' || label.rfind(prefix, 0) != 0)
      continue;
    std::int64_t d = 0;
    try {
      d = std::stoll(label.substr(prefix.size()));
    } catch (std::exception const &) {
      return bad();
    }
    if (d < 1 || (t.rank + 1) % d != 0)
      return bad();
    return RootDatum(rs, {unit(0, d)}, "SL_mod_" + std::to_string(d));
  }
  return bad();
}

RootDatum parse_root_datum(std::string const &s)
{
  auto colon = s.find(':');
  if (colon == std::string::npos)
    throw Error("parse", "expected TYPE:LABEL, got '" + s + "'");
  return make_root_datum(parse_cartan_type(s.substr(0, colon)), s.substr(colon + 1));
}

FiniteAbelianGroup center_component_group(RootDatum const &g, std::vector<int> const &levi, int p)
{
  RootSystem const &rs = g.root_system();
  std::size_t n = rs.rank();
  RatMatrix basis_inv = inverse(to_rational(g.lattice_basis()));
  IntMatrix rel;
  for (int j : levi) {
    if (j < 0 || j >= static_cast<int>(n))
      throw Error("invalid-argument", "Levi node is not a simple root");
    IntVector w = g.root_weight(j);
    rel.push_back(to_integer({row_times(rat_vector(w), basis_inv)}, "root in X")[0]);
  }
  return prime_to_p_part(FiniteAbelianGroup::from_relations(rel, n), p);
}

Rational root_value(RootSystem const &rs, int root, RatVector const &coords)
{
  Rational v(0);
  IntVector const &c = rs.root(root);
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0)
      v += Rational(c[k]) * coords[k];
  return v - Rational(v.floor());
}

RatVector act_on_center(RootSystem const &rs, Perm const &w, RatVector const &coords)
{
  // alpha_j(w t w^-1) = (w^-1 alpha_j)(t).
  Perm wi = inverse(w);
  RatVector out(rs.rank());
  for (std::size_t j = 0; j < rs.rank(); ++j) {
    IntVector const &c = rs.root(static_cast<int>(wi[j]));
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0)
        out[j] += Rational(c[k]) * coords[k];
  }
  return out;
}

int SubsystemCenter::index_of(RatVector const &coords) const
{
  RatVector r = reduce_mod_lattice(coords, cocharacters);
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].coords == r)
      return static_cast<int>(i);
  return -1;
}

SubsystemCenter subsystem_center(RootDatum const &g, std::vector<int> const &psi, int p)
{
  RootSystem const &rs = g.root_system();
  std::size_t n = rs.rank();
  SubsystemCenter out;
  out.base = subsystem_base(rs, reflection_closure(rs, psi));
  if (out.base.size() != n)
    throw Error("invalid-argument", "subsystem does not have full rank");
  out.cocharacters = g.cocharacter_basis();

  // (Z psi)^* has basis F = (B^-1)^T for B the base in root coordinates, and
  // Y = K F with K = Y B^T. The SNF U K V = D gives generators V^-1 F.
  IntMatrix b;
  for (int r : out.base)
    b.push_back(rs.root(r));
  RatMatrix f = rat_transpose(inverse(to_rational(b)));
  IntMatrix k = multiply(out.cocharacters, transpose(b));
  auto snf = smith_normal_form(k, n);
  RatMatrix gens = multiply(inverse(to_rational(snf.V)), f);
  IntVector d = snf.diagonal();

  IntVector full_factors;
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < n; ++i)
    if (d[i] > 1) {
      full_factors.push_back(d[i]);
      slots.push_back(i);
    }
  FiniteAbelianGroup full{full_factors};
  out.group = prime_to_p_part(full, p);

  // Enumerate the prime-to-p part: a_i = (d_i / d_i') b_i.
  FiniteAbelianGroup local;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < full_factors.size(); ++i) {
    auto q = prime_to_p(full_factors[i], p);
    if (q > 1) {
      local.invariant_factors.push_back(q);
      kept.push_back(i);
    }
  }
  for (auto const &tuple : local.elements()) {
    RatVector c(n);
    for (std::size_t t = 0; t < kept.size(); ++t) {
      std::size_t i = kept[t];
      Rational a(tuple[t] * (full_factors[i] / local.invariant_factors[t]));
      for (std::size_t j = 0; j < n; ++j)
        c[j] += a * gens[slots[i]][j];
    }
    CenterElement e;
    e.coords = reduce_mod_lattice(c, out.cocharacters);
    e.tuple = tuple;
    e.order = local.element_order(tuple);
    e.central = std::all_of(e.coords.begin(), e.coords.end(),
                            [](Rational const &x) { return x.is_integer(); });
    out.elements.push_back(std::move(e));
  }
  return out;
}

FiniteAbelianGroup full_center(RootDatum const &g, std::vector<int> const &psi, int p)
{
  return subsystem_center(g, psi, p).group;
}

std::vector<CenterElement> center_elements_outside_subcenter(RootDatum const &g,
                                                             std::vector<int> const &psi, int p)
{
  std::vector<CenterElement> out;
  for (auto &e : subsystem_center(g, psi, p).elements)
    if (!e.central)
      out.push_back(std::move(e));
  return out;
}

CenterAction normalizer_center_action(RootDatum const &g, std::vector<int> const &psi, int p)
{
  RootSystem const &rs = g.root_system();
  CenterAction act;
  act.center = subsystem_center(g, psi, p);
  WeylGroup w(rs);
  act.cosets = base_stabilizer_representatives(w, act.center.base);

  std::size_t m = act.center.elements.size();
  for (auto const &c : act.cosets) {
    Perm map(m);
    for (std::size_t i = 0; i < m; ++i) {
      int j = act.center.index_of(act_on_center(rs, c.element, act.center.elements[i].coords));
      if (j < 0)
        throw Error("internal", "normalizer element does not preserve Z(H)");
      map[i] = static_cast<std::uint32_t>(j);
    }
    act.element_maps.push_back(std::move(map));
  }

  // Greedy generating set for the permutation action on the base.
  std::map<std::vector<int>, std::size_t> pos;
  std::vector<std::size_t> index_in_base(rs.size(), 0);
  for (std::size_t i = 0; i < act.center.base.size(); ++i)
    index_in_base[act.center.base[i]] = i;
  std::vector<Perm> base_perms;
  for (auto const &c : act.cosets) {
    Perm q(c.image.size());
    for (std::size_t i = 0; i < q.size(); ++i)
      q[i] = static_cast<std::uint32_t>(index_in_base[c.image[i]]);
    base_perms.push_back(q);
  }
  std::set<Perm> generated{identity_perm(act.center.base.size())};
  for (std::size_t k = 1; k < base_perms.size(); ++k) {
    if (generated.count(base_perms[k]))
      continue;
    act.generators.push_back(k);
    std::vector<Perm> frontier(generated.begin(), generated.end());
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (auto const &x : frontier)
        for (std::size_t gi : act.generators) {
          Perm y = compose(base_perms[gi], x);
          if (generated.insert(y).second)
            next.push_back(y);
        }
      frontier.swap(next);
    }
  }

  std::ostringstream os;
  os << "N_W(W_psi)/W_psi of order " << act.cosets.size() << " for psi of type "
     << type_string(type_of(rs, act.center.base)) << ", acting on Z(H) = " << act.center.group.str();
  act.source = os.str();
  return act;
}

} // namespace cuspidal
