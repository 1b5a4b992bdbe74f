#include "cuspidal/cuspidality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cuspidal/error.hpp"

namespace cuspidal {

namespace {

std::uint64_t isqrt(std::uint64_t n)
{
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  using wide = unsigned __int128;
  while (wide(r) * r > n)
    --r;
  while (wide(r + 1) * (r + 1) <= n)
    ++r;
  return r;
}

TypeDecomposition series(char s, int rank)
{
  if (rank <= 0)
    return {};
  return normalize_type({s, rank, false});
}

TypeDecomposition product(TypeDecomposition a, TypeDecomposition const &b)
{
  a.insert(a.end(), b.begin(), b.end());
  return canonical(a);
}

enum class PCond { always, p_not_2, p_is_2, p_not_3, p_is_3 };

bool holds(PCond c, int p)
{
  switch (c) {
  case PCond::always: return true;
  case PCond::p_not_2: return p != 2;
  case PCond::p_is_2: return p == 2;
  case PCond::p_not_3: return p != 3;
  case PCond::p_is_3: return p == 3;
  }
  return false;
}

char const *pcond_text(PCond c)
{
  switch (c) {
  case PCond::always: return "";
  case PCond::p_not_2: return " (p!=2)";
  case PCond::p_is_2: return " (p=2)";
  case PCond::p_not_3: return " (p!=3)";
  case PCond::p_is_3: return " (p=3)";
  }
  return "";
}

struct ExceptionalEntry
{
  char series;
  int rank;
  std::int64_t chi_order;
  std::vector<std::pair<char const *, PCond>> m_column;
};

// Third column of the cuspidal Levi table for the exceptional quasi-simple groups, keyed by
// the order of the central character.
std::vector<ExceptionalEntry> const &exceptional_entries()
{
  static std::vector<ExceptionalEntry> const entries{
      {'E', 6, 1, {{"A2^3", PCond::p_not_3}, {"E6", PCond::p_is_3}}},
      {'E', 6, 3, {{"A5xA1", PCond::p_not_2}, {"E6", PCond::always}}},
      {'E', 7, 1, {{"A3^2xA1", PCond::p_not_2}, {"E7", PCond::p_is_2}}},
      {'E', 7, 2, {{"A5xA2", PCond::p_not_3}, {"E7", PCond::p_is_3}}},
      {'E', 8, 1,
       {{"A4^2", PCond::always},
        {"A5xA2xA1", PCond::always},
        {"D5xA3", PCond::always},
        {"D8", PCond::always},
        {"E6xA2", PCond::always},
        {"E7xA1", PCond::always},
        {"E8", PCond::always}}},
      {'F', 4, 1,
       {{"C3xA1", PCond::always},
        {"A2xA2", PCond::always},
        {"A3xA1", PCond::always},
        {"B4", PCond::always},
        {"F4", PCond::always}}},
      {'G', 2, 1, {{"A1x~A1", PCond::always}, {"A2", PCond::always}, {"G2", PCond::always}}},
  };
  return entries;
}

std::vector<BaseCaseWitness> classical_witnesses(CartanType const &t, CentralCharacter const &chi, int p)
{
  using Kind = CentralCharacter::Kind;
  int k = t.rank;
  std::vector<BaseCaseWitness> out;
  auto add = [&](int r, int s, std::string cond, TypeDecomposition m) {
    BaseCaseWitness w;
    w.r = r;
    w.s = s;
    w.condition = std::move(cond);
    w.m_types.push_back(canonical(std::move(m)));
    out.push_back(std::move(w));
  };
  auto rs_text = [](int r, int s) { return "r=" + std::to_string(r) + ",s=" + std::to_string(s) + ": "; };

  switch (t.series) {
  case 'A':
    if (chi.order == k + 1)
      add(-1, -1, "chi of order " + std::to_string(k + 1), {t});
    break;
  case 'B':
    if (chi.kind == Kind::trivial && p == 2) {
      if (k % 2 == 0 && is_triangular(k / 2))
        add(k, -1, "r=" + std::to_string(k) + " in 2*tri", series('B', k));
    } else if (chi.kind == Kind::trivial) {
      for (int r = 0; r <= k; ++r) {
        int s = k - r;
        if (is_square(2 * r + 1) && is_square(2 * s))
          add(r, s,
              rs_text(r, s) + "2r+1=" + std::to_string(2 * r + 1) + ", 2s=" + std::to_string(2 * s) +
                  " in sq",
              product(series('B', r), series('D', s)));
      }
    } else {
      for (int r = 0; r <= k; ++r) {
        int s = k - r;
        if (is_triangular(2 * r + 1) && is_triangular(2 * s))
          add(r, s,
              rs_text(r, s) + "2r+1=" + std::to_string(2 * r + 1) + ", 2s=" + std::to_string(2 * s) +
                  " in tri",
              product(series('B', r), series('D', s)));
      }
    }
    break;
  case 'C':
    if (chi.kind == Kind::trivial && p == 2) {
      if (k % 2 == 0 && is_triangular(k / 2))
        add(k, -1, "r=" + std::to_string(k) + " in 2*tri", series('C', k));
    } else {
      // Parity of r+s = k matches the character: even for trivial, odd otherwise.
      bool want_odd = chi.kind != Kind::trivial;
      if ((k % 2 == 1) != want_odd)
        break;
      for (int r = k; 2 * r >= k; --r) {
        int s = k - r;
        if (is_triangular(r) && is_triangular(s))
          add(r, s,
              rs_text(r, s) + "r+s=" + std::to_string(k) + (want_odd ? " odd" : " even") +
                  ", r,s in tri",
              product(series('C', r), series('C', s)));
      }
    }
    break;
  case 'D':
    if (chi.kind == Kind::trivial && p == 2) {
      if (k % 4 == 0 && is_square(k / 4))
        add(k, -1, "r=" + std::to_string(k) + " in 4*sq", series('D', k));
    } else if (chi.kind == Kind::trivial || chi.kind == Kind::vector) {
      int residue = chi.kind == Kind::trivial ? 0 : 2;
      if (k % 4 != residue)
        break;
      for (int r = k; 2 * r >= k; --r) {
        int s = k - r;
        if (is_square(2 * r) && is_square(2 * s))
          add(r, s,
              rs_text(r, s) + "r+s=" + std::to_string(k) + " = " + std::to_string(residue) +
                  " mod 4, 2r=" + std::to_string(2 * r) + ", 2s=" + std::to_string(2 * s) + " in sq",
              product(series('D', r), series('D', s)));
      }
    } else {
      for (int r = k; 2 * r >= k; --r) {
        int s = k - r;
        if (is_triangular(2 * r) && is_triangular(2 * s))
          add(r, s,
              rs_text(r, s) + "2r=" + std::to_string(2 * r) + ", 2s=" + std::to_string(2 * s) +
                  " in tri",
              product(series('D', r), series('D', s)));
      }
    }
    break;
  default: break;
  }
  return out;
}

} // namespace

bool is_triangular(std::int64_t n)
{
  if (n < 0)
    return false;
  // t(t+1)/2 = n has t = floor(sqrt(2n)).
  std::uint64_t t = isqrt(2 * static_cast<std::uint64_t>(n));
  return static_cast<unsigned __int128>(t) * (t + 1) / 2 == static_cast<std::uint64_t>(n);
}

bool is_square(std::int64_t n)
{
  if (n < 0)
    return false;
  std::uint64_t r = isqrt(static_cast<std::uint64_t>(n));
  return r * r == static_cast<std::uint64_t>(n);
}

std::string CentralCharacter::str() const
{
  switch (kind) {
  case Kind::trivial: return "1";
  case Kind::vector: return "vector";
  case Kind::spin: return "spin";
  case Kind::other: break;
  }
  return "order " + std::to_string(order);
}

CentralCharacter classify_central_character(CartanType const &t, IntVector const &weight)
{
  IntMatrix c = cartan_matrix(t);
  // Simple root i has weight coordinates row i of the transposed Cartan matrix.
  RatMatrix m(c.size(), RatVector(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      m[i][j] = Rational(c[j][i]);
  RatVector w(weight.begin(), weight.end());
  RatVector r = row_times(w, inverse(m));
  CentralCharacter chi;
  for (auto const &x : r)
    chi.order = std::lcm(chi.order, x.den());
  if (chi.order == 1)
    chi.kind = CentralCharacter::Kind::trivial;
  else if (t.series == 'D')
    chi.kind = r[0].is_integer() ? CentralCharacter::Kind::vector : CentralCharacter::Kind::spin;
  else
    chi.kind = CentralCharacter::Kind::other;
  return chi;
}

std::vector<BaseCaseWitness> base_case_witnesses(CartanType const &t0, CentralCharacter const &chi, int p)
{
  auto norm = normalize_type(t0);
  if (norm.size() != 1)
    throw Error("invalid-argument", "base case expects one quasi-simple factor, got " + t0.str());
  CartanType t = norm[0];
  if (chi.order > 1 && p > 1 && chi.order % p == 0)
    throw Error("invalid-argument", "central character order divisible by p");

  if (t.series == 'A' || t.series == 'B' || t.series == 'C' || t.series == 'D')
    return classical_witnesses(t, chi, p);

  if (p == 2 && ((t.series == 'E' && t.rank == 8) || t.series == 'F'))
    throw Error("unsupported", t.str() + " in characteristic 2 is not covered");
  for (auto const &e : exceptional_entries()) {
    if (e.series != t.series || e.rank != t.rank || e.chi_order != chi.order)
      continue;
    BaseCaseWitness w;
    w.condition = t.str() + " with chi of order " + std::to_string(chi.order);
    for (auto const &[m, c] : e.m_column)
      if (holds(c, p)) {
        w.m_types.push_back(parse_types(m));
        w.condition += std::string(w.m_types.size() == 1 ? "; M " : ", ") + m + pcond_text(c);
      }
    return {w};
  }
  throw Error("unsupported", "no tabulated data for " + t.str() + " with chi of order " +
                                 std::to_string(chi.order));
}

bool base_case_admits(CartanType const &t, CentralCharacter const &chi, int p)
{
  return !base_case_witnesses(t, chi, p).empty();
}

bool witness_holds(CartanType const &t0, CentralCharacter const &chi, int p, BaseCaseWitness const &w)
{
  auto norm = normalize_type(t0);
  CartanType t = norm.at(0);
  int k = t.rank;
  using Kind = CentralCharacter::Kind;
  bool trivial = chi.kind == Kind::trivial;
  switch (t.series) {
  case 'A': return chi.order == k + 1;
  case 'B':
    if (trivial && p == 2)
      return w.r == k && k % 2 == 0 && is_triangular(k / 2);
    if (w.r + w.s != k)
      return false;
    return trivial ? is_square(2 * w.r + 1) && is_square(2 * w.s)
                   : is_triangular(2 * w.r + 1) && is_triangular(2 * w.s);
  case 'C':
    if (trivial && p == 2)
      return w.r == k && k % 2 == 0 && is_triangular(k / 2);
    return w.r + w.s == k && ((k % 2 == 1) == !trivial) && is_triangular(w.r) && is_triangular(w.s);
  case 'D':
    if (trivial && p == 2)
      return w.r == k && k % 4 == 0 && is_square(k / 4);
    if (w.r + w.s != k)
      return false;
    if (chi.kind == Kind::spin)
      return is_triangular(2 * w.r) && is_triangular(2 * w.s);
    return k % 4 == (trivial ? 0 : 2) && is_square(2 * w.r) && is_square(2 * w.s);
  default: return !base_case_witnesses(t, chi, p).empty();
  }
}

GroupDescription group_of(RootDatum const &g)
{
  return GroupDescription{g.root_system(), g.lattice_basis(), 0};
}

GroupDescription levi_group(RootDatum const &g, std::vector<int> const &levi)
{
  RootSystem const &rs = g.root_system();
  std::size_t n = rs.rank();
  GroupDescription k;
  k.torus_rank = static_cast<int>(n - levi.size());
  for (int j : levi)
    if (j < 0 || j >= static_cast<int>(n))
      throw Error("invalid-argument", "Levi node is not a simple root");
  if (levi.empty()) {
    k.roots = RootSystem(TypeDecomposition{});
    return k;
  }
  auto comps = decompose(rs, levi);
  TypeDecomposition types;
  std::vector<int> order;
  for (auto const &c : comps) {
    types.push_back(c.type);
    order.insert(order.end(), c.nodes.begin(), c.nodes.end());
  }
  k.roots = RootSystem(types);
  if (k.roots.rank() != order.size())
    throw Error("internal", "Levi components changed rank under normalization");

  // X meets the span of the Levi in the vectors whose root coordinates vanish off the Levi.
  IntMatrix const &basis = g.lattice_basis();
  std::vector<RatVector> coords;
  for (auto const &b : basis)
    coords.push_back(g.to_root_coordinates(b));
  std::vector<std::size_t> off;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(levi.begin(), levi.end(), static_cast<int>(i)) == levi.end())
      off.push_back(i);
  std::int64_t den = 1;
  for (auto const &c : coords)
    for (auto x : off)
      den = std::lcm(den, c[x].den());
  IntMatrix restricted(basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (auto x : off)
      restricted[r].push_back((coords[r][x] * Rational(den)).num());
  IntMatrix kernel = off.empty() ? identity_matrix(basis.size()) : left_kernel(restricted, off.size());
  IntMatrix sub = multiply(kernel, basis);
  for (auto const &v : sub) {
    IntVector w;
    for (int j : order)
      w.push_back(v[j]);
    k.lattice.push_back(std::move(w));
  }
  return k;
}

std::vector<CharacterVerdict> character_verdicts(GroupDescription const &k, int p)
{
  RootSystem const &rs = k.roots;
  std::size_t n = rs.rank();
  std::vector<CharacterVerdict> out;
  if (n == 0) {
    CharacterVerdict v;
    v.admits = true;
    out.push_back(v);
    return out;
  }
  IntMatrix const &cartan = rs.cartan();
  IntMatrix gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector row(n);
    for (std::size_t j = 0; j < n; ++j)
      row[j] = cartan[j][i];
    gens.push_back(row);
  }
  for (auto const &g : k.lattice) {
    if (g.size() != n)
      throw Error("invalid-argument", "lattice generator has the wrong length");
    gens.push_back(g);
  }
  IntMatrix xb = hermite_basis(gens, n);
  if (xb.size() != n)
    throw Error("invalid-argument", "lattice does not have full rank");

  // X/Q: express Q in the X basis and diagonalize.
  RatMatrix xinv = inverse(to_rational(xb));
  IntMatrix qrel;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector c = row_times(RatVector(gens[i].begin(), gens[i].end()), xinv);
    IntVector row;
    for (auto const &x : c)
      row.push_back(x.num());
    qrel.push_back(row);
  }
  auto snf = smith_normal_form(qrel, n);
  RatMatrix vinv = inverse(to_rational(snf.V));
  IntMatrix cls;
  IntVector full;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t d = snf.D[i][i];
    if (d <= 1)
      continue;
    RatVector g = row_times(vinv[i], to_rational(xb));
    IntVector gi;
    for (auto const &x : g)
      gi.push_back(x.num());
    cls.push_back(gi);
    full.push_back(d);
  }
  FiniteAbelianGroup local;
  for (auto d : full)
    local.invariant_factors.push_back(prime_to_p(d, p));
  // Keep factors that survive, remembering the scaling a = (d/d') b.
  std::vector<std::size_t> kept;
  FiniteAbelianGroup pp;
  for (std::size_t i = 0; i < full.size(); ++i)
    if (local.invariant_factors[i] > 1) {
      kept.push_back(i);
      pp.invariant_factors.push_back(local.invariant_factors[i]);
    }

  auto const &comps = rs.component_nodes();
  for (auto const &tuple : pp.elements()) {
    CharacterVerdict v;
    v.weight.assign(n, 0);
    for (std::size_t t = 0; t < kept.size(); ++t) {
      std::size_t i = kept[t];
      std::int64_t a = tuple[t] * (full[i] / pp.invariant_factors[t]);
      for (std::size_t j = 0; j < n; ++j)
        v.weight[j] += a * cls[i][j];
    }
    v.admits = true;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      FactorVerdict f;
      f.type = rs.type()[c];
      IntVector w(v.weight.begin() + comps[c].first, v.weight.begin() + comps[c].second);
      f.chi = classify_central_character(f.type, w);
      if (v.admits) {
        f.witnesses = base_case_witnesses(f.type, f.chi, p);
        v.admits = !f.witnesses.empty();
      }
      v.factors.push_back(std::move(f));
    }
    out.push_back(std::move(v));
  }
  return out;
}

bool admits_cuspidal(GroupDescription const &k, int p)
{
  for (auto const &v : character_verdicts(k, p))
    if (v.admits)
      return true;
  return false;
}

std::vector<CuspidalLeviRecord> generate_table1(RootDatum const &g, int p, std::vector<std::string> *refused)
{
  RootSystem const &rs = g.root_system();
  std::vector<CuspidalLeviRecord> out;
  for (auto const &cls : levi_subsets_up_to_conjugacy(rs)) {
    auto k = levi_group(g, cls.representative);
    std::vector<CharacterVerdict> verdicts;
    try {
      verdicts = character_verdicts(k, p);
    } catch (Error const &e) {
      if (e.kind() != "unsupported" || refused == nullptr)
        throw;
      refused->push_back(type_string(cls.type) + ": " + std::string(e.what()).substr(e.kind().size() + 2));
      continue;
    }
    CuspidalLeviRecord rec;
    rec.levi_class = cls;
    rec.levi_type = type_string(cls.type);
    std::ostringstream cond;
    for (auto &v : verdicts) {
      if (!v.admits)
        continue;
      // M types: one witness option per factor, all combinations.
      std::vector<TypeDecomposition> combos{{}};
      if (!cond.str().empty())
        cond << " | ";
      bool first = true;
      for (auto const &f : v.factors) {
        std::vector<TypeDecomposition> next;
        for (auto const &w : f.witnesses)
          for (auto const &m : w.m_types)
            for (auto const &c : combos)
              next.push_back(product(c, m));
        combos.swap(next);
        cond << (first ? "" : "; ") << f.type.str() << "[chi " << f.chi.str() << "]";
        for (auto const &w : f.witnesses)
          cond << " " << w.condition;
        first = false;
      }
      if (v.factors.empty())
        cond << "torus";
      for (auto const &c : combos)
        if (std::find(rec.m_types.begin(), rec.m_types.end(), c) == rec.m_types.end())
          rec.m_types.push_back(c);
      rec.characters.push_back(std::move(v));
    }
    if (rec.characters.empty())
      continue;
    rec.condition = cond.str();
    out.push_back(std::move(rec));
  }
  return out;
}

bool record_condition_holds(CuspidalLeviRecord const &r, int p)
{
  if (r.characters.empty())
    return false;
  for (auto const &v : r.characters) {
    if (!v.admits)
      return false;
    for (auto const &f : v.factors) {
      if (f.witnesses.empty())
        return false;
      for (auto const &w : f.witnesses)
        if (!witness_holds(f.type, f.chi, p, w))
          return false;
    }
  }
  return true;
}

std::vector<std::string> render_table1(std::vector<CuspidalLeviRecord> const &records)
{
  std::vector<std::string> lines;
  for (auto const &r : records) {
    std::string line = r.levi_type + " |";
    for (std::size_t i = 0; i < r.m_types.size(); ++i)
      line += (i ? ", " : " ") + type_string(r.m_types[i]);
    lines.push_back(line);
  }
  return lines;
}

std::set<std::string> table1_classical_levi_types(CartanType const &t, std::string const &label0, int p)
{
  int n = t.rank;
  std::set<std::string> out;
  auto put = [&](TypeDecomposition d) { out.insert(type_string(canonical(std::move(d)))); };
  auto a1s = [](int j) {
    TypeDecomposition d;
    for (int i = 0; i < j; ++i)
      d.push_back({'A', 1, false});
    return d;
  };
  std::string label = make_root_datum(t, label0).isogeny_label();
  bool sc = label == "sc";
  bool ad = label == "ad";

  switch (t.series) {
  case 'A': {
    std::int64_t d = 1;
    if (ad)
      d = n + 1;
    else if (label.rfind("SL_mod_", 0) == 0)
      d = std::stoll(label.substr(7));
    std::int64_t np = prime_to_p(n + 1, p);
    if (np % d != 0)
      throw Error("invalid-argument", "d must divide (n+1)_p'");
    for (int r = 0; r <= n; ++r)
      if ((n + 1) % (r + 1) == 0 && np % ((r + 1) * d) == 0) {
        TypeDecomposition m;
        for (int i = 0; i < (n + 1) / (r + 1); ++i)
          if (r > 0)
            m.push_back({'A', r, false});
        put(m);
      }
    break;
  }
  case 'B':
    // SO_{2n+1} rows, valid for Spin as well.
    if (p == 2) {
      for (int r = 0; r <= n; r += 2)
        if (is_triangular(r / 2))
          put(series('B', r));
    } else {
      for (int r = 0; r <= n; ++r)
        for (int s = 0; r + s <= n; ++s)
          if (is_square(2 * r + 1) && is_square(2 * s))
            put(series('B', r + s));
    }
    if (sc && p != 2)
      for (int r = 0; r <= n; ++r)
        for (int s = 0; r + s <= n; ++s)
          if ((n - r - s) % 2 == 0 && is_triangular(2 * r + 1) && is_triangular(2 * s))
            put(product(series('B', r + s), a1s((n - r - s) / 2)));
    break;
  case 'C':
    if (p == 2) {
      for (int r = 0; r <= n; r += 2)
        if (is_triangular(r / 2))
          put(series('C', r));
    } else {
      for (int r = 0; r <= n; ++r)
        for (int s = 0; r + s <= n; ++s)
          if (is_triangular(r) && is_triangular(s) && ((r + s) % 2 == 0 || sc))
            put(series('C', r + s));
    }
    break;
  case 'D': {
    bool so = label == "SO";
    bool half = label == "HalfSpin";
    if (p == 2) {
      for (int r = 0; r <= n; r += 4)
        if (is_square(r / 4))
          put(series('D', r));
      break;
    }
    for (int r = 0; r <= n; ++r)
      for (int s = 0; r + s <= n; ++s) {
        if (!is_square(2 * r) || !is_square(2 * s))
          continue;
        int m = r + s;
        if (m % 4 == 0 || (m % 4 == 2 && (so || sc)))
          put(series('D', m));
      }
    if (sc || half)
      for (int r = 0; r <= n; ++r)
        for (int s = 0; r + s <= n; ++s)
          if ((n - r - s) % 2 == 0 && is_triangular(2 * r) && is_triangular(2 * s))
            put(product(series('D', r + s), a1s((n - r - s) / 2)));
    break;
  }
  default: throw Error("invalid-type", "not a classical family: " + t.str());
  }
  return out;
}

} // namespace cuspidal
