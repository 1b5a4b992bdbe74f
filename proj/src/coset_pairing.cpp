#include "cuspidal/coset_pairing.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace cuspidal {

namespace {

constexpr std::uint64_t kOmegaBound = 100000;

bool valid_perm(Perm const &p, std::size_t degree)
{
  return p.size() == degree && is_permutation(p);
}

Perm or_identity(Perm const &p, std::size_t degree)
{
  return p.empty() ? identity_perm(degree) : p;
}

TwistedSubgroup make_subgroup(FiniteGroup const &omega, std::vector<Perm> const &gens, std::string const &check,
                              std::string const &what)
{
  TwistedSubgroup t;
  t.group = FiniteGroup(omega.degree(), gens);
  t.from_omega.assign(omega.order(), -1);
  for (std::size_t i = 0; i < t.group.order(); ++i) {
    int k = omega.index_of(t.group.element(static_cast<int>(i)));
    if (k < 0)
      throw ScenarioError(check, what + " contains " + perm_to_cycles(t.group.element(static_cast<int>(i))) +
                                     ", which is not in omega");
    t.to_omega.push_back(k);
    t.from_omega[static_cast<std::size_t>(k)] = static_cast<int>(i);
  }
  return t;
}

// Twist of a subgroup induced by an omega map; ScenarioError(check) if it leaves the subgroup.
void set_twist(TwistedSubgroup &t, std::function<int(int)> const &on_omega, std::string const &check,
               std::string const &what)
{
  std::vector<int> images;
  for (int g : t.group.generators()) {
    int y = t.from_omega[static_cast<std::size_t>(on_omega(t.to_omega[static_cast<std::size_t>(g)]))];
    if (y < 0)
      throw ScenarioError(check, what + " maps the generator " + perm_to_cycles(t.group.element(g)) +
                                     " outside the subgroup");
    images.push_back(y);
  }
  std::vector<Perm> image_perms;
  for (int y : images)
    image_perms.push_back(t.group.element(y));
  try {
    t.twist = automorphism_from_images(t.group, image_perms);
  } catch (Error const &e) {
    throw ScenarioError(check, what + " is not an automorphism of the subgroup: " + e.what());
  }
  t.twist_inverse = inverse(t.twist);
  t.classes = twisted_classes(t.group, t.twist);
}

void set_table(TwistedSubgroup &t, std::string const &key, ScenarioData const &d)
{
  if (t.group.order() > kCharacterTableBound)
    throw ScenarioError("order-bound", key + " has order " + std::to_string(t.group.order()) + " > " +
                                           std::to_string(kCharacterTableBound));
  auto it = d.character_tables.find(key);
  if (it == d.character_tables.end()) {
    t.table = character_table(t.group);
  } else {
    CharacterTable table;
    table.classes = twisted_classes(t.group, identity_automorphism(t.group));
    table.values = it->second;
    for (auto const &row : table.values) {
      if (row.size() != table.classes.size())
        throw ScenarioError("character-table-invalid", key + ": expected " + std::to_string(table.classes.size()) +
                                                           " class values per character");
      if (!row[0].is_rational() || row[0].to_rational().den() != 1 || row[0].to_rational().num() <= 0)
        throw ScenarioError("character-table-invalid", key + ": value at the identity is not a positive integer");
      table.degrees.push_back(row[0].to_rational().num());
    }
    std::string problem = check_character_table(t.group, table);
    if (!problem.empty())
      throw ScenarioError("character-table-invalid", key + ": " + problem);
    t.table = std::move(table);
    t.supplied_table = true;
  }
  t.extensions = extend_characters(t.group, t.table, t.twist);
}

std::vector<Cyclotomic> to_cyclotomic(std::vector<Rational> const &v)
{
  return {v.begin(), v.end()};
}

// Per block and double coset, the (kappa class, lambda class) of every element of W(nu).
struct CosetData
{
  struct Nu
  {
    int rep = 0;
    std::size_t size = 0;
    std::vector<std::pair<int, int>> classes;
  };
  std::vector<DoubleCosetDecomposition> cosets;
  std::vector<std::vector<Nu>> nus;
};

CosetData::Nu nu_data(Scenario const &s, std::size_t j, int rep)
{
  CosetData::Nu nu;
  nu.rep = rep;
  auto w = coset_intersection(s, j, rep);
  nu.size = w.size();
  for (int wbar : w) {
    int k = kappa_embed(s, wbar);
    int l = lambda_embed(s, j, rep, wbar);
    nu.classes.emplace_back(s.wse.classes.class_of[static_cast<std::size_t>(k)],
                            s.whm[j].classes.class_of[static_cast<std::size_t>(l)]);
  }
  return nu;
}

CosetData coset_data(Scenario const &s)
{
  CosetData d;
  for (std::size_t j = 0; j < s.blocks(); ++j) {
    d.cosets.push_back(double_cosets(s, j));
    std::vector<CosetData::Nu> nus;
    for (int rep : d.cosets.back().representatives)
      nus.push_back(nu_data(s, j, rep));
    d.nus.push_back(std::move(nus));
  }
  return d;
}

std::vector<std::vector<Cyclotomic>> block_from(Scenario const &s, std::size_t j, CosetData::Nu const &nu)
{
  auto const &ew = s.wse.extensions;
  auto const &eh = s.whm[j].extensions;
  std::vector<std::vector<Cyclotomic>> out(ew.size(), std::vector<Cyclotomic>(eh.size(), Cyclotomic(0)));
  if (nu.size == 0)
    return out;
  std::map<std::pair<int, int>, std::int64_t> counts;
  for (auto const &p : nu.classes)
    ++counts[p];
  // t[c][e2] = sum_c' counts[c][c'] Tr(eta_j c', E'~)
  std::map<int, std::vector<Cyclotomic>> t;
  for (auto const &[p, n] : counts) {
    auto &row = t.try_emplace(p.first, eh.size(), Cyclotomic(0)).first->second;
    for (std::size_t e2 = 0; e2 < eh.size(); ++e2)
      row[e2] += Cyclotomic(n) * eh.values[e2][static_cast<std::size_t>(p.second)];
  }
  Rational scale(1, static_cast<std::int64_t>(nu.size));
  for (std::size_t e = 0; e < ew.size(); ++e)
    for (auto const &[c, row] : t) {
      Cyclotomic x = ew.values[e][static_cast<std::size_t>(c)].conj();
      for (std::size_t e2 = 0; e2 < eh.size(); ++e2)
        out[e][e2] += x * row[e2];
    }
  for (auto &row : out)
    for (auto &x : row)
      x = x * Cyclotomic(scale);
  return out;
}

std::vector<std::vector<Rational>> zero_class_coefficients(Scenario const &s)
{
  std::vector<std::vector<Rational>> c;
  for (auto const &h : s.whm)
    c.emplace_back(h.classes.size(), Rational(0));
  return c;
}

FormalGreenCombination from_rational(std::vector<std::vector<Rational>> const &c)
{
  FormalGreenCombination f;
  f.basis = FormalGreenCombination::Basis::twisted_class;
  for (auto const &row : c)
    f.coefficients.push_back(to_cyclotomic(row));
  return f;
}

Rational prefactor_value(Scenario const &s, std::size_t j, int w, Prefactor p)
{
  auto const &h = s.whm[j];
  switch (p) {
  case Prefactor::proof:
    return Rational(static_cast<std::int64_t>(s.wse.centralizer_order(w)));
  case Prefactor::printed: {
    int wo = s.wse.to_omega[static_cast<std::size_t>(w)];
    std::int64_t count = 0;
    for (std::size_t z = 0; z < h.group.order(); ++z) {
      int ez = h.to_omega[static_cast<std::size_t>(h.twist(static_cast<int>(z)))];
      int zo = h.to_omega[z];
      if (s.omega.mul(s.omega.mul(ez, wo), s.omega.inv(zo)) == wo)
        ++count;
    }
    return Rational(count);
  }
  case Prefactor::single_sum: {
    int x = s.omega.mul(s.w1, s.wse.to_omega[static_cast<std::size_t>(w)]);
    auto cls = s.omega_classes.class_of[static_cast<std::size_t>(x)];
    auto z = static_cast<std::int64_t>(s.omega.order() / s.omega_classes.classes[static_cast<std::size_t>(cls)].size());
    return Rational(z, static_cast<std::int64_t>(h.group.order()));
  }
  }
  throw Error("internal", "unknown prefactor");
}

std::vector<std::vector<Rational>> k_mw_rational(Scenario const &s, int w)
{
  auto c = zero_class_coefficients(s);
  int x = s.omega.mul(s.w1, s.wse.to_omega[static_cast<std::size_t>(w)]);
  int cls = s.omega_classes.class_of[static_cast<std::size_t>(x)];
  auto z = static_cast<std::int64_t>(s.omega.order() / s.omega_classes.classes[static_cast<std::size_t>(cls)].size());
  for (std::size_t j = 0; j < s.blocks(); ++j) {
    auto const &h = s.whm[j];
    Rational step(z, static_cast<std::int64_t>(h.group.order()));
    for (std::size_t wp = 0; wp < h.group.order(); ++wp) {
      int y = s.omega.mul(s.a[j], h.to_omega[wp]);
      if (s.omega_classes.class_of[static_cast<std::size_t>(y)] == cls)
        c[j][static_cast<std::size_t>(h.classes.class_of[wp])] += step;
    }
  }
  return c;
}

std::vector<std::vector<Rational>> k_dc_rational(Scenario const &s, CosetData const &d, int w, Prefactor p)
{
  auto c = zero_class_coefficients(s);
  int cls = s.wse.classes.class_of[static_cast<std::size_t>(w)];
  for (std::size_t j = 0; j < s.blocks(); ++j) {
    Rational pre = prefactor_value(s, j, w, p);
    for (auto const &nu : d.nus[j]) {
      if (nu.size == 0)
        continue;
      Rational step = pre / Rational(static_cast<std::int64_t>(nu.size));
      for (auto const &[kc, lc] : nu.classes)
        if (kc == cls)
          c[j][static_cast<std::size_t>(lc)] += step;
    }
  }
  return c;
}

FormalGreenCombination zero_character_combination(Scenario const &s)
{
  FormalGreenCombination f;
  f.basis = FormalGreenCombination::Basis::character;
  for (auto const &h : s.whm)
    f.coefficients.emplace_back(h.extensions.size(), Cyclotomic(0));
  return f;
}

FormalGreenCombination expand_from(Scenario const &s, PairingMatrix const &m, std::size_t e)
{
  auto f = zero_character_combination(s);
  for (std::size_t col = 0; col < m.columns.size(); ++col)
    f.coefficients[m.columns[col].first][m.columns[col].second] = m.total[e][col];
  return f;
}

void add_scaled(FormalGreenCombination &acc, FormalGreenCombination const &f, Cyclotomic const &x)
{
  for (std::size_t j = 0; j < acc.coefficients.size(); ++j)
    for (std::size_t k = 0; k < acc.coefficients[j].size(); ++k)
      acc.coefficients[j][k] += x * f.coefficients[j][k];
}

std::string describe_w(Scenario const &s, int w)
{
  return perm_to_cycles(s.wse.group.element(w));
}

} // namespace

std::size_t TwistedSubgroup::centralizer_order(int w) const
{
  return group.order() / classes.classes[static_cast<std::size_t>(classes.class_of[static_cast<std::size_t>(w)])].size();
}

Scenario validate_scenario(ScenarioData const &d)
{
  auto check_perm = [&](Perm const &p, std::string const &what, bool allow_empty) {
    if (allow_empty && p.empty())
      return;
    if (!valid_perm(p, d.degree))
      throw ScenarioError("invalid-permutation", what + " is not a permutation of degree " + std::to_string(d.degree));
  };
  if (d.degree == 0)
    throw ScenarioError("invalid-permutation", "degree must be positive");
  for (auto const &g : d.generators)
    check_perm(g, "omega generator", false);
  for (auto const &g : d.wse_generators)
    check_perm(g, "wse generator", false);
  for (auto const &g : d.frobenius)
    check_perm(g, "frobenius image", false);
  check_perm(d.w1, "w1", true);
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    for (auto const &g : d.blocks[j].whm_generators)
      check_perm(g, "whm generator of block " + std::to_string(j), false);
    check_perm(d.blocks[j].a, "a of block " + std::to_string(j), true);
  }
  if (d.blocks.empty())
    throw ScenarioError("no-blocks", "a scenario needs at least one block");

  Scenario s;
  s.name = d.name;
  s.coxeter_times_abelian = d.coxeter_times_abelian;
  try {
    s.omega = FiniteGroup(d.degree, d.generators, kOmegaBound);
  } catch (Error const &e) {
    throw ScenarioError("order-bound", e.what());
  }
  if (d.frobenius.empty()) {
    s.frobenius = identity_automorphism(s.omega);
  } else {
    if (d.frobenius.size() != d.generators.size())
      throw ScenarioError("frobenius-not-automorphism", "need one image per omega generator");
    try {
      s.frobenius = automorphism_from_images(s.omega, d.generators, d.frobenius);
    } catch (Error const &e) {
      throw ScenarioError("frobenius-not-automorphism", e.what());
    }
  }
  s.frobenius_inverse = inverse(s.frobenius);
  s.omega_classes = twisted_classes(s.omega, s.frobenius_inverse);

  s.w1 = s.omega.index_of(or_identity(d.w1, d.degree));
  if (s.w1 < 0)
    throw ScenarioError("w1-not-in-omega", perm_to_cycles(d.w1) + " is not in omega");

  auto const &om = s.omega;
  auto const &finv = s.frobenius_inverse;
  s.wse = make_subgroup(om, d.wse_generators, "wse-not-in-omega", "wse");
  int w1 = s.w1, w1i = om.inv(s.w1);
  set_twist(
      s.wse, [&](int x) { return om.mul(om.mul(w1i, finv(x)), w1); }, "gamma1-undefined",
      "w -> w1^-1 F^-1(w) w1");
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    std::string tag = "block " + std::to_string(j);
    auto h = make_subgroup(om, d.blocks[j].whm_generators, "whm-not-in-omega", "whm of " + tag);
    int a = om.index_of(or_identity(d.blocks[j].a, d.degree));
    if (a < 0)
      throw ScenarioError("a-not-in-omega", "a of " + tag + " is not in omega");
    int ai = om.inv(a);
    set_twist(
        h, [&](int x) { return om.mul(om.mul(ai, finv(x)), a); }, "eta-undefined",
        "w -> a^-1 F^-1(w) a on " + tag);
    s.whm.push_back(std::move(h));
    s.a.push_back(a);
  }
  for (auto const &[key, rows] : d.character_tables) {
    bool known = key == "wse";
    for (std::size_t j = 0; j < d.blocks.size(); ++j)
      known = known || key == "whm" + std::to_string(j);
    if (!known)
      throw ScenarioError("character-table-invalid", "unknown table key '" + key + "'");
  }
  set_table(s.wse, "wse", d);
  for (std::size_t j = 0; j < s.blocks(); ++j)
    set_table(s.whm[j], "whm" + std::to_string(j), d);
  return s;
}

DoubleCosetDecomposition double_cosets(Scenario const &s, std::size_t j)
{
  if (j >= s.blocks())
    throw Error("invalid-argument", "block index out of range");
  DoubleCosetDecomposition d;
  d.block = j;
  d.coset_of.assign(s.omega.order(), -1);
  auto const &left = s.wse.group.generators();
  auto const &right = s.whm[j].group.generators();
  for (std::size_t t = 0; t < s.omega.order(); ++t) {
    if (d.coset_of[t] >= 0)
      continue;
    int c = static_cast<int>(d.cosets.size());
    std::vector<int> members{static_cast<int>(t)};
    d.coset_of[t] = c;
    for (std::size_t k = 0; k < members.size(); ++k) {
      auto visit = [&](int y) {
        if (d.coset_of[static_cast<std::size_t>(y)] < 0) {
          d.coset_of[static_cast<std::size_t>(y)] = c;
          members.push_back(y);
        }
      };
      for (int g : left)
        visit(s.omega.mul(s.wse.to_omega[static_cast<std::size_t>(g)], members[k]));
      for (int g : right)
        visit(s.omega.mul(members[k], s.whm[j].to_omega[static_cast<std::size_t>(g)]));
    }
    std::sort(members.begin(), members.end());
    d.representatives.push_back(static_cast<int>(t));
    d.cosets.push_back(std::move(members));
  }
  return d;
}

std::vector<int> coset_intersection(Scenario const &s, std::size_t j, int rep)
{
  auto const &om = s.omega;
  // wbar is in F^-1(rep) a_j whm_j rep^-1 iff a_j^-1 F^-1(rep)^-1 wbar rep is in whm_j.
  int pre = om.mul(om.inv(s.a[j]), om.inv(s.frobenius_inverse(rep)));
  std::vector<int> out;
  for (int u : s.wse.to_omega) {
    int wbar = om.mul(s.w1, u);
    if (s.whm[j].from_omega[static_cast<std::size_t>(om.mul(om.mul(pre, wbar), rep))] >= 0)
      out.push_back(wbar);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int lambda_embed(Scenario const &s, std::size_t j, int rep, int wbar)
{
  auto const &om = s.omega;
  int x = om.mul(om.mul(om.mul(om.inv(s.a[j]), s.frobenius_inverse(om.inv(rep))), wbar), rep);
  int k = s.whm[j].from_omega[static_cast<std::size_t>(x)];
  if (k < 0)
    throw Error("internal", "lambda image of " + perm_to_cycles(om.element(wbar)) + " is not in whm");
  return s.whm[j].twist_inverse(k);
}

int kappa_embed(Scenario const &s, int wbar)
{
  int k = s.wse.from_omega[static_cast<std::size_t>(s.omega.mul(s.omega.inv(s.w1), wbar))];
  if (k < 0)
    throw Error("internal", "kappa image of " + perm_to_cycles(s.omega.element(wbar)) + " is not in wse");
  return s.wse.twist_inverse(k);
}

WNuCountReport verify_lemma_wunu(Scenario const &s)
{
  WNuCountReport r;
  auto const &om = s.omega;
  int w1i = om.inv(s.w1);
  for (std::size_t j = 0; j < s.blocks(); ++j) {
    auto d = double_cosets(s, j);
    for (std::size_t nu = 0; nu < d.cosets.size(); ++nu) {
      int rep = d.representatives[nu];
      int rep_inv = om.inv(rep);
      std::size_t wn = coset_intersection(s, j, rep).size();
      for (int t : d.cosets[nu]) {
        int target = om.mul(om.mul(w1i, s.frobenius_inverse(t)), s.a[j]);
        std::size_t count = 0;
        for (int y : s.wse.to_omega)
          if (s.whm[j].from_omega[static_cast<std::size_t>(om.mul(om.mul(rep_inv, om.inv(y)), target))] >= 0)
            ++count;
        ++r.checked;
        if (count != wn && r.holds) {
          r.holds = false;
          r.counterexample = "block " + std::to_string(j) + ", t = " + perm_to_cycles(om.element(t)) +
                             ": |P(t)| = " + std::to_string(count) + ", |W(nu)| = " + std::to_string(wn);
        }
      }
    }
  }
  return r;
}

std::vector<std::vector<Cyclotomic>> pairing_block(Scenario const &s, std::size_t j, int rep)
{
  if (j >= s.blocks())
    throw Error("invalid-argument", "block index out of range");
  return block_from(s, j, nu_data(s, j, rep));
}

Cyclotomic pairing(Scenario const &s, std::size_t j, int rep, std::size_t e, std::size_t e2)
{
  if (j >= s.blocks() || e >= s.wse.extensions.size() || e2 >= s.whm[j].extensions.size())
    throw Error("invalid-argument", "pairing of a character that is not extendable");
  return pairing_block(s, j, rep)[e][e2];
}

PairingMatrix pairing_matrix(Scenario const &s)
{
  PairingMatrix m;
  for (std::size_t j = 0; j < s.blocks(); ++j)
    for (std::size_t k = 0; k < s.whm[j].extensions.size(); ++k)
      m.columns.emplace_back(j, k);
  m.total.assign(s.wse.extensions.size(), std::vector<Cyclotomic>(m.columns.size(), Cyclotomic(0)));
  std::size_t offset = 0;
  for (std::size_t j = 0; j < s.blocks(); ++j) {
    m.cosets.push_back(double_cosets(s, j));
    std::vector<std::vector<std::vector<Cyclotomic>>> blocks;
    for (int rep : m.cosets.back().representatives) {
      auto b = pairing_block(s, j, rep);
      for (std::size_t e = 0; e < b.size(); ++e)
        for (std::size_t k = 0; k < b[e].size(); ++k)
          m.total[e][offset + k] += b[e][k];
      blocks.push_back(std::move(b));
    }
    m.per_nu.push_back(std::move(blocks));
    offset += s.whm[j].extensions.size();
  }
  return m;
}

bool FormalGreenCombination::is_zero() const
{
  for (auto const &row : coefficients)
    for (auto const &x : row)
      if (!x.is_zero())
        return false;
  return true;
}

bool operator==(FormalGreenCombination const &a, FormalGreenCombination const &b)
{
  return a.basis == b.basis && a.coefficients == b.coefficients;
}

std::string prefactor_name(Prefactor p)
{
  switch (p) {
  case Prefactor::proof:
    return "Z_gamma1(w)";
  case Prefactor::printed:
    return "Z_eta_j(w)";
  case Prefactor::single_sum:
    return "Z_Finv(w1 w)/|whm_j|";
  }
  return "?";
}

FormalGreenCombination k_formal_mw(Scenario const &s, int w)
{
  return from_rational(k_mw_rational(s, w));
}

FormalGreenCombination k_formal_dc(Scenario const &s, int w, Prefactor p)
{
  return from_rational(k_dc_rational(s, coset_data(s), w, p));
}

FormalGreenCombination to_character_basis(Scenario const &s, FormalGreenCombination const &f)
{
  if (f.basis == FormalGreenCombination::Basis::character)
    return f;
  auto out = zero_character_combination(s);
  for (std::size_t j = 0; j < s.blocks(); ++j) {
    auto const &ext = s.whm[j].extensions;
    for (std::size_t c = 0; c < f.coefficients[j].size(); ++c) {
      if (f.coefficients[j][c].is_zero())
        continue;
      for (std::size_t k = 0; k < ext.size(); ++k)
        out.coefficients[j][k] += f.coefficients[j][c] * ext.values[k][c];
    }
  }
  return out;
}

FormalGreenCombination to_class_basis(Scenario const &s, FormalGreenCombination const &f)
{
  if (f.basis == FormalGreenCombination::Basis::twisted_class)
    return f;
  FormalGreenCombination out;
  for (std::size_t j = 0; j < s.blocks(); ++j) {
    auto const &h = s.whm[j];
    std::vector<Cyclotomic> row(h.classes.size(), Cyclotomic(0));
    for (std::size_t c = 0; c < h.classes.size(); ++c) {
      Rational scale(static_cast<std::int64_t>(h.classes.classes[c].size()), static_cast<std::int64_t>(h.group.order()));
      for (std::size_t k = 0; k < h.extensions.size(); ++k)
        row[c] += f.coefficients[j][k] * h.extensions.values[k][c].conj();
      row[c] = row[c] * Cyclotomic(scale);
    }
    out.coefficients.push_back(std::move(row));
  }
  return out;
}

FormalGreenCombination expand_characteristic(Scenario const &s, std::size_t e)
{
  if (e >= s.wse.extensions.size())
    throw Error("invalid-argument", "character of wse is not extendable");
  return expand_from(s, pairing_matrix(s), e);
}

namespace {

// Sum of k_formal_mw over each gamma_1-twisted class of wse, class basis.
std::vector<std::vector<std::vector<Rational>>> k_mw_class_sums(Scenario const &s,
                                                                std::vector<std::vector<std::vector<Rational>>> const &k)
{
  std::vector<std::vector<std::vector<Rational>>> sums(s.wse.classes.size(), zero_class_coefficients(s));
  for (std::size_t w = 0; w < k.size(); ++w) {
    auto &acc = sums[static_cast<std::size_t>(s.wse.classes.class_of[w])];
    for (std::size_t j = 0; j < acc.size(); ++j)
      for (std::size_t c = 0; c < acc[j].size(); ++c)
        acc[j][c] += k[w][j][c];
  }
  return sums;
}

FormalGreenCombination average_from(Scenario const &s, std::vector<std::vector<std::vector<Rational>>> const &sums,
                                    std::size_t e)
{
  FormalGreenCombination acc;
  acc.basis = FormalGreenCombination::Basis::twisted_class;
  for (auto const &h : s.whm)
    acc.coefficients.emplace_back(h.classes.size(), Cyclotomic(0));
  Rational inv(1, static_cast<std::int64_t>(s.wse.group.order()));
  for (std::size_t c = 0; c < sums.size(); ++c)
    add_scaled(acc, from_rational(sums[c]), s.wse.extensions.values[e][c].conj() * Cyclotomic(inv));
  return to_character_basis(s, acc);
}

} // namespace

FormalGreenCombination average_characteristic(Scenario const &s, std::size_t e)
{
  if (e >= s.wse.extensions.size())
    throw Error("invalid-argument", "character of wse is not extendable");
  std::vector<std::vector<std::vector<Rational>>> k;
  for (std::size_t w = 0; w < s.wse.group.order(); ++w)
    k.push_back(k_mw_rational(s, static_cast<int>(w)));
  return average_from(s, k_mw_class_sums(s, k), e);
}

bool VerificationReport::all_pass() const
{
  for (auto const &c : checks)
    if (!c.pass)
      return false;
  return true;
}

std::vector<std::string> const &verification_checks()
{
  static std::vector<std::string> const names{"w-nu-count",        "embeddings",         "k-mw-dc",
                                              "average",      "reconstruct",    "roundtrip",
                                              "rep-invariance"};
  return names;
}

VerificationReport verify_all(Scenario const &s, std::set<std::string> const &only, int rechoices, std::uint64_t seed)
{
  for (auto const &name : only)
    if (std::find(verification_checks().begin(), verification_checks().end(), name) == verification_checks().end())
      throw Error("invalid-argument", "unknown check '" + name + "'");
  auto wanted = [&](std::string const &name) { return only.empty() || only.count(name) > 0; };
  VerificationReport rep;

  if (wanted("w-nu-count")) {
    auto l = verify_lemma_wunu(s);
    rep.checks.push_back({"w-nu-count", l.holds, l.checked, l.counterexample});
  }

  CheckResult emb{"embeddings", true, 0, ""};
  CosetData data;
  try {
    data = coset_data(s);
    for (auto const &nus : data.nus)
      for (auto const &nu : nus)
        emb.checked += nu.size;
  } catch (Error const &e) {
    emb.pass = false;
    emb.detail = e.what();
  }
  if (wanted("embeddings"))
    rep.checks.push_back(emb);
  if (!emb.pass)
    return rep;

  std::size_t n = s.wse.group.order();
  std::vector<std::vector<std::vector<Rational>>> k_mw;
  for (std::size_t w = 0; w < n; ++w)
    k_mw.push_back(k_mw_rational(s, static_cast<int>(w)));

  if (wanted("k-mw-dc")) {
    CheckResult c{"k-mw-dc", true, n, ""};
    for (Prefactor p : {Prefactor::proof, Prefactor::printed, Prefactor::single_sum}) {
      PrefactorStudy study{p, 0};
      for (std::size_t w = 0; w < n; ++w)
        if (k_dc_rational(s, data, static_cast<int>(w), p) != k_mw[w]) {
          ++study.mismatches;
          if (p == Prefactor::proof && c.pass) {
            c.pass = false;
            c.detail = "first mismatch at w = " + describe_w(s, static_cast<int>(w));
          }
        }
      rep.prefactors.push_back(study);
    }
    rep.checks.push_back(c);
  }

  bool need_matrix = wanted("average") || wanted("reconstruct") || wanted("roundtrip");
  PairingMatrix m;
  std::vector<FormalGreenCombination> expanded;
  if (need_matrix) {
    m = pairing_matrix(s);
    for (std::size_t e = 0; e < s.wse.extensions.size(); ++e)
      expanded.push_back(expand_from(s, m, e));
  }
  auto const &ext = s.wse.extensions;

  if (wanted("average")) {
    CheckResult c{"average", true, ext.size(), ""};
    auto sums = k_mw_class_sums(s, k_mw);
    for (std::size_t e = 0; e < ext.size(); ++e)
      if (!(average_from(s, sums, e) == expanded[e]) && c.pass) {
        c.pass = false;
        c.detail = "mismatch for extension " + std::to_string(e);
      }
    rep.checks.push_back(c);
  }

  // sum_E Tr(gamma_1 w, E~) expand(E), per gamma_1-twisted class of w.
  std::vector<FormalGreenCombination> rebuilt;
  if (wanted("reconstruct") || wanted("roundtrip"))
    for (std::size_t c = 0; c < s.wse.classes.size(); ++c) {
      auto acc = zero_character_combination(s);
      for (std::size_t e = 0; e < ext.size(); ++e)
        add_scaled(acc, expanded[e], ext.values[e][c]);
      rebuilt.push_back(std::move(acc));
    }

  if (wanted("reconstruct")) {
    CheckResult c{"reconstruct", true, n, ""};
    for (std::size_t w = 0; w < n; ++w) {
      auto const &lhs = rebuilt[static_cast<std::size_t>(s.wse.classes.class_of[w])];
      if (!(lhs == to_character_basis(s, from_rational(k_mw[w]))) && c.pass) {
        c.pass = false;
        c.detail = "mismatch at w = " + describe_w(s, static_cast<int>(w));
      }
    }
    rep.checks.push_back(c);
  }

  if (wanted("roundtrip")) {
    CheckResult c{"roundtrip", true, 0, ""};
    Rational inv(1, static_cast<std::int64_t>(n));
    for (std::size_t e = 0; e < ext.size(); ++e) {
      auto acc = zero_character_combination(s);
      for (std::size_t cl = 0; cl < s.wse.classes.size(); ++cl) {
        Rational weight = Rational(static_cast<std::int64_t>(s.wse.classes.classes[cl].size())) * inv;
        add_scaled(acc, rebuilt[cl], ext.values[e][cl].conj() * Cyclotomic(weight));
      }
      ++c.checked;
      if (!(acc == expanded[e]) && c.pass) {
        c.pass = false;
        c.detail = "average of the reconstruction differs for extension " + std::to_string(e);
      }
    }
    for (std::size_t w = 0; w < n; ++w) {
      auto f = from_rational(k_mw[w]);
      ++c.checked;
      if (!(to_class_basis(s, to_character_basis(s, f)) == f) && c.pass) {
        c.pass = false;
        c.detail = "basis change does not invert at w = " + describe_w(s, static_cast<int>(w));
      }
    }
    rep.checks.push_back(c);
  }

  if (wanted("rep-invariance")) {
    CheckResult c{"rep-invariance", true, 0, ""};
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::vector<std::vector<Cyclotomic>>>> base;
    for (std::size_t j = 0; j < s.blocks(); ++j) {
      base.emplace_back();
      for (auto const &nu : data.nus[j])
        base[j].push_back(block_from(s, j, nu));
    }
    for (int trial = 0; trial < rechoices; ++trial)
      for (std::size_t j = 0; j < s.blocks(); ++j)
        for (std::size_t nu = 0; nu < data.nus[j].size(); ++nu) {
          int y = s.wse.to_omega[rng() % s.wse.group.order()];
          int v = s.whm[j].to_omega[rng() % s.whm[j].group.order()];
          int rep2 = s.omega.mul(s.omega.mul(y, data.nus[j][nu].rep), v);
          ++c.checked;
          if (!(block_from(s, j, nu_data(s, j, rep2)) == base[j][nu]) && c.pass) {
            c.pass = false;
            c.detail = "block " + std::to_string(j) + ": representative " + perm_to_cycles(s.omega.element(rep2)) +
                       " changes the pairing";
          }
        }
    rep.checks.push_back(c);
  }
  return rep;
}

} // namespace cuspidal
