#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "cuspidal/lattice.hpp"
#include "oracles/lattice_oracle.hpp"
#include "oracles/root_oracle.hpp"

using namespace cuspidal;

namespace {

IntVector unit(std::size_t n, std::size_t i, std::int64_t k = 1)
{
  IntVector v(n, 0);
  v[i] = k;
  return v;
}

// Extra generators matching make_root_datum, for the brute-force class count.
IntMatrix extra_generators(CartanType const &t, std::string const &label)
{
  std::size_t n = static_cast<std::size_t>(t.rank);
  if (label == "sc")
    return identity_matrix(n);
  if (label == "ad")
    return {};
  if (label == "SO")
    return {unit(n, 0)};
  if (label == "HalfSpin")
    return {unit(n, n - 1)};
  return {unit(n, 0, std::stoll(label.substr(7)))};
}

IntMatrix lattice_generators(RootDatum const &g, IntMatrix const &extra)
{
  IntMatrix gens;
  for (std::size_t i = 0; i < g.root_system().rank(); ++i)
    gens.push_back(g.root_weight(static_cast<int>(i)));
  gens.insert(gens.end(), extra.begin(), extra.end());
  return gens;
}

std::vector<int> e6_three_a2(RootSystem const &rs)
{
  return {0, 2, 4, 5, 1, rs.negative(rs.highest_root())};
}

std::vector<int> e7_a3_a1_a3(RootSystem const &rs)
{
  return {rs.negative(rs.highest_root()), 0, 2, 1, 4, 5, 6};
}

} // namespace

TEST(FiniteAbelianGroup, Basics)
{
  auto g = FiniteAbelianGroup::from_cyclic_orders({4, 2, 1, 6});
  EXPECT_EQ(g.invariant_factors, (IntVector{2, 2, 12}));
  EXPECT_EQ(g.order(), 48);
  EXPECT_EQ(g.elements().size(), 48u);
  EXPECT_EQ(g.element_order({1, 0, 3}), 4);
  EXPECT_EQ(prime_to_p_part(g, 2).invariant_factors, (IntVector{3}));
  EXPECT_EQ(prime_to_p_part(g, 0).invariant_factors, g.invariant_factors);
  EXPECT_EQ(g.str(), "Z/2xZ/2xZ/12");
  EXPECT_EQ(FiniteAbelianGroup{}.str(), "1");
}

TEST(FiniteAbelianGroup, ExplicitPresentations)
{
  // e1, e2, e3 with 4e1 = 2e2 = 4e3 = 0 and e1 + e2 + e3 = 0.
  IntMatrix rel{{4, 0, 0}, {0, 2, 0}, {0, 0, 4}, {1, 1, 1}};
  EXPECT_EQ(FiniteAbelianGroup::from_relations(rel, 3).invariant_factors, (IntVector{2, 4}));
  // (Z/3)^3 modulo the diagonal.
  IntMatrix rel3{{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {1, 1, 1}};
  EXPECT_EQ(FiniteAbelianGroup::from_relations(rel3, 3).invariant_factors, (IntVector{3, 3}));
}

TEST(RootDatum, LabelsAndIndices)
{
  struct Row
  {
    CartanType t;
    std::string label;
    std::int64_t index;
  };
  std::vector<Row> rows{
      {{'A', 5}, "sc", 6},       {{'A', 5}, "ad", 1},        {{'A', 5}, "SL_mod_2", 3},
      {{'A', 5}, "SL_mod_3", 2}, {{'B', 4}, "sc", 2},        {{'B', 4}, "SO", 1},
      {{'C', 3}, "Sp", 2},       {{'C', 3}, "PSp", 1},       {{'D', 4}, "sc", 4},
      {{'D', 4}, "SO", 2},       {{'D', 4}, "HalfSpin", 2},  {{'D', 6}, "HalfSpin", 2},
      {{'D', 5}, "sc", 4},       {{'D', 5}, "SO", 2},        {{'D', 5}, "PSO", 1},
      {{'E', 6}, "sc", 3},       {{'E', 7}, "sc", 2},        {{'E', 8}, "sc", 1},
      {{'F', 4}, "sc", 1},       {{'G', 2}, "ad", 1},
  };
  for (auto const &r : rows) {
    auto g = make_root_datum(r.t, r.label);
    EXPECT_EQ(g.index_over_root_lattice(), r.index) << r.t.str() << " " << r.label;
    for (std::size_t i = 0; i < g.root_system().size(); ++i)
      EXPECT_TRUE(g.contains(g.root_weight(static_cast<int>(i))));
  }
  EXPECT_EQ(parse_root_datum("A3:SLmod:2").isogeny_label(), "SL_mod_2");
  EXPECT_THROW(make_root_datum({'D', 5}, "HalfSpin"), Error);
  EXPECT_THROW(make_root_datum({'A', 5}, "SL_mod_4"), Error);
  EXPECT_THROW(make_root_datum({'E', 6}, "SO"), Error);
  EXPECT_THROW(parse_root_datum("E6"), Error);
}

TEST(RootDatum, HalfSpinIsNotSO)
{
  auto so = make_root_datum({'D', 6}, "SO");
  auto hs = make_root_datum({'D', 6}, "HalfSpin");
  EXPECT_TRUE(so.contains(unit(6, 0)));
  EXPECT_FALSE(so.contains(unit(6, 5)));
  EXPECT_TRUE(hs.contains(unit(6, 5)));
  EXPECT_FALSE(hs.contains(unit(6, 0)));
}

TEST(RootDatum, FundamentalGroupOfSimplyConnected)
{
  std::map<std::string, IntVector> expected{
      {"A1", {2}}, {"A4", {5}}, {"B3", {2}}, {"C4", {2}}, {"D4", {2, 2}}, {"D5", {4}},
      {"D6", {2, 2}}, {"E6", {3}}, {"E7", {2}}, {"E8", {}}, {"F4", {}}, {"G2", {}},
  };
  for (auto const &[name, factors] : expected) {
    auto t = parse_cartan_type(name);
    auto g = make_root_datum(t, "sc");
    std::vector<int> all;
    for (int i = 0; i < t.rank; ++i)
      all.push_back(i);
    EXPECT_EQ(full_center(g, all, 0).invariant_factors, factors) << name;
    // Also the order |det Cartan|.
    EXPECT_EQ(full_center(g, all, 0).order(), std::llabs(determinant(g.root_system().cartan()))) << name;
    EXPECT_TRUE(full_center(make_root_datum(t, "ad"), all, 0).trivial()) << name;
  }
}

TEST(CenterComponentGroup, E6Examples)
{
  auto g = make_root_datum({'E', 6}, "sc");
  EXPECT_TRUE(center_component_group(g, {0, 2}, 0).trivial());
  EXPECT_EQ(center_component_group(g, {0, 2, 4, 5}, 0).invariant_factors, (IntVector{3}));
  EXPECT_TRUE(center_component_group(g, {0, 2, 4, 5}, 3).trivial());
  EXPECT_TRUE(center_component_group(g, {}, 0).trivial());
}

TEST(CenterComponentGroup, SpinOddCriterion)
{
  for (int n = 2; n <= 8; ++n) {
    auto g = make_root_datum({'B', n}, "Spin");
    for (int k = 0; k <= n; ++k)
      for (int j = 0; 2 * j <= n - k; ++j) {
        std::vector<int> levi;
        for (int a = 0; a < j; ++a)
          levi.push_back(2 * a);
        for (int b = n - k; b < n; ++b)
          levi.push_back(b);
        auto c = center_component_group(g, levi, 0);
        EXPECT_EQ(!c.trivial(), 2 * j == n - k) << "n=" << n << " k=" << k << " j=" << j;
        EXPECT_TRUE(center_component_group(g, levi, 2).trivial());
      }
  }
}

TEST(CenterComponentGroup, OrderMatchesClassCount)
{
  std::vector<std::pair<CartanType, std::string>> data{
      {{'A', 5}, "sc"},  {{'A', 5}, "SL_mod_2"}, {{'B', 4}, "sc"},       {{'C', 4}, "sc"},
      {{'D', 4}, "sc"},  {{'D', 6}, "SO"},       {{'D', 6}, "HalfSpin"}, {{'D', 5}, "sc"},
      {{'E', 6}, "sc"},  {{'E', 7}, "sc"},       {{'A', 7}, "SL_mod_4"},
  };
  for (auto const &[t, label] : data) {
    auto g = make_root_datum(t, label);
    auto classes = oracle::classes_mod_root_lattice(g, extra_generators(t, label));
    ASSERT_EQ(static_cast<std::int64_t>(classes.size()), g.index_over_root_lattice());
    for (unsigned mask = 0; mask < (1u << t.rank); ++mask) {
      std::vector<int> levi;
      for (int i = 0; i < t.rank; ++i)
        if (mask >> i & 1)
          levi.push_back(i);
      EXPECT_EQ(center_component_group(g, levi, 0).order(),
                static_cast<std::int64_t>(oracle::levi_torsion_order(classes, levi)))
          << t.str() << " " << label << " mask " << mask;
    }
  }
}

TEST(FullCenter, Examples)
{
  auto e6 = make_root_datum({'E', 6}, "sc");
  auto c6 = full_center(e6, e6_three_a2(e6.root_system()), 0);
  EXPECT_EQ(c6.invariant_factors, (IntVector{3, 3}));
  EXPECT_TRUE(full_center(e6, e6_three_a2(e6.root_system()), 3).trivial());

  auto e7 = make_root_datum({'E', 7}, "sc");
  auto c7 = full_center(e7, e7_a3_a1_a3(e7.root_system()), 0);
  EXPECT_EQ(c7.invariant_factors, (IntVector{2, 4}));
  EXPECT_EQ(c7.order(), 8);

  auto b2 = make_root_datum({'B', 2}, "ad");
  auto const &rs = b2.root_system();
  int long2 = *rs.index_of({1, 2});
  EXPECT_EQ(full_center(b2, {0, long2}, 0).invariant_factors, (IntVector{2}));

  EXPECT_THROW(full_center(e6, {0, 2}, 0), Error);
}

TEST(FullCenter, OrderIsIndexTimesDeterminant)
{
  std::mt19937_64 rng(7);
  for (std::string name : {"E6", "E7", "D5", "B4", "C4", "F4", "A4"}) {
    auto t = parse_cartan_type(name);
    auto g = make_root_datum(t, "sc");
    auto const &rs = g.root_system();
    auto ext = extended_diagram(rs);
    for (std::size_t drop = 0; drop < ext.nodes.size(); ++drop) {
      std::vector<int> psi;
      for (std::size_t i = 0; i < ext.nodes.size(); ++i)
        if (i != drop)
          psi.push_back(ext.nodes[i]);
      IntMatrix b;
      for (int r : psi)
        b.push_back(rs.root(r));
      std::int64_t expect = g.index_over_root_lattice() * std::llabs(determinant(b));
      auto z = full_center(g, psi, 0);
      EXPECT_EQ(z.order(), expect) << name << " drop " << drop;

      // Same invariants after moving psi by a random Weyl element.
      WeylGroup w(rs);
      Perm x = w.chain().random_element(rng);
      std::vector<int> moved;
      for (int r : psi)
        moved.push_back(static_cast<int>(x[r]));
      EXPECT_EQ(full_center(g, moved, 0).invariant_factors, z.invariant_factors);
    }
  }
}

TEST(CenterElements, OutsideSubcenter)
{
  auto e6 = make_root_datum({'E', 6}, "sc");
  auto out6 = center_elements_outside_subcenter(e6, e6_three_a2(e6.root_system()), 0);
  ASSERT_EQ(out6.size(), 6u);
  for (auto const &e : out6)
    EXPECT_EQ(e.order, 3);

  auto e7 = make_root_datum({'E', 7}, "sc");
  auto out7 = center_elements_outside_subcenter(e7, e7_a3_a1_a3(e7.root_system()), 0);
  std::multiset<std::int64_t> orders;
  for (auto const &e : out7)
    orders.insert(e.order);
  EXPECT_EQ(orders, (std::multiset<std::int64_t>{2, 2, 4, 4, 4, 4}));

  std::vector<int> all{0, 1, 2, 3, 4, 5};
  EXPECT_TRUE(center_elements_outside_subcenter(e6, all, 0).empty());
}

TEST(CenterElements, AgreeWithGridOracle)
{
  auto e6 = make_root_datum({'E', 6}, "sc");
  auto e7 = make_root_datum({'E', 7}, "sc");
  struct Case
  {
    RootDatum g;
    IntMatrix extra;
    std::vector<int> psi;
    int grid;
  };
  std::vector<Case> cases{
      {e6, identity_matrix(6), e6_three_a2(e6.root_system()), 3},
      {e7, identity_matrix(7), e7_a3_a1_a3(e7.root_system()), 4},
  };
  for (auto const &c : cases) {
    auto base = subsystem_base(c.g.root_system(), reflection_closure(c.g.root_system(), c.psi));
    auto expected = oracle::outside_orders(c.g, lattice_generators(c.g, c.extra), base, c.grid);
    std::multiset<std::int64_t> got;
    for (auto const &e : center_elements_outside_subcenter(c.g, c.psi, 0))
      got.insert(e.order);
    EXPECT_EQ(got, expected);
  }
}

TEST(CenterElements, RootValuesVanishOnSubsystem)
{
  auto e7 = make_root_datum({'E', 7}, "sc");
  auto const &rs = e7.root_system();
  auto psi = e7_a3_a1_a3(rs);
  auto closure = reflection_closure(rs, psi);
  for (auto const &e : subsystem_center(e7, psi, 0).elements)
    for (int r : closure)
      EXPECT_TRUE(root_value(rs, r, e.coords).is_zero());
}

TEST(NormalizerAction, E6ThreeA2)
{
  auto g = make_root_datum({'E', 6}, "sc");
  auto const &rs = g.root_system();
  auto psi = e6_three_a2(rs);
  auto act = normalizer_center_action(g, psi);

  // Oracle: count W-elements stabilizing the closure of psi.
  WeylGroup w(rs);
  auto closure = reflection_closure(rs, psi);
  std::size_t stab = 0;
  for (auto const &x : w.chain().elements())
    stab += oracle::image(x, closure) == closure;
  WeylGroup wpsi(rs, psi);
  EXPECT_EQ(act.cosets.size() * wpsi.order(), stab);
  EXPECT_EQ(act.cosets.size(), 6u);

  // The three A2 factors are permuted cyclically by some coset.
  auto comps = decompose(rs, act.center.base);
  ASSERT_EQ(comps.size(), 3u);
  auto factor_of = [&](int root) {
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (int r : comps[c].nodes)
        if (r == root)
          return c;
    return comps.size();
  };
  bool cyclic = false;
  for (auto const &c : act.cosets) {
    std::set<std::size_t> moved;
    for (std::size_t c0 = 0; c0 < 3; ++c0)
      if (factor_of(static_cast<int>(c.element[comps[c0].nodes[0]])) != c0)
        moved.insert(c0);
    cyclic = cyclic || moved.size() == 3;
  }
  EXPECT_TRUE(cyclic);
  EXPECT_EQ(act.center.elements.size(), 9u);
}

TEST(NormalizerAction, E7SwapFixesOrderTwoElements)
{
  auto g = make_root_datum({'E', 7}, "sc");
  auto const &rs = g.root_system();
  auto act = normalizer_center_action(g, e7_a3_a1_a3(rs));
  auto comps = decompose(rs, act.center.base);
  std::vector<std::vector<int>> a3;
  for (auto const &c : comps)
    if (c.type.rank == 3)
      a3.push_back(c.nodes);
  ASSERT_EQ(a3.size(), 2u);

  std::vector<std::size_t> order_two;
  for (std::size_t i = 0; i < act.center.elements.size(); ++i)
    if (act.center.elements[i].order == 2 && !act.center.elements[i].central)
      order_two.push_back(i);
  ASSERT_EQ(order_two.size(), 2u);

  bool found = false;
  for (std::size_t k = 0; k < act.cosets.size(); ++k) {
    auto img = oracle::image(act.cosets[k].element, a3[0]);
    auto other = a3[1];
    std::sort(other.begin(), other.end());
    if (img != other)
      continue;
    if (act.element_maps[k][order_two[0]] == order_two[0] &&
        act.element_maps[k][order_two[1]] == order_two[1])
      found = true;
  }
  EXPECT_TRUE(found);
}

TEST(NormalizerAction, MapsAreAutomorphismsFixingCenter)
{
  std::vector<std::pair<std::string, std::vector<int>>> cases;
  auto e6 = make_root_datum({'E', 6}, "sc");
  auto e7 = make_root_datum({'E', 7}, "sc");
  for (auto const &[g, psi] : {std::pair{e6, e6_three_a2(e6.root_system())},
                               std::pair{e7, e7_a3_a1_a3(e7.root_system())}}) {
    auto act = normalizer_center_action(g, psi);
    auto const &els = act.center.elements;
    auto const &grp = act.center.group;
    std::map<IntVector, std::size_t> by_tuple;
    for (std::size_t i = 0; i < els.size(); ++i)
      by_tuple[els[i].tuple] = i;
    auto add = [&](IntVector a, IntVector const &b) {
      for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = (a[i] + b[i]) % grp.invariant_factors[i];
      return by_tuple.at(a);
    };
    std::set<Perm> maps(act.element_maps.begin(), act.element_maps.end());
    for (auto const &m : act.element_maps) {
      for (std::size_t i = 0; i < els.size(); ++i) {
        if (els[i].central)
          EXPECT_EQ(m[i], i);
        for (std::size_t j = 0; j < els.size(); ++j)
          EXPECT_EQ(m[add(els[i].tuple, els[j].tuple)], add(els[m[i]].tuple, els[m[j]].tuple));
      }
      for (auto const &m2 : act.element_maps)
        EXPECT_TRUE(maps.count(compose(m, m2)));
    }
    EXPECT_FALSE(act.generators.empty());
  }
}

TEST(NormalizerAction, WholeSystemIsTrivial)
{
  auto g = make_root_datum({'E', 7}, "sc");
  auto act = normalizer_center_action(g, {0, 1, 2, 3, 4, 5, 6});
  ASSERT_EQ(act.cosets.size(), 1u);
  EXPECT_TRUE(is_identity(act.element_maps[0]));
  EXPECT_TRUE(act.generators.empty());
}
