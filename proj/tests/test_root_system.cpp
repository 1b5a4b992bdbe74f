#include <gtest/gtest.h>

#include <map>
#include <random>

#include "cuspidal/root_system.hpp"
#include "oracles/root_oracle.hpp"

using namespace cuspidal;

namespace {

std::vector<CartanType> all_types_up_to(int max_rank)
{
  std::vector<CartanType> out;
  for (int n = 1; n <= max_rank; ++n)
    out.push_back({'A', n});
  for (int n = 2; n <= max_rank; ++n) {
    out.push_back({'B', n});
    out.push_back({'C', n});
  }
  for (int n = 4; n <= max_rank; ++n)
    out.push_back({'D', n});
  out.push_back({'E', 6});
  out.push_back({'E', 7});
  out.push_back({'E', 8});
  out.push_back({'F', 4});
  out.push_back({'G', 2});
  return out;
}

std::vector<int> sorted(std::vector<int> v)
{
  std::sort(v.begin(), v.end());
  return v;
}

} // namespace

TEST(RootSystem, SmallCounts)
{
  EXPECT_EQ(build_root_system({'A', 1}).size(), 2u);
  EXPECT_EQ(build_root_system({'G', 2}).size(), 12u);
  EXPECT_EQ(build_root_system({'E', 8}).size(), 240u);
}

TEST(RootSystem, RootsMatchStringOracleAndFormula)
{
  for (auto t : all_types_up_to(8)) {
    auto rs = build_root_system(t);
    auto ref = oracle::positive_roots_by_strings(rs.cartan());
    std::set<IntVector> got;
    for (std::size_t i = 0; i < rs.num_positive(); ++i)
      got.insert(rs.root(static_cast<int>(i)));
    EXPECT_EQ(got, ref) << t.str();
    EXPECT_EQ(rs.size(), root_count_formula(t)) << t.str();
  }
}

TEST(RootSystem, OrderingIsGradedAndNegationPaired)
{
  auto rs = build_root_system({'F', 4});
  for (int i = 0; i < 4; ++i) {
    IntVector e(4, 0);
    e[i] = 1;
    EXPECT_EQ(rs.root(i), e);
  }
  for (std::size_t i = 1; i < rs.num_positive(); ++i)
    EXPECT_LE(rs.height(static_cast<int>(i - 1)), rs.height(static_cast<int>(i)));
  for (int i = 0; i < static_cast<int>(rs.size()); ++i) {
    IntVector m = rs.root(i);
    for (auto &x : m)
      x = -x;
    EXPECT_EQ(rs.root(rs.negative(i)), m);
  }
  EXPECT_EQ(rs.root(rs.highest_root()), (IntVector{2, 3, 4, 2}));
}

TEST(RootSystem, EveryRootIsWeylImageOfSimpleRoot)
{
  for (auto t : all_types_up_to(5)) {
    auto rs = build_root_system(t);
    std::vector<int> simple;
    for (int i = 0; i < static_cast<int>(rs.rank()); ++i)
      simple.push_back(i);
    EXPECT_EQ(reflection_closure(rs, simple).size(), rs.size()) << t.str();
  }
}

TEST(WeylGroup, OrdersMatchFormulaAndOrbitChain)
{
  for (auto t : all_types_up_to(7)) {
    WeylGroup w(build_root_system(t));
    EXPECT_EQ(w.order_by_orbits(), weyl_order_formula(t)) << t.str();
    if (t.series != 'E' || t.rank < 8)
      EXPECT_EQ(w.order(), weyl_order_formula(t)) << t.str();
  }
}

TEST(WeylGroup, E8OrderViaStabilizerChain)
{
  WeylGroup w(build_root_system({'E', 8}));
  EXPECT_EQ(w.order(), 696729600u);
  EXPECT_EQ(w.order_by_orbits(), 696729600u);
}

TEST(WeylGroup, GeneratorsAreInvolutions)
{
  WeylGroup w(build_root_system({'G', 2}));
  for (auto const &g : w.generators()) {
    EXPECT_FALSE(is_identity(g));
    EXPECT_TRUE(is_identity(compose(g, g)));
  }
}

TEST(WeylGroup, TupleMappingAgreesWithStabilizerChain)
{
  auto rs = build_root_system({'D', 5});
  WeylGroup w(rs);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(rs.size()) - 1);
    std::vector<int> from{pick(rng), pick(rng)};
    if (from[0] == from[1])
      continue;
    Perm g = w.chain().random_element(rng);
    std::vector<int> to{static_cast<int>(g[from[0]]), static_cast<int>(g[from[1]])};
    auto h = w.map_tuple(from, to);
    ASSERT_TRUE(h.has_value());
    EXPECT_TRUE(w.contains(*h));
    EXPECT_EQ(static_cast<int>((*h)[from[0]]), to[0]);
    EXPECT_EQ(static_cast<int>((*h)[from[1]]), to[1]);

    // Same question answered by a chain whose base starts with `from`.
    std::vector<std::uint32_t> prefix{static_cast<std::uint32_t>(from[0]), static_cast<std::uint32_t>(from[1])};
    PermGroup chain(rs.size(), w.generators(), prefix);
    std::uniform_int_distribution<int> any(0, static_cast<int>(rs.size()) - 1);
    std::vector<int> to2{to[0], any(rng)};
    bool a = w.map_tuple(from, to2).has_value();
    bool b = chain.map_base_prefix({static_cast<std::uint32_t>(to2[0]), static_cast<std::uint32_t>(to2[1])})
                 .has_value();
    EXPECT_EQ(a, b);
  }
}

TEST(Types, ParseAndRender)
{
  EXPECT_EQ(type_string(parse_types("A2xA2")), "A2^2");
  EXPECT_EQ(type_string(parse_types("A1xD5xA3")), "D5xA3xA1");
  EXPECT_EQ(type_string(parse_types("D2")), "A1^2");
  EXPECT_EQ(type_string(parse_types("D3")), "A3");
  EXPECT_EQ(type_string(parse_types("C2")), "B2");
  EXPECT_EQ(type_string(parse_types("~A1xA1")), "A1x~A1");
  EXPECT_EQ(type_string({}), "T");
  EXPECT_THROW(parse_types("E9"), Error);
  EXPECT_THROW(parse_types("Q3"), Error);
  EXPECT_EQ(build_root_system({'D', 3}).size(), 12u);
}

TEST(Diagram, ExtendedA1)
{
  auto rs = build_root_system({'A', 1});
  auto d = extended_diagram(rs);
  ASSERT_EQ(d.nodes.size(), 2u);
  auto bonds = diagram_bonds(rs, d);
  ASSERT_EQ(bonds.size(), 1u);
  EXPECT_EQ(bonds[0].multiplicity, 4);
}

TEST(Diagram, ExtendedE6HasThreeArmsOfLengthTwo)
{
  auto rs = build_root_system({'E', 6});
  auto d = extended_diagram(rs);
  ASSERT_EQ(d.nodes.size(), 7u);
  auto bonds = diagram_bonds(rs, d);
  EXPECT_EQ(bonds.size(), 6u);
  std::map<int, int> deg;
  for (auto const &b : bonds) {
    EXPECT_EQ(b.multiplicity, 1);
    ++deg[b.a];
    ++deg[b.b];
  }
  int center = -1, leaves = 0;
  for (auto [n, k] : deg) {
    if (k == 3)
      center = n;
    if (k == 1)
      ++leaves;
  }
  EXPECT_EQ(center, 3); // alpha_4 in Bourbaki numbering
  EXPECT_EQ(leaves, 3);
  // Restricting to the plain nodes gives back the E6 diagram.
  std::vector<int> plain(d.nodes.begin(), d.nodes.begin() + 6);
  EXPECT_EQ(type_string(type_of(rs, plain)), "E6");
  EXPECT_EQ(d.nodes[6], rs.negative(rs.highest_root()));
}

TEST(Diagram, ExtendedE7Shape)
{
  auto rs = build_root_system({'E', 7});
  auto d = extended_diagram(rs);
  ASSERT_EQ(d.nodes.size(), 8u);
  auto bonds = diagram_bonds(rs, d);
  EXPECT_EQ(bonds.size(), 7u);
  // The affine node hangs off alpha_1, extending the long arm 3-1 to length 3.
  int affine = 7;
  std::vector<int> nbrs;
  for (auto const &b : bonds) {
    if (b.a == affine)
      nbrs.push_back(b.b);
    if (b.b == affine)
      nbrs.push_back(b.a);
  }
  EXPECT_EQ(nbrs, (std::vector<int>{0}));
  EXPECT_THROW(extended_diagram(RootSystem(parse_types("A1^2"))), Error);
}

TEST(Subsets, CountsOnExtendedDiagrams)
{
  auto e6 = build_root_system({'E', 6});
  EXPECT_EQ(enumerate_subsets_of_type(e6, extended_diagram(e6), parse_types("A2^2")).size(), 3u);
  auto e7 = build_root_system({'E', 7});
  EXPECT_EQ(enumerate_subsets_of_type(e7, extended_diagram(e7), parse_types("A1^4")).size(), 7u);
  auto a2 = build_root_system({'A', 2});
  auto whole = enumerate_subsets_of_type(a2, dynkin_diagram(a2), parse_types("A2"));
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole[0], (std::vector<int>{0, 1}));
}

TEST(Subsets, StableUnderNodeRelabeling)
{
  auto rs = build_root_system({'E', 7});
  auto d = extended_diagram(rs);
  auto ref = enumerate_subsets_of_type(rs, d, parse_types("A3xA1^2"));
  Diagram r = d;
  std::reverse(r.nodes.begin(), r.nodes.end());
  auto got = enumerate_subsets_of_type(rs, r, parse_types("A3xA1^2"));
  std::set<std::vector<int>> a, b;
  for (auto const &s : ref)
    a.insert(sorted(s));
  for (auto const &s : got)
    b.insert(sorted(s));
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
}

TEST(Conjugacy, E7FourA1SplitsSixPlusOne)
{
  auto rs = build_root_system({'E', 7});
  auto subs = enumerate_subsets_of_type(rs, extended_diagram(rs), parse_types("A1^4"));
  auto classes = partition_into_classes(WeylGroup(rs), subs);
  std::multiset<std::size_t> sizes;
  for (auto const &c : classes)
    sizes.insert(c.members.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 6}));
  // The singleton class is not conjugate to any subset of simple roots.
  WeylGroup w(rs);
  for (auto const &c : classes)
    if (c.members.size() == 1)
      for (auto const &levi : levi_subsets_up_to_conjugacy(rs))
        EXPECT_FALSE(subsystems_conjugate(w, c.members[0], levi.representative));
}

TEST(Conjugacy, E6TwoA2PairwiseConjugateMatchesEnumeration)
{
  auto rs = build_root_system({'E', 6});
  WeylGroup w(rs);
  auto subs = enumerate_subsets_of_type(rs, extended_diagram(rs), parse_types("A2^2"));
  ASSERT_EQ(subs.size(), 3u);
  auto elements = w.chain().elements();
  ASSERT_EQ(elements.size(), 51840u);
  for (auto const &a : subs)
    for (auto const &b : subs) {
      EXPECT_TRUE(subsystems_conjugate(w, a, b));
      EXPECT_TRUE(oracle::conjugate_by_enumeration(rs, elements, a, b));
    }
}

TEST(Conjugacy, E6TwoA2UnderThreeA2SubgroupAreDistinct)
{
  auto rs = build_root_system({'E', 6});
  auto d = extended_diagram(rs);
  auto h = enumerate_subsets_of_type(rs, d, parse_types("A2^3"));
  ASSERT_EQ(h.size(), 1u);
  WeylGroup wh(rs, h[0]);
  EXPECT_EQ(wh.order(), 216u);
  auto subs = enumerate_subsets_of_type(rs, extended_diagram_of(rs, h[0]), parse_types("A2^2"));
  // Inside (A2)^3 the (A2)^2 sub-diagrams drop one of three components.
  std::set<std::vector<int>> distinct;
  for (auto const &s : subs)
    distinct.insert(sorted(reflection_closure(rs, s)));
  EXPECT_EQ(distinct.size(), 3u);
  std::vector<std::vector<int>> reps;
  std::set<std::vector<int>> seen;
  for (auto const &s : subs)
    if (seen.insert(sorted(reflection_closure(rs, s))).second)
      reps.push_back(s);
  auto classes = partition_into_classes(wh, reps);
  EXPECT_EQ(classes.size(), 3u);
  for (auto const &c : classes)
    EXPECT_EQ(c.members.size(), 1u);
}

TEST(Conjugacy, EquivalenceRelationOnRandomTriples)
{
  auto rs = build_root_system({'D', 5});
  WeylGroup w(rs);
  auto subs = enumerate_subsets_of_type(rs, extended_diagram(rs), parse_types("A1^2"));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
  for (int trial = 0; trial < 30; ++trial) {
    auto const &a = subs[pick(rng)];
    auto const &b = subs[pick(rng)];
    auto const &c = subs[pick(rng)];
    EXPECT_TRUE(subsystems_conjugate(w, a, a));
    EXPECT_EQ(subsystems_conjugate(w, a, b), subsystems_conjugate(w, b, a));
    if (subsystems_conjugate(w, a, b) && subsystems_conjugate(w, b, c))
      EXPECT_TRUE(subsystems_conjugate(w, a, c));
  }
}

TEST(Conjugacy, RandomWeylImageIsConjugate)
{
  auto rs = build_root_system({'E', 7});
  WeylGroup w(rs);
  std::mt19937_64 rng(5);
  auto subs = enumerate_subsets_of_type(rs, extended_diagram(rs), parse_types("A3xA1^2"));
  for (int trial = 0; trial < 10; ++trial) {
    Perm g = w.chain().random_element(rng);
    auto const &s = subs[static_cast<std::size_t>(trial) % subs.size()];
    auto img = oracle::image(g, s);
    auto h = find_conjugator(w, s, img);
    ASSERT_TRUE(h.has_value());
    EXPECT_EQ(oracle::image(*h, reflection_closure(rs, s)), reflection_closure(rs, img));
  }
}

TEST(Conjugacy, DiagramAutomorphismsInTypeD)
{
  // D6: the two A5 Levis are swapped by the diagram automorphism but are not
  // W-conjugate (for odd rank -w0 already swaps them).
  auto rs = build_root_system({'D', 6});
  WeylGroup w(rs);
  std::vector<int> a{0, 1, 2, 3, 4}, b{0, 1, 2, 3, 5};
  EXPECT_FALSE(subsystems_conjugate(w, a, b));
  EXPECT_TRUE(conjugate_up_to_diagram_automorphism(rs, a, b));
  EXPECT_EQ(diagram_automorphisms(rs).size(), 2u);
  EXPECT_EQ(diagram_automorphisms(build_root_system({'D', 4})).size(), 6u);

  auto d5 = build_root_system({'D', 5});
  EXPECT_TRUE(subsystems_conjugate(WeylGroup(d5), std::vector<int>{0, 1, 2, 3}, std::vector<int>{0, 1, 2, 4}));
}

TEST(LeviClasses, SmallTypes)
{
  EXPECT_EQ(levi_subsets_up_to_conjugacy(build_root_system({'A', 2})).size(), 3u);
  auto g2 = levi_subsets_up_to_conjugacy(build_root_system({'G', 2}));
  ASSERT_EQ(g2.size(), 4u);
  std::set<std::string> names;
  for (auto const &c : g2)
    names.insert(type_string(c.type));
  EXPECT_EQ(names, (std::set<std::string>{"T", "A1", "~A1", "G2"}));
}

TEST(LeviClasses, HowlettMovesMatchEnumeration)
{
  for (auto t : {CartanType{'A', 3}, CartanType{'B', 3}, CartanType{'C', 3}, CartanType{'D', 4},
                 CartanType{'G', 2}, CartanType{'F', 4}, CartanType{'B', 4}}) {
    auto rs = build_root_system(t);
    WeylGroup w(rs);
    auto elements = w.chain().elements();
    auto classes = levi_subsets_up_to_conjugacy(rs);
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (std::size_t j = 0; j < classes.size(); ++j) {
        bool same = i == j;
        EXPECT_EQ(oracle::conjugate_by_enumeration(rs, elements, classes[i].representative,
                                                   classes[j].representative),
                  same)
            << t.str();
      }
    for (auto const &c : classes)
      for (auto const &m : c.members)
        EXPECT_TRUE(oracle::conjugate_by_enumeration(rs, elements, m, c.representative)) << t.str();
  }
}

TEST(LeviClasses, HowlettMovesMatchConjugatorSearchE6)
{
  auto rs = build_root_system({'E', 6});
  WeylGroup w(rs);
  auto classes = levi_subsets_up_to_conjugacy(rs);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (auto const &m : classes[i].members)
      EXPECT_TRUE(subsystems_conjugate(w, m, classes[i].representative));
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      if (classes[i].type == classes[j].type)
        EXPECT_FALSE(subsystems_conjugate(w, classes[i].representative, classes[j].representative));
  }
}

TEST(LeviClasses, AtMostOneNonAFactor)
{
  for (auto t : all_types_up_to(8)) {
    for (auto const &c : levi_subsets_up_to_conjugacy(build_root_system(t))) {
      int non_a = 0;
      for (auto const &f : c.type)
        if (f.series != 'A')
          ++non_a;
      EXPECT_LE(non_a, 1) << t.str() << " " << type_string(c.type);
    }
  }
}
