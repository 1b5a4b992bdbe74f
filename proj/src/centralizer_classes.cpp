#include "cuspidal/centralizer_classes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cuspidal/error.hpp"

namespace cuspidal {

namespace {

TypeDecomposition untilded(TypeDecomposition t)
{
  for (auto &c : t)
    c.short_roots = false;
  return canonical(std::move(t));
}

std::vector<int> roots_of(RootSystem const &rs, std::vector<int> const &base)
{
  return reflection_closure(rs, base);
}

// Subsets of the extended diagram of `base` that have finite type.
std::vector<std::vector<int>> extended_subsets(RootSystem const &rs, std::vector<int> const &base,
                                               bool full_rank_only)
{
  std::vector<std::vector<int>> out;
  if (base.empty())
    return out;
  Diagram d = extended_diagram_of(rs, base);
  std::size_t m = d.nodes.size();
  if (m > 24)
    throw Error("invalid-argument", "extended diagram too large");
  for (std::uint32_t mask = 0; mask + 1 < (1u << m); ++mask) {
    std::vector<int> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i))
        s.push_back(d.nodes[i]);
    if (full_rank_only && s.size() != base.size())
      continue;
    if (!try_type_of(rs, s))
      continue;
    out.push_back(normalized_base(rs, s));
  }
  return out;
}

struct ClassPool
{
  RootSystem rs;
  WeylGroup w;
  std::vector<PseudoLeviClass> classes;
  std::set<std::vector<int>> seen_roots;

  explicit ClassPool(RootSystem const &r) : rs(r), w(r) {}

  // Returns true for a new class.
  bool add(std::vector<int> const &base, int depth)
  {
    auto roots = roots_of(rs, base);
    if (!seen_roots.insert(roots).second)
      return false;
    auto type = type_of(rs, base);
    for (auto const &c : classes)
      if (c.type == type && c.base.size() == base.size() && subsystems_conjugate(w, base, c.base))
        return false;
    PseudoLeviClass c;
    c.base = base;
    c.type = type;
    c.full_rank = base.size() == rs.rank();
    c.depth = depth;
    classes.push_back(std::move(c));
    return true;
  }
};

std::vector<PseudoLeviClass> iterate(RootSystem const &rs, std::vector<int> const &start, bool full_rank_only)
{
  ClassPool pool(rs);
  pool.add(normalized_base(rs, start), 0);
  std::size_t done = 0;
  while (done < pool.classes.size()) {
    PseudoLeviClass cur = pool.classes[done++];
    if (cur.base.size() != start.size())
      continue;
    for (auto const &s : extended_subsets(rs, cur.base, full_rank_only))
      pool.add(s, cur.depth + 1);
  }
  return pool.classes;
}

int find_class(std::vector<SubdiagramClass> const &classes, std::vector<int> subset)
{
  std::sort(subset.begin(), subset.end());
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (auto const &m : classes[i].members)
      if (m == subset)
        return static_cast<int>(i);
  return -1;
}

// Orbit sizes of the admissible classes under the cosets fixing sigma.
std::vector<int> orbit_sizes(CenterAction const &act, std::vector<SubdiagramClass> const &classes,
                             std::vector<bool> const &valid, std::size_t sigma_index,
                             std::size_t &stabilizer_size)
{
  std::vector<std::vector<int>> images(classes.size());
  stabilizer_size = 0;
  for (std::size_t k = 0; k < act.cosets.size(); ++k) {
    if (act.element_maps[k][sigma_index] != sigma_index)
      continue;
    ++stabilizer_size;
    auto const &img = act.cosets[k].image;
    auto const &base = act.center.base;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::vector<int> moved;
      for (int r : classes[c].representative) {
        auto it = std::find(base.begin(), base.end(), r);
        if (it == base.end())
          throw Error("internal", "admissible subset leaves the simple system of H");
        moved.push_back(img[static_cast<std::size_t>(it - base.begin())]);
      }
      int target = find_class(classes, moved);
      if (target < 0)
        throw Error("internal", "normalizer element does not preserve admissible subsets");
      images[c].push_back(target);
    }
  }
  std::vector<int> sizes(classes.size(), 0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (!valid[c])
      continue;
    std::set<int> orbit(images[c].begin(), images[c].end());
    sizes[c] = static_cast<int>(orbit.size());
  }
  return sizes;
}

HResult analyze_h(RootDatum const &g, PseudoLeviClass const &h, std::vector<int> const &m_base, int p)
{
  RootSystem const &rs = g.root_system();
  HResult out;
  out.h = h;
  out.admissible = admissible_m_classes(rs, h.base, m_base);
  for (auto const &c : out.admissible)
    out.valid.push_back(levi_meets_h_in_m(rs, h.base, roots_of(rs, c.representative)));
  if (std::none_of(out.valid.begin(), out.valid.end(), [](bool b) { return b; }))
    return out;

  std::vector<CenterElement> sigmas = center_elements_outside_subcenter(g, h.base, p);
  if (sigmas.empty())
    return out;
  std::vector<bool> exact;
  for (auto const &s : sigmas) {
    exact.push_back(centralizer_is_exactly(rs, h.base, s.coords));
    if (!exact.back())
      ++out.unrealizable_sigmas;
  }
  out.realizable = std::find(exact.begin(), exact.end(), true) != exact.end();
  if (!out.realizable)
    return out;

  std::size_t valid_count = std::count(out.valid.begin(), out.valid.end(), true);
  if (out.admissible.size() == 1) {
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
      SigmaResult r;
      r.sigma = sigmas[i];
      r.centralizer_is_h = exact[i];
      r.orbit_sizes = {valid_count ? 1 : 0};
      r.r = 1;
      out.sigmas.push_back(std::move(r));
    }
    return out;
  }

  CenterAction act = normalizer_center_action(g, h.base, p);
  out.normalizer_cosets = act.cosets.size();
  // The admissible classes were computed on h.base; the action uses the same
  // normalized base.
  if (act.center.base != h.base)
    throw Error("internal", "simple system of H changed between modules");
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    SigmaResult r;
    r.sigma = sigmas[i];
    r.centralizer_is_h = exact[i];
    int idx = act.center.index_of(r.sigma.coords);
    if (idx < 0)
      throw Error("internal", "sigma not found in Z(H)");
    r.orbit_sizes = orbit_sizes(act, out.admissible, out.valid, static_cast<std::size_t>(idx), r.stabilizer_size);
    r.r = *std::max_element(r.orbit_sizes.begin(), r.orbit_sizes.end());
    out.sigmas.push_back(std::move(r));
  }
  return out;
}

} // namespace

std::vector<int> normalized_base(RootSystem const &rs, std::vector<int> const &roots)
{
  if (roots.empty())
    return {};
  return subsystem_base(rs, reflection_closure(rs, roots));
}

std::vector<PseudoLeviClass> enumerate_pseudo_levis(RootSystem const &rs)
{
  std::vector<int> all(rs.rank());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = static_cast<int>(i);
  return iterate(rs, all, false);
}

std::vector<PseudoLeviClass> full_rank_subsystems(RootSystem const &rs, std::vector<int> const &base)
{
  return iterate(rs, base, true);
}

std::vector<SubdiagramClass> admissible_m_classes(RootSystem const &rs, std::vector<int> const &h_base,
                                                  std::vector<int> const &m_base)
{
  WeylGroup wg(rs);
  auto m_type = m_base.empty() ? TypeDecomposition{} : type_of(rs, m_base);
  std::vector<std::vector<int>> subsets;
  if (m_base.empty()) {
    subsets.push_back({});
  } else {
    Diagram d;
    d.nodes = h_base;
    for (auto const &s : enumerate_subsets_of_type(rs, d, m_type))
      if (subsystems_conjugate(wg, s, m_base))
        subsets.push_back(s);
  }
  if (subsets.empty())
    return {};
  if (m_base.empty()) {
    SubdiagramClass c;
    c.members = {{}};
    c.input_positions = {0};
    return {c};
  }
  WeylGroup wh(rs, h_base);
  return partition_into_classes(wh, subsets);
}

bool levi_meets_h_in_m(RootSystem const &rs, std::vector<int> const &h_base, std::vector<int> const &m_roots)
{
  auto h_roots = roots_of(rs, h_base);
  auto l_roots = m_roots.empty() ? std::vector<int>{} : span_closure(rs, m_roots);
  std::vector<int> meet;
  std::set_intersection(l_roots.begin(), l_roots.end(), h_roots.begin(), h_roots.end(), std::back_inserter(meet));
  std::vector<int> m_sorted = m_roots.empty() ? std::vector<int>{} : reflection_closure(rs, m_roots);
  return meet == m_sorted;
}

bool centralizer_is_exactly(RootSystem const &rs, std::vector<int> const &h_base, RatVector const &sigma)
{
  auto h_roots = roots_of(rs, h_base);
  for (std::size_t i = 0; i < rs.num_positive(); ++i) {
    bool zero = root_value(rs, static_cast<int>(i), sigma).num() == 0;
    if (zero != std::binary_search(h_roots.begin(), h_roots.end(), static_cast<int>(i)))
      return false;
  }
  return true;
}

int m_class_count(RootDatum const &g, std::vector<int> const &m_base, std::vector<int> const &h_base0,
                  RatVector const &sigma, int p)
{
  RootSystem const &rs = g.root_system();
  auto h_base = normalized_base(rs, h_base0);
  if (h_base.size() != rs.rank())
    throw Error("invalid-argument", "H must have full rank");
  auto outside = center_elements_outside_subcenter(g, h_base, p);
  if (std::none_of(outside.begin(), outside.end(),
                   [&](CenterElement const &s) { return centralizer_is_exactly(rs, h_base, s.coords); }))
    throw Error("invalid-argument", "H is not the centralizer of any element of Z(H)");
  CenterAction act = normalizer_center_action(g, h_base, p);
  int idx = act.center.index_of(sigma);
  if (idx < 0)
    throw Error("invalid-argument", "sigma is not an element of Z(H) of order prime to p");
  if (act.center.elements[static_cast<std::size_t>(idx)].central)
    throw Error("invalid-argument", "sigma is central in G");
  auto classes = admissible_m_classes(rs, h_base, m_base);
  std::vector<int> sorted_m = m_base;
  std::sort(sorted_m.begin(), sorted_m.end());
  int start = find_class(classes, sorted_m);
  if (start < 0)
    throw Error("invalid-argument", "M is not a subset of the simple system of H");
  std::vector<bool> valid(classes.size(), false);
  valid[static_cast<std::size_t>(start)] = levi_meets_h_in_m(rs, h_base, roots_of(rs, m_base));
  if (!valid[static_cast<std::size_t>(start)])
    throw Error("invalid-argument", "Z°_L(sigma) is larger than M");
  std::size_t stab = 0;
  return orbit_sizes(act, classes, valid, static_cast<std::size_t>(idx), stab)[static_cast<std::size_t>(start)];
}

MClassReport classify_m(RootDatum const &g, std::vector<int> const &m_base0, int p,
                        std::vector<PseudoLeviClass> const &pseudo_levis)
{
  RootSystem const &rs = g.root_system();
  MClassReport rep;
  rep.p = p;
  rep.m_base = normalized_base(rs, m_base0);
  rep.m_type = type_string(rep.m_base.empty() ? TypeDecomposition{} : type_of(rs, rep.m_base));
  auto l_roots = rep.m_base.empty() ? std::vector<int>{} : span_closure(rs, rep.m_base);
  auto l_base = normalized_base(rs, l_roots);
  rep.l_type = type_string(l_base.empty() ? TypeDecomposition{} : type_of(rs, l_base));
  rep.l_is_g = l_base.size() == rs.rank();
  if (rep.l_is_g) {
    rep.note = "L = G: H = M and r = 1";
    return rep;
  }
  rep.r_min = 0;
  rep.r_max = 0;
  for (auto const &h : pseudo_levis) {
    if (!h.full_rank)
      continue;
    auto res = analyze_h(g, h, rep.m_base, p);
    if (res.admissible.empty() || res.sigmas.empty())
      continue;
    for (auto const &s : res.sigmas) {
      for (std::size_t c = 0; c < res.valid.size(); ++c) {
        if (!res.valid[c])
          continue;
        int r = s.orbit_sizes[c];
        rep.r_min = rep.r_min == 0 ? r : std::min(rep.r_min, r);
        rep.r_max = std::max(rep.r_max, r);
      }
    }
    rep.hs.push_back(std::move(res));
  }
  if (rep.r_max == 0) {
    rep.r_min = rep.r_max = 1;
    rep.note = "no full-rank H with an isolated sigma outside Z(G)";
  }
  return rep;
}

MClassReport classify_m(RootDatum const &g, std::vector<int> const &m_base, int p)
{
  return classify_m(g, m_base, p, enumerate_pseudo_levis(g.root_system()));
}

std::vector<std::vector<int>> m_candidates(RootSystem const &rs, std::vector<int> const &levi_base,
                                           TypeDecomposition const &m_type)
{
  auto want = untilded(m_type);
  std::vector<std::vector<int>> out;
  if (levi_base.empty()) {
    if (want.empty())
      out.push_back({});
    return out;
  }
  for (auto const &c : full_rank_subsystems(rs, levi_base))
    if (untilded(c.type) == want)
      out.push_back(c.base);
  return out;
}

MClassReport pso_example_report(int m, int p)
{
  if (m < 2)
    throw Error("invalid-argument", "PSO example needs m >= 2");
  CartanType t{'D', 2 * m};
  RootDatum g = make_root_datum(t, "ad");
  std::vector<int> levi;
  for (int i = m; i < 2 * m; ++i)
    levi.push_back(i);
  auto rep = classify_m(g, levi, p);
  rep.group = "D" + std::to_string(2 * m) + ":ad";
  rep.cuspidal = false;
  return rep;
}

std::vector<MClassReport> theorem61_report(RootDatum const &g, int p)
{
  RootSystem const &rs = g.root_system();
  auto pseudo = enumerate_pseudo_levis(rs);
  std::vector<MClassReport> out;
  std::string name = rs.type().empty() ? "T" : type_string(rs.type()) + ":" + g.isogeny_label();
  for (auto const &rec : generate_table1(g, p)) {
    auto const &l_base = rec.levi_class.representative;
    for (auto const &m_type : rec.m_types) {
      if (l_base.size() == rs.rank()) {
        MClassReport rep;
        rep.group = name;
        rep.p = p;
        rep.l_type = rec.levi_type;
        rep.m_type = type_string(m_type);
        rep.l_is_g = true;
        rep.note = "L = G: H = M and r = 1";
        out.push_back(std::move(rep));
        continue;
      }
      auto cands = m_candidates(rs, l_base, m_type);
      if (cands.empty()) {
        MClassReport rep;
        rep.group = name;
        rep.p = p;
        rep.l_type = rec.levi_type;
        rep.m_type = type_string(m_type);
        rep.note = "no subsystem of this type with full rank in L";
        out.push_back(std::move(rep));
        continue;
      }
      for (auto const &m : cands) {
        auto rep = classify_m(g, m, p, pseudo);
        rep.group = name;
        rep.l_type = rec.levi_type;
        out.push_back(std::move(rep));
      }
    }
  }
  return out;
}

} // namespace cuspidal
