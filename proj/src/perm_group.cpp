#include "cuspidal/perm_group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cuspidal/error.hpp"

namespace cuspidal {

Perm identity_perm(std::size_t n)
{
  Perm p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

Perm compose(Perm const &a, Perm const &b)
{
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    r[i] = a[b[i]];
  return r;
}

Perm inverse(Perm const &a)
{
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[a[i]] = static_cast<std::uint32_t>(i);
  return r;
}

bool is_identity(Perm const &a)
{
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != i)
      return false;
  return true;
}

bool is_permutation(Perm const &a)
{
  std::vector<bool> seen(a.size(), false);
  for (auto x : a) {
    if (x >= a.size() || seen[x])
      return false;
    seen[x] = true;
  }
  return true;
}

std::uint64_t perm_order(Perm const &a)
{
  std::uint64_t ord = 1;
  std::vector<bool> seen(a.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i])
      continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = a[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string perm_to_cycles(Perm const &a)
{
  std::ostringstream os;
  std::vector<bool> seen(a.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i] || a[i] == i)
      continue;
    os << "(";
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = a[j]) {
      seen[j] = true;
      os << (first ? "" : ",") << j;
      first = false;
    }
    os << ")";
    any = true;
  }
  return any ? os.str() : "()";
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators,
                     std::vector<std::uint32_t> base_prefix)
  : degree_(degree), generators_(std::move(generators))
{
  for (auto const &g : generators_)
    if (g.size() != degree_ || !is_permutation(g))
      throw Error("invalid-permutation", "generator is not a permutation of the stated degree");
  schreier_sims(base_prefix);
}

std::vector<std::uint32_t> PermGroup::base() const
{
  std::vector<std::uint32_t> b;
  for (auto const &l : levels_)
    b.push_back(l.point);
  return b;
}

void PermGroup::rebuild_orbit(std::size_t i)
{
  Level &l = levels_[i];
  l.orbit.assign(1, l.point);
  l.orbit_pos.assign(degree_, -1);
  l.orbit_pos[l.point] = 0;
  l.transversal.assign(1, identity_perm(degree_));
  for (std::size_t k = 0; k < l.orbit.size(); ++k) {
    std::uint32_t x = l.orbit[k];
    for (auto const &s : l.gens) {
      std::uint32_t y = s[x];
      if (l.orbit_pos[y] >= 0)
        continue;
      l.orbit_pos[y] = static_cast<std::int32_t>(l.orbit.size());
      l.orbit.push_back(y);
      l.transversal.push_back(compose(s, l.transversal[k]));
    }
  }
}

std::pair<Perm, std::size_t> PermGroup::strip(Perm g, std::size_t from) const
{
  for (std::size_t i = from; i < levels_.size(); ++i) {
    std::uint32_t b = g[levels_[i].point];
    std::int32_t pos = levels_[i].orbit_pos[b];
    if (pos < 0)
      return {g, i};
    g = compose(inverse(levels_[i].transversal[pos]), g);
  }
  return {g, levels_.size()};
}

void PermGroup::schreier_sims(std::vector<std::uint32_t> const &prefix)
{
  std::vector<Perm> gens;
  for (auto const &g : generators_)
    if (!is_identity(g))
      gens.push_back(g);

  auto first_moved = [](Perm const &g) {
    for (std::uint32_t x = 0; x < g.size(); ++x)
      if (g[x] != x)
        return x;
    return static_cast<std::uint32_t>(g.size());
  };

  levels_.clear();
  for (auto b : prefix) {
    Level l;
    l.point = b;
    levels_.push_back(std::move(l));
  }
  for (auto const &g : gens) {
    bool moved = false;
    for (auto const &l : levels_)
      if (g[l.point] != l.point)
        moved = true;
    if (!moved) {
      Level l;
      l.point = first_moved(g);
      levels_.push_back(std::move(l));
    }
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    for (auto const &g : gens) {
      bool fixes = true;
      for (std::size_t j = 0; j < i; ++j)
        if (g[levels_[j].point] != levels_[j].point)
          fixes = false;
      if (fixes)
        levels_[i].gens.push_back(g);
    }
    rebuild_orbit(i);
  }

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    Level const &lv = levels_[i];
    for (std::size_t k = 0; k < lv.orbit.size() && !restarted; ++k) {
      for (std::size_t si = 0; si < lv.gens.size() && !restarted; ++si) {
        Perm const &s = lv.gens[si];
        std::uint32_t img = s[lv.orbit[k]];
        Perm g = compose(inverse(lv.transversal[lv.orbit_pos[img]]),
                         compose(s, lv.transversal[k]));
        auto [h, j] = strip(std::move(g), static_cast<std::size_t>(i) + 1);
        if (j < levels_.size() || !is_identity(h)) {
          if (j == levels_.size()) {
            Level nl;
            nl.point = first_moved(h);
            levels_.push_back(std::move(nl));
          }
          for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
            levels_[l].gens.push_back(h);
            rebuild_orbit(l);
          }
          i = static_cast<std::ptrdiff_t>(j);
          restarted = true;
        }
      }
    }
    if (!restarted)
      --i;
  }
}

std::uint64_t PermGroup::order() const
{
  std::uint64_t o = 1;
  for (auto const &l : levels_)
    o *= l.orbit.size();
  return o;
}

bool PermGroup::contains(Perm const &g) const
{
  if (g.size() != degree_)
    return false;
  auto [h, j] = strip(g, 0);
  return j == levels_.size() && is_identity(h);
}

std::optional<Perm> PermGroup::map_base_prefix(std::vector<std::uint32_t> const &images) const
{
  Perm g = identity_perm(degree_);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (i >= levels_.size())
      return std::nullopt;
    // Want g * u (base_i) = images[i] with u in the i-th stabilizer.
    std::uint32_t target = inverse(g)[images[i]];
    std::int32_t pos = levels_[i].orbit_pos[target];
    if (pos < 0)
      return std::nullopt;
    g = compose(g, levels_[i].transversal[pos]);
  }
  return g;
}

std::vector<Perm> PermGroup::elements(std::uint64_t limit) const
{
  if (order() > limit)
    throw Error("order-bound", "group order " + std::to_string(order()) +
                                   " exceeds enumeration bound " + std::to_string(limit));
  std::vector<Perm> out{identity_perm(degree_)};
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1; i >= 0; --i) {
    std::vector<Perm> next;
    next.reserve(out.size() * levels_[i].orbit.size());
    for (auto const &u : levels_[i].transversal)
      for (auto const &g : out)
        next.push_back(compose(u, g));
    out.swap(next);
  }
  return out;
}

Perm PermGroup::random_element(std::mt19937_64 &rng) const
{
  Perm g = identity_perm(degree_);
  for (auto const &l : levels_) {
    std::uniform_int_distribution<std::size_t> d(0, l.orbit.size() - 1);
    g = compose(g, l.transversal[d(rng)]);
  }
  return g;
}

} // namespace cuspidal
