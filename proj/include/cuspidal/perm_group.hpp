#ifndef CUSPIDAL_PERM_GROUP_HPP
#define CUSPIDAL_PERM_GROUP_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cuspidal {

/** A permutation of {0, ..., n-1} stored as its image array. */
using Perm = std::vector<std::uint32_t>;

Perm identity_perm(std::size_t n);
/** (a * b)(x) = a(b(x)). */
Perm compose(Perm const &a, Perm const &b);
Perm inverse(Perm const &a);
bool is_identity(Perm const &a);
bool is_permutation(Perm const &a);
/** Smallest k >= 1 with a^k = 1. */
std::uint64_t perm_order(Perm const &a);
std::string perm_to_cycles(Perm const &a);

/** Permutation group with a deterministic Schreier-Sims stabilizer chain.
 *
 * The chain is built once at construction; an optional base prefix fixes the
 * first base points, which is what tuple-mapping queries rely on.
 */
class PermGroup
{
public:
  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Perm> generators,
            std::vector<std::uint32_t> base_prefix = {});

  std::size_t degree() const { return degree_; }
  std::vector<Perm> const &generators() const { return generators_; }
  std::vector<std::uint32_t> base() const;
  /** Strong generators fixing the first `level` base points. */
  std::vector<Perm> const &strong_generators(std::size_t level) const
  {
    return levels_[level].gens;
  }
  std::vector<std::uint32_t> const &basic_orbit(std::size_t level) const
  {
    return levels_[level].orbit;
  }
  std::size_t chain_length() const { return levels_.size(); }

  std::uint64_t order() const;
  bool contains(Perm const &g) const;

  /** Some g in the group with g(base[i]) = images[i] for every i < images.size(). */
  std::optional<Perm> map_base_prefix(std::vector<std::uint32_t> const &images) const;

  /** All elements, in the deterministic order given by the chain.
   * Error("order-bound") if the order exceeds `limit`. */
  std::vector<Perm> elements(std::uint64_t limit = 1000000) const;

  Perm random_element(std::mt19937_64 &rng) const;

private:
  struct Level
  {
    std::uint32_t point = 0;
    std::vector<Perm> gens;
    std::vector<std::uint32_t> orbit;
    std::vector<std::int32_t> orbit_pos; // index into orbit, -1 if absent
    std::vector<Perm> transversal;       // transversal[k](point) = orbit[k]
  };

  void rebuild_orbit(std::size_t level);
  // Returns the residue and the level at which sifting stopped.
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const;
  void schreier_sims(std::vector<std::uint32_t> const &prefix);

  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Level> levels_;
};

} // namespace cuspidal

#endif // CUSPIDAL_PERM_GROUP_HPP
