#ifndef CUSPIDAL_TWISTED_GROUPS_HPP
#define CUSPIDAL_TWISTED_GROUPS_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cuspidal/cyclotomic.hpp"
#include "cuspidal/perm_group.hpp"

namespace cuspidal {

/** Largest group order handled by character_table. */
inline constexpr std::uint64_t kCharacterTableBound = 10000;

struct PermHash
{
  std::size_t operator()(Perm const &p) const;
};

/** Finite permutation group held as its element list, sorted, so the
 * identity has index 0. Elements are referred to by index. */
class FiniteGroup
{
public:
  FiniteGroup() = default;
  /** Error("order-bound") above `limit` elements. */
  FiniteGroup(std::size_t degree, std::vector<Perm> const &generators, std::uint64_t limit = 1000000);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  std::vector<Perm> const &elements() const { return elements_; }
  Perm const &element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  /** Index of p, -1 if p is not in the group. */
  int index_of(Perm const &p) const;
  bool contains(Perm const &p) const { return index_of(p) >= 0; }
  int mul(int a, int b) const;
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  /** Indices of the generators given at construction (identity dropped). */
  std::vector<int> const &generators() const { return generators_; }
  int element_order(int a) const;

private:
  std::size_t degree_ = 0;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, int, PermHash> index_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
};

/** Automorphism of a FiniteGroup as a permutation of element indices. */
struct Automorphism
{
  std::vector<int> map;
  /** Order of the automorphism. */
  int order = 1;
  int operator()(int i) const { return map[static_cast<std::size_t>(i)]; }
  bool is_identity() const { return order == 1; }
};

Automorphism identity_automorphism(FiniteGroup const &g);
/** The automorphism sending generators()[i] to images[i]. Error("invalid-argument")
 * unless the images lie in g and define a bijective homomorphism. */
Automorphism automorphism_from_images(FiniteGroup const &g, std::vector<Perm> const &images);
/** Same, with images given for an arbitrary generating list `gens` of g. */
Automorphism automorphism_from_images(FiniteGroup const &g, std::vector<Perm> const &gens,
                                      std::vector<Perm> const &images);
/** w -> t w t^-1 for a permutation t normalizing g. */
Automorphism conjugation_automorphism(FiniteGroup const &g, Perm const &t);
Automorphism compose(Automorphism const &a, Automorphism const &b);
Automorphism inverse(Automorphism const &a);
/** Same map recomputed on the subgroup `sub` (indices of sub), for phi with
 * phi(sub) = sub. Error("invalid-argument") otherwise. */
Automorphism restrict_automorphism(FiniteGroup const &g, Automorphism const &phi, FiniteGroup const &sub);

/** Classes of u -> phi(w) u w^-1. Classes are ordered by smallest element
 * index, members are sorted, and the first member is the representative. */
struct TwistedClassPartition
{
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  int representative(std::size_t c) const { return classes[c].front(); }
  std::size_t size() const { return classes.size(); }
};

TwistedClassPartition twisted_classes(FiniteGroup const &g, Automorphism const &phi);
/** |{x : phi(x) w x^-1 = w}|. */
std::size_t twisted_centralizer_order(FiniteGroup const &g, Automorphism const &phi, int w);

/** Irreducible characters as class functions. Characters are ordered trivial
 * first, then by degree, then by values. */
struct CharacterTable
{
  TwistedClassPartition classes;
  std::vector<std::vector<Cyclotomic>> values;
  std::vector<std::int64_t> degrees;
  /** Prime used by the modular eigenvector computation (0 when supplied). */
  std::int64_t prime = 0;

  std::size_t size() const { return values.size(); }
  Cyclotomic const &value(std::size_t chi, int element) const
  {
    return values[chi][static_cast<std::size_t>(classes.class_of[static_cast<std::size_t>(element)])];
  }
};

/** Dixon-Schneider over a prime p = 1 mod exponent, lifted to cyclotomics.
 * Error("order-bound") above kCharacterTableBound. */
CharacterTable character_table(FiniteGroup const &g);
/** Empty when the table is a valid character table of g (class functions,
 * both orthogonality relations, degrees); otherwise a description. */
std::string check_character_table(FiniteGroup const &g, CharacterTable const &t);

/** Positions in `t` of the characters with chi o phi = chi. */
std::vector<std::size_t> extendable_irreducibles(FiniteGroup const &g, CharacterTable const &t,
                                                 Automorphism const &phi);

/** Extensions of the phi-stable characters to g x| <phi>, where
 * phi^-1 w phi = phi(w). Values are Tr(phi w) on the phi-twisted classes. */
struct CosetCharacters
{
  Automorphism phi;
  TwistedClassPartition twisted;
  /** Position in the character table of each extended character. */
  std::vector<std::size_t> base;
  /** values[k][c]: value of extension k on twisted class c. */
  std::vector<std::vector<Cyclotomic>> values;
  /** "rational" when all coset values are rational, else "argument". */
  std::vector<std::string> normalization;

  std::size_t size() const { return base.size(); }
  Cyclotomic const &value(std::size_t k, int element) const
  {
    return values[k][static_cast<std::size_t>(twisted.class_of[static_cast<std::size_t>(element)])];
  }
  /** Index k with base[k] == chi, -1 if chi is not extendable. */
  int find(std::size_t chi) const;
};

/** One extension per phi-stable character. The order(phi) extensions differ by
 * a root of unity on the coset. Those with rational coset values are preferred;
 * among the remaining candidates, the one whose first nonzero coset value
 * (twisted classes in order) has the least argument in [0, 2 pi). */
CosetCharacters extend_characters(FiniteGroup const &g, CharacterTable const &t, Automorphism const &phi);
/** Coset values of the chosen extension of character `chi` alone.
 * Error("invalid-argument") if chi is not phi-stable. */
std::vector<Cyclotomic> extend_character(FiniteGroup const &g, CharacterTable const &t, Automorphism const &phi,
                                         std::size_t chi);

} // namespace cuspidal

#endif // CUSPIDAL_TWISTED_GROUPS_HPP
