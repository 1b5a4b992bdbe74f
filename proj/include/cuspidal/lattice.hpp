#ifndef CUSPIDAL_LATTICE_HPP
#define CUSPIDAL_LATTICE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cuspidal/int_matrix.hpp"
#include "cuspidal/root_system.hpp"

namespace cuspidal {

/** Finite abelian group given by invariant factors d1 | d2 | ... (each > 1). */
struct FiniteAbelianGroup
{
  IntVector invariant_factors;

  std::int64_t order() const;
  bool trivial() const { return invariant_factors.empty(); }
  /** "1", "Z/3", "Z/2xZ/4". */
  std::string str() const;
  /** All elements as tuples mod d_i, in lexicographic order. */
  std::vector<IntVector> elements() const;
  std::int64_t element_order(IntVector const &e) const;

  /** Invariant factors of the cokernel torsion of an integer relation matrix. */
  static FiniteAbelianGroup from_relations(IntMatrix const &relations, std::size_t generators);
  /** Normalizes an arbitrary list of cyclic orders into a divisibility chain. */
  static FiniteAbelianGroup from_cyclic_orders(IntVector const &orders);
};

/** Largest divisor of n prime to p; p = 0 leaves n unchanged. */
std::int64_t prime_to_p(std::int64_t n, int p);
/** Subgroup of elements of order prime to p. */
FiniteAbelianGroup prime_to_p_part(FiniteAbelianGroup const &g, int p);

/** Root system with a character lattice Q <= X <= P.
 *
 * Vectors of X are written in the fundamental-weight basis; the simple root i
 * has weight coordinates <alpha_i, alpha_j^vee> (row i of the transposed
 * Cartan matrix).
 */
class RootDatum
{
public:
  RootDatum() = default;
  /** X spanned by Q and `extra_generators`. Error("invalid-argument") unless X <= P,
   * i.e. the generators have integer weight coordinates of the right length. */
  RootDatum(RootSystem rs, IntMatrix const &extra_generators, std::string label);

  RootSystem const &root_system() const { return rs_; }
  std::string const &isogeny_label() const { return label_; }
  /** Hermite basis of X (weight coordinates). */
  IntMatrix const &lattice_basis() const { return basis_; }
  /** Weight coordinates of root i. */
  IntVector root_weight(int i) const;
  /** Rational coordinates of a weight in the simple-root basis. */
  RatVector to_root_coordinates(IntVector const &weight) const;
  bool contains(IntVector const &weight) const;
  /** |X/Q|. */
  std::int64_t index_over_root_lattice() const;
  /** Hermite basis of the cocharacter lattice Y, written through the values
   * c_j = <alpha_j, y>; these are integer vectors. */
  IntMatrix const &cocharacter_basis() const { return cochar_; }

private:
  RootSystem rs_;
  std::string label_;
  IntMatrix basis_;
  RatMatrix weight_to_root_;
  IntMatrix cochar_;
};

/** Labels: sc, ad, SO, PSO, HalfSpin, SL_mod_d (or SLmod:d), plus Spin, Sp,
 * PSp, SL, PGL as aliases. Error("invalid-type") if the label does not fit the type. */
RootDatum make_root_datum(CartanType const &t, std::string const &label);
/** "E6:sc", "D4:HalfSpin", "A3:SL_mod_2". */
RootDatum parse_root_datum(std::string const &s);

/** Z(L)/Z°(L) for the standard Levi on `levi` (simple root indices): the
 * prime-to-p torsion of X / Z<levi>. */
FiniteAbelianGroup center_component_group(RootDatum const &g, std::vector<int> const &levi, int p);

/** An element of Z(H) for a full-rank subsystem H, given by the values
 * c_j = <alpha_j, y> of a cocharacter representative (modulo Y). */
struct CenterElement
{
  RatVector coords;
  /** Tuple in the invariant-factor decomposition of the prime-to-p part. */
  IntVector tuple;
  std::int64_t order = 1;
  /** Lies in Z(G). */
  bool central = false;
};

/** Z(H) for the subsystem generated by `psi` (any roots spanning the full rank). */
struct SubsystemCenter
{
  std::vector<int> base;
  FiniteAbelianGroup group;
  /** All elements of order prime to p; the identity first, then by order and coords. */
  std::vector<CenterElement> elements;
  /** Hermite basis of Y, used to reduce coordinates. */
  IntMatrix cocharacters;
  /** Position in `elements` of the class of coords, -1 if absent. */
  int index_of(RatVector const &coords) const;
};

/** Error("invalid-argument") if psi does not have full rank. */
SubsystemCenter subsystem_center(RootDatum const &g, std::vector<int> const &psi, int p);
FiniteAbelianGroup full_center(RootDatum const &g, std::vector<int> const &psi, int p);
std::vector<CenterElement> center_elements_outside_subcenter(RootDatum const &g,
                                                             std::vector<int> const &psi, int p);

/** Value <beta, y> mod 1 of a root at a center element: zero iff the root
 * lies in the centralizer of the element. */
Rational root_value(RootSystem const &rs, int root, RatVector const &coords);

/** c-coordinates of w.t for a Weyl element w (root permutation). */
RatVector act_on_center(RootSystem const &rs, Perm const &w, RatVector const &coords);

/** Action of N_W(W_psi)/W_psi on Z(H). */
struct CenterAction
{
  SubsystemCenter center;
  /** One entry per coset, identity first. */
  std::vector<BaseSymmetry> cosets;
  /** element_maps[k][i] = index of cosets[k] applied to center.elements[i]. */
  std::vector<Perm> element_maps;
  /** Positions of a generating subset of `cosets`. */
  std::vector<std::size_t> generators;
  std::string source;
};

CenterAction normalizer_center_action(RootDatum const &g, std::vector<int> const &psi, int p = 0);

} // namespace cuspidal

#endif // CUSPIDAL_LATTICE_HPP
