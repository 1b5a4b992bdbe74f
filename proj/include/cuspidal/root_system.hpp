#ifndef CUSPIDAL_ROOT_SYSTEM_HPP
#define CUSPIDAL_ROOT_SYSTEM_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cuspidal/int_matrix.hpp"
#include "cuspidal/perm_group.hpp"

namespace cuspidal {

/** One irreducible Cartan type. `short_roots` marks a simply laced component
 * made of short roots of a non-simply-laced ambient system; it prints as "~A1". */
struct CartanType
{
  char series = 'A';
  int rank = 1;
  bool short_roots = false;

  std::string str() const;
  auto operator<=>(CartanType const &) const = default;
};

/** Multiset of irreducible types, kept in canonical order. Empty means a torus. */
using TypeDecomposition = std::vector<CartanType>;

/** Error("invalid-type") unless the series/rank pair is a genuine Cartan type. */
void check_cartan_type(CartanType const &t);
/** Low-rank aliases: D2 = A1^2, D3 = A3, B1 = ~A1, C1 = A1, C2 = B2, rank 0 empty. */
TypeDecomposition normalize_type(CartanType const &t);
TypeDecomposition canonical(TypeDecomposition t);
/** "A3^2xA1", "A1x~A1", "T" for the empty decomposition. */
std::string type_string(TypeDecomposition const &t);
/** Inverse of type_string; also accepts "A2xA2", "×" as separator, unnormalized ranks. */
TypeDecomposition parse_types(std::string const &s);
CartanType parse_cartan_type(std::string const &s);

std::uint64_t weyl_order_formula(CartanType const &t);
std::size_t root_count_formula(CartanType const &t);

/** Irreducible component of a subsystem, nodes in Bourbaki order (root indices). */
struct Component
{
  CartanType type;
  std::vector<int> nodes;
};

/** Root system with integer roots in the simple-root basis.
 *
 * Positive roots come first, ordered by height and then by decreasing
 * coordinates (so simple root i has index i). The negative of root i < N is
 * i + N. Copies share the underlying data.
 */
class RootSystem
{
public:
  RootSystem();
  explicit RootSystem(TypeDecomposition const &components);

  std::size_t rank() const { return d_->rank; }
  std::size_t size() const { return d_->roots.size(); }
  std::size_t num_positive() const { return d_->roots.size() / 2; }
  TypeDecomposition const &type() const { return d_->type; }
  bool irreducible() const { return d_->type.size() == 1; }

  IntVector const &root(int i) const { return d_->roots[i]; }
  std::optional<int> index_of(IntVector const &v) const;
  int negative(int i) const;
  bool is_positive(int i) const { return i < static_cast<int>(num_positive()); }
  std::int64_t height(int i) const;

  IntMatrix const &gram() const { return d_->gram; }
  IntMatrix const &cartan() const { return d_->cartan; }
  std::int64_t inner(int i, int j) const { return d_->inner[i][j]; }
  std::int64_t inner_vec(IntVector const &a, IntVector const &b) const;
  std::int64_t norm(int i) const { return d_->inner[i][i]; }
  /** <beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha). */
  std::int64_t pairing(int beta, int alpha) const { return 2 * inner(beta, alpha) / norm(alpha); }

  /** Permutation of root indices induced by the reflection in root i. */
  Perm const &reflection(int i) const { return d_->reflections[i]; }

  /** Simple-root index range [first, last) of each irreducible component. */
  std::vector<std::pair<int, int>> const &component_nodes() const { return d_->component_nodes; }
  int component_of_root(int i) const;
  int highest_root(int component = 0) const;
  std::int64_t long_norm(int component) const;

private:
  struct Data
  {
    std::size_t rank = 0;
    TypeDecomposition type;
    IntMatrix gram;
    IntMatrix cartan;
    std::vector<IntVector> roots;
    std::map<IntVector, int> index;
    std::vector<std::vector<std::int64_t>> inner;
    std::vector<Perm> reflections;
    std::vector<std::pair<int, int>> component_nodes;
  };
  std::shared_ptr<Data const> d_;
};

RootSystem build_root_system(CartanType const &t);
/** Cartan matrix A[i][j] = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i), Bourbaki numbering. */
IntMatrix cartan_matrix(CartanType const &t);

/** Nodes of a (possibly extended) Dynkin diagram, as root indices. */
struct Diagram
{
  std::vector<int> nodes;
  bool extended = false;
  /** Positions in `nodes` of the affine nodes (one per component when extended). */
  std::vector<int> affine_nodes;
};

struct Bond
{
  int a = 0;
  int b = 0;
  /** Product of the two Cartan entries: 1, 2, 3 (or 4 for the affine A1 bond). */
  int multiplicity = 0;
  /** Position of the longer end, -1 for equal lengths. */
  int longer = -1;
};

Diagram dynkin_diagram(RootSystem const &rs);
/** Error("reducible") unless rs is irreducible. */
Diagram extended_diagram(RootSystem const &rs);
/** Extended diagram of the subsystem with base `base`, one affine node per component. */
Diagram extended_diagram_of(RootSystem const &rs, std::vector<int> const &base);
std::vector<Bond> diagram_bonds(RootSystem const &rs, Diagram const &d);

/** Roots obtained from `gens` under the reflections they generate (sorted). */
std::vector<int> reflection_closure(RootSystem const &rs, std::vector<int> const &gens);
/** Roots lying in the rational span of `gens` (sorted). */
std::vector<int> span_closure(RootSystem const &rs, std::vector<int> const &gens);
/** Simple system of a subsystem given by all of its roots (indecomposable positives). */
std::vector<int> subsystem_base(RootSystem const &rs, std::vector<int> const &roots);
/** Error("not-finite-type") if the Gram matrix of `base` is not positive definite. */
std::vector<Component> decompose(RootSystem const &rs, std::vector<int> const &base);
TypeDecomposition type_of(RootSystem const &rs, std::vector<int> const &base);
/** Same as type_of, but nullopt instead of an error for non-finite types. */
std::optional<TypeDecomposition> try_type_of(RootSystem const &rs, std::vector<int> const &base);

/** Reflection subgroup W(Psi) acting on the roots of an ambient system. */
class WeylGroup
{
public:
  explicit WeylGroup(RootSystem rs);
  /** Subgroup generated by reflections in `generating_roots`. */
  WeylGroup(RootSystem rs, std::vector<int> const &generating_roots);

  RootSystem const &root_system() const { return rs_; }
  std::vector<int> const &subsystem_roots() const { return roots_; }
  std::vector<int> const &simple_roots() const { return base_; }
  std::vector<Perm> generators() const;

  /** Stabilizer chain over the generators, built on first use. */
  PermGroup const &chain() const;
  std::uint64_t order() const { return chain().order(); }
  bool contains(Perm const &g) const { return chain().contains(g); }

  /** Some w with w(from[i]) = to[i] for all i, found level by level along the
   * chain of pointwise root stabilizers. */
  std::optional<Perm> map_tuple(std::vector<int> const &from, std::vector<int> const &to) const;

  /** Order computed as the product of root-orbit sizes down the pointwise
   * stabilizer chain; independent of the Schreier-Sims chain. */
  std::uint64_t order_by_orbits() const;

private:
  RootSystem rs_;
  std::vector<int> roots_;
  std::vector<int> base_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/** Some w in the group with w(Phi_1) = Phi_2, where Phi_i is the subsystem
 * generated by the roots in s_i. The roots of s2 must lie in the group's
 * subsystem (always true for the full Weyl group). */
std::optional<Perm> find_conjugator(WeylGroup const &w, std::vector<int> const &s1,
                                    std::vector<int> const &s2);
bool subsystems_conjugate(WeylGroup const &w, std::vector<int> const &s1,
                          std::vector<int> const &s2);

/** An element of the group mapping `base` onto itself; image[i] = element(base[i]). */
struct BaseSymmetry
{
  std::vector<int> image;
  Perm element;
};

/** One group element for each permutation of `base` realized by the group,
 * i.e. representatives of the stabilizer of the base. When the group contains
 * the reflections of `base`, these represent N(W_base)/W_base. The identity
 * comes first. */
std::vector<BaseSymmetry> base_stabilizer_representatives(WeylGroup const &w, std::vector<int> const &base);

/** Diagram automorphisms of the simple system, as root permutations (identity first). */
std::vector<Perm> diagram_automorphisms(RootSystem const &rs);
/** Conjugacy under W extended by the diagram automorphisms. */
bool conjugate_up_to_diagram_automorphism(RootSystem const &rs, std::vector<int> const &s1,
                                          std::vector<int> const &s2);

struct SubdiagramClass
{
  /** Lexicographically least member. */
  std::vector<int> representative;
  TypeDecomposition type;
  /** Members, each a sorted list of root indices. */
  std::vector<std::vector<int>> members;
  /** Positions of the members in the input list (partition_into_classes only). */
  std::vector<std::size_t> input_positions;
};

/** All node subsets whose induced sub-diagram has type `target`, each given
 * as root indices in node order; subsets listed by increasing node bitmask. */
std::vector<std::vector<int>> enumerate_subsets_of_type(RootSystem const &rs, Diagram const &d,
                                                        TypeDecomposition const &target);

std::vector<SubdiagramClass> partition_into_classes(WeylGroup const &w,
                                                    std::vector<std::vector<int>> const &subsets);

/** W-classes of subsets of simple roots, via elementary Howlett moves.
 * Ordered by size, then by representative. */
std::vector<SubdiagramClass> levi_subsets_up_to_conjugacy(RootSystem const &rs);

/** Position map of -w0 on a component's nodes (Bourbaki order). */
std::vector<int> opposition_involution(CartanType const &t);

} // namespace cuspidal

#endif // CUSPIDAL_ROOT_SYSTEM_HPP
