#ifndef CUSPIDAL_CENTRALIZER_CLASSES_HPP
#define CUSPIDAL_CENTRALIZER_CLASSES_HPP

#include <string>
#include <vector>

#include "cuspidal/cuspidality.hpp"
#include "cuspidal/lattice.hpp"
#include "cuspidal/root_system.hpp"

namespace cuspidal {

/** W(G)-class of a subsystem reached by taking subsets of extended diagrams. */
struct PseudoLeviClass
{
  /** Simple system (positive roots) of a representative. */
  std::vector<int> base;
  TypeDecomposition type;
  bool full_rank = false;
  /** Number of extended-diagram steps needed to reach the class (0 for G). */
  int depth = 0;
};

/** Classes of proper subsets of the extended diagram, iterated on the
 * full-rank ones until nothing new appears. G itself comes first. */
std::vector<PseudoLeviClass> enumerate_pseudo_levis(RootSystem const &rs);
/** Full-rank subsystems of the subsystem with base `base` (itself included),
 * by the same iteration, up to W(G). */
std::vector<PseudoLeviClass> full_rank_subsystems(RootSystem const &rs, std::vector<int> const &base);

/** Positive simple system of the subsystem generated by `roots`. */
std::vector<int> normalized_base(RootSystem const &rs, std::vector<int> const &roots);

/** W(H)-classes of subsets of the simple system `h_base` that are
 * W(G)-conjugate to the subsystem with base `m_base`. */
std::vector<SubdiagramClass> admissible_m_classes(RootSystem const &rs, std::vector<int> const &h_base,
                                                  std::vector<int> const &m_base);

/** Roots of the Levi spanned by M meet the roots of H exactly in the roots
 * of M, i.e. M = Z°_L(sigma) when H = Z°_G(sigma). */
bool levi_meets_h_in_m(RootSystem const &rs, std::vector<int> const &h_base, std::vector<int> const &m_roots);

/** The roots vanishing at sigma are exactly the roots of H. */
bool centralizer_is_exactly(RootSystem const &rs, std::vector<int> const &h_base, RatVector const &sigma);

struct SigmaResult
{
  CenterElement sigma;
  /** The roots vanishing at sigma are exactly those of H. When false, Z°_G(sigma)
   * is larger than H and r is the count for H taken as given. */
  bool centralizer_is_h = true;
  /** Size of N_W(W_H)/W_H elements fixing sigma. */
  std::size_t stabilizer_size = 0;
  /** Orbit size of each admissible class (0 for classes that cannot play M). */
  std::vector<int> orbit_sizes;
  int r = 1;
};

struct HResult
{
  PseudoLeviClass h;
  std::vector<SubdiagramClass> admissible;
  /** admissible[i] can be M for some sigma (levi_meets_h_in_m). */
  std::vector<bool> valid;
  std::size_t normalizer_cosets = 0;
  /** Some sigma in Z(H) has Z°_G(sigma) = H. Otherwise no sigma is analysed. */
  bool realizable = false;
  /** Elements of Z(H) outside Z(G), of order prime to p. */
  std::vector<SigmaResult> sigmas;
  std::size_t unrealizable_sigmas = 0;
};

/** One configuration (G, L, M): L is spanned by M. */
struct MClassReport
{
  std::string group;
  int p = 0;
  std::string l_type;
  std::string m_type;
  std::vector<int> m_base;
  bool l_is_g = false;
  /** Configuration taken from the table (false for illustrative examples). */
  bool cuspidal = true;
  std::vector<HResult> hs;
  int r_min = 1;
  int r_max = 1;
  std::string note;
};

/** r for one (M class, H, sigma), with M given by a member of the
 * admissible classes of H. Error("invalid-argument") when sigma lies in Z(G)
 * or outside Z(H), when no element of Z(H) has centralizer H, or when M is
 * not admissible. */
int m_class_count(RootDatum const &g, std::vector<int> const &m_base, std::vector<int> const &h_base,
                  RatVector const &sigma, int p);

/** All full-rank realizable H containing a conjugate of M, with r for every
 * sigma in Z(H) outside Z(G). r_min and r_max range over all of them. */
MClassReport classify_m(RootDatum const &g, std::vector<int> const &m_base, int p,
                        std::vector<PseudoLeviClass> const &pseudo_levis);
MClassReport classify_m(RootDatum const &g, std::vector<int> const &m_base, int p);

/** Subsystems M of type `m_type` of full rank in the Levi `levi_base`, up to
 * W(G). Tildes are ignored when matching the type. */
std::vector<std::vector<int>> m_candidates(RootSystem const &rs, std::vector<int> const &levi_base,
                                           TypeDecomposition const &m_type);

/** PSO_{4m} with M = L the standard Levi of type D_m on the last m nodes
 * (A1^2 for m = 2). Not taken from the table, so `cuspidal` is false. */
MClassReport pso_example_report(int m, int p = 0);

/** One report per (table row, M type, M class) of generate_table1(g, p). */
std::vector<MClassReport> theorem61_report(RootDatum const &g, int p);

} // namespace cuspidal

#endif // CUSPIDAL_CENTRALIZER_CLASSES_HPP
