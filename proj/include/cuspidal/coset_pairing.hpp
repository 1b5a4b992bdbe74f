#ifndef CUSPIDAL_COSET_PAIRING_HPP
#define CUSPIDAL_COSET_PAIRING_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cuspidal/error.hpp"
#include "cuspidal/twisted_groups.hpp"

namespace cuspidal {

struct ScenarioBlock
{
  std::vector<Perm> whm_generators;
  /** Empty means the identity. */
  Perm a;
};

/** Scenario as read from a document, before validation. */
struct ScenarioData
{
  std::string name;
  std::size_t degree = 0;
  /** Generators of omega. */
  std::vector<Perm> generators;
  std::vector<Perm> wse_generators;
  std::vector<ScenarioBlock> blocks;
  /** Images of `generators` under F; empty means F = id. */
  std::vector<Perm> frobenius;
  /** Empty means the identity. */
  Perm w1;
  /** Optional tables keyed "wse" or "whm0", "whm1", ...: one row per
   * irreducible character, one column per conjugacy class in the canonical
   * class order (classes ordered by smallest element). */
  std::map<std::string, std::vector<std::vector<Cyclotomic>>> character_tables;
  /** The user asserts wse is a Coxeter group extended by an abelian group.
   * Recorded only; any finite group is accepted. */
  bool coxeter_times_abelian = false;
};

/** Failed scenario invariant; check() is the invariant's name, e.g. "gamma1-undefined". */
class ScenarioError : public Error
{
public:
  ScenarioError(std::string check, std::string const &detail)
    : Error("invalid-scenario", check + ": " + detail), check_(std::move(check))
  {}
  std::string const &check() const { return check_; }

private:
  std::string check_;
};

/** Subgroup of omega together with its twist, character table and extensions. */
struct TwistedSubgroup
{
  FiniteGroup group;
  /** Subgroup index -> omega index. */
  std::vector<int> to_omega;
  /** Omega index -> subgroup index, -1 outside. */
  std::vector<int> from_omega;
  Automorphism twist;
  Automorphism twist_inverse;
  TwistedClassPartition classes;
  CharacterTable table;
  bool supplied_table = false;
  CosetCharacters extensions;

  /** |{x : twist(x) w x^-1 = w}| for a subgroup index w. */
  std::size_t centralizer_order(int w) const;
};

/** Validated scenario. Group elements are omega indices unless stated otherwise. */
struct Scenario
{
  std::string name;
  bool coxeter_times_abelian = false;
  FiniteGroup omega;
  Automorphism frobenius;
  Automorphism frobenius_inverse;
  /** F^-1-twisted classes of omega. */
  TwistedClassPartition omega_classes;
  int w1 = 0;
  /** Twisted by gamma_1(w) = w1^-1 F^-1(w) w1. */
  TwistedSubgroup wse;
  /** whm[j] twisted by eta_j(w) = a_j^-1 F^-1(w) a_j. */
  std::vector<TwistedSubgroup> whm;
  std::vector<int> a;

  std::size_t blocks() const { return whm.size(); }
};

/** Checks every invariant and materializes gamma_1 and the eta_j. Throws
 * ScenarioError naming the failed check: invalid-permutation, no-blocks,
 * wse-not-in-omega, whm-not-in-omega, a-not-in-omega, w1-not-in-omega,
 * frobenius-not-automorphism, gamma1-undefined, eta-undefined,
 * character-table-invalid, order-bound. */
Scenario validate_scenario(ScenarioData const &d);

/** wse \ omega / whm_j. */
struct DoubleCosetDecomposition
{
  std::size_t block = 0;
  /** Smallest omega index of each double coset; cosets are ordered by it. */
  std::vector<int> representatives;
  std::vector<std::vector<int>> cosets;
  std::vector<int> coset_of;
};

DoubleCosetDecomposition double_cosets(Scenario const &s, std::size_t j);

/** W(nu) = w1 wse  cap  F^-1(rep) (a_j whm_j) rep^-1 for the representative
 * `rep` of nu; sorted omega indices, possibly empty. */
std::vector<int> coset_intersection(Scenario const &s, std::size_t j, int rep);
/** eta_j^-1(a_j^-1 F^-1(rep^-1) wbar rep), as an index of whm[j].group. */
int lambda_embed(Scenario const &s, std::size_t j, int rep, int wbar);
/** gamma_1^-1(w1^-1 wbar), as an index of wse.group. */
int kappa_embed(Scenario const &s, int wbar);

struct WNuCountReport
{
  bool holds = true;
  std::size_t checked = 0;
  /** First failure, empty if none. */
  std::string counterexample;
};

/** |P(t)| = |W(nu)| for every block j, double coset nu and t in nu. */
WNuCountReport verify_lemma_wunu(Scenario const &s);

/** <E, E'>_nu for extension indices e of wse and e2 of whm[j]; zero when W(nu)
 * is empty. The wse factor enters conjugated, see the README. */
Cyclotomic pairing(Scenario const &s, std::size_t j, int rep, std::size_t e, std::size_t e2);
/** All <E, E'>_nu for one double coset: rows e, columns e2. */
std::vector<std::vector<Cyclotomic>> pairing_block(Scenario const &s, std::size_t j, int rep);

struct PairingMatrix
{
  /** (block j, extension index in whm[j]) for each column. */
  std::vector<std::pair<std::size_t, std::size_t>> columns;
  /** total[e][col] = sum over nu of <E, E'>_nu. */
  std::vector<std::vector<Cyclotomic>> total;
  std::vector<DoubleCosetDecomposition> cosets;
  /** per_nu[j][nu][e][e2]. */
  std::vector<std::vector<std::vector<std::vector<Cyclotomic>>>> per_nu;
};

PairingMatrix pairing_matrix(Scenario const &s);

/** Linear combination of Green symbols. In the class basis coefficients[j][c]
 * multiplies Q for the eta_j-twisted class c of whm[j]; in the character basis
 * coefficients[j][k] multiplies Q_{E'} for extension k of whm[j]. */
struct FormalGreenCombination
{
  enum class Basis
  {
    twisted_class,
    character
  };
  Basis basis = Basis::twisted_class;
  std::vector<std::vector<Cyclotomic>> coefficients;

  bool is_zero() const;
  friend bool operator==(FormalGreenCombination const &a, FormalGreenCombination const &b);
};

/** Prefactor used by k_formal_dc in front of the double-coset sum of block j. */
enum class Prefactor
{
  /** |Z_gamma1(w)|: agrees with the single-sum form on every scenario. */
  proof,
  /** |{z in whm_j : eta_j(z) w z^-1 = w}|: the statement as printed. */
  printed,
  /** |Z_F^-1(w1 w)| / |whm_j|: the prefactor of the single-sum form. */
  single_sum
};

std::string prefactor_name(Prefactor p);

/** Single-sum form of k(w1 w), w an index of wse.group; class basis. */
FormalGreenCombination k_formal_mw(Scenario const &s, int w);
/** Double-coset form of k(w1 w); class basis. */
FormalGreenCombination k_formal_dc(Scenario const &s, int w, Prefactor p = Prefactor::proof);

/** Q_w' = sum_E' Tr(eta_j w', E'~) Q_E'. */
FormalGreenCombination to_character_basis(Scenario const &s, FormalGreenCombination const &f);
/** Inverse of to_character_basis. */
FormalGreenCombination to_class_basis(Scenario const &s, FormalGreenCombination const &f);

/** sum_j sum_nu sum_E' <E, E'>_nu Q_E' for extension e of wse; character basis. */
FormalGreenCombination expand_characteristic(Scenario const &s, std::size_t e);
/** |wse|^-1 sum_w conj Tr(gamma_1 w, E~) k_formal_mw(w); character basis. */
FormalGreenCombination average_characteristic(Scenario const &s, std::size_t e);

struct CheckResult
{
  std::string name;
  bool pass = true;
  std::size_t checked = 0;
  std::string detail;
};

struct PrefactorStudy
{
  Prefactor candidate;
  /** Number of w in wse with k_formal_dc(w, candidate) != k_formal_mw(w). */
  std::size_t mismatches = 0;
  bool consistent() const { return mismatches == 0; }
};

struct VerificationReport
{
  std::vector<CheckResult> checks;
  std::vector<PrefactorStudy> prefactors;
  bool all_pass() const;
};

/** Check names accepted by verify_all. */
std::vector<std::string> const &verification_checks();

/** Runs the selected checks (all when `only` is empty): w-nu-count, k-mw-dc,
 * average, reconstruct, roundtrip, embeddings, rep-invariance;
 * plus the prefactor study. Representative re-choices are drawn from a
 * seeded generator. */
VerificationReport verify_all(Scenario const &s, std::set<std::string> const &only = {}, int rechoices = 100,
                              std::uint64_t seed = 1);

} // namespace cuspidal

#endif // CUSPIDAL_COSET_PAIRING_HPP
