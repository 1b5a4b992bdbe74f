#ifndef CUSPIDAL_CUSPIDALITY_HPP
#define CUSPIDAL_CUSPIDALITY_HPP

#include <set>
#include <string>
#include <vector>

#include "cuspidal/lattice.hpp"
#include "cuspidal/root_system.hpp"

namespace cuspidal {

/** n >= 0 and 8n+1 is a perfect square. */
bool is_triangular(std::int64_t n);
bool is_square(std::int64_t n);

/** Character of Z(K_sc) for a quasi-simple K, given by a class in P/Q. */
struct CentralCharacter
{
  enum class Kind { trivial, vector, spin, other };
  std::int64_t order = 1;
  /** vector/spin distinguish the classes of type D; other types use other. */
  Kind kind = Kind::trivial;
  std::string str() const;
};

/** Class of `weight` (fundamental-weight coordinates, Bourbaki order) in P/Q. */
CentralCharacter classify_central_character(CartanType const &t, IntVector const &weight);

/** One way a quasi-simple group meets the cuspidality criterion. */
struct BaseCaseWitness
{
  /** Instantiated arithmetic condition, e.g. "r=0,s=2: 2r+1=1, 2s=4 in squares". */
  std::string condition;
  /** Classical parameters, -1 when unused. */
  int r = -1;
  int s = -1;
  /** Possible M types for this witness (exceptional rows carry several). */
  std::vector<TypeDecomposition> m_types;
};

/** Every witness for (t, chi, p); empty means no cuspidal object with central
 * character chi. Error("unsupported") for F4 and E8 at p = 2. */
std::vector<BaseCaseWitness> base_case_witnesses(CartanType const &t, CentralCharacter const &chi, int p);
bool base_case_admits(CartanType const &t, CentralCharacter const &chi, int p);
/** Re-evaluates the arithmetic condition of a witness. */
bool witness_holds(CartanType const &t, CentralCharacter const &chi, int p, BaseCaseWitness const &w);

/** A reductive group K up to the data the criterion needs: the root system of
 * K and the character lattice of K/Z°(K), in fundamental-weight coordinates
 * of `roots` (Q <= X <= P), plus the rank of Z°(K). */
struct GroupDescription
{
  RootSystem roots;
  IntMatrix lattice;
  int torus_rank = 0;
};

GroupDescription group_of(RootDatum const &g);
/** Standard Levi on simple roots `levi`; the lattice is X intersected with the span of the Levi. */
GroupDescription levi_group(RootDatum const &g, std::vector<int> const &levi);

struct FactorVerdict
{
  CartanType type;
  CentralCharacter chi;
  std::vector<BaseCaseWitness> witnesses;
};

/** Verdict for one character of Z(K)/Z°(K). */
struct CharacterVerdict
{
  /** Representative weight of the character in X/Q. */
  IntVector weight;
  std::vector<FactorVerdict> factors;
  bool admits = false;
};

/** One verdict per character of order prime to p, trivial character first. */
std::vector<CharacterVerdict> character_verdicts(GroupDescription const &k, int p);
bool admits_cuspidal(GroupDescription const &k, int p);

struct CuspidalLeviRecord
{
  SubdiagramClass levi_class;
  std::string levi_type;
  std::string condition;
  std::vector<TypeDecomposition> m_types;
  std::vector<CharacterVerdict> characters;
};

/** Levi classes (up to W-conjugacy) admitting a cuspidal object, the torus
 * included. Error("unsupported") for Levis with an F4 or E8 factor at p = 2,
 * unless `refused` is given: those Levis are then skipped and listed there. */
std::vector<CuspidalLeviRecord> generate_table1(RootDatum const &g, int p, std::vector<std::string> *refused = nullptr);
bool record_condition_holds(CuspidalLeviRecord const &r, int p);
/** "L | M1, M2, ..." lines, in record order. */
std::vector<std::string> render_table1(std::vector<CuspidalLeviRecord> const &records);

/** Levi types given by the classical rows of the cuspidal Levi table for (type, isogeny label, p),
 * evaluated directly from their arithmetic conditions. Includes rows that the
 * table states for the adjoint (or SO) quotient, which apply to every cover. */
std::set<std::string> table1_classical_levi_types(CartanType const &t, std::string const &label, int p);

} // namespace cuspidal

#endif // CUSPIDAL_CUSPIDALITY_HPP
