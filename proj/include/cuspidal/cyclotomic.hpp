#ifndef CUSPIDAL_CYCLOTOMIC_HPP
#define CUSPIDAL_CYCLOTOMIC_HPP

#include <compare>
#include <complex>
#include <string>
#include <vector>

#include "cuspidal/rational.hpp"

namespace cuspidal {

/** Element of Q(zeta_n), stored on the power basis 1, zeta, ..., zeta^(phi(n)-1)
 * of the n-th cyclotomic field. Arithmetic lifts to the lcm of the conductors;
 * reduced() moves to the smallest field containing the value. */
class Cyclotomic
{
public:
  Cyclotomic() : n_(1), c_{Rational(0)} {}
  Cyclotomic(Rational r) : n_(1), c_{r} {}
  Cyclotomic(std::int64_t k) : Cyclotomic(Rational(k)) {}

  /** zeta_n^k with zeta_n = exp(2 pi i / n). */
  static Cyclotomic root_of_unity(int n, std::int64_t k);
  /** Sum of a[j] zeta_n^j, j < n. */
  static Cyclotomic from_exponents(int n, std::vector<Rational> const &a);

  int field() const { return n_; }
  std::vector<Rational> const &coefficients() const { return c_; }

  /** Same value in Q(zeta_m); m must be a multiple of field(). */
  Cyclotomic lifted(int m) const;
  /** Same value in the smallest cyclotomic field containing it. */
  Cyclotomic reduced() const;
  /** Conductor of the reduced form. */
  int conductor() const { return reduced().n_; }

  bool is_zero() const;
  bool is_rational() const;
  /** Error("invalid-argument") unless rational. */
  Rational to_rational() const;

  /** Complex conjugate. */
  Cyclotomic conj() const;
  /** Galois automorphism zeta -> zeta^k, k prime to the field. */
  Cyclotomic galois(std::int64_t k) const;
  std::complex<double> to_complex() const;

  friend Cyclotomic operator+(Cyclotomic const &a, Cyclotomic const &b);
  friend Cyclotomic operator-(Cyclotomic const &a, Cyclotomic const &b);
  friend Cyclotomic operator*(Cyclotomic const &a, Cyclotomic const &b);
  friend Cyclotomic operator/(Cyclotomic const &a, Rational const &b);
  Cyclotomic operator-() const;
  Cyclotomic &operator+=(Cyclotomic const &o) { return *this = *this + o; }
  Cyclotomic &operator-=(Cyclotomic const &o) { return *this = *this - o; }
  Cyclotomic &operator*=(Cyclotomic const &o) { return *this = *this * o; }

  friend bool operator==(Cyclotomic const &a, Cyclotomic const &b);
  /** Total order: reduced conductor, then coefficients of the reduced form. */
  friend std::strong_ordering operator<=>(Cyclotomic const &a, Cyclotomic const &b);

  /** "3/2", "E(5)^3", "-1-2*E(4)": GAP notation over the power basis of the
   * reduced field, so E(3)^2 prints as "-1-E(3)". */
  std::string str() const;

private:
  int n_;
  std::vector<Rational> c_;
};

/** Parses the output of Cyclotomic::str() (sums of r, r*E(n), r*E(n)^k). */
Cyclotomic parse_cyclotomic(std::string const &s);

/** Coefficients of the n-th cyclotomic polynomial, constant term first. */
std::vector<std::int64_t> const &cyclotomic_polynomial(int n);
int euler_phi(int n);

} // namespace cuspidal

#endif // CUSPIDAL_CYCLOTOMIC_HPP
