#ifndef CUSPIDAL_RATIONAL_HPP
#define CUSPIDAL_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "cuspidal/error.hpp"

namespace cuspidal {

/** Exact rational with 64-bit numerator and denominator.
 *
 * Intermediate products use 128-bit integers; a result that does not fit
 * raises Error("overflow").
 */
class Rational
{
public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

  friend Rational operator+(Rational const &a, Rational const &b)
  {
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(Rational const &a, Rational const &b) { return a + (-b); }
  friend Rational operator*(Rational const &a, Rational const &b)
  {
    return from_wide(static_cast<__int128>(a.num_) * b.num_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(Rational const &a, Rational const &b)
  {
    if (b.num_ == 0)
      throw Error("division-by-zero", "rational division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_,
                     static_cast<__int128>(a.den_) * b.num_);
  }

  Rational &operator+=(Rational const &o) { return *this = *this + o; }
  Rational &operator-=(Rational const &o) { return *this = *this - o; }
  Rational &operator*=(Rational const &o) { return *this = *this * o; }
  Rational &operator/=(Rational const &o) { return *this = *this / o; }

  friend bool operator==(Rational const &a, Rational const &b)
  {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(Rational const &a, Rational const &b) { return !(a == b); }
  friend bool operator<(Rational const &a, Rational const &b)
  {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(Rational const &a, Rational const &b) { return b < a; }
  friend bool operator<=(Rational const &a, Rational const &b) { return !(b < a); }
  friend bool operator>=(Rational const &a, Rational const &b) { return !(a < b); }

  /** Largest integer not exceeding the value. */
  std::int64_t floor() const
  {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0)
      --q;
    return q;
  }

  std::string str() const
  {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream &operator<<(std::ostream &os, Rational const &r) { return os << r.str(); }

private:
  static Rational from_wide(__int128 n, __int128 d)
  {
    if (d == 0)
      throw Error("division-by-zero", "zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
    if (n > lim || n < -lim || d > lim)
      throw Error("overflow", "rational out of 64-bit range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace cuspidal

#endif // CUSPIDAL_RATIONAL_HPP
