#include "cuspidal/cyclotomic.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "cuspidal/error.hpp"

namespace cuspidal {

namespace {

using Poly = std::vector<std::int64_t>;

// Exact quotient of a by the monic b.
Poly divide_monic(Poly a, Poly const &b)
{
  std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    std::int64_t c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j)
      a[i - db + j] -= c * b[j];
  }
  return q;
}

std::int64_t mod(std::int64_t a, std::int64_t n)
{
  a %= n;
  return a < 0 ? a + n : a;
}

// Solves sum_j y_j cols[j] = target over Q; false if inconsistent.
bool solve(std::vector<std::vector<Rational>> cols, std::vector<Rational> target, std::vector<Rational> &y)
{
  std::size_t rows = target.size(), k = cols.size();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      m[i][j] = cols[j][i];
    m[i][k] = target[i];
  }
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero())
      ++p;
    if (p == rows)
      continue;
    std::swap(m[p], m[r]);
    Rational inv = Rational(1) / m[r][c];
    for (auto &x : m[r])
      x *= inv;
    for (std::size_t i = 0; i < rows; ++i)
      if (i != r && !m[i][c].is_zero()) {
        Rational f = m[i][c];
        for (std::size_t j = c; j <= k; ++j)
          m[i][j] -= f * m[r][j];
      }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!m[i][k].is_zero())
      return false;
  y.assign(k, Rational(0));
  for (std::size_t i = 0; i < r; ++i)
    y[pivot_col[i]] = m[i][k];
  return true;
}

} // namespace

int euler_phi(int n)
{
  int r = n;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0)
        n /= p;
      r -= r / p;
    }
  if (n > 1)
    r -= r / n;
  return r;
}

namespace {

std::map<int, Poly> polynomial_cache;
std::mutex polynomial_mutex;

// Caller holds polynomial_mutex.
Poly const &cached_polynomial(int n)
{
  auto it = polynomial_cache.find(n);
  if (it != polynomial_cache.end())
    return it->second;
  Poly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0)
      p = divide_monic(p, cached_polynomial(d));
  return polynomial_cache.emplace(n, std::move(p)).first->second;
}

} // namespace

std::vector<std::int64_t> const &cyclotomic_polynomial(int n)
{
  if (n < 1)
    throw Error("invalid-argument", "cyclotomic polynomial of non-positive index");
  std::lock_guard<std::mutex> lock(polynomial_mutex);
  return cached_polynomial(n);
}

Cyclotomic Cyclotomic::from_exponents(int n, std::vector<Rational> const &a)
{
  if (n < 1)
    throw Error("invalid-argument", "cyclotomic field index must be positive");
  std::vector<Rational> full(n, Rational(0));
  for (std::size_t j = 0; j < a.size(); ++j)
    full[j % n] += a[j];
  auto const &phi = cyclotomic_polynomial(n);
  std::size_t deg = phi.size() - 1;
  for (std::size_t i = full.size(); i-- > deg;) {
    Rational c = full[i];
    if (c.is_zero())
      continue;
    for (std::size_t j = 0; j <= deg; ++j)
      full[i - deg + j] -= c * Rational(phi[j]);
  }
  full.resize(deg);
  Cyclotomic r;
  r.n_ = n;
  r.c_ = std::move(full);
  return r;
}

Cyclotomic Cyclotomic::root_of_unity(int n, std::int64_t k)
{
  std::vector<Rational> a(n, Rational(0));
  a[mod(k, n)] = Rational(1);
  return from_exponents(n, a);
}

Cyclotomic Cyclotomic::lifted(int m) const
{
  if (m % n_ != 0)
    throw Error("invalid-argument", "lift to a field not containing the value");
  if (m == n_)
    return *this;
  std::vector<Rational> a(m, Rational(0));
  int step = m / n_;
  for (std::size_t j = 0; j < c_.size(); ++j)
    a[j * step] = c_[j];
  return from_exponents(m, a);
}

Cyclotomic Cyclotomic::reduced() const
{
  if (is_rational()) {
    Cyclotomic r(c_[0]);
    return r;
  }
  for (int d = 2; d < n_; ++d) {
    if (n_ % d != 0 || d % 4 == 2)
      continue;
    int pd = euler_phi(d);
    std::vector<std::vector<Rational>> cols;
    for (int j = 0; j < pd; ++j)
      cols.push_back(root_of_unity(d, j).lifted(n_).c_);
    std::vector<Rational> y;
    if (solve(cols, c_, y)) {
      Cyclotomic r;
      r.n_ = d;
      r.c_ = y;
      return r;
    }
  }
  return *this;
}

bool Cyclotomic::is_zero() const
{
  for (auto const &x : c_)
    if (!x.is_zero())
      return false;
  return true;
}

bool Cyclotomic::is_rational() const
{
  for (std::size_t j = 1; j < c_.size(); ++j)
    if (!c_[j].is_zero())
      return false;
  return true;
}

Rational Cyclotomic::to_rational() const
{
  if (!is_rational())
    throw Error("invalid-argument", "cyclotomic number is not rational: " + str());
  return c_[0];
}

Cyclotomic Cyclotomic::galois(std::int64_t k) const
{
  if (std::gcd(mod(k, n_), static_cast<std::int64_t>(n_)) != 1 && n_ > 1)
    throw Error("invalid-argument", "Galois exponent not prime to the field");
  std::vector<Rational> a(n_, Rational(0));
  for (std::size_t j = 0; j < c_.size(); ++j)
    a[mod(static_cast<std::int64_t>(j) * k, n_)] += c_[j];
  return from_exponents(n_, a);
}

Cyclotomic Cyclotomic::conj() const
{
  return galois(-1);
}

std::complex<double> Cyclotomic::to_complex() const
{
  std::complex<double> s = 0;
  for (std::size_t j = 0; j < c_.size(); ++j)
    s += static_cast<double>(c_[j].num()) / static_cast<double>(c_[j].den()) *
         std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j) / n_);
  return s;
}

Cyclotomic operator+(Cyclotomic const &a, Cyclotomic const &b)
{
  int m = std::lcm(a.n_, b.n_);
  Cyclotomic x = a.lifted(m), y = b.lifted(m);
  for (std::size_t j = 0; j < x.c_.size(); ++j)
    x.c_[j] += y.c_[j];
  return x;
}

Cyclotomic Cyclotomic::operator-() const
{
  Cyclotomic r = *this;
  for (auto &x : r.c_)
    x = -x;
  return r;
}

Cyclotomic operator-(Cyclotomic const &a, Cyclotomic const &b)
{
  return a + (-b);
}

Cyclotomic operator*(Cyclotomic const &a, Cyclotomic const &b)
{
  if (a.n_ == 1 || b.n_ == 1) {
    Cyclotomic r = a.n_ == 1 ? b : a;
    Rational s = a.n_ == 1 ? a.c_[0] : b.c_[0];
    for (auto &x : r.c_)
      x *= s;
    return r;
  }
  int m = std::lcm(a.n_, b.n_);
  Cyclotomic x = a.lifted(m), y = b.lifted(m);
  std::vector<Rational> prod(m, Rational(0));
  for (std::size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i].is_zero())
      continue;
    for (std::size_t j = 0; j < y.c_.size(); ++j)
      if (!y.c_[j].is_zero())
        prod[(i + j) % m] += x.c_[i] * y.c_[j];
  }
  return Cyclotomic::from_exponents(m, prod);
}

Cyclotomic operator/(Cyclotomic const &a, Rational const &b)
{
  Cyclotomic r = a;
  for (auto &x : r.c_)
    x /= b;
  return r;
}

bool operator==(Cyclotomic const &a, Cyclotomic const &b)
{
  return (a - b).is_zero();
}

std::strong_ordering operator<=>(Cyclotomic const &a, Cyclotomic const &b)
{
  Cyclotomic x = a.reduced(), y = b.reduced();
  if (x.n_ != y.n_)
    return x.n_ <=> y.n_;
  for (std::size_t j = 0; j < x.c_.size(); ++j) {
    if (x.c_[j] < y.c_[j])
      return std::strong_ordering::less;
    if (y.c_[j] < x.c_[j])
      return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string Cyclotomic::str() const
{
  Cyclotomic r = reduced();
  if (r.n_ == 1)
    return r.c_[0].str();
  std::string out;
  for (std::size_t j = 0; j < r.c_.size(); ++j) {
    Rational c = r.c_[j];
    if (c.is_zero())
      continue;
    bool neg = c < Rational(0);
    Rational a = neg ? -c : c;
    if (!out.empty())
      out += neg ? "-" : "+";
    else if (neg)
      out += "-";
    std::string root = j == 0 ? "" : "E(" + std::to_string(r.n_) + ")" + (j == 1 ? "" : "^" + std::to_string(j));
    if (root.empty())
      out += a.str();
    else if (a == Rational(1))
      out += root;
    else
      out += a.str() + "*" + root;
  }
  return out;
}

Cyclotomic parse_cyclotomic(std::string const &text)
{
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s += ch;
  if (s.empty())
    throw Error("parse", "empty cyclotomic number");
  Cyclotomic total(0);
  std::size_t i = 0;
  auto number = [&](std::int64_t &v) {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      ++i;
    if (start == i)
      throw Error("parse", "expected a number in '" + text + "'");
    v = std::stoll(s.substr(start, i - start));
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    Rational coef(1);
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::int64_t a = 0, b = 1;
      number(a);
      if (i < s.size() && s[i] == '/') {
        ++i;
        number(b);
      }
      coef = Rational(a, b);
      have_coef = true;
    }
    Cyclotomic term(coef);
    if (i < s.size() && s[i] == '*') {
      if (!have_coef)
        throw Error("parse", "dangling '*' in '" + text + "'");
      ++i;
    }
    if (s.compare(i, 2, "E(") == 0) {
      i += 2;
      std::int64_t n = 0, k = 1;
      number(n);
      if (i >= s.size() || s[i] != ')')
        throw Error("parse", "expected ')' in '" + text + "'");
      ++i;
      if (i < s.size() && s[i] == '^') {
        ++i;
        number(k);
      }
      term = Cyclotomic(coef) * Cyclotomic::root_of_unity(static_cast<int>(n), k);
    } else if (!have_coef) {
      throw Error("parse", "unexpected character in '" + text + "'");
    }
    total += sign < 0 ? -term : term;
  }
  return total;
}

} // namespace cuspidal
