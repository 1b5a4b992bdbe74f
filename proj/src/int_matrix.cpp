#include "cuspidal/int_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace cuspidal {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error("overflow", "integer matrix entry overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error("overflow", "integer matrix entry overflow");
  return r;
}

// row[dst] += k * row[src]
void add_row(IntMatrix &m, std::size_t dst, std::size_t src, std::int64_t k)
{
  if (k == 0)
    return;
  for (std::size_t c = 0; c < m[dst].size(); ++c)
    m[dst][c] = checked_add(m[dst][c], checked_mul(k, m[src][c]));
}

void add_col(IntMatrix &m, std::size_t dst, std::size_t src, std::int64_t k)
{
  if (k == 0)
    return;
  for (auto &row : m)
    row[dst] = checked_add(row[dst], checked_mul(k, row[src]));
}

void swap_cols(IntMatrix &m, std::size_t a, std::size_t b)
{
  for (auto &row : m)
    std::swap(row[a], row[b]);
}

void negate_row(IntMatrix &m, std::size_t r)
{
  for (auto &x : m[r])
    x = -x;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

// Quotient rounded to nearest, so remainders are at most |b|/2 in size.
std::int64_t round_div(std::int64_t a, std::int64_t b)
{
  std::int64_t q = floor_div(a, b);
  std::int64_t r = a - q * b;
  if (2 * std::llabs(r) > std::llabs(b))
    q += 1;
  return q;
}

} // namespace

IntVector SmithForm::diagonal() const
{
  IntVector d;
  std::size_t k = D.empty() ? 0 : std::min(D.size(), D[0].size());
  for (std::size_t i = 0; i < k; ++i)
    d.push_back(D[i][i]);
  return d;
}

std::size_t SmithForm::rank() const
{
  std::size_t r = 0;
  for (auto x : diagonal())
    if (x != 0)
      ++r;
  return r;
}

IntMatrix identity_matrix(std::size_t n)
{
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = 1;
  return m;
}

IntMatrix multiply(IntMatrix const &a, IntMatrix const &b)
{
  std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix r(a.size(), IntVector(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j)
          r[i][j] = checked_add(r[i][j], checked_mul(a[i][k], b[k][j]));
  return r;
}

IntMatrix transpose(IntMatrix const &a)
{
  if (a.empty())
    return {};
  IntMatrix t(a[0].size(), IntVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j)
      t[j][i] = a[i][j];
  return t;
}

std::int64_t determinant(IntMatrix const &a)
{
  RatMatrix m = to_rational(a);
  std::size_t k = m.size();
  Rational det(1);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (p < k && m[p][c].is_zero())
      ++p;
    if (p == k)
      return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < k; ++r) {
      if (m[r][c].is_zero())
        continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < k; ++j)
        m[r][j] -= f * m[c][j];
    }
  }
  return det.num();
}

SmithForm smith_normal_form(IntMatrix const &m, std::size_t cols)
{
  std::size_t rows = m.size();
  if (rows > 0)
    cols = m[0].size();
  SmithForm s;
  s.D = m;
  s.U = identity_matrix(rows);
  s.V = identity_matrix(cols);
  IntMatrix &D = s.D;

  std::size_t t = 0;
  while (t < rows && t < cols) {
    bool found = false;
    while (true) {
      // Pivot: smallest nonzero absolute value in the trailing block.
      std::size_t pr = rows, pc = cols;
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (D[i][j] != 0 && (best == 0 || std::llabs(D[i][j]) < best)) {
            best = std::llabs(D[i][j]);
            pr = i;
            pc = j;
          }
      if (best == 0)
        break;
      found = true;
      std::swap(D[t], D[pr]);
      std::swap(s.U[t], s.U[pr]);
      swap_cols(D, t, pc);
      swap_cols(s.V, t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        std::int64_t q = round_div(D[i][t], D[t][t]);
        add_row(D, i, t, -q);
        add_row(s.U, i, t, -q);
        if (D[i][t] != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        std::int64_t q = round_div(D[t][j], D[t][t]);
        add_col(D, j, t, -q);
        add_col(s.V, j, t, -q);
        if (D[t][j] != 0)
          clean = false;
      }
      if (!clean)
        continue;
      // Divisibility of the trailing block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D[i][j] % D[t][t] != 0) {
            add_row(D, t, i, 1);
            add_row(s.U, t, i, 1);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (!found)
      break;
    if (D[t][t] < 0) {
      negate_row(D, t);
      negate_row(s.U, t);
    }
    ++t;
  }
  return s;
}

IntMatrix hermite_basis(IntMatrix const &m, std::size_t cols)
{
  IntMatrix a = m;
  if (!a.empty())
    cols = a[0].size();
  std::size_t rows = a.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r..rows-1.
    while (true) {
      std::size_t p = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (p == rows || std::llabs(a[i][c]) < std::llabs(a[p][c])))
          p = i;
      if (p == rows)
        break;
      std::swap(a[r], a[p]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0)
          continue;
        add_row(a, i, r, -floor_div(a[i][c], a[r][c]));
        if (a[i][c] != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (r < rows && a[r][c] != 0) {
      if (a[r][c] < 0)
        negate_row(a, r);
      for (std::size_t i = 0; i < r; ++i)
        add_row(a, i, r, -floor_div(a[i][c], a[r][c]));
      ++r;
    }
  }
  a.resize(r);
  return a;
}

IntMatrix left_kernel(IntMatrix const &m, std::size_t cols)
{
  auto s = smith_normal_form(m, cols);
  std::size_t rank = s.rank();
  IntMatrix k(s.U.begin() + static_cast<std::ptrdiff_t>(rank), s.U.end());
  return hermite_basis(k, m.size());
}

RatMatrix to_rational(IntMatrix const &m)
{
  RatMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto x : m[i])
      r[i].push_back(Rational(x));
  return r;
}

RatMatrix multiply(RatMatrix const &a, RatMatrix const &b)
{
  std::size_t cols = b.empty() ? 0 : b[0].size();
  RatMatrix r(a.size(), RatVector(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (!a[i][k].is_zero())
        for (std::size_t j = 0; j < cols; ++j)
          r[i][j] += a[i][k] * b[k][j];
  return r;
}

RatVector row_times(RatVector const &v, RatMatrix const &m)
{
  std::size_t cols = m.empty() ? 0 : m[0].size();
  RatVector r(cols);
  for (std::size_t k = 0; k < m.size(); ++k)
    if (!v[k].is_zero())
      for (std::size_t j = 0; j < cols; ++j)
        r[j] += v[k] * m[k][j];
  return r;
}

RatMatrix inverse(RatMatrix const &m)
{
  std::size_t n = m.size();
  RatMatrix a = m;
  RatMatrix inv(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n)
      throw Error("singular", "matrix is not square");
    inv[i][i] = Rational(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero())
      ++p;
    if (p == n)
      throw Error("singular", "matrix is not invertible");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational f = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= f;
      inv[c][j] /= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero())
        continue;
      Rational g = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= g * a[c][j];
        inv[r][j] -= g * inv[c][j];
      }
    }
  }
  return inv;
}

RatVector reduce_mod_lattice(RatVector v, IntMatrix const &h)
{
  for (auto const &row : h) {
    std::size_t p = 0;
    while (row[p] == 0)
      ++p;
    std::int64_t q = (v[p] / Rational(row[p])).floor();
    if (q != 0)
      for (std::size_t j = p; j < v.size(); ++j)
        v[j] -= Rational(q) * Rational(row[j]);
  }
  return v;
}

bool in_lattice(RatVector const &v0, IntMatrix const &h)
{
  RatVector v = v0;
  std::size_t next = 0;
  for (auto const &row : h) {
    std::size_t p = 0;
    while (row[p] == 0)
      ++p;
    for (; next < p; ++next)
      if (!v[next].is_zero())
        return false;
    Rational q = v[p] / Rational(row[p]);
    if (!q.is_integer())
      return false;
    if (!q.is_zero())
      for (std::size_t j = p; j < v.size(); ++j)
        v[j] -= q * Rational(row[j]);
    next = p + 1;
  }
  for (; next < v.size(); ++next)
    if (!v[next].is_zero())
      return false;
  return true;
}

} // namespace cuspidal
