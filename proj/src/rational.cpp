#include "covercert/rational.hpp"

#include <cmath>
#include <utility>

#include "covercert/errors.hpp"

namespace covercert {

Rational make_rational(long num, long den) {
  if (den == 0) fail(ErrorCode::kInvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    fail(ErrorCode::kParse, "malformed rational '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) fail(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
  Rational q(negative ? Integer(-n) : n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

double log_rational(const Rational& q) {
  if (sgn(q) <= 0) fail(ErrorCode::kInvalidArgument, "log of non-positive rational");
  auto log_int = [](const Integer& z) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
  };
  return log_int(q.get_num()) - log_int(q.get_den());
}

Rational pow(const Rational& base, unsigned long exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Rational dot(const QVector& a, const QVector& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

namespace {

// Row-echelon reduction in place; returns pivot count and the sign-tracked
// product of pivots when requested.
std::size_t eliminate(QMatrix& m, Rational* det) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  if (det) *det = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) {
      if (det) *det = 0;
      continue;
    }
    if (p != r) {
      std::swap(m[p], m[r]);
      if (det) *det = -*det;
    }
    if (det) *det *= m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(QMatrix rows) { return eliminate(rows, nullptr); }

Rational determinant(QMatrix m) {
  if (m.empty()) return 1;
  Rational det;
  const std::size_t r = eliminate(m, &det);
  return r == m.size() ? det : Rational(0);
}

std::vector<std::size_t> independent_rows(const QMatrix& rows) {
  std::vector<std::size_t> picked;
  QMatrix basis;  // reduced copies of picked rows, each with a distinct pivot
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    QVector v = rows[i];
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const std::size_t pc = pivots[k];
      if (sgn(v[pc]) == 0) continue;
      const Rational f = v[pc] / basis[k][pc];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * basis[k][j];
    }
    std::size_t pc = 0;
    while (pc < v.size() && sgn(v[pc]) == 0) ++pc;
    if (pc == v.size()) continue;
    picked.push_back(i);
    basis.push_back(std::move(v));
    pivots.push_back(pc);
  }
  return picked;
}

QVector solve(QMatrix m, QVector rhs) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) m[i].push_back(rhs[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) fail(ErrorCode::kInvalidArgument, "singular linear system");
    std::swap(m[p], m[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

void make_primitive(QVector& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  Integer g = 0;
  for (const auto& q : v) {
    const Integer num = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return;
  Rational scale(l, g);
  scale.canonicalize();
  for (auto& q : v) q *= scale;
}

}  // namespace covercert
