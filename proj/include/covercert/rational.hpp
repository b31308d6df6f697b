#pragma once

// Exact rational scalars and small dense matrices over them.
//
// Rational is GMP's mpq_class. gmpxx keeps results of arithmetic in canonical
// form (positive denominator, coprime parts); values built from raw parts must
// go through make_rational / parse_rational, which canonicalize.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace covercert {

using Rational = mpq_class;
using Integer = mpz_class;
using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

Rational make_rational(long num, long den = 1);

// Accepts "p" or "p/q" with optional leading '-'; q must be nonzero.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Natural log of a positive rational; safe for values outside double range.
double log_rational(const Rational& q);

Rational pow(const Rational& base, unsigned long exponent);
Integer factorial(unsigned long n);

Rational dot(const QVector& a, const QVector& b);

// Gaussian elimination over Q; all inputs are copied.
std::size_t rank(QMatrix rows);
Rational determinant(QMatrix m);

// Indices of a maximal linearly independent subset of rows, greedy in order.
std::vector<std::size_t> independent_rows(const QMatrix& rows);

// Solves the square nonsingular system m x = rhs; throws on singular m.
QVector solve(QMatrix m, QVector rhs);

// Scales v by a positive rational so that it becomes a primitive integer
// vector. The zero vector is returned unchanged.
void make_primitive(QVector& v);

}  // namespace covercert
