#pragma once

// Bollobás–Thomason type volume inequalities (primal, dual, weighted) with
// their Loomis–Whitney and Meyer specializations, evaluated exactly.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "covercert/covers.hpp"
#include "covercert/polytope.hpp"

namespace covercert {

// One measured volume entering a product, raised to `exponent`.
struct Factor {
  std::string label;  // CoordSet text ("1,3") or an index
  std::optional<Rational> volume;
  double volume_f = 0;
  Rational exponent = 1;
};

enum class ProductSide { kLhs, kRhs };

struct InequalityReport {
  std::string name;
  bool exact = true;
  bool pass = false;
  // Set when a zero factor makes the product side vanish; the check then
  // passes trivially.
  bool degenerate = false;

  // Exact values; present when every exponent is an integer.
  std::optional<Rational> lhs, rhs, slack;
  double lhs_f = 0, rhs_f = 0, slack_f = 0;

  // lhs^power and rhs^power, exact; power clears all exponent denominators.
  unsigned long power = 1;
  std::optional<Rational> lhs_powered, rhs_powered;

  // The product side equals constant * prod(volume^exponent).
  ProductSide product_side = ProductSide::kRhs;
  std::optional<Rational> constant;
  double constant_f = 1;
  std::vector<Factor> factors;

  double tolerance = 0;  // float path only
};

// Caches |K|, sections and projections per coordinate set.
// Not thread-safe until fill_all() has been called.
class VolumeTable {
 public:
  explicit VolumeTable(const Polytope& k);

  const Polytope& body() const { return k_; }
  const Rational& volume() const { return volume_; }
  bool zero_interior() const { return zero_interior_; }
  const Rational& section(const CoordSet& sigma);
  const Rational& projection(const CoordSet& sigma);
  void fill_all();

 private:
  Polytope k_;
  Rational volume_;
  bool zero_interior_;
  std::vector<std::optional<Rational>> sections_, projections_;
};

// prod |P_sigma K| >= |K|^s.
InequalityReport check_bt(const Polytope& k, const Cover& c);
InequalityReport check_bt(VolumeTable& t, const Cover& c);
// |K|^s >= (1/(n!)^s) prod |sigma_i|! |K ∩ F_sigma_i|.
InequalityReport check_dual_bt(const Polytope& k, const Cover& c);
InequalityReport check_dual_bt(VolumeTable& t, const Cover& c);

InequalityReport check_weighted_bt(const Polytope& k, const WeightedCover& wc);
InequalityReport check_weighted_dual_bt(const Polytope& k, const WeightedCover& wc);

// Loomis–Whitney and Meyer: the cover sigma_i = [n] \ {i}, s = n - 1.
InequalityReport check_lw(const Polytope& k);
InequalityReport check_meyer(const Polytope& k);

// n!/n^n.
Rational meyer_constant(std::size_t n);
struct MeyerIdentity {
  Rational product_form;   // (1/(n!)^(n-1)) * prod_i (n-1)!
  Rational factorial_form; // [(n-1)!]^n / (n!)^(n-1)
  Rational closed_form;    // n!/n^n
  bool holds = false;
};
MeyerIdentity meyer_identity(std::size_t n);

// Checks every cover against one body, on `jobs` threads; reports come back
// in the order of `covers`.
std::vector<InequalityReport> check_dual_bt_batch(const Polytope& k, const std::vector<Cover>& covers,
                                                  std::size_t jobs = 1);
std::vector<InequalityReport> check_bt_batch(const Polytope& k, const std::vector<Cover>& covers,
                                             std::size_t jobs = 1);

// Largest denominator accepted when clearing weighted exponents.
inline constexpr unsigned long kMaxExponentDenominator = 1u << 12;

// Fills a float report from lhs_f / rhs_f: pass iff slack >= 1 - tol.
void finish_float_report(InequalityReport& r, double tol);

}  // namespace covercert
