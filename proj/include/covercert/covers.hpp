#pragma once

// Uniform covers of [n] and weighted covers s*I = sum c_i P_i by coordinate
// subspaces.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covercert/coord_set.hpp"
#include "covercert/rational.hpp"

namespace covercert {

// Multiset of nonempty coordinate sets, kept in canonical (sorted) order.
class Cover {
 public:
  Cover(std::size_t n, std::vector<CoordSet> parts);

  // "1,2;1,3;2,3". With n == 0 the ambient dimension is the largest index.
  static Cover parse(std::string_view text, std::size_t n = 0);

  std::size_t ambient() const { return n_; }
  const std::vector<CoordSet>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  std::string to_string() const;
  // multiplicities()[j] = number of parts containing coordinate j.
  std::vector<std::size_t> multiplicities() const;

  bool operator==(const Cover& o) const { return n_ == o.n_ && parts_ == o.parts_; }
  std::strong_ordering operator<=>(const Cover& o) const;

 private:
  std::size_t n_;
  std::vector<CoordSet> parts_;
};

std::optional<std::size_t> uniformity(const Cover& c);
Cover concatenate(const Cover& a, const Cover& b);
// sigma_i = [n] \ {i}: the (n-1)-uniform cover behind Loomis-Whitney / Meyer.
Cover complement_cover(std::size_t n);
// ({1}, ..., {n}).
Cover singleton_cover(std::size_t n);

struct EnumerationLimits {
  std::size_t max_parts = 0;  // 0: no limit beyond the n*s implied by uniformity
  std::size_t budget = 1'000'000;  // maximum number of covers emitted
};

// Budget from COVERCERT_BUDGET when set, else `fallback`.
std::size_t budget_from_env(std::size_t fallback);

// Visits every s-uniform cover of [n] with at most max_parts parts, once per
// multiset, in canonical order. Throws BudgetExceeded past limits.budget.
void for_each_uniform_cover(std::size_t n, std::size_t s, const EnumerationLimits& limits,
                            const std::function<void(const Cover&)>& visit);
std::vector<Cover> enumerate_uniform_covers(std::size_t n, std::size_t s, const EnumerationLimits& limits = {});

// True iff no nonempty proper sub-multiset is itself a uniform cover.
// Throws NotUniform.
bool is_irreducible(const Cover& c);
// Splits a uniform cover into irreducible uniform covers.
std::vector<Cover> decompose_irreducible(const Cover& c);

// Irreducible uniform covers of [n] with uniformity up to max_s (0: n).
// The cap is an engineering budget, not a proven bound.
std::vector<Cover> enumerate_irreducible(std::size_t n, std::size_t max_s = 0, std::size_t budget = 1'000'000);

struct WeightedCover {
  std::size_t n = 0;
  std::vector<CoordSet> parts;
  QVector weights;
  Rational s;
};

WeightedCover unit_weights(const Cover& c);
// Exact check of sum{c_i : j in sigma_i} = s for every j, positivity, and
// the trace identity n*s = sum c_i |sigma_i|.
bool verify_weighted(const WeightedCover& wc);
// Positive weights with per-coordinate sums s, maximizing the minimum weight
// and then lexicographically smallest; nullopt when no positive solution.
std::optional<QVector> solve_weights(const std::vector<CoordSet>& parts, const Rational& s);

}  // namespace covercert
