#include "covercert/covers.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "covercert/errors.hpp"
#include "covercert/lp.hpp"

namespace covercert {

Cover::Cover(std::size_t n, std::vector<CoordSet> parts) : n_(n), parts_(std::move(parts)) {
  if (n == 0 || n > kMaxAmbientDim) fail(ErrorCode::kInvalidArgument, "cover ambient dimension out of range");
  if (parts_.empty()) fail(ErrorCode::kInvalidArgument, "cover has no parts");
  for (const auto& p : parts_)
    if (p.ambient() != n) fail(ErrorCode::kInvalidArgument, "cover part has wrong ambient dimension");
  std::sort(parts_.begin(), parts_.end());
}

Cover Cover::parse(std::string_view text, std::size_t n) {
  std::vector<std::string_view> chunks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto semi = std::min(text.find(';', pos), text.size());
    chunks.push_back(text.substr(pos, semi - pos));
    pos = semi + 1;
  }
  if (n == 0) {
    for (auto chunk : chunks) {
      std::size_t i = 0;
      while (i < chunk.size()) {
        while (i < chunk.size() && (chunk[i] < '0' || chunk[i] > '9')) ++i;
        std::size_t v = 0;
        bool any = false;
        while (i < chunk.size() && chunk[i] >= '0' && chunk[i] <= '9') {
          v = v * 10 + static_cast<std::size_t>(chunk[i++] - '0');
          any = true;
          if (v > kMaxAmbientDim) fail(ErrorCode::kParse, "cover index too large");
        }
        if (any) n = std::max(n, v);
      }
    }
    if (n == 0) fail(ErrorCode::kParse, "cover text has no indices");
  }
  std::vector<CoordSet> parts;
  for (auto chunk : chunks) parts.push_back(CoordSet::parse(n, chunk));
  return Cover(n, std::move(parts));
}

std::string Cover::to_string() const {
  std::string out;
  for (const auto& p : parts_) {
    if (!out.empty()) out += ';';
    out += p.to_string();
  }
  return out;
}

std::vector<std::size_t> Cover::multiplicities() const {
  std::vector<std::size_t> m(n_, 0);
  for (const auto& p : parts_)
    for (std::size_t j = 0; j < n_; ++j)
      if (p.contains(j)) ++m[j];
  return m;
}

std::strong_ordering Cover::operator<=>(const Cover& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  return std::lexicographical_compare_three_way(parts_.begin(), parts_.end(), o.parts_.begin(), o.parts_.end());
}

std::optional<std::size_t> uniformity(const Cover& c) {
  const auto m = c.multiplicities();
  if (m.front() == 0) return std::nullopt;
  for (std::size_t v : m)
    if (v != m.front()) return std::nullopt;
  return m.front();
}

Cover concatenate(const Cover& a, const Cover& b) {
  if (a.ambient() != b.ambient()) fail(ErrorCode::kInvalidArgument, "covers of different ground sets");
  std::vector<CoordSet> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return Cover(a.ambient(), std::move(parts));
}

Cover complement_cover(std::size_t n) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "complement cover needs n >= 2");
  std::vector<CoordSet> parts;
  for (std::size_t i = 0; i < n; ++i) parts.push_back(CoordSet::from_mask(n, CoordSet::full_mask(n) & ~(1u << i)));
  return Cover(n, std::move(parts));
}

Cover singleton_cover(std::size_t n) {
  std::vector<CoordSet> parts;
  for (std::size_t i = 0; i < n; ++i) parts.push_back(CoordSet::from_mask(n, 1u << i));
  return Cover(n, std::move(parts));
}

std::size_t budget_from_env(std::size_t fallback) {
  if (const char* env = std::getenv("COVERCERT_BUDGET")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

namespace {

// Count vectors bounded by s, encoded in base (s+1); used to decide whether
// a multiset of parts contains a uniform sub-multiset.
class Reachable {
 public:
  static constexpr std::size_t kMaxStates = 1u << 22;

  Reachable(std::size_t n, std::size_t s) : n_(n), s_(s), stride_(n) {
    std::size_t states = 1;
    for (std::size_t j = 0; j < n; ++j) {
      stride_[j] = states;
      states *= (s + 1);
      if (states > kMaxStates) fail(ErrorCode::kBudgetExceeded, "uniform sub-cover search space too large");
    }
    bits_.assign(states, 0);
    bits_[0] = 1;
  }

  void add(const CoordSet& part) {
    const std::size_t shift = encode(part, 1);
    // Walk downwards so each part is used once.
    for (std::size_t code = bits_.size(); code-- > 0;) {
      if (!bits_[code] || !fits(code, part)) continue;
      bits_[code + shift] = 1;
    }
  }

  bool has(std::size_t code) const { return bits_[code]; }

  // Code of t*1 - chi(part) (part may be empty via mask 0).
  std::size_t uniform_minus(std::size_t t, std::uint32_t mask) const {
    std::size_t code = 0;
    for (std::size_t j = 0; j < n_; ++j) code += stride_[j] * (t - ((mask >> j) & 1u));
    return code;
  }

 private:
  std::size_t encode(const CoordSet& part, std::size_t v) const {
    std::size_t code = 0;
    for (std::size_t j = 0; j < n_; ++j)
      if (part.contains(j)) code += stride_[j] * v;
    return code;
  }

  bool fits(std::size_t code, const CoordSet& part) const {
    for (std::size_t j = 0; j < n_; ++j)
      if (part.contains(j) && (code / stride_[j]) % (s_ + 1) == s_) return false;
    return true;
  }

  std::size_t n_;
  std::size_t s_;
  std::vector<std::size_t> stride_;
  std::vector<char> bits_;
};

struct Search {
  std::size_t n;
  std::size_t s;
  std::size_t max_parts;
  std::size_t budget;
  bool irreducible_only;
  const std::function<void(const Cover&)>& visit;

  std::vector<CoordSet> subsets;
  std::vector<std::size_t> counts;
  std::vector<std::size_t> chosen;
  std::size_t emitted = 0;

  void emit() {
    if (++emitted > budget)
      fail(ErrorCode::kBudgetExceeded, "more than " + std::to_string(budget) + " covers enumerated");
    std::vector<CoordSet> parts;
    parts.reserve(chosen.size());
    for (std::size_t k : chosen) parts.push_back(subsets[k]);
    visit(Cover(n, std::move(parts)));
  }

  void run(std::size_t start, std::size_t deficit, const Reachable* reach) {
    if (deficit == 0) {
      emit();
      return;
    }
    const std::size_t left = max_parts - chosen.size();
    if (left == 0 || deficit > left * n) return;
    for (std::size_t k = start; k < subsets.size(); ++k) {
      const CoordSet& part = subsets[k];
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j)
        if (part.contains(j) && counts[j] == s) ok = false;
      if (!ok) continue;
      const std::size_t next_deficit = deficit - part.size();

      std::optional<Reachable> next;
      if (irreducible_only) {
        // Any uniform sub-multiset through the new part (other than the whole
        // cover once complete) makes every completion reducible.
        const std::size_t top = next_deficit == 0 ? s - 1 : s;
        bool blocked = false;
        for (std::size_t t = 1; t <= top && !blocked; ++t) {
          bool feasible = true;
          for (std::size_t j = 0; j < n; ++j)
            if (part.contains(j) ? (t - 1 > counts[j]) : (t > counts[j])) feasible = false;
          if (feasible && reach->has(reach->uniform_minus(t, part.mask()))) blocked = true;
        }
        if (blocked) continue;
        if (next_deficit != 0) {
          next.emplace(*reach);
          next->add(part);
        }
      }
      for (std::size_t j = 0; j < n; ++j)
        if (part.contains(j)) ++counts[j];
      chosen.push_back(k);
      run(k, next_deficit, next ? &*next : nullptr);
      chosen.pop_back();
      for (std::size_t j = 0; j < n; ++j)
        if (part.contains(j)) --counts[j];
    }
  }
};

void search(std::size_t n, std::size_t s, const EnumerationLimits& limits, bool irreducible_only,
            const std::function<void(const Cover&)>& visit) {
  if (n == 0 || n > kMaxAmbientDim) fail(ErrorCode::kInvalidArgument, "n out of range");
  if (s == 0) fail(ErrorCode::kInvalidArgument, "uniformity s must be positive");
  const std::size_t cap = n * s;
  Search st{n, s, limits.max_parts == 0 ? cap : std::min(cap, limits.max_parts), limits.budget, irreducible_only,
            visit, all_coord_sets(n), std::vector<std::size_t>(n, 0), {}};
  if (irreducible_only) {
    Reachable reach(n, s);
    st.run(0, cap, &reach);
  } else {
    st.run(0, cap, nullptr);
  }
}

}  // namespace

void for_each_uniform_cover(std::size_t n, std::size_t s, const EnumerationLimits& limits,
                            const std::function<void(const Cover&)>& visit) {
  search(n, s, limits, false, visit);
}

std::vector<Cover> enumerate_uniform_covers(std::size_t n, std::size_t s, const EnumerationLimits& limits) {
  std::vector<Cover> out;
  for_each_uniform_cover(n, s, limits, [&](const Cover& c) { out.push_back(c); });
  return out;
}

bool is_irreducible(const Cover& c) {
  const auto s = uniformity(c);
  if (!s) fail(ErrorCode::kNotUniform, "cover " + c.to_string() + " is not uniform");
  if (*s == 1) return true;
  Reachable reach(c.ambient(), *s);
  for (const auto& p : c.parts()) reach.add(p);
  for (std::size_t t = 1; t < *s; ++t)
    if (reach.has(reach.uniform_minus(t, 0))) return false;
  return true;
}

std::vector<Cover> decompose_irreducible(const Cover& c) {
  const auto s = uniformity(c);
  if (!s) fail(ErrorCode::kNotUniform, "cover " + c.to_string() + " is not uniform");
  if (is_irreducible(c)) return {c};
  // Peel off the lowest-uniformity sub-cover found by exhaustive search over
  // multiplicity vectors of the distinct parts.
  std::vector<CoordSet> distinct;
  std::vector<std::size_t> mult;
  for (const auto& p : c.parts()) {
    if (!distinct.empty() && distinct.back() == p) {
      ++mult.back();
    } else {
      distinct.push_back(p);
      mult.push_back(1);
    }
  }
  std::vector<std::size_t> pick(distinct.size(), 0);
  for (;;) {
    std::size_t k = 0;
    while (k < pick.size() && pick[k] == mult[k]) pick[k++] = 0;
    if (k == pick.size()) break;
    ++pick[k];
    std::vector<CoordSet> sub, rest;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      sub.insert(sub.end(), pick[i], distinct[i]);
      rest.insert(rest.end(), mult[i] - pick[i], distinct[i]);
    }
    if (rest.empty()) continue;
    Cover a(c.ambient(), sub);
    if (!uniformity(a)) continue;
    auto left = decompose_irreducible(a);
    auto right = decompose_irreducible(Cover(c.ambient(), rest));
    left.insert(left.end(), right.begin(), right.end());
    std::sort(left.begin(), left.end());
    return left;
  }
  return {c};
}

std::vector<Cover> enumerate_irreducible(std::size_t n, std::size_t max_s, std::size_t budget) {
  if (max_s == 0) max_s = n;
  std::vector<Cover> out;
  for (std::size_t s = 1; s <= max_s; ++s) {
    EnumerationLimits limits;
    limits.budget = budget - out.size();
    search(n, s, limits, true, [&](const Cover& c) { out.push_back(c); });
  }
  return out;
}

WeightedCover unit_weights(const Cover& c) {
  const auto s = uniformity(c);
  if (!s) fail(ErrorCode::kNotUniform, "cover " + c.to_string() + " is not uniform");
  WeightedCover wc;
  wc.n = c.ambient();
  wc.parts = c.parts();
  wc.weights.assign(c.size(), Rational(1));
  wc.s = static_cast<unsigned long>(*s);
  return wc;
}

bool verify_weighted(const WeightedCover& wc) {
  if (wc.parts.empty() || wc.parts.size() != wc.weights.size() || sgn(wc.s) <= 0) return false;
  std::vector<Rational> sums(wc.n, Rational(0));
  Rational trace = 0;
  for (std::size_t i = 0; i < wc.parts.size(); ++i) {
    if (wc.parts[i].ambient() != wc.n || sgn(wc.weights[i]) <= 0) return false;
    for (std::size_t j = 0; j < wc.n; ++j)
      if (wc.parts[i].contains(j)) sums[j] += wc.weights[i];
    trace += wc.weights[i] * static_cast<unsigned long>(wc.parts[i].size());
  }
  for (const auto& v : sums)
    if (v != wc.s) return false;
  return trace == wc.s * static_cast<unsigned long>(wc.n);
}

std::optional<QVector> solve_weights(const std::vector<CoordSet>& parts, const Rational& s) {
  if (parts.empty()) fail(ErrorCode::kInvalidArgument, "no parts given");
  if (sgn(s) <= 0) return std::nullopt;
  const std::size_t n = parts.front().ambient();
  const std::size_t r = parts.size();
  // Variables: c_0 .. c_{r-1}, then the common lower bound t.
  auto base = [&](const Rational& t_floor) {
    lp::Problem<Rational> p(r + 1);
    for (std::size_t j = 0; j < n; ++j) {
      QVector row(r + 1, Rational(0));
      for (std::size_t i = 0; i < r; ++i)
        if (parts[i].contains(j)) row[i] = 1;
      p.add(std::move(row), lp::Sense::kEqual, s);
    }
    for (std::size_t i = 0; i < r; ++i) {
      QVector row(r + 1, Rational(0));
      row[i] = 1;
      row[r] = -1;
      p.add(std::move(row), lp::Sense::kGreaterEq, 0);
    }
    QVector t_row(r + 1, Rational(0));
    t_row[r] = 1;
    p.add(std::move(t_row), lp::Sense::kGreaterEq, t_floor);
    return p;
  };

  auto p = base(0);
  p.objective[r] = 1;
  const auto best = lp::maximize(p);
  if (best.status != lp::Status::kOptimal || sgn(best.objective) <= 0) return std::nullopt;
  const Rational t_star = best.objective;

  QVector fixed;
  for (std::size_t k = 0; k < r; ++k) {
    auto q = base(t_star);
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      QVector row(r + 1, Rational(0));
      row[i] = 1;
      q.add(std::move(row), lp::Sense::kEqual, fixed[i]);
    }
    q.objective[k] = -1;
    const auto sol = lp::maximize(q);
    if (sol.status != lp::Status::kOptimal) fail(ErrorCode::kInfeasible, "weight refinement lost feasibility");
    fixed.push_back(sol.x[k]);
  }
  return fixed;
}

}  // namespace covercert
