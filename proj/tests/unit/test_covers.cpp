#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "covercert/covers.hpp"
#include "covercert/errors.hpp"

using namespace covercert;

namespace {

Rational q(const char* s) { return parse_rational(s); }

// All multisets of nonempty subsets of [n] with at most max_parts parts,
// built without any pruning, then filtered on exact uniformity s.
std::set<std::vector<std::uint32_t>> brute_uniform(std::size_t n, std::size_t s, std::size_t max_parts) {
  std::set<std::vector<std::uint32_t>> out;
  const std::uint32_t top = (1u << n) - 1;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    if (!cur.empty()) {
      std::vector<std::size_t> m(n, 0);
      for (auto mask : cur)
        for (std::size_t j = 0; j < n; ++j) m[j] += (mask >> j) & 1u;
      if (std::all_of(m.begin(), m.end(), [&](std::size_t v) { return v == s; })) out.insert(cur);
    }
    if (cur.size() == max_parts) return;
    for (std::uint32_t mask = start; mask <= top; ++mask) {
      cur.push_back(mask);
      self(self, mask);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

std::vector<std::uint32_t> sorted_masks(const Cover& c) {
  std::vector<std::uint32_t> v;
  for (const auto& p : c.parts()) v.push_back(p.mask());
  std::sort(v.begin(), v.end());
  return v;
}

// Irreducibility by trying every proper nonempty index subset of the parts.
bool brute_irreducible(const Cover& c) {
  const auto& parts = c.parts();
  const std::size_t r = parts.size();
  for (std::uint64_t pick = 1; pick + 1 < (std::uint64_t{1} << r); ++pick) {
    std::vector<std::size_t> m(c.ambient(), 0);
    for (std::size_t i = 0; i < r; ++i)
      if ((pick >> i) & 1u)
        for (std::size_t j = 0; j < c.ambient(); ++j) m[j] += parts[i].contains(j);
    if (m.front() > 0 && std::all_of(m.begin(), m.end(), [&](std::size_t v) { return v == m.front(); }))
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cover text round trip and canonical order") {
  const auto c = Cover::parse("2,3;1;1,2");
  CHECK(c.ambient() == 3);
  CHECK(c.to_string() == "1;1,2;2,3");
  CHECK(Cover::parse(c.to_string()) == c);
  CHECK(Cover::parse("1", 4).ambient() == 4);
  CHECK_THROWS_AS(Cover::parse("1;;2"), Error);
  CHECK_THROWS_AS(Cover::parse("1,1;2"), Error);
  CHECK_THROWS_AS(Cover::parse("3", 2), Error);
}

TEST_CASE("uniformity") {
  CHECK(uniformity(Cover::parse("1,2;1,3;2,3")) == 2u);
  CHECK(uniformity(Cover::parse("1;2;3")) == 1u);
  CHECK_FALSE(uniformity(Cover::parse("1,2;1")).has_value());
  CHECK_FALSE(uniformity(Cover::parse("1", 2)).has_value());
  CHECK(uniformity(complement_cover(5)) == 4u);
  CHECK(uniformity(singleton_cover(4)) == 1u);
}

TEST_CASE("enumeration examples") {
  auto a = enumerate_uniform_covers(2, 1, {2, 100});
  REQUIRE(a.size() == 2);
  CHECK(a[0].to_string() == "1;2");
  CHECK(a[1].to_string() == "1,2");

  auto b = enumerate_uniform_covers(2, 2, {3, 100});
  REQUIRE(b.size() == 2);
  std::set<std::string> got{b[0].to_string(), b[1].to_string()};
  CHECK(got == std::set<std::string>{"1,2;1,2", "1;2;1,2"});

  auto c = enumerate_uniform_covers(1, 1);
  REQUIRE(c.size() == 1);
  CHECK(c[0].to_string() == "1");
}

TEST_CASE("enumeration agrees with brute force") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t s = 1; s <= 3; ++s)
      for (std::size_t max_parts : {2u, 4u, 5u}) {
        if (n == 4 && max_parts > 4) continue;
        const auto expected = brute_uniform(n, s, max_parts);
        const auto got = enumerate_uniform_covers(n, s, {max_parts, 1'000'000});
        std::set<std::vector<std::uint32_t>> seen;
        for (const auto& cv : got) {
          CHECK(uniformity(cv) == s);
          CHECK(cv.size() <= max_parts);
          seen.insert(sorted_masks(cv));
        }
        CHECK(seen.size() == got.size());
        CHECK(seen == expected);
        CHECK(std::is_sorted(got.begin(), got.end()));
      }
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS(enumerate_uniform_covers(4, 2, {0, 5}), Error);
  try {
    enumerate_uniform_covers(4, 2, {0, 5});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudgetExceeded);
  }
}

TEST_CASE("irreducibility examples") {
  CHECK_FALSE(is_irreducible(Cover::parse("1;2;1,2")));
  CHECK(is_irreducible(Cover::parse("1,2;1,3;2,3")));
  CHECK(is_irreducible(Cover::parse("1,2,3,4")));
  CHECK_FALSE(is_irreducible(Cover::parse("1,2;1,2")));
  CHECK_THROWS_AS(is_irreducible(Cover::parse("1;1,2")), Error);
}

TEST_CASE("irreducibility agrees with sub-multiset search") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t s = 1; s <= 3; ++s)
      for (const auto& c : enumerate_uniform_covers(n, s, {6, 1'000'000}))
        CHECK(is_irreducible(c) == brute_irreducible(c));
}

TEST_CASE("irreducible enumeration matches the filter oracle") {
  CHECK(enumerate_irreducible(1).size() == 1);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto got = enumerate_irreducible(n);
    std::vector<Cover> expected;
    for (std::size_t s = 1; s <= n; ++s)
      for (const auto& c : enumerate_uniform_covers(n, s))
        if (brute_irreducible(c)) expected.push_back(c);
    std::sort(expected.begin(), expected.end(), [](const Cover& a, const Cover& b) {
      return std::pair(*uniformity(a), a) < std::pair(*uniformity(b), b);
    });
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expected[i]);
  }
  const auto two = enumerate_irreducible(2);
  std::set<std::string> names;
  for (const auto& c : two) names.insert(c.to_string());
  CHECK(names.count("1,2"));
  CHECK(names.count("1;2"));
  CHECK_FALSE(names.count("1;2;1,2"));
  const auto three = enumerate_irreducible(3);
  CHECK(std::find(three.begin(), three.end(), complement_cover(3)) != three.end());
}

TEST_CASE("irreducible enumeration of n = 4 agrees with filtering") {
  const auto got = enumerate_irreducible(4, 3);
  std::size_t expected = 0;
  for (std::size_t s = 1; s <= 3; ++s)
    for (const auto& c : enumerate_uniform_covers(4, s))
      if (is_irreducible(c)) ++expected;
  CHECK(got.size() == expected);
  for (const auto& c : got) CHECK(is_irreducible(c));
}

TEST_CASE("concatenation adds uniformity") {
  const auto ones = enumerate_uniform_covers(3, 1);
  const auto twos = enumerate_uniform_covers(3, 2, {4, 1'000'000});
  for (const auto& a : ones)
    for (const auto& b : twos) CHECK(uniformity(concatenate(a, b)) == 3u);
}

TEST_CASE("decomposition into irreducible covers") {
  for (std::size_t n = 2; n <= 3; ++n)
    for (std::size_t s = 1; s <= 3; ++s)
      for (const auto& c : enumerate_uniform_covers(n, s, {6, 1'000'000})) {
        const auto pieces = decompose_irreducible(c);
        std::size_t total = 0;
        std::vector<CoordSet> parts;
        for (const auto& p : pieces) {
          CHECK(is_irreducible(p));
          total += *uniformity(p);
          parts.insert(parts.end(), p.parts().begin(), p.parts().end());
        }
        CHECK(total == s);
        CHECK(Cover(n, parts) == c);
      }
}

TEST_CASE("weighted cover verification") {
  WeightedCover wc{3, Cover::parse("1,2;1,3;2,3").parts(), {1, 1, 1}, 2};
  CHECK(verify_weighted(wc));
  wc.s = 1;
  CHECK_FALSE(verify_weighted(wc));

  CHECK_FALSE(verify_weighted({2, Cover::parse("1;2").parts(), {1, 2}, 1}));
  CHECK(verify_weighted({2, Cover::parse("1;1,2;2").parts(), {q("1/2"), q("1/2"), q("1/2")}, 1}));
  CHECK_FALSE(verify_weighted({2, Cover::parse("1;1,2;2").parts(), {1, 0, 1}, 1}));

  for (std::size_t s = 1; s <= 3; ++s)
    for (const auto& c : enumerate_uniform_covers(3, s, {5, 1'000'000})) CHECK(verify_weighted(unit_weights(c)));
}

TEST_CASE("solve_weights examples") {
  auto a = solve_weights(Cover::parse("1,2;1,3;2,3").parts(), 2);
  REQUIRE(a);
  CHECK(*a == QVector{1, 1, 1});
  auto b = solve_weights(Cover::parse("1;2").parts(), 1);
  REQUIRE(b);
  CHECK(*b == QVector{1, 1});
  auto c = solve_weights({CoordSet(2, {0}), CoordSet(2, {0, 1}), CoordSet(2, {1})}, 1);
  REQUIRE(c);
  CHECK(*c == QVector{q("1/2"), q("1/2"), q("1/2")});
  CHECK_FALSE(solve_weights(Cover::parse("1", 2).parts(), 1));
  // {1}, {1,2}, {1,2,3} forces weight 0 on the middle part.
  CHECK_FALSE(solve_weights(Cover::parse("1;1,2;1,2,3").parts(), 1));
}

TEST_CASE("solve_weights output always verifies") {
  std::mt19937_64 rng(7);
  const auto all = all_coord_sets(4);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CoordSet> parts;
    const std::size_t r = 2 + trial % 5;
    for (std::size_t i = 0; i < r; ++i) parts.push_back(all[pick(rng)]);
    const Rational s = make_rational(1 + trial % 3, 1 + trial % 2);
    auto w = solve_weights(parts, s);
    if (!w) continue;
    ++solved;
    CHECK(verify_weighted({4, parts, *w, s}));
  }
  CHECK(solved > 0);
}
