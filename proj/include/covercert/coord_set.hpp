#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace covercert {

// Maximum ambient dimension representable by a CoordSet bit mask.
inline constexpr std::size_t kMaxAmbientDim = 20;

// Nonempty subset of coordinates {0..n-1} of R^n; printed 1-based.
class CoordSet {
 public:
  CoordSet(std::size_t n, const std::vector<std::size_t>& indices);

  static CoordSet from_mask(std::size_t n, std::uint32_t mask);
  static CoordSet full(std::size_t n);
  // Parses "1,3,4" (1-based, any order, no repeats).
  static CoordSet parse(std::size_t n, std::string_view text);

  std::size_t ambient() const { return n_; }
  std::size_t size() const;
  std::uint32_t mask() const { return mask_; }
  bool contains(std::size_t j) const { return (mask_ >> j) & 1u; }
  bool is_full() const { return mask_ == full_mask(n_); }
  std::vector<std::size_t> indices() const;
  std::string to_string() const;

  static std::uint32_t full_mask(std::size_t n) {
    return n >= 32 ? ~0u : ((1u << n) - 1u);
  }

  bool operator==(const CoordSet& o) const { return n_ == o.n_ && mask_ == o.mask_; }
  // Canonical order: by size, then lexicographically by sorted indices.
  std::strong_ordering operator<=>(const CoordSet& o) const;

 private:
  CoordSet(std::size_t n, std::uint32_t mask, bool);

  std::size_t n_;
  std::uint32_t mask_;
};

// All nonempty subsets of [n] in canonical order.
std::vector<CoordSet> all_coord_sets(std::size_t n);

}  // namespace covercert
