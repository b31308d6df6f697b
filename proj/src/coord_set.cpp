#include "covercert/coord_set.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

#include "covercert/errors.hpp"

namespace covercert {

namespace {

void check_ambient(std::size_t n) {
  if (n == 0 || n > kMaxAmbientDim)
    fail(ErrorCode::kInvalidArgument, "ambient dimension must be in 1.." + std::to_string(kMaxAmbientDim));
}

}  // namespace

CoordSet::CoordSet(std::size_t n, std::uint32_t mask, bool) : n_(n), mask_(mask) {}

CoordSet::CoordSet(std::size_t n, const std::vector<std::size_t>& indices) : n_(n), mask_(0) {
  check_ambient(n);
  for (std::size_t j : indices) {
    if (j >= n) fail(ErrorCode::kInvalidArgument, "coordinate index out of range");
    if (contains(j)) fail(ErrorCode::kInvalidArgument, "repeated coordinate index");
    mask_ |= 1u << j;
  }
  if (mask_ == 0) fail(ErrorCode::kInvalidArgument, "empty coordinate set");
}

CoordSet CoordSet::from_mask(std::size_t n, std::uint32_t mask) {
  check_ambient(n);
  if (mask == 0 || (mask & ~full_mask(n)) != 0)
    fail(ErrorCode::kInvalidArgument, "coordinate mask out of range");
  return CoordSet(n, mask, true);
}

CoordSet CoordSet::full(std::size_t n) {
  check_ambient(n);
  return CoordSet(n, full_mask(n), true);
}

CoordSet CoordSet::parse(std::size_t n, std::string_view text) {
  std::vector<std::size_t> idx;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v == 0)
      fail(ErrorCode::kParse, "bad coordinate index '" + std::string(tok) + "'");
    idx.push_back(v - 1);
    pos = comma + 1;
  }
  return CoordSet(n, idx);
}

std::size_t CoordSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<std::size_t> CoordSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n_; ++j)
    if (contains(j)) out.push_back(j);
  return out;
}

std::string CoordSet::to_string() const {
  std::string out;
  for (std::size_t j : indices()) {
    if (!out.empty()) out += ',';
    out += std::to_string(j + 1);
  }
  return out;
}

std::strong_ordering CoordSet::operator<=>(const CoordSet& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  if (auto c = size() <=> o.size(); c != 0) return c;
  // Lexicographic on sorted indices: the lowest differing bit decides.
  const std::uint32_t diff = mask_ ^ o.mask_;
  if (diff == 0) return std::strong_ordering::equal;
  const std::uint32_t low = diff & (~diff + 1u);
  return (mask_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::vector<CoordSet> all_coord_sets(std::size_t n) {
  check_ambient(n);
  std::vector<CoordSet> out;
  for (std::uint32_t m = 1; m <= CoordSet::full_mask(n); ++m) out.push_back(CoordSet::from_mask(n, m));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace covercert
