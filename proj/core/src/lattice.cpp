#include "rwre/lattice.hpp"

#include <algorithm>
#include <charconv>

#include "rwre/errors.hpp"

namespace rwre {

bool GroupElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int32_t c) { return c == 0; });
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  if (a.dim() != b.dim()) {
    throw ValidationError("dimension mismatch: " + a.to_string() + " + " + b.to_string());
  }
  std::vector<std::int32_t> out(a.coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords_[i] + b.coords_[i];
  return GroupElement(std::move(out));
}

GroupElement GroupElement::operator-() const {
  std::vector<std::int32_t> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -coords_[i];
  return GroupElement(std::move(out));
}

std::string GroupElement::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(coords_[i]);
  }
  s += ']';
  return s;
}

GroupElement GroupElement::parse(std::string_view text) {
  auto fail = [&] { throw IoError("malformed group element: '" + std::string(text) + "'"); };
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') fail();
  std::string_view body = text.substr(1, text.size() - 2);
  std::vector<std::int32_t> coords;
  if (body.empty()) fail();
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string_view tok = body.substr(pos, comma == std::string_view::npos ? body.size() - pos
                                                                            : comma - pos);
    std::int32_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) fail();
    coords.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return GroupElement(std::move(coords));
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  // FNV-1a over the coordinate words.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::int32_t c : g.coords()) {
    h ^= static_cast<std::uint32_t>(c);
    h *= 0x100000001b3ull;
  }
  return static_cast<std::size_t>(h);
}

JumpSet::JumpSet(std::vector<GroupElement> jumps) : jumps_(std::move(jumps)) {
  if (jumps_.empty()) return;
  const int d = jumps_.front().dim();
  for (const auto& g : jumps_) {
    if (g.dim() != d) throw ValidationError("jump set mixes dimensions");
  }
  std::sort(jumps_.begin(), jumps_.end());
  if (std::adjacent_find(jumps_.begin(), jumps_.end()) != jumps_.end()) {
    throw ValidationError("jump set contains duplicates");
  }
  if (jumps_.size() > 255) throw ValidationError("jump set larger than 255 elements");
}

std::optional<std::uint8_t> JumpSet::index_of(const GroupElement& g) const {
  auto it = std::lower_bound(jumps_.begin(), jumps_.end(), g);
  if (it == jumps_.end() || !(*it == g)) return std::nullopt;
  return static_cast<std::uint8_t>(it - jumps_.begin());
}

}  // namespace rwre
