#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rwre {

/// A point (equivalently, a jump) of the lattice Z^d.
///
/// Text form is comma-separated coordinates in brackets, e.g. "[1,-2]";
/// this form is used in every file format of the project.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<std::int32_t> coords) : coords_(std::move(coords)) {}

  static GroupElement zero(int dim) { return GroupElement(std::vector<std::int32_t>(dim, 0)); }

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::int32_t>& coords() const { return coords_; }
  std::int32_t operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const;

  /// Coordinate-wise sum; throws ValidationError on dimension mismatch.
  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  GroupElement operator-() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) = default;
  /// Lexicographic coordinate order; the canonical order everywhere.
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.coords_ < b.coords_;
  }

  std::string to_string() const;
  /// Parses the bracketed text form; throws IoError on malformed input.
  static GroupElement parse(std::string_view text);

 private:
  std::vector<std::int32_t> coords_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

/// The finite set E of admissible jumps, held in canonical (lexicographic)
/// order so that index-based storage is deterministic across runs.
class JumpSet {
 public:
  JumpSet() = default;
  /// Sorts; throws ValidationError on duplicates, mixed dimensions,
  /// or more than 255 jumps (step indices are stored in one byte).
  explicit JumpSet(std::vector<GroupElement> jumps);

  std::size_t size() const { return jumps_.size(); }
  bool empty() const { return jumps_.empty(); }
  int dim() const { return jumps_.empty() ? 0 : jumps_.front().dim(); }
  const GroupElement& at(std::size_t i) const { return jumps_[i]; }
  const std::vector<GroupElement>& elements() const { return jumps_; }

  std::optional<std::uint8_t> index_of(const GroupElement& g) const;
  bool contains(const GroupElement& g) const { return index_of(g).has_value(); }

  friend bool operator==(const JumpSet& a, const JumpSet& b) = default;

  auto begin() const { return jumps_.begin(); }
  auto end() const { return jumps_.end(); }

 private:
  std::vector<GroupElement> jumps_;
};

}  // namespace rwre
