#pragma once

#include <cstdint>
#include <vector>

#include "rwre/lattice.hpp"

namespace rwre {

/// A walk started at 0, stored as jump indices into its jump alphabet.
/// Positions are derived, never stored: every consumer is jump-driven.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(JumpSet alphabet) : alphabet_(std::move(alphabet)) {}

  const JumpSet& alphabet() const { return alphabet_; }
  int dim() const { return alphabet_.dim(); }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }

  std::uint8_t step_index(std::size_t i) const { return steps_[i]; }
  const GroupElement& jump(std::size_t i) const { return alphabet_.at(steps_[i]); }

  void append(std::uint8_t jump_index) { steps_.push_back(jump_index); }
  /// Appends by value; throws ValidationError if the jump is not in the alphabet.
  void append(const GroupElement& jump);

  void reserve(std::size_t n) { steps_.reserve(n); }

  /// X_0 .. X_n (n+1 entries), reconstructed from the jumps.
  std::vector<GroupElement> positions() const;

  friend bool operator==(const Trajectory& a, const Trajectory& b) = default;

 private:
  JumpSet alphabet_;
  std::vector<std::uint8_t> steps_;
};

}  // namespace rwre
