#include "rwre/trajectory.hpp"

#include "rwre/errors.hpp"

namespace rwre {

void Trajectory::append(const GroupElement& jump) {
  auto idx = alphabet_.index_of(jump);
  if (!idx) throw ValidationError("jump " + jump.to_string() + " not in the trajectory alphabet");
  steps_.push_back(*idx);
}

std::vector<GroupElement> Trajectory::positions() const {
  std::vector<GroupElement> out;
  out.reserve(steps_.size() + 1);
  out.push_back(GroupElement::zero(dim()));
  for (std::size_t i = 0; i < steps_.size(); ++i) out.push_back(out.back() + jump(i));
  return out;
}

}  // namespace rwre
