#pragma once

#include <stdexcept>
#include <vector>

#include "axenum/tree.hpp"

namespace axenum {

// Round-robin over root-to-depth sweeps.  One node executes per global stage.
// Within phase L the sweep visits depths 0..L, each time descending along the
// outcomes reported earlier in the same sweep; when depth L has reported, the
// phase bound grows by one and the sweep restarts at the root.  Every node on
// the eventual true path is reached in all late enough phases.
class SchedulerState {
 public:
  // The node to execute at the current global stage.
  NodeAddress current() const {
    return NodeAddress(sweep_.begin(), sweep_.begin() + depth_);
  }

  nat stage() const { return stage_; }
  nat phase() const { return phase_; }
  std::size_t depth() const { return depth_; }

  // Stores the outcome the current node reported and advances the sweep.
  void record_outcome(const NodeAddress& node, nat outcome) {
    if (node != current())
      throw std::invalid_argument("outcome recorded for a non-current node");
    sweep_.resize(depth_);
    sweep_.push_back(outcome);
    ++depth_;
    if (depth_ > phase_) {
      depth_ = 0;
      ++phase_;
      sweep_.clear();
    }
    ++stage_;
  }

 private:
  nat stage_ = 1;
  nat phase_ = 0;
  std::size_t depth_ = 0;
  std::vector<nat> sweep_;
};

}  // namespace axenum
