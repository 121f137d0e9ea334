#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "axenum/axiom.hpp"
#include "axenum/fixtures.hpp"
#include "axenum/fresh.hpp"
#include "axenum/scheduler.hpp"
#include "axenum/trace.hpp"
#include "axenum/tree.hpp"

namespace axenum {

// The two incompatible oracle strings a diagonal node commits to, with the
// input they disagree on and the target whose presence in the built set
// switches which string the set extends.
struct ActivationWitness {
  FinitePartialFunction side0;
  FinitePartialFunction side1;
  nat input = 0;
  nat control = 0;
};

struct DiagonalState {
  bool activated = false;
  nat activation_stage = 0;
  nat activation_exec = 0;
  ActivationWitness witness;
  bool val0 = false;  // output of the functional on side0
  bool val1 = false;  // output on side1
  nat flag = 0;
  nat marker0 = 0;      // first marker row
  nat marker_row = 0;   // marker row in force
  nat eventful_count = 0;
  std::optional<nat> last_side;
  nat floor_before = 0;
};

struct CoverState {
  bool acted = false;
  nat element = 0;
};

// Everything one tree node carries between executions.
struct NodeState {
  NodeAddress address;
  RequirementAssignment requirement;
  SetDescription guess_columns;       // guess at the columns below base_column
  FinitePartialFunction restraint;    // guess at the finite part pinned so far
  nat exec_count = 0;
  std::set<Axiom> enumerated;         // restraint-conditioned bases already sent
  DiagonalState diag;
  CoverState cover;
};

// Shared mutable state of one run.  Fixture reads funnel through here so that
// every number the construction looks at advances the fresh floor.
class RunContext {
 public:
  RunContext(const FixtureSet& fixtures, nat horizon)
      : fixtures_(fixtures), horizon_(horizon) {}

  const FixtureSet& fixtures() const { return fixtures_; }
  nat horizon() const { return horizon_; }
  nat stage() const { return sched.stage(); }

  NodeState& state(const NodeAddress& node) {
    auto it = nodes_.find(node);
    if (it == nodes_.end())
      throw std::logic_error("node executed before its guesses were defined");
    return it->second;
  }

  const NodeState* find(const NodeAddress& node) const {
    auto it = nodes_.find(node);
    return it == nodes_.end() ? nullptr : &it->second;
  }

  bool has_node(const NodeAddress& node) const { return nodes_.count(node) != 0; }

  NodeState& create_node(const NodeAddress& node, SetDescription guess_columns,
                         FinitePartialFunction restraint) {
    if (has_node(node)) throw std::logic_error("node guesses defined twice");
    NodeState st;
    st.address = node;
    st.requirement = assign_requirement(node.size());
    st.guess_columns = std::move(guess_columns);
    st.restraint = std::move(restraint);
    fresh.mention_set(st.guess_columns);
    fresh.mention_function(st.restraint);
    return nodes_.emplace(node, std::move(st)).first->second;
  }

  const std::map<NodeAddress, NodeState>& nodes() const { return nodes_; }

  const TableFunctional* functional_for(nat index) {
    const TableFunctional* f = fixtures_.functional(index);
    if (f)
      for (const FunctionalRow& r : f->rows) {
        fresh.mention(r.x);
        fresh.mention(r.steps);
        fresh.mention_function(r.sigma);
      }
    return f;
  }

  bool delta2_at(nat index, nat x, nat at_stage) {
    fresh.mention(x);
    return delta2_value(fixtures_.delta2, index, x, at_stage);
  }

  std::vector<nat> ce_at(nat index, nat at_stage) {
    std::vector<nat> out = ce_members(fixtures_.ce, index, at_stage);
    if (!out.empty()) fresh.mention(out.back());
    return out;
  }

  AxiomStore store;
  FreshAllocator fresh;
  SchedulerState sched;
  StageRecord* record = nullptr;  // record of the stage being executed

 private:
  const FixtureSet& fixtures_;
  std::map<NodeAddress, NodeState> nodes_;
  nat horizon_ = 0;
};

}  // namespace axenum
