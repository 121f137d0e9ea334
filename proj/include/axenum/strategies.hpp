#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "axenum/context.hpp"
#include "axenum/yields.hpp"

namespace axenum {

// ---------------------------------------------------------------------------
// Axiom emission
// ---------------------------------------------------------------------------

struct ConstraintResult {
  Axiom key;                        // base conditioned on the node's restraint
  Axiom axiom;                      // key plus one guard point per ancestor
  std::vector<nat> rollback_points;
  bool deduplicated = false;
};

// Conditions a base axiom before it may enter the store.  First the node's
// own restraint is folded into the condition, so the axiom dies on any branch
// that guessed a different finite part.  The result is also the dedup key:
// a node never sends the same conditioned axiom twice.  Second, for every
// proper ancestor running a still-unactivated diagonal requirement, a fresh
// absent point in that ancestor's control column is added as a negative
// condition.  If such an ancestor later activates and starts filling its
// control column, it can kill this axiom by enumerating that point.
inline ConstraintResult apply_constraints(RunContext& ctx, NodeState& node,
                                          const Axiom& base) {
  ConstraintResult res;
  res.key = make_dependent(base.level, base.condition, base.target, node.restraint);
  if (node.enumerated.count(res.key)) {
    res.axiom = res.key;
    res.deduplicated = true;
    return res;
  }
  res.axiom = res.key;
  for (std::size_t d = 0; d < node.address.size(); ++d) {
    NodeAddress prefix(node.address.begin(), node.address.begin() + d);
    NodeState& anc = ctx.state(prefix);
    if (anc.requirement.kind != RequirementKind::diagonal) continue;
    if (anc.diag.activated) continue;
    nat guard_column = anc.requirement.base_column + 1;
    if (guard_column >= res.axiom.level)
      throw std::logic_error("rollback guard column not below the axiom level");
    auto pick = ctx.fresh.fresh_in_column(guard_column);
    FinitePartialFunction guard;
    guard.define(pick.position, false);
    res.axiom = make_dependent(res.axiom.level, res.axiom.condition,
                               res.axiom.target, guard);
    res.rollback_points.push_back(pick.position);
    if (ctx.record)
      ctx.record->fresh.push_back({"rollback", pick.position, prefix});
  }
  return res;
}

// Sends one axiom on behalf of a node.  Returns false when the conditioned
// base was already sent earlier (nothing enters the store and no fresh
// numbers are spent, since the dedup check precedes the guard allocation).
inline bool enumerate_axiom(RunContext& ctx, NodeState& node, const Axiom& base) {
  ConstraintResult res = apply_constraints(ctx, node, base);
  if (res.deduplicated) return false;
  validate_axiom(res.axiom);
  ctx.store.append(res.axiom, ctx.stage());
  node.enumerated.insert(res.key);
  ctx.fresh.mention(res.axiom.level);
  ctx.fresh.mention(res.axiom.target);
  ctx.fresh.mention_function(res.axiom.condition);
  if (ctx.record)
    ctx.record->axioms.push_back({res.axiom, res.rollback_points});
  return true;
}

// ---------------------------------------------------------------------------
// Activation search
// ---------------------------------------------------------------------------

// The literal split-pair conditions, checked against a store snapshot.  Used
// once to vet a found witness and again by the trace verifier.
inline bool activation_conditions_hold(const TableFunctional& phi,
                                       const AxiomStore& store, nat at_stage,
                                       const SetDescription& guess_columns,
                                       const FinitePartialFunction& restraint,
                                       nat base_column, const ActivationWitness& w,
                                       nat horizon, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  nat l = base_column;
  if (w.side0.size() != w.side0.length() || w.side1.size() != w.side1.length())
    return fail("witness sides are not strings");
  if (w.side0.restricted(ColumnBand::below, l + 1) !=
      w.side1.restricted(ColumnBand::below, l + 1))
    return fail("sides disagree at or below the base column");
  if (!w.side0.extends(restraint) || !w.side1.extends(restraint))
    return fail("a side contradicts the node restraint");
  std::optional<bool> v0 = eval_functional(phi, w.side0, w.input, w.control);
  std::optional<bool> v1 = eval_functional(phi, w.side1, w.input, kNoBudget);
  if (!v0 || !v1) return fail("functional undefined on a side");
  if (*v0 == *v1) return fail("sides give equal outputs");
  if (w.side0.length() >= w.control) return fail("side0 reaches the control");
  if (column_of(w.control) != l + 1)
    return fail("control outside the column above the base");
  SetDescription x1 = yields_over(store, at_stage, guess_columns, restraint, l, horizon);
  if (!set_extends(x1, w.side1)) return fail("current output does not extend side1");
  AxiomStore forced;
  store.for_each_upto(at_stage, [&](const Axiom& a) { forced.append(a, at_stage); });
  forced.append(Axiom{l + 1, {}, w.control}, at_stage);
  SetDescription x0 = yields_over(forced, at_stage, guess_columns, restraint, l, horizon);
  if (!set_extends(x0, w.side0))
    return fail("output with the control forced in does not extend side0");
  return true;
}

// Searches for a split pair: two oracle strings, equal at and below the base
// column and both extending the restraint, on which the functional halts with
// different outputs, such that the construction output extends one and would
// extend the other if one extra unconditional axiom were sent at the control.
// Candidates are ranked by control, then length of side0, then length of
// side1, then input, and the least one is returned.
//
// The search space collapses because any viable side must be a prefix of the
// output it has to be extended by, so for each control there are only two
// strings to trim prefixes from.  Agreement at and below the base column is
// tested by counting positions, which suffices because the two outputs only
// differ above the base.
inline std::optional<ActivationWitness> check_activation(RunContext& ctx,
                                                         NodeState& node) {
  const TableFunctional* phi = ctx.functional_for(node.requirement.i);
  if (!phi || phi->rows.empty()) return std::nullopt;
  nat l = node.requirement.base_column;
  nat bound = ctx.stage();
  SetDescription x1 = yields_over(ctx.store, bound, node.guess_columns,
                                  node.restraint, l, ctx.horizon());

  // counts[L] = number of positions below L lying in columns at most l
  std::vector<nat> counts(bound + 2, 0);
  for (nat p = 0; p + 1 < counts.size(); ++p)
    counts[p + 1] = counts[p] + (column_of(p) <= l ? 1 : 0);
  // first_at[c] = least L with counts[L] == c
  std::vector<nat> first_at(counts.back() + 1, 0);
  for (nat p = 1; p < counts.size(); ++p)
    if (counts[p] != counts[p - 1]) first_at[counts[p]] = p;

  nat floor_delta = node.restraint.length();
  for (nat row = 0;; ++row) {
    nat control = pair_code(l + 1, row);
    if (control > bound) break;
    AxiomStore forced = ctx.store;
    forced.append(Axiom{l + 1, {}, control}, bound);
    SetDescription x0 = yields_over(forced, bound, node.guess_columns,
                                    node.restraint, l, ctx.horizon());
    for (nat len0 = floor_delta; len0 < control && len0 <= bound; ++len0) {
      nat want = counts[len0];
      if (want >= first_at.size()) break;
      std::optional<nat> best_len1;
      std::optional<nat> best_input;
      for (const FunctionalRow& r0 : phi->rows) {
        if (r0.x > bound || r0.steps > control) continue;
        if (r0.sigma.length() > len0) continue;
        if (!set_extends(x0, r0.sigma)) continue;
        for (const FunctionalRow& r1 : phi->rows) {
          if (r1.x != r0.x || r1.v == r0.v) continue;
          if (r1.x > bound) continue;
          if (!set_extends(x1, r1.sigma)) continue;
          nat lo = std::max(r1.sigma.length(), floor_delta);
          nat len1 = std::max(lo, first_at[want]);
          if (len1 > bound || counts[len1] != want) continue;
          if (!best_len1 || len1 < *best_len1 ||
              (len1 == *best_len1 && r0.x < *best_input)) {
            best_len1 = len1;
            best_input = r0.x;
          }
        }
      }
      if (!best_len1) continue;
      ActivationWitness w;
      w.side0 = prefix_string(x0, len0);
      w.side1 = prefix_string(x1, *best_len1);
      w.input = *best_input;
      w.control = control;
      std::string why;
      if (!activation_conditions_hold(*phi, ctx.store, bound, node.guess_columns,
                                      node.restraint, l, w, ctx.horizon(), &why))
        throw std::logic_error("activation search produced a bad witness: " + why);
      return w;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Per-stage moves
// ---------------------------------------------------------------------------

// One execution of a diagonal node.  Before activation it searches for a
// split pair; on success it pins the witness, allocates the flag position in
// the control column and the first marker row in the base column, and keeps
// reporting outcome 0 until its next turn.  Once activated it compares the
// limit approximation against the cached split outputs.  While the
// approximation sticks to one side (an uneventful stage) the node keeps the
// current marker out of play: it promises the flag, and the control exactly
// when the approximation matches side1, both conditional on the marker being
// absent.  When the approximation switches sides (an eventful stage) the node
// enumerates the marker unconditionally, which retracts those promises, and
// moves to the next marker row.
inline nat r_step(RunContext& ctx, NodeState& node) {
  DiagonalState& d = node.diag;
  nat l = node.requirement.base_column;
  if (!d.activated) {
    std::optional<ActivationWitness> w = check_activation(ctx, node);
    if (!w) return 0;
    d.floor_before = ctx.fresh.floor();
    ctx.fresh.mention(w->input);
    ctx.fresh.mention(w->control);
    ctx.fresh.mention_function(w->side0);
    ctx.fresh.mention_function(w->side1);
    auto flag = ctx.fresh.fresh_in_column(l + 1);
    auto marker = ctx.fresh.fresh_in_column(l);
    d.activated = true;
    d.activation_stage = ctx.stage();
    d.activation_exec = node.exec_count;
    d.witness = *w;
    const TableFunctional* phi = ctx.functional_for(node.requirement.i);
    std::optional<bool> v0 = eval_functional(*phi, w->side0, w->input, w->control);
    std::optional<bool> v1 = eval_functional(*phi, w->side1, w->input, kNoBudget);
    d.val0 = *v0;
    d.val1 = *v1;
    d.flag = flag.position;
    d.marker0 = marker.row;
    d.marker_row = marker.row;
    if (ctx.record) {
      ctx.record->fresh.push_back({"flag", flag.position, node.address});
      ctx.record->fresh.push_back({"marker", marker.position, node.address});
      ActivationRecord act;
      act.exec = node.exec_count;
      act.side0 = w->side0;
      act.side1 = w->side1;
      act.input = w->input;
      act.control = w->control;
      act.flag = flag.position;
      act.marker0 = marker.row;
      act.floor_before = d.floor_before;
      ctx.record->activated = act;
    }
    return 0;
  }

  bool approx = ctx.delta2_at(node.requirement.e, d.witness.input, ctx.stage());
  nat side = (approx == d.val0) ? 0 : 1;
  bool eventful = d.last_side.has_value() && *d.last_side != side;
  if (ctx.record) {
    ctx.record->side = side;
    ctx.record->eventful = eventful;
    ctx.record->marker = d.marker_row;
  }
  nat outcome;
  if (eventful) {
    enumerate_axiom(ctx, node, Axiom{l, {}, pair_code(l, d.marker_row)});
    d.marker_row += 1;
    d.eventful_count += 1;
    outcome = 1;
  } else {
    FinitePartialFunction hold;
    hold.define(pair_code(l, d.marker_row), false);
    enumerate_axiom(ctx, node, Axiom{l + 1, hold, d.flag});
    if (approx == d.val1)
      enumerate_axiom(ctx, node, Axiom{l + 1, hold, d.witness.control});
    outcome = d.eventful_count + 2;
  }
  d.last_side = side;
  return outcome;
}

// One execution of a cover node.  It waits for the enumerable set to offer an
// element of its own column that is at least as large as its execution count
// and not constrained out by the restraint, then puts that element into the
// built set unconditionally and settles forever.
inline nat n_step(RunContext& ctx, NodeState& node) {
  CoverState& c = node.cover;
  if (c.acted) return 1;
  nat l = node.requirement.base_column;
  nat s = node.exec_count;
  for (nat y : ctx.ce_at(node.requirement.e, s)) {
    if (y < s || column_of(y) != l || node.restraint.defined(y)) continue;
    enumerate_axiom(ctx, node, Axiom{l, {}, y});
    c.acted = true;
    c.element = y;
    if (ctx.record) ctx.record->acted_element = y;
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Child guesses
// ---------------------------------------------------------------------------

// Defines the guesses of the child reached by an outcome, the first time that
// outcome is reported.  Children translate what the parent's outcome asserts
// about the final set into a column guess and a restraint extension.
inline void define_child_guesses(RunContext& ctx, NodeState& parent, nat outcome) {
  NodeAddress child = child_of(parent.address, outcome);
  if (ctx.has_node(child)) return;
  nat l = parent.requirement.base_column;
  nat child_column = assign_requirement(child.size()).base_column;

  SetDescription cols = parent.guess_columns;
  FinitePartialFunction restraint = parent.restraint;

  auto absorb_restraint = [&]() {
    for (auto [p, v] : restraint.entries())
      if (v && column_of(p) < child_column) cols.insert(p);
  };

  if (parent.requirement.kind == RequirementKind::diagonal && outcome == 0) {
    // Waiting outcome: nothing new is claimed beyond what the parent guessed.
    absorb_restraint();
  } else if (parent.requirement.kind == RequirementKind::diagonal) {
    DiagonalState& d = parent.diag;
    if (!ctx.record || !ctx.record->marker)
      throw std::logic_error("diagonal child defined without a marker on record");
    nat marker_position = pair_code(l, *ctx.record->marker);
    SetDescription x = yields_over(ctx.store, ctx.stage(), parent.guess_columns,
                                   parent.restraint, l, ctx.horizon());
    FinitePartialFunction seen =
        prefix_string(x, marker_position).restricted(ColumnBand::at_or_above, l);
    restraint = restraint.union_with(seen);
    absorb_restraint();
    if (outcome == 1) {
      // Infinitely-eventful guess: every marker eventually enters, so the
      // base column is guessed cofinite.  Rows before the first marker keep
      // whatever the restraint pinned; rows from it on are guessed in.
      ColumnDescription cofinite;
      cofinite.default_bit = true;
      for (nat row = 0; row < d.marker0; ++row) {
        nat p = pair_code(l, row);
        if (restraint.value(p) != std::optional<bool>(true))
          cofinite.exceptions.insert(row);
      }
      cols.set_column(l, cofinite);
      if (const ColumnDescription* above = x.column(l + 1)) {
        if (above->default_bit)
          throw std::logic_error("control column computed cofinite");
        for (nat row : above->exceptions) cols.insert(pair_code(l + 1, row));
      }
    }
  } else {
    // Cover parent: pin the output up to a fresh bound, and guess the whole
    // base column as it currently stands.
    nat m = ctx.fresh.fresh_number();
    if (ctx.record) ctx.record->fresh.push_back({"bound", m, child});
    SetDescription x = yields_over(ctx.store, ctx.stage(), parent.guess_columns,
                                   parent.restraint, l, ctx.horizon());
    FinitePartialFunction seen =
        prefix_string(x, m).restricted(ColumnBand::at_or_above, l);
    restraint = restraint.union_with(seen);
    absorb_restraint();
    if (const ColumnDescription* base = x.column(l)) {
      if (base->default_bit)
        throw std::logic_error("cover column computed cofinite");
      for (nat row : base->exceptions) cols.insert(pair_code(l, row));
    }
  }

  for (const auto& [col, desc] : cols.columns())
    if (col >= child_column)
      throw std::logic_error("child guess mentions a column it cannot see");
  for (auto [p, v] : restraint.entries())
    if (column_of(p) < child_column && cols.contains(p) != (v != 0))
      throw std::logic_error("child restraint contradicts the child columns"
                             " at position " +
                             std::to_string(p));

  ctx.create_node(child, cols, restraint);
  if (ctx.record) {
    GuessRecord g;
    g.node = child;
    g.guess_columns = cols;
    g.restraint = restraint;
    ctx.record->defined.push_back(g);
  }
}

}  // namespace axenum
