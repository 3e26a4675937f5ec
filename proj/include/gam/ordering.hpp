#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gam/graphplan.hpp"
#include "gam/model.hpp"

namespace gam {

// Usable actions with per-action surviving effects. An action is in the
// view iff its effect 0 survives.
class ActionView {
 public:
  ActionView() = default;
  explicit ActionView(const PlanningProblem& problem);  // every action, every effect

  bool has_action(ActionId a) const { return a < mask_.size() && !mask_[a].empty() && mask_[a][0]; }
  bool has_effect(ActionId a, std::uint32_t i) const {
    return has_action(a) && i < mask_[a].size() && mask_[a][i];
  }
  void drop_action(ActionId a) { mask_[a].assign(mask_[a].size(), 0); }
  void drop_effect(ActionId a, std::uint32_t i) { mask_[a][i] = 0; }

  std::vector<ActionId> actions() const;
  std::vector<std::uint32_t> effects(ActionId a) const;
  std::size_t num_actions() const;

  friend bool operator==(const ActionView&, const ActionView&) = default;

 private:
  std::vector<std::vector<std::uint8_t>> mask_;
};

struct EffectRef {
  ActionId action;
  std::uint32_t effect;
};

struct FixpointResult {
  AtomSet f_da;
  AtomSet f_star;
  ActionView o_star;
  std::size_t iterations = 0;
  std::vector<AtomId> removed;  // in removal order
};

struct OrderTest {
  bool holds = false;
  bool trivial = false;  // anchor never reachable
};

enum class OrderMethod { kE, kH };

// Indexes a problem once for repeated ordering queries.
class GoalAnalysis {
 public:
  explicit GoalAnalysis(const PlanningProblem& problem);

  const PlanningProblem& problem() const { return problem_; }
  const std::vector<EffectRef>& achievers(AtomId p) const { return achievers_[p]; }
  const AtomSet& implied_deletes(ActionId a, std::uint32_t i) const { return implied_[a][i]; }
  // D(o) with respect to A; empty when o never adds A.
  AtomSet achieving_deletes(ActionId a, AtomId A) const;

  ActionView reduced_actions(const AtomSet& anchor) const;
  AtomSet f_da(const AtomSet& anchor) const;
  ActionView usable(const AtomSet& anchor, const AtomSet& f) const;
  FixpointResult fixpoint(const AtomSet& anchor) const;

  // Atoms added by some surviving effect of the view.
  Bitset added_by(const ActionView& view) const;
  bool possibly_achievable(AtomId p, const ActionView& view) const;
  bool possibly_achievable(AtomId p, const ActionView& view, const Bitset& added) const;

  // ≤_e test of B against A's false set and reduced actions.
  bool e_test(AtomId B, const AtomSet& anchor, const AtomSet& false_atoms) const;

 private:
  const PlanningProblem& problem_;
  std::vector<std::vector<EffectRef>> achievers_;
  std::vector<std::vector<AtomSet>> implied_;
};

AtomSet implied_deletes(const Action& o, std::size_t i);
AtomSet achieving_deletes(const Action& o, AtomId A);

ActionView reduced_actions(const PlanningProblem& problem, const AtomSet& anchor);
AtomSet compute_f_da(const PlanningProblem& problem, const AtomSet& anchor);
FixpointResult fixpoint_reduce(const PlanningProblem& problem, const AtomSet& anchor);
bool possibly_achievable(const PlanningProblem& problem, AtomId p, const ActionView& view);

OrderTest order_e(const PlanningProblem& problem, const PlanningGraph& graph, AtomId B, AtomId A);
bool order_h(const PlanningProblem& problem, AtomId B, AtomId A);
OrderTest order_E(const PlanningProblem& problem, const PlanningGraph& graph, const AtomSet& Bs,
                  const AtomSet& As);
bool order_H(const PlanningProblem& problem, const AtomSet& Bs, const AtomSet& As);

}  // namespace gam
