#include "gam/ordering.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace gam {

ActionView::ActionView(const PlanningProblem& problem) {
  mask_.reserve(problem.actions.size());
  for (const auto& a : problem.actions) mask_.emplace_back(a.num_effects(), 1);
}

std::vector<ActionId> ActionView::actions() const {
  std::vector<ActionId> out;
  for (ActionId a = 0; a < mask_.size(); ++a) {
    if (has_action(a)) out.push_back(a);
  }
  return out;
}

std::vector<std::uint32_t> ActionView::effects(ActionId a) const {
  std::vector<std::uint32_t> out;
  if (!has_action(a)) return out;
  for (std::uint32_t i = 0; i < mask_[a].size(); ++i) {
    if (mask_[a][i]) out.push_back(i);
  }
  return out;
}

std::size_t ActionView::num_actions() const {
  std::size_t n = 0;
  for (ActionId a = 0; a < mask_.size(); ++a) n += has_action(a) ? 1 : 0;
  return n;
}

AtomSet implied_deletes(const Action& o, std::size_t i) {
  if (i >= o.num_effects()) throw std::out_of_range("effect index out of range");
  AtomSet d = o.effect(0).dels;
  if (i == 0) return d;
  const auto& pre_i = o.effect(i).condition;
  for (std::size_t j = 1; j < o.num_effects(); ++j) {
    if (sets::is_subset(o.effect(j).condition, pre_i)) d = sets::set_union(d, o.effect(j).dels);
  }
  return d;
}

AtomSet achieving_deletes(const Action& o, AtomId A) {
  std::optional<AtomSet> acc;
  for (std::size_t i = 0; i < o.num_effects(); ++i) {
    if (!sets::contains(o.effect(i).adds, A)) continue;
    auto d = implied_deletes(o, i);
    acc = acc ? sets::set_intersection(*acc, d) : std::move(d);
  }
  return acc.value_or(AtomSet{});
}

GoalAnalysis::GoalAnalysis(const PlanningProblem& problem) : problem_(problem) {
  achievers_.resize(problem.num_atoms());
  implied_.resize(problem.actions.size());
  for (ActionId a = 0; a < problem.actions.size(); ++a) {
    const auto& o = problem.actions[a];
    for (std::uint32_t i = 0; i < o.num_effects(); ++i) {
      implied_[a].push_back(gam::implied_deletes(o, i));
      for (auto p : o.effect(i).adds) achievers_[p].push_back({a, i});
    }
  }
}

AtomSet GoalAnalysis::achieving_deletes(ActionId a, AtomId A) const {
  std::optional<AtomSet> acc;
  const auto& o = problem_.actions[a];
  for (std::uint32_t i = 0; i < o.num_effects(); ++i) {
    if (!sets::contains(o.effect(i).adds, A)) continue;
    acc = acc ? sets::set_intersection(*acc, implied_[a][i]) : implied_[a][i];
  }
  return acc.value_or(AtomSet{});
}

ActionView GoalAnalysis::reduced_actions(const AtomSet& anchor) const {
  ActionView view(problem_);
  for (ActionId a = 0; a < problem_.actions.size(); ++a) {
    if (sets::intersects(implied_[a][0], anchor)) {
      view.drop_action(a);
      continue;
    }
    for (std::uint32_t k = 1; k < implied_[a].size(); ++k) {
      if (sets::intersects(implied_[a][k], anchor)) view.drop_effect(a, k);
    }
  }
  return view;
}

AtomSet GoalAnalysis::f_da(const AtomSet& anchor) const {
  AtomSet out;
  for (auto A : anchor) {
    std::optional<AtomSet> acc;
    ActionId last = static_cast<ActionId>(-1);
    for (const auto& ref : achievers_[A]) {
      if (ref.action == last) continue;
      last = ref.action;
      auto d = achieving_deletes(ref.action, A);
      acc = acc ? sets::set_intersection(*acc, d) : std::move(d);
      if (acc->empty()) break;
    }
    if (acc) out = sets::set_union(out, *acc);
  }
  return sets::set_difference(out, anchor);
}

ActionView GoalAnalysis::usable(const AtomSet& anchor, const AtomSet& f) const {
  ActionView view = reduced_actions(anchor);
  for (ActionId a = 0; a < problem_.actions.size(); ++a) {
    if (!view.has_action(a)) continue;
    const auto& o = problem_.actions[a];
    if (sets::intersects(o.pre(), f)) {
      view.drop_action(a);
      continue;
    }
    for (std::uint32_t k = 1; k < o.num_effects(); ++k) {
      if (sets::intersects(o.effect(k).condition, f)) view.drop_effect(a, k);
    }
  }
  return view;
}

Bitset GoalAnalysis::added_by(const ActionView& view) const {
  Bitset added(problem_.num_atoms());
  for (ActionId a = 0; a < problem_.actions.size(); ++a) {
    if (!view.has_action(a)) continue;
    const auto& o = problem_.actions[a];
    for (std::uint32_t i = 0; i < o.num_effects(); ++i) {
      if (view.has_effect(a, i)) added.set_all(o.effect(i).adds);
    }
  }
  return added;
}

bool GoalAnalysis::possibly_achievable(AtomId p, const ActionView& view) const {
  return possibly_achievable(p, view, added_by(view));
}

bool GoalAnalysis::possibly_achievable(AtomId p, const ActionView& view, const Bitset& added) const {
  for (const auto& ref : achievers_[p]) {
    if (!view.has_effect(ref.action, ref.effect)) continue;
    const auto& o = problem_.actions[ref.action];
    if (added.all_of(o.pre()) && added.all_of(o.effect(ref.effect).condition)) return true;
  }
  return false;
}

FixpointResult GoalAnalysis::fixpoint(const AtomSet& anchor) const {
  FixpointResult r;
  r.f_da = f_da(anchor);
  r.f_star = r.f_da;
  r.o_star = usable(anchor, r.f_star);
  for (;;) {
    ++r.iterations;
    bool reached = true;
    const AtomSet snapshot = r.f_star;
    for (auto f : snapshot) {
      if (possibly_achievable(f, r.o_star)) {
        r.f_star.erase(std::find(r.f_star.begin(), r.f_star.end(), f));
        r.removed.push_back(f);
        r.o_star = usable(anchor, r.f_star);
        reached = false;
      }
    }
    if (reached) break;
  }
  return r;
}

bool GoalAnalysis::e_test(AtomId B, const AtomSet& anchor, const AtomSet& false_atoms) const {
  for (const auto& ref : achievers_[B]) {
    if (sets::intersects(implied_[ref.action][ref.effect], anchor)) continue;
    const auto& o = problem_.actions[ref.action];
    if (sets::intersects(o.pre(), false_atoms)) continue;
    if (sets::intersects(o.effect(ref.effect).condition, false_atoms)) continue;
    return false;
  }
  return true;
}

ActionView reduced_actions(const PlanningProblem& problem, const AtomSet& anchor) {
  return GoalAnalysis(problem).reduced_actions(anchor);
}

AtomSet compute_f_da(const PlanningProblem& problem, const AtomSet& anchor) {
  return GoalAnalysis(problem).f_da(anchor);
}

FixpointResult fixpoint_reduce(const PlanningProblem& problem, const AtomSet& anchor) {
  return GoalAnalysis(problem).fixpoint(anchor);
}

bool possibly_achievable(const PlanningProblem& problem, AtomId p, const ActionView& view) {
  return GoalAnalysis(problem).possibly_achievable(p, view);
}

OrderTest order_E(const PlanningProblem& problem, const PlanningGraph& graph, const AtomSet& Bs,
                  const AtomSet& As) {
  if (Bs.empty() || As.empty()) throw std::invalid_argument("set orderings need non-empty sets");
  FalseSet f;
  try {
    f = false_set(graph, As);
  } catch (const AnchorUnreachable&) {
    return {true, true};
  }
  GoalAnalysis ga(problem);
  for (auto b : Bs) {
    if (ga.e_test(b, As, f.atoms)) return {true, false};
  }
  return {false, false};
}

OrderTest order_e(const PlanningProblem& problem, const PlanningGraph& graph, AtomId B, AtomId A) {
  if (A == B) throw std::invalid_argument("atomic orderings need distinct goals");
  return order_E(problem, graph, AtomSet{B}, AtomSet{A});
}

bool order_H(const PlanningProblem& problem, const AtomSet& Bs, const AtomSet& As) {
  if (Bs.empty() || As.empty()) throw std::invalid_argument("set orderings need non-empty sets");
  GoalAnalysis ga(problem);
  auto fp = ga.fixpoint(As);
  auto added = ga.added_by(fp.o_star);
  return std::any_of(Bs.begin(), Bs.end(),
                     [&](AtomId b) { return !ga.possibly_achievable(b, fp.o_star, added); });
}

bool order_h(const PlanningProblem& problem, AtomId B, AtomId A) {
  if (A == B) throw std::invalid_argument("atomic orderings need distinct goals");
  return order_H(problem, AtomSet{B}, AtomSet{A});
}

}  // namespace gam
