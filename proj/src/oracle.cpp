#include "gam/oracle.hpp"

#include <algorithm>
#include <deque>

namespace gam {

ReachabilityIndex enumerate_reachable(const PlanningProblem& problem, std::size_t limit) {
  ReachabilityIndex idx;
  const auto n = problem.num_atoms();
  auto add_state = [&](State s) {
    auto id = static_cast<std::uint32_t>(idx.states.size());
    if (idx.states.size() >= limit) throw LimitExceeded(limit);
    idx.ids.emplace(s, id);
    idx.states.push_back(std::move(s));
    idx.entry_adds.emplace_back(n);
    idx.entered_by.emplace_back();
    idx.succ.emplace_back();
    return id;
  };
  add_state(problem.init);
  for (std::uint32_t cur = 0; cur < idx.states.size(); ++cur) {
    for (ActionId a = 0; a < problem.actions.size(); ++a) {
      const auto& o = problem.actions[a];
      const State& s = idx.states[cur];
      if (!applicable(s, o)) continue;
      State next = apply(s, o);
      auto adds = fired_adds(idx.states[cur], o);
      std::uint32_t to;
      auto it = idx.ids.find(next);
      to = it == idx.ids.end() ? add_state(std::move(next)) : it->second;
      idx.succ[cur].push_back({to, a});
      idx.entry_adds[to].set_all(adds);
      auto& eb = idx.entered_by[to];
      if (eb.empty() || eb.back() != a) {
        if (!std::binary_search(eb.begin(), eb.end(), a)) eb.insert(std::upper_bound(eb.begin(), eb.end(), a), a);
      }
    }
  }
  return idx;
}

namespace {

OrderingVerdict decide(const PlanningProblem& problem, const ReachabilityIndex& idx, AtomId B, AtomId A,
                       bool keep_A) {
  OrderingVerdict v;
  std::vector<std::int64_t> parent(idx.size(), -2);  // -2 unseen, -1 source
  std::vector<ActionId> via(idx.size(), 0);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < idx.size(); ++s) {
    if (idx.entry_adds[s].test(A) && !idx.states[s].contains(B)) {
      parent[s] = -1;
      queue.push_back(s);
    }
  }
  if (queue.empty()) {
    v.holds = true;
    v.trivial = true;
    return v;
  }
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    if (idx.states[cur].contains(B)) {
      std::vector<ActionId> plan;
      std::int64_t n = cur;
      while (parent[static_cast<std::size_t>(n)] != -1) {
        plan.push_back(via[static_cast<std::size_t>(n)]);
        n = parent[static_cast<std::size_t>(n)];
      }
      std::reverse(plan.begin(), plan.end());
      v.holds = false;
      v.witness_state = static_cast<std::uint32_t>(n);
      v.witness_plan = std::move(plan);
      return v;
    }
    for (const auto& t : idx.succ[cur]) {
      if (parent[t.to] != -2) continue;
      if (keep_A && sets::contains(fired_dels(idx.states[cur], problem.actions[t.action]), A)) continue;
      parent[t.to] = cur;
      via[t.to] = t.action;
      queue.push_back(t.to);
    }
  }
  v.holds = true;
  return v;
}

}  // namespace

OrderingVerdict decide_reasonable(const PlanningProblem& problem, const ReachabilityIndex& index, AtomId B,
                                  AtomId A) {
  return decide(problem, index, B, A, true);
}

OrderingVerdict decide_forced(const PlanningProblem& problem, const ReachabilityIndex& index, AtomId B,
                              AtomId A) {
  return decide(problem, index, B, A, false);
}

std::vector<std::uint32_t> find_deadlocks(const PlanningProblem& problem, const ReachabilityIndex& idx) {
  std::vector<std::vector<std::uint32_t>> pred(idx.size());
  for (std::uint32_t s = 0; s < idx.size(); ++s) {
    for (const auto& t : idx.succ[s]) pred[t.to].push_back(s);
  }
  std::vector<std::uint8_t> alive(idx.size(), 0);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < idx.size(); ++s) {
    if (idx.states[s].contains_all(problem.goals)) {
      alive[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (auto p : pred[cur]) {
      if (!alive[p]) {
        alive[p] = 1;
        queue.push_back(p);
      }
    }
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < idx.size(); ++s) {
    if (!alive[s]) out.push_back(s);
  }
  return out;
}

InvertibilityReport check_invertibility(const PlanningProblem& problem, const ReachabilityIndex* index) {
  InvertibilityReport rep;
  rep.strips = problem.is_strips();
  if (!rep.strips) return rep;
  bool all = true;
  for (ActionId a = 0; a < problem.actions.size(); ++a) {
    const auto& o = problem.actions[a];
    ActionInvertibility r;
    r.action = a;
    r.del_within_pre = sets::is_subset(o.del(), o.pre());
    const AtomSet allowed = sets::set_difference(sets::set_union(o.pre(), o.add()), o.del());
    for (ActionId b = 0; b < problem.actions.size(); ++b) {
      const auto& inv = problem.actions[b];
      if (inv.add() == o.del() && inv.del() == o.add() && sets::is_subset(inv.pre(), allowed)) {
        r.inverse = b;
        break;
      }
    }
    if (index) {
      bool applied = false;
      bool ok = true;
      for (const auto& s : index->states) {
        if (!s.contains_all(o.pre())) continue;
        applied = true;
        if (s.contains_any(o.add())) {
          ok = false;
          break;
        }
      }
      r.side = ok ? SideCondition::kVerified : SideCondition::kViolated;
      r.never_applicable = !applied;
    }
    if (r.never_applicable) {
      r.note = "never applicable in a reachable state";
    } else if (!r.inverse && r.del_within_pre) {
      r.note = o.del().empty() ? "no inverse action" : "no inverse action; deletes only its own precondition";
    } else if (!r.inverse) {
      r.note = "no inverse action";
    } else if (!r.del_within_pre) {
      r.note = "deletes atoms outside its precondition";
    }
    bool fine = r.never_applicable ||
                (r.inverse && r.del_within_pre && r.side == SideCondition::kVerified);
    all = all && fine;
    rep.actions.push_back(std::move(r));
  }
  rep.certified = all;
  return rep;
}

bool relaxed_achievable(const PlanningProblem& problem, const State& s, AtomId p, const ActionView* view) {
  if (s.contains(p)) return true;
  Bitset reached = s.bits();
  bool changed = true;
  while (changed) {
    changed = false;
    for (ActionId a = 0; a < problem.actions.size(); ++a) {
      if (view && !view->has_action(a)) continue;
      const auto& o = problem.actions[a];
      if (!reached.all_of(o.pre())) continue;
      for (std::uint32_t i = 0; i < o.num_effects(); ++i) {
        if (view && !view->has_effect(a, i)) continue;
        const auto& e = o.effect(i);
        if (!reached.all_of(e.condition)) continue;
        for (auto q : e.adds) {
          if (!reached.test(q)) {
            reached.set(q);
            changed = true;
          }
        }
      }
    }
    if (reached.test(p)) return true;
  }
  return reached.test(p);
}

PremiseDiagnostic fixpoint_premise(const PlanningProblem& problem, const ReachabilityIndex& idx, AtomId B,
                                   AtomId A) {
  GoalAnalysis ga(problem);
  const AtomSet anchor{A};
  auto facts = sets::set_union(ga.f_da(anchor), AtomSet{B});
  auto o_a = ga.reduced_actions(anchor);
  PremiseDiagnostic d;
  for (std::uint32_t s = 0; s < idx.size(); ++s) {
    if (!idx.entry_adds[s].test(A) || idx.states[s].contains(B)) continue;
    ++d.states;
    bool ok = true;
    for (auto f : facts) {
      for (const auto& ref : ga.achievers(f)) {
        if (!o_a.has_effect(ref.action, ref.effect)) continue;
        const auto& o = problem.actions[ref.action];
        if (idx.states[s].contains_any(o.pre()) || idx.states[s].contains_any(o.effect(ref.effect).condition)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    d.satisfied += ok ? 1 : 0;
  }
  return d;
}

nlohmann::json invertibility_to_json(const PlanningProblem& problem, const InvertibilityReport& rep) {
  using nlohmann::json;
  json acts = json::array();
  for (const auto& r : rep.actions) {
    json a = {{"action", problem.actions[r.action].name()},
              {"inverse", r.inverse ? json(problem.actions[*r.inverse].name()) : json(nullptr)},
              {"del_within_pre", r.del_within_pre},
              {"side_condition", r.side == SideCondition::kVerified   ? "verified"
                                 : r.side == SideCondition::kViolated ? "violated"
                                                                      : "unverified"}};
    if (r.never_applicable) a["never_applicable"] = true;
    if (!r.note.empty()) a["note"] = r.note;
    acts.push_back(std::move(a));
  }
  return {{"certified", rep.certified}, {"strips", rep.strips}, {"actions", std::move(acts)}};
}

}  // namespace gam
