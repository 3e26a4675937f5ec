#include "gam/model.hpp"

#include <algorithm>
#include <sstream>

namespace gam {

AtomId AtomTable::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  auto id = static_cast<AtomId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<AtomId> AtomTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

AtomId AtomTable::at(std::string_view name) const {
  auto id = find(name);
  if (!id) throw std::out_of_range("unknown atom '" + std::string(name) + "'");
  return *id;
}

std::vector<std::string> AtomTable::names_of(std::span<const AtomId> ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(name(id));
  return out;
}

namespace {

std::string join_names(const AtomTable* table, std::span<const AtomId> ids) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) os << ", ";
    if (table) {
      os << table->name(ids[i]);
    } else {
      os << '#' << ids[i];
    }
  }
  return os.str();
}

}  // namespace

ConflictingEffects::ConflictingEffects(std::string action, AtomSet atoms)
    : std::runtime_error("conflicting effects in '" + action + "' on atoms {" +
                         join_names(nullptr, atoms) + "}"),
      action_(std::move(action)),
      atoms_(std::move(atoms)) {}

Action Action::strips(std::string name, AtomSet pre, AtomSet add, AtomSet del) {
  ConditionalEffect e{sets::normalized(std::move(pre)), sets::normalized(std::move(add)),
                      sets::normalized(std::move(del))};
  if (sets::intersects(e.adds, e.dels)) {
    throw std::invalid_argument("action '" + name + "' adds and deletes the same atom");
  }
  std::vector<ConditionalEffect> effects;
  effects.push_back(std::move(e));
  return Action(std::move(name), std::move(effects));
}

Action Action::adl(std::string name, std::vector<ConditionalEffect> effects) {
  if (effects.empty()) {
    throw std::invalid_argument("action '" + name + "' has no unconditional effect slot");
  }
  for (auto& e : effects) {
    e.condition = sets::normalized(std::move(e.condition));
    e.adds = sets::normalized(std::move(e.adds));
    e.dels = sets::normalized(std::move(e.dels));
    if (sets::intersects(e.adds, e.dels)) {
      throw std::invalid_argument("effect of '" + name + "' adds and deletes the same atom");
    }
  }
  return Action(std::move(name), std::move(effects));
}

bool PlanningProblem::is_strips() const {
  return std::all_of(actions.begin(), actions.end(), [](const Action& a) { return a.is_strips(); });
}

std::optional<ActionId> PlanningProblem::find_action(std::string_view name) const {
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].name() == name) return static_cast<ActionId>(i);
  }
  return std::nullopt;
}

void PlanningProblem::check() const {
  const auto n = num_atoms();
  auto in_range = [n](const AtomSet& s) {
    return std::all_of(s.begin(), s.end(), [n](AtomId a) { return a < n; });
  };
  if (init.universe() != n) throw std::invalid_argument("initial state has the wrong universe size");
  if (!in_range(goals)) throw std::invalid_argument("goal references an unknown atom");
  for (const auto& a : actions) {
    for (const auto& e : a.effects()) {
      if (!in_range(e.condition) || !in_range(e.adds) || !in_range(e.dels)) {
        throw std::invalid_argument("action '" + a.name() + "' references an unknown atom");
      }
    }
  }
}

Plan Plan::sequential(std::span<const ActionId> actions) {
  Plan p;
  for (auto a : actions) p.steps.push_back({a});
  return p;
}

std::size_t Plan::num_actions() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.size();
  return n;
}

std::vector<ActionId> Plan::linearized() const {
  std::vector<ActionId> out;
  for (auto step : steps) {
    std::sort(step.begin(), step.end());
    out.insert(out.end(), step.begin(), step.end());
  }
  return out;
}

bool applicable(const State& s, const Action& o) { return s.contains_all(o.pre()); }

State apply_strips(const State& s, const Action& o) {
  if (!o.is_strips()) throw std::invalid_argument("apply_strips on ADL action '" + o.name() + "'");
  if (!applicable(s, o)) return s;
  State r = s;
  r.insert_all(o.add());
  r.erase_all(o.del());
  return r;
}

AtomSet fired_adds(const State& s, const Action& o) {
  if (!applicable(s, o)) return {};
  AtomSet out;
  for (const auto& e : o.effects()) {
    if (s.contains_all(e.condition)) out = sets::set_union(out, e.adds);
  }
  return out;
}

AtomSet fired_dels(const State& s, const Action& o) {
  if (!applicable(s, o)) return {};
  AtomSet out;
  for (const auto& e : o.effects()) {
    if (s.contains_all(e.condition)) out = sets::set_union(out, e.dels);
  }
  return out;
}

State apply_adl(const State& s, const Action& o) {
  if (!applicable(s, o)) return s;
  if (o.is_strips()) return apply_strips(s, o);
  auto adds = fired_adds(s, o);
  auto dels = fired_dels(s, o);
  auto clash = sets::set_intersection(adds, dels);
  if (!clash.empty()) throw ConflictingEffects(o.name(), std::move(clash));
  State r = s;
  r.erase_all(dels);
  r.insert_all(adds);
  return r;
}

State apply(const State& s, const Action& o) {
  return o.is_strips() ? apply_strips(s, o) : apply_adl(s, o);
}

State result_sequence(const State& s, std::span<const Action> actions,
                      std::span<const ActionId> sequence) {
  State r = s;
  for (auto id : sequence) r = apply(r, actions[id]);
  return r;
}

bool actions_conflict(const Action& a, const Action& b) {
  auto deletes_needed = [](const Action& x, const Action& y) {
    for (const auto& ex : x.effects()) {
      for (const auto& ey : y.effects()) {
        if (sets::intersects(ex.dels, ey.condition) || sets::intersects(ex.dels, ey.adds)) {
          return true;
        }
      }
    }
    return false;
  };
  return deletes_needed(a, b) || deletes_needed(b, a);
}

ValidationReport validate_plan(const PlanningProblem& problem, const Plan& plan) {
  return validate_plan(problem, problem.init, problem.goals, plan);
}

ValidationReport validate_plan(const PlanningProblem& problem, const State& from,
                               const AtomSet& goals, const Plan& plan) {
  ValidationReport report;
  State s = from;
  for (std::size_t t = 0; t < plan.steps.size(); ++t) {
    auto step = plan.steps[t];
    std::sort(step.begin(), step.end());
    for (std::size_t i = 0; i < step.size(); ++i) {
      for (std::size_t j = i + 1; j < step.size(); ++j) {
        if (actions_conflict(problem.actions[step[i]], problem.actions[step[j]])) {
          report.issues.push_back({IssueKind::kStepConflict, t, step[i], step[j], {}});
        }
      }
    }
    for (auto id : step) {
      const auto& o = problem.actions.at(id);
      if (!applicable(s, o)) {
        PlanIssue issue{IssueKind::kInapplicableAction, t, id, 0, {}};
        for (auto p : o.pre()) {
          if (!s.contains(p)) issue.missing.push_back(p);
        }
        report.issues.push_back(std::move(issue));
        continue;
      }
      s = apply(s, o);
    }
  }
  AtomSet missing;
  for (auto g : goals) {
    if (!s.contains(g)) missing.push_back(g);
  }
  report.goals_met = missing.empty();
  if (!missing.empty()) {
    report.issues.push_back({IssueKind::kGoalsUnmet, plan.steps.size(), 0, 0, std::move(missing)});
  }
  report.valid = report.issues.empty();
  report.final_state = std::move(s);
  return report;
}

std::string describe(const PlanningProblem& problem, const PlanIssue& issue) {
  std::ostringstream os;
  switch (issue.kind) {
    case IssueKind::kInapplicableAction:
      os << "step " << issue.step << ": action " << problem.actions[issue.action].name()
         << " is inapplicable (missing " << join_names(&problem.atoms, issue.missing) << ")";
      break;
    case IssueKind::kGoalsUnmet:
      os << "goals unmet: " << join_names(&problem.atoms, issue.missing);
      break;
    case IssueKind::kStepConflict:
      os << "step " << issue.step << ": actions " << problem.actions[issue.action].name() << " and "
         << problem.actions[issue.other].name() << " conflict";
      break;
  }
  return os.str();
}

}  // namespace gam
