#include "gam/agenda_planner.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace gam {

SearchResult forward_search(const PlanningProblem& problem, const SearchLimits& limits) {
  return forward_search(problem, problem.init, problem.goals, limits);
}

SearchResult forward_search(const PlanningProblem& problem, const State& from, const AtomSet& goals,
                            const SearchLimits& limits) {
  SearchResult res;
  if (from.contains_all(goals)) {
    res.status = SearchStatus::kSolved;
    return res;
  }
  struct Node {
    std::size_t parent;
    ActionId via;
  };
  std::vector<State> states{from};
  std::vector<Node> nodes{{0, 0}};
  std::unordered_map<State, std::size_t, StateHash> seen{{from, 0}};
  std::deque<std::size_t> queue{0};

  auto extract = [&](std::size_t leaf) {
    std::vector<ActionId> seq;
    for (std::size_t n = leaf; n != 0; n = nodes[n].parent) seq.push_back(nodes[n].via);
    std::reverse(seq.begin(), seq.end());
    return Plan::sequential(seq);
  };

  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    ++res.expanded;
    for (ActionId a = 0; a < problem.actions.size(); ++a) {
      const auto& o = problem.actions[a];
      if (!applicable(states[cur], o)) continue;
      State next = apply(states[cur], o);
      if (seen.count(next)) continue;
      if (states.size() >= limits.max_states) {
        res.status = SearchStatus::kResourceLimit;
        res.limit = "max_states";
        return res;
      }
      const std::size_t id = states.size();
      seen.emplace(next, id);
      nodes.push_back({cur, a});
      states.push_back(std::move(next));
      if (states.back().contains_all(goals)) {
        res.status = SearchStatus::kSolved;
        res.plan = extract(id);
        return res;
      }
      queue.push_back(id);
    }
  }
  res.status = SearchStatus::kUnsolvable;
  return res;
}

State next_initial_state(const PlanningProblem& problem, const State& from, const Plan& plan) {
  State s = from;
  for (std::size_t t = 0; t < plan.steps.size(); ++t) {
    auto step = plan.steps[t];
    std::sort(step.begin(), step.end());
    for (auto id : step) {
      if (!applicable(s, problem.actions.at(id))) {
        throw InvalidPlan("step " + std::to_string(t) + ": " + problem.actions[id].name() +
                          " is not applicable");
      }
    }
    if (step.size() == 1) {
      s = apply(s, problem.actions[step[0]]);
      continue;
    }
    AtomSet adds, dels;
    for (auto id : step) {
      const auto& o = problem.actions[id];
      if (!o.is_strips()) throw InvalidPlan("parallel step with an ADL action");
      adds = sets::set_union(adds, o.add());
      dels = sets::set_union(dels, o.del());
    }
    s.insert_all(adds);
    s.erase_all(dels);
  }
  return s;
}

AgendaRun plan_with_agenda(const PlanningProblem& problem, const std::vector<AtomSet>& entries,
                           const PlannerOptions& options) {
  if (options.base == BasePlanner::kGraphplan && !problem.is_strips()) {
    throw std::invalid_argument("the graphplan base planner needs STRIPS input; use forward search");
  }
  std::vector<AtomSet> agenda;
  for (const auto& e : entries) {
    if (!options.linearize_entries) {
      agenda.push_back(e);
      continue;
    }
    for (auto a : e) agenda.push_back({a});
  }

  AgendaRun run;
  State s = problem.init;
  AtomSet goals;
  for (std::size_t i = 0; i < agenda.size(); ++i) {
    goals = sets::set_union(goals, agenda[i]);
    Episode ep;
    ep.index = i + 1;
    ep.init = s;
    ep.goals = goals;
    SearchResult r = options.base == BasePlanner::kGraphplan ? graphplan_search(problem, s, goals, options.limits)
                                                             : forward_search(problem, s, goals, options.limits);
    ep.expanded = r.expanded;
    ep.limit = r.limit;
    switch (r.status) {
      case SearchStatus::kSolved:
        ep.outcome = EpisodeOutcome::kSolved;
        break;
      case SearchStatus::kUnsolvable:
        ep.outcome = EpisodeOutcome::kUnsolvable;
        break;
      case SearchStatus::kResourceLimit:
        ep.outcome = EpisodeOutcome::kResourceLimit;
        break;
    }
    if (ep.outcome != EpisodeOutcome::kSolved) {
      run.status = ep.outcome == EpisodeOutcome::kUnsolvable ? RunStatus::kEpisodeUnsolvable
                                                             : RunStatus::kResourceLimit;
      run.failed_episode = ep.index;
      run.limit = ep.limit;
      run.trace.episodes.push_back(std::move(ep));
      return run;
    }
    ep.plan = r.plan;
    s = next_initial_state(problem, s, r.plan);
    for (const auto& step : r.plan.steps) run.plan.steps.push_back(step);
    run.trace.episodes.push_back(std::move(ep));
  }
  run.trace.plan = run.plan;

  auto report = validate_plan(problem, run.plan);
  if (!report.valid) {
    std::string why = report.issues.empty() ? "unknown" : describe(problem, report.issues.front());
    throw InvalidPlan("agenda plan failed validation: " + why);
  }
  run.status = RunStatus::kSolved;
  return run;
}

std::string outcome_name(EpisodeOutcome o) {
  switch (o) {
    case EpisodeOutcome::kSolved:
      return "solved";
    case EpisodeOutcome::kUnsolvable:
      return "unsolvable";
    case EpisodeOutcome::kResourceLimit:
      return "resource-limit";
  }
  return "?";
}

nlohmann::json plan_to_json(const PlanningProblem& problem, const Plan& plan) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : plan.steps) {
    nlohmann::json names = nlohmann::json::array();
    auto sorted = step;
    std::sort(sorted.begin(), sorted.end());
    for (auto a : sorted) names.push_back(problem.actions[a].name());
    steps.push_back(std::move(names));
  }
  return steps;
}

std::string plan_to_text(const PlanningProblem& problem, const Plan& plan) {
  std::ostringstream os;
  for (std::size_t t = 0; t < plan.steps.size(); ++t) {
    auto sorted = plan.steps[t];
    std::sort(sorted.begin(), sorted.end());
    for (auto a : sorted) os << t << ": " << problem.actions[a].name() << '\n';
  }
  return os.str();
}

nlohmann::json trace_to_json(const PlanningProblem& problem, const AgendaRun& run) {
  using nlohmann::json;
  auto names = [&](const AtomSet& s) {
    json a = json::array();
    for (auto id : s) a.push_back(problem.atoms.name(id));
    return a;
  };
  json eps = json::array();
  for (const auto& ep : run.trace.episodes) {
    json e = {{"index", ep.index},
              {"initial_state", names(ep.init.atoms())},
              {"goals", names(ep.goals)},
              {"plan", plan_to_json(problem, ep.plan)},
              {"outcome", outcome_name(ep.outcome)},
              {"expanded", ep.expanded}};
    if (!ep.limit.empty()) e["limit"] = ep.limit;
    eps.push_back(std::move(e));
  }
  std::string status = run.status == RunStatus::kSolved            ? "solved"
                       : run.status == RunStatus::kEpisodeUnsolvable ? "episode-unsolvable"
                                                                     : "resource-limit";
  json j = {{"status", status},
            {"episodes", std::move(eps)},
            {"plan", plan_to_json(problem, run.plan)},
            {"num_actions", run.plan.num_actions()},
            {"num_steps", run.plan.steps.size()}};
  if (run.failed_episode) j["failed_episode"] = run.failed_episode;
  if (!run.limit.empty()) j["limit"] = run.limit;
  return j;
}

}  // namespace gam
