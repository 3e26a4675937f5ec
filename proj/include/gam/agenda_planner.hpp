#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gam/graphplan.hpp"
#include "gam/model.hpp"

namespace gam {

enum class BasePlanner { kGraphplan, kForward };

struct PlannerOptions {
  BasePlanner base = BasePlanner::kGraphplan;
  bool linearize_entries = false;  // split each entry into singletons
  SearchLimits limits;
};

enum class EpisodeOutcome { kSolved, kUnsolvable, kResourceLimit };

struct Episode {
  std::size_t index = 0;  // 1-based
  State init;
  AtomSet goals;  // cumulative
  Plan plan;
  EpisodeOutcome outcome = EpisodeOutcome::kUnsolvable;
  std::string limit;
  std::size_t expanded = 0;
};

struct EpisodeTrace {
  std::vector<Episode> episodes;
  Plan plan;
};

enum class RunStatus { kSolved, kEpisodeUnsolvable, kResourceLimit };

struct AgendaRun {
  RunStatus status = RunStatus::kSolved;
  std::size_t failed_episode = 0;  // 1-based, 0 when solved
  std::string limit;
  EpisodeTrace trace;
  Plan plan;
};

class InvalidPlan : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Breadth-first search with duplicate detection; shortest sequential plan.
SearchResult forward_search(const PlanningProblem& problem, const SearchLimits& limits = {});
SearchResult forward_search(const PlanningProblem& problem, const State& from, const AtomSet& goals,
                            const SearchLimits& limits = {});

// Throws InvalidPlan when some action of the plan is inapplicable.
State next_initial_state(const PlanningProblem& problem, const State& from, const Plan& plan);

AgendaRun plan_with_agenda(const PlanningProblem& problem, const std::vector<AtomSet>& entries,
                           const PlannerOptions& options = {});

std::string outcome_name(EpisodeOutcome o);
nlohmann::json plan_to_json(const PlanningProblem& problem, const Plan& plan);
std::string plan_to_text(const PlanningProblem& problem, const Plan& plan);
nlohmann::json trace_to_json(const PlanningProblem& problem, const AgendaRun& run);

}  // namespace gam
