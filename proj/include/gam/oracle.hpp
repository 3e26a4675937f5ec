#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "gam/model.hpp"
#include "gam/ordering.hpp"

namespace gam {

class LimitExceeded : public std::runtime_error {
 public:
  explicit LimitExceeded(std::size_t limit)
      : std::runtime_error("more than " + std::to_string(limit) + " reachable states"), limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

struct Transition {
  std::uint32_t to;
  ActionId action;
};

struct ReachabilityIndex {
  std::vector<State> states;  // states[0] is the initial state
  std::unordered_map<State, std::uint32_t, StateHash> ids;
  std::vector<Bitset> entry_adds;                // atoms added on some incoming transition
  std::vector<std::vector<ActionId>> entered_by;  // actions with an incoming transition
  std::vector<std::vector<Transition>> succ;      // applicable transitions, self-loops included

  std::size_t size() const { return states.size(); }
};

ReachabilityIndex enumerate_reachable(const PlanningProblem& problem, std::size_t limit = 200'000);

struct OrderingVerdict {
  bool holds = false;
  bool trivial = false;
  // Refutation: a state where A was just achieved with B false, and a plan to B.
  std::optional<std::uint32_t> witness_state;
  std::vector<ActionId> witness_plan;
};

OrderingVerdict decide_reasonable(const PlanningProblem& problem, const ReachabilityIndex& index, AtomId B,
                                  AtomId A);
OrderingVerdict decide_forced(const PlanningProblem& problem, const ReachabilityIndex& index, AtomId B,
                              AtomId A);

// States from which no goal state is reachable, ascending index order.
std::vector<std::uint32_t> find_deadlocks(const PlanningProblem& problem, const ReachabilityIndex& index);

enum class SideCondition { kVerified, kViolated, kUnverified };

struct ActionInvertibility {
  ActionId action = 0;
  std::optional<ActionId> inverse;
  bool del_within_pre = false;
  SideCondition side = SideCondition::kUnverified;
  bool never_applicable = false;  // only known with an index
  std::string note;
};

struct InvertibilityReport {
  bool certified = false;
  bool strips = true;
  std::vector<ActionInvertibility> actions;
};

// Actions never applicable in a reachable state are exempt when an index is given.
InvertibilityReport check_invertibility(const PlanningProblem& problem, const ReachabilityIndex* index = nullptr);

// Delete-relaxed reachability of p from s; view restricts the actions.
bool relaxed_achievable(const PlanningProblem& problem, const State& s, AtomId p,
                        const ActionView* view = nullptr);

// How many s_(A,¬B) states satisfy the premise behind the fixpoint test.
struct PremiseDiagnostic {
  std::size_t states = 0;
  std::size_t satisfied = 0;
};
PremiseDiagnostic fixpoint_premise(const PlanningProblem& problem, const ReachabilityIndex& index, AtomId B,
                                   AtomId A);

nlohmann::json invertibility_to_json(const PlanningProblem& problem, const InvertibilityReport& report);

}  // namespace gam
