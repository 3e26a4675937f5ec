#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gam/atom_set.hpp"

namespace gam {

// Interning table for ground atoms. Ids are dense and assigned in
// first-encounter order.
class AtomTable {
 public:
  AtomId intern(std::string_view name);
  std::optional<AtomId> find(std::string_view name) const;
  AtomId at(std::string_view name) const;  // throws std::out_of_range
  const std::string& name(AtomId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  std::vector<std::string> names_of(std::span<const AtomId> ids) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, AtomId> ids_;
};

// Complete (closed-world) state: an atom is true iff its bit is set.
class State {
 public:
  State() = default;
  explicit State(std::size_t num_atoms) : bits_(num_atoms) {}
  State(std::size_t num_atoms, std::span<const AtomId> atoms) : bits_(num_atoms) {
    bits_.set_all(atoms);
  }

  std::size_t universe() const { return bits_.size(); }
  bool contains(AtomId a) const { return bits_.test(a); }
  bool contains_all(std::span<const AtomId> atoms) const { return bits_.all_of(atoms); }
  bool contains_any(std::span<const AtomId> atoms) const { return bits_.any_of(atoms); }
  void insert(AtomId a) { bits_.set(a); }
  void erase(AtomId a) { bits_.reset(a); }
  void insert_all(std::span<const AtomId> atoms) { bits_.set_all(atoms); }
  void erase_all(std::span<const AtomId> atoms) { bits_.reset_all(atoms); }
  std::size_t count() const { return bits_.count(); }
  AtomSet atoms() const { return bits_.to_set(); }
  const Bitset& bits() const { return bits_; }
  std::size_t hash() const { return bits_.hash(); }

  friend bool operator==(const State&, const State&) = default;

 private:
  Bitset bits_;
};

struct StateHash {
  std::size_t operator()(const State& s) const { return s.hash(); }
};

// pre_i -> eff_i^+, eff_i^-. Index 0 of an action holds the unconditional
// part, whose condition is the action precondition.
struct ConditionalEffect {
  AtomSet condition;
  AtomSet adds;
  AtomSet dels;

  friend bool operator==(const ConditionalEffect&, const ConditionalEffect&) = default;
};

class ConflictingEffects : public std::runtime_error {
 public:
  ConflictingEffects(std::string action, AtomSet atoms);
  const std::string& action() const { return action_; }
  const AtomSet& atoms() const { return atoms_; }

 private:
  std::string action_;
  AtomSet atoms_;
};

// A ground action. A STRIPS action is the single-effect case
// pre -> ADD add DEL del; an ADL action carries further conditional effects.
class Action {
 public:
  static Action strips(std::string name, AtomSet pre, AtomSet add, AtomSet del);
  static Action adl(std::string name, std::vector<ConditionalEffect> effects);

  const std::string& name() const { return name_; }
  const std::vector<ConditionalEffect>& effects() const { return effects_; }
  const ConditionalEffect& effect(std::size_t i) const { return effects_.at(i); }
  std::size_t num_effects() const { return effects_.size(); }
  bool is_strips() const { return effects_.size() == 1; }

  const AtomSet& pre() const { return effects_.front().condition; }
  const AtomSet& add() const { return effects_.front().adds; }
  const AtomSet& del() const { return effects_.front().dels; }

  friend bool operator==(const Action&, const Action&) = default;

 private:
  Action(std::string name, std::vector<ConditionalEffect> effects)
      : name_(std::move(name)), effects_(std::move(effects)) {}

  std::string name_;
  std::vector<ConditionalEffect> effects_;
};

struct PlanningProblem {
  AtomTable atoms;
  std::vector<Action> actions;
  State init;
  AtomSet goals;

  std::size_t num_atoms() const { return atoms.size(); }
  bool is_strips() const;
  std::optional<ActionId> find_action(std::string_view name) const;
  // Checks the referential invariants; throws std::invalid_argument.
  void check() const;
};

// Sequence of steps; each step is a set of action ids (ascending). Sequential
// plans use singleton steps.
struct Plan {
  std::vector<std::vector<ActionId>> steps;

  static Plan sequential(std::span<const ActionId> actions);
  std::size_t num_actions() const;
  std::vector<ActionId> linearized() const;
  bool empty() const { return steps.empty(); }
  friend bool operator==(const Plan&, const Plan&) = default;
};

// Identity when the precondition is unmet.
State apply_strips(const State& s, const Action& o);
// Fires every effect whose condition holds in s, simultaneously.
State apply_adl(const State& s, const Action& o);
State apply(const State& s, const Action& o);
bool applicable(const State& s, const Action& o);

State result_sequence(const State& s, std::span<const Action> actions,
                      std::span<const ActionId> sequence);

// Atoms added by firing o in s (empty if inapplicable).
AtomSet fired_adds(const State& s, const Action& o);
AtomSet fired_dels(const State& s, const Action& o);

// Two actions conflict when one deletes a precondition or add of the other.
bool actions_conflict(const Action& a, const Action& b);

enum class IssueKind { kInapplicableAction, kGoalsUnmet, kStepConflict };

struct PlanIssue {
  IssueKind kind;
  std::size_t step = 0;
  ActionId action = 0;
  ActionId other = 0;
  AtomSet missing;
};

struct ValidationReport {
  bool valid = false;
  bool goals_met = false;
  std::vector<PlanIssue> issues;
  State final_state;
};

ValidationReport validate_plan(const PlanningProblem& problem, const Plan& plan);
ValidationReport validate_plan(const PlanningProblem& problem, const State& from,
                               const AtomSet& goals, const Plan& plan);

std::string describe(const PlanningProblem& problem, const PlanIssue& issue);

}  // namespace gam
