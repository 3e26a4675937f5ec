#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "gam/corpus.hpp"
#include "gam/ground_json.hpp"
#include "gam/model.hpp"

namespace fx {

inline gam::PlanningProblem ground_file(const std::string& name) {
  return gam::load_ground_problem(std::string(GAM_CORPUS_DIR) + "/ground/" + name + ".json");
}

inline gam::PlanningProblem pddl(const std::string& domain, const std::string& problem) {
  return gam::corpus::ground({"", domain, problem});
}

inline gam::PlanningProblem blocks3() { return pddl(gam::corpus::blocks_domain(), gam::corpus::blocks3_problem()); }

inline gam::AtomId atom(const gam::PlanningProblem& p, const std::string& name) { return p.atoms.at(name); }

inline gam::AtomSet atoms(const gam::PlanningProblem& p, std::initializer_list<const char*> names) {
  gam::AtomSet out;
  for (const char* n : names) out.push_back(p.atoms.at(n));
  return gam::sets::normalized(out);
}

inline gam::ActionId action(const gam::PlanningProblem& p, const std::string& name) {
  return p.find_action(name).value();
}

inline gam::Plan seq(const std::vector<gam::ActionId>& actions) { return gam::Plan::sequential(actions); }

inline gam::State state(const gam::PlanningProblem& p, std::initializer_list<const char*> names) {
  return gam::State(p.num_atoms(), atoms(p, names));
}

}  // namespace fx
