#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gam/model.hpp"

namespace gam {

// Ground problem files carry action-level examples with no PDDL encoding.
// See docs/formats.md for the schema.
class GroundFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PlanningProblem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const PlanningProblem& problem);
PlanningProblem load_ground_problem(const std::string& path);

}  // namespace gam
