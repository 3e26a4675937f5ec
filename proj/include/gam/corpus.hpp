#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gam/model.hpp"
#include "gam/pddl.hpp"

// Benchmark domains and problem generators shipped with the tool.
namespace gam::corpus {

std::string blocks_domain();
std::string blocks3_problem();  // a, b, c on the table; goals on(a,b), on(b,c)
std::string stack_problem(int n);

std::string hanoi_domain();
std::string hanoi_problem(int discs);

std::string tyreworld_domain();
std::string tyreworld_problem(int tires);

std::string gripper_domain();
std::string gripper_problem(int balls);

std::string briefcase_domain();
std::string briefcase_problem();

struct Instance {
  std::string name;  // e.g. "hanoi/hanoi3"
  std::string domain;
  std::string problem;
};

PlanningProblem ground(const Instance& inst, pddl::GroundingStats* stats = nullptr);

// The instances written to the corpus directory.
std::vector<Instance> standard_instances();

// Writes <dir>/<family>/domain.pddl and <dir>/<family>/<instance>.pddl.
void write_corpus(const std::filesystem::path& dir);

}  // namespace gam::corpus
