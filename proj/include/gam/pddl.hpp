#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gam/model.hpp"

// PDDL frontend for the :strips / :typing / :negative-preconditions /
// :conditional-effects subset. See docs/pddl-subset.md for the grammar.
namespace gam::pddl {

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

class PddlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public PddlError {
 public:
  SyntaxError(SourceLocation where, std::string expected);
  SourceLocation location() const { return where_; }
  const std::string& expected() const { return expected_; }

 private:
  SourceLocation where_;
  std::string expected_;
};

class UnsupportedFeature : public PddlError {
 public:
  UnsupportedFeature(SourceLocation where, std::string construct);
  const std::string& construct() const { return construct_; }

 private:
  std::string construct_;
};

class GroundingError : public PddlError {
 public:
  enum class Kind { kTypeMismatch, kArityMismatch, kUnknownSymbol };
  GroundingError(Kind kind, std::string message);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct TypedName {
  std::string name;
  std::string type = "object";
  friend bool operator==(const TypedName&, const TypedName&) = default;
};

// Arguments starting with '?' are variables, everything else names an object.
struct Literal {
  std::string predicate;
  std::vector<std::string> args;
  bool negated = false;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct WhenEffect {
  std::vector<Literal> condition;
  std::vector<Literal> effects;
  friend bool operator==(const WhenEffect&, const WhenEffect&) = default;
};

struct Operator {
  std::string name;
  std::vector<TypedName> parameters;
  std::vector<Literal> precondition;
  std::vector<Literal> effects;
  std::vector<WhenEffect> conditional;
  friend bool operator==(const Operator&, const Operator&) = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> parameters;
  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

struct DomainFile {
  std::string name;
  std::vector<std::string> requirements;
  std::vector<TypedName> types;  // name with its parent type
  std::vector<TypedName> constants;
  std::vector<PredicateDecl> predicates;
  std::vector<Operator> operators;

  bool adl_mode() const;
  friend bool operator==(const DomainFile&, const DomainFile&) = default;
};

struct ProblemFile {
  std::string name;
  std::string domain;
  std::vector<TypedName> objects;
  std::vector<Literal> init;
  std::vector<Literal> goal;
  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

DomainFile parse_domain(std::string_view text);
ProblemFile parse_problem(std::string_view text);
std::pair<DomainFile, ProblemFile> parse(std::string_view domain_text,
                                         std::string_view problem_text);

std::string to_pddl(const DomainFile& domain);
std::string to_pddl(const ProblemFile& problem);

struct GroundingStats {
  std::size_t candidate_instances = 0;  // type-consistent tuples before pruning
  std::size_t pruned_static = 0;
};

PlanningProblem ground(const DomainFile& domain, const ProblemFile& problem,
                       GroundingStats* stats = nullptr);

// Convenience: read both files from disk, parse and ground.
PlanningProblem load(const std::string& domain_path, const std::string& problem_path,
                     GroundingStats* stats = nullptr);

}  // namespace gam::pddl
