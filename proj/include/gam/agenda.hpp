#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gam/graphplan.hpp"
#include "gam/model.hpp"
#include "gam/ordering.hpp"

namespace gam {

using Edge = std::pair<AtomId, AtomId>;

// Directed graph over goal atoms; edge (A, B) means A is ordered before B.
class GoalGraph {
 public:
  GoalGraph() = default;
  explicit GoalGraph(AtomSet vertices);

  const AtomSet& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  void add_edge(AtomId a, AtomId b);
  bool has_edge(AtomId a, AtomId b) const;
  std::vector<Edge> edges() const;  // ascending (a, b)
  std::size_t in_degree(AtomId a) const;
  std::size_t out_degree(AtomId a) const;

  // Index-level access in vertex order.
  bool adj(std::size_t i, std::size_t j) const { return adj_[i][j] != 0; }
  void set_adj(std::size_t i, std::size_t j) { adj_[i][j] = 1; }

  friend bool operator==(const GoalGraph&, const GoalGraph&) = default;

 private:
  std::size_t index(AtomId a) const;

  AtomSet vertices_;
  std::vector<std::vector<std::uint8_t>> adj_;
};

// Warshall closure without self-loops.
GoalGraph transitive_closure(const GoalGraph& g);

struct DegreePartition {
  std::vector<AtomSet> entries;
  std::vector<long> degrees;  // one per entry
  AtomSet gsep;
};

DegreePartition degree_partition(const GoalGraph& closure);

// rel[i][j]: goals[i] is ordered before goals[j].
struct RelationMatrix {
  AtomSet goals;
  std::vector<std::vector<std::uint8_t>> rel;
  std::vector<std::vector<std::uint8_t>> trivial;

  friend bool operator==(const RelationMatrix&, const RelationMatrix&) = default;
};

// Data-parallel over anchors (OpenMP). `graph` is required for method e.
RelationMatrix compute_relations(const PlanningProblem& problem, const AtomSet& goals, OrderMethod method,
                                 const PlanningGraph* graph = nullptr);
// One per-pair ordering call at a time; kept as the reference.
RelationMatrix compute_relations_serial(const PlanningProblem& problem, const AtomSet& goals,
                                        OrderMethod method, const PlanningGraph* graph = nullptr);

GoalGraph build_goal_graph(const RelationMatrix& relations);
GoalGraph build_goal_graph(const PlanningProblem& problem, OrderMethod method);

struct GsepPlacement {
  std::string rule = "none";  // none | ordered | default-last | all-gsep
  std::vector<std::pair<std::size_t, std::size_t>> set_edges;  // over entries, gsep last
};

struct Agenda {
  std::vector<AtomSet> entries;
  OrderMethod method = OrderMethod::kH;
  OrderMethod set_method = OrderMethod::kH;
  std::vector<Edge> edges;
  std::vector<Edge> trivial_edges;
  AtomSet gsep;
  GsepPlacement placement;
};

Agenda place_gsep(const PlanningProblem& problem, const std::vector<AtomSet>& entries, const AtomSet& gsep,
                  OrderMethod set_method, const PlanningGraph* graph = nullptr);

struct AgendaOptions {
  std::optional<OrderMethod> set_method;  // defaults to the atomic method
  bool parallel = true;
};

Agenda compute_agenda(const PlanningProblem& problem, OrderMethod method, const AgendaOptions& options = {});

std::string method_name(OrderMethod m);
OrderMethod parse_method(const std::string& s);  // e|h, case-insensitive for E|H
nlohmann::json agenda_to_json(const PlanningProblem& problem, const Agenda& agenda);

}  // namespace gam
