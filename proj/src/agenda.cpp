#include "gam/agenda.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gam {

GoalGraph::GoalGraph(AtomSet vertices) : vertices_(sets::normalized(std::move(vertices))) {
  adj_.assign(vertices_.size(), std::vector<std::uint8_t>(vertices_.size(), 0));
}

std::size_t GoalGraph::index(AtomId a) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), a);
  if (it == vertices_.end() || *it != a) throw std::out_of_range("atom is not a goal graph vertex");
  return static_cast<std::size_t>(it - vertices_.begin());
}

void GoalGraph::add_edge(AtomId a, AtomId b) {
  if (a == b) throw std::invalid_argument("goal graph has no self-loops");
  adj_[index(a)][index(b)] = 1;
}

bool GoalGraph::has_edge(AtomId a, AtomId b) const { return adj_[index(a)][index(b)] != 0; }

std::vector<Edge> GoalGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (adj_[i][j]) out.emplace_back(vertices_[i], vertices_[j]);
    }
  }
  return out;
}

std::size_t GoalGraph::in_degree(AtomId a) const {
  auto j = index(a);
  std::size_t n = 0;
  for (std::size_t i = 0; i < size(); ++i) n += (i != j && adj_[i][j]) ? 1 : 0;
  return n;
}

std::size_t GoalGraph::out_degree(AtomId a) const {
  auto i = index(a);
  std::size_t n = 0;
  for (std::size_t j = 0; j < size(); ++j) n += (i != j && adj_[i][j]) ? 1 : 0;
  return n;
}

GoalGraph transitive_closure(const GoalGraph& g) {
  GoalGraph c = g;
  const auto n = g.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!c.adj(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (c.adj(k, j) && i != j) c.set_adj(i, j);
      }
    }
  }
  return c;
}

DegreePartition degree_partition(const GoalGraph& closure) {
  DegreePartition out;
  std::map<long, AtomSet> groups;
  for (auto v : closure.vertices()) {
    auto in = closure.in_degree(v);
    auto outd = closure.out_degree(v);
    if (in == 0 && outd == 0) {
      out.gsep.push_back(v);
      continue;
    }
    groups[static_cast<long>(in) - static_cast<long>(outd)].push_back(v);
  }
  for (auto& [d, set] : groups) {
    out.degrees.push_back(d);
    out.entries.push_back(std::move(set));
  }
  return out;
}

// ---------------------------------------------------------------- relations

namespace {

RelationMatrix empty_matrix(const AtomSet& goals) {
  RelationMatrix m;
  m.goals = goals;
  m.rel.assign(goals.size(), std::vector<std::uint8_t>(goals.size(), 0));
  m.trivial = m.rel;
  return m;
}

void need_graph(OrderMethod method, const PlanningGraph* graph) {
  if (method == OrderMethod::kE && !graph) throw std::invalid_argument("method e needs a planning graph");
}

}  // namespace

RelationMatrix compute_relations(const PlanningProblem& problem, const AtomSet& goals, OrderMethod method,
                                 const PlanningGraph* graph) {
  need_graph(method, graph);
  RelationMatrix m = empty_matrix(goals);
  const GoalAnalysis ga(problem);
  const auto n = static_cast<long>(goals.size());

#pragma omp parallel for schedule(dynamic)
  for (long jj = 0; jj < n; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const AtomSet anchor{goals[j]};
    if (method == OrderMethod::kH) {
      auto fp = ga.fixpoint(anchor);
      auto added = ga.added_by(fp.o_star);
      for (std::size_t i = 0; i < goals.size(); ++i) {
        if (i != j) m.rel[i][j] = ga.possibly_achievable(goals[i], fp.o_star, added) ? 0 : 1;
      }
    } else {
      bool unreachable = false;
      FalseSet f;
      try {
        f = false_set(*graph, anchor);
      } catch (const AnchorUnreachable&) {
        unreachable = true;
      }
      for (std::size_t i = 0; i < goals.size(); ++i) {
        if (i == j) continue;
        if (unreachable) {
          m.rel[i][j] = 1;
          m.trivial[i][j] = 1;
        } else {
          m.rel[i][j] = ga.e_test(goals[i], anchor, f.atoms) ? 1 : 0;
        }
      }
    }
  }
  return m;
}

RelationMatrix compute_relations_serial(const PlanningProblem& problem, const AtomSet& goals,
                                        OrderMethod method, const PlanningGraph* graph) {
  need_graph(method, graph);
  RelationMatrix m = empty_matrix(goals);
  for (std::size_t i = 0; i < goals.size(); ++i) {
    for (std::size_t j = 0; j < goals.size(); ++j) {
      if (i == j) continue;
      if (method == OrderMethod::kH) {
        m.rel[i][j] = order_h(problem, goals[i], goals[j]) ? 1 : 0;
      } else {
        auto t = order_e(problem, *graph, goals[i], goals[j]);
        m.rel[i][j] = t.holds ? 1 : 0;
        m.trivial[i][j] = t.trivial ? 1 : 0;
      }
    }
  }
  return m;
}

GoalGraph build_goal_graph(const RelationMatrix& r) {
  GoalGraph g(r.goals);
  for (std::size_t i = 0; i < r.goals.size(); ++i) {
    for (std::size_t j = 0; j < r.goals.size(); ++j) {
      if (i != j && r.rel[i][j]) g.set_adj(i, j);
    }
  }
  return g;
}

GoalGraph build_goal_graph(const PlanningProblem& problem, OrderMethod method) {
  std::optional<PlanningGraph> graph;
  if (method == OrderMethod::kE) graph.emplace(problem, GraphOptions{false});
  return build_goal_graph(compute_relations(problem, problem.goals, method, graph ? &*graph : nullptr));
}

// ---------------------------------------------------------------- agenda

namespace {

bool set_order(const PlanningProblem& problem, const AtomSet& before, const AtomSet& after, OrderMethod m,
               const PlanningGraph* graph) {
  if (m == OrderMethod::kH) return order_H(problem, before, after);
  return order_E(problem, *graph, before, after).holds;
}

AtomSet merge(const AtomSet& a, const AtomSet& b) { return sets::set_union(a, b); }

}  // namespace

Agenda place_gsep(const PlanningProblem& problem, const std::vector<AtomSet>& entries, const AtomSet& gsep,
                  OrderMethod set_method, const PlanningGraph* graph) {
  Agenda ag;
  ag.set_method = set_method;
  ag.gsep = gsep;
  ag.entries = entries;
  if (gsep.empty()) return ag;
  if (entries.empty()) {
    ag.entries = {gsep};
    ag.placement.rule = "all-gsep";
    return ag;
  }
  need_graph(set_method, graph);

  // Set-level graph: nodes 0..k-1 are the entries, node k is gsep.
  const std::size_t k = entries.size();
  AtomSet ids;
  for (std::size_t i = 0; i <= k; ++i) ids.push_back(static_cast<AtomId>(i));
  GoalGraph sg(ids);
  for (std::size_t i = 0; i + 1 < k; ++i) sg.set_adj(i, i + 1);
  for (std::size_t i = 0; i < k; ++i) {
    if (set_order(problem, gsep, entries[i], set_method, graph)) {
      sg.set_adj(k, i);
      ag.placement.set_edges.emplace_back(k, i);
    }
    if (set_order(problem, entries[i], gsep, set_method, graph)) {
      sg.set_adj(i, k);
      ag.placement.set_edges.emplace_back(i, k);
    }
  }

  auto default_last = [&] {
    ag.entries = entries;
    ag.entries.back() = merge(ag.entries.back(), gsep);
    ag.placement.rule = "default-last";
    return ag;
  };
  if (ag.placement.set_edges.empty()) return default_last();

  auto part = degree_partition(transitive_closure(sg));
  std::vector<AtomSet> placed;
  for (const auto& group : part.entries) {
    std::size_t original = 0;
    AtomSet merged;
    for (auto node : group) {
      if (node < k) ++original;
      merged = merge(merged, node < k ? entries[node] : gsep);
    }
    // Contradictory set orderings would fuse entries the atomic analysis
    // already separated.
    if (original > 1) return default_last();
    placed.push_back(std::move(merged));
  }
  if (!part.gsep.empty()) return default_last();
  ag.entries = std::move(placed);
  ag.placement.rule = "ordered";
  return ag;
}

Agenda compute_agenda(const PlanningProblem& problem, OrderMethod method, const AgendaOptions& options) {
  const OrderMethod set_method = options.set_method.value_or(method);
  Agenda ag;
  if (problem.goals.size() <= 1) {
    ag.method = method;
    ag.set_method = set_method;
    if (!problem.goals.empty()) ag.entries = {problem.goals};
    return ag;
  }
  std::optional<PlanningGraph> graph;
  if (method == OrderMethod::kE || set_method == OrderMethod::kE) graph.emplace(problem, GraphOptions{false});
  const PlanningGraph* gp = graph ? &*graph : nullptr;

  auto rel = options.parallel ? compute_relations(problem, problem.goals, method, gp)
                              : compute_relations_serial(problem, problem.goals, method, gp);
  auto g = build_goal_graph(rel);
  auto part = degree_partition(transitive_closure(g));
  ag = place_gsep(problem, part.entries, part.gsep, set_method, gp);
  ag.method = method;
  ag.edges = g.edges();
  for (std::size_t i = 0; i < rel.goals.size(); ++i) {
    for (std::size_t j = 0; j < rel.goals.size(); ++j) {
      if (rel.trivial[i][j]) ag.trivial_edges.emplace_back(rel.goals[i], rel.goals[j]);
    }
  }
  return ag;
}

std::string method_name(OrderMethod m) { return m == OrderMethod::kE ? "e" : "h"; }

OrderMethod parse_method(const std::string& s) {
  if (s == "e" || s == "E") return OrderMethod::kE;
  if (s == "h" || s == "H") return OrderMethod::kH;
  throw std::invalid_argument("unknown ordering method '" + s + "'");
}

nlohmann::json agenda_to_json(const PlanningProblem& problem, const Agenda& ag) {
  using nlohmann::json;
  auto names = [&](const AtomSet& s) {
    json a = json::array();
    for (auto id : s) a.push_back(problem.atoms.name(id));
    return a;
  };
  auto edge_list = [&](const std::vector<Edge>& es) {
    json a = json::array();
    for (auto [x, y] : es) a.push_back({problem.atoms.name(x), problem.atoms.name(y)});
    return a;
  };
  json entries = json::array();
  for (const auto& e : ag.entries) entries.push_back(names(e));
  json set_edges = json::array();
  for (auto [x, y] : ag.placement.set_edges) set_edges.push_back({x, y});
  std::string set_method = method_name(ag.set_method);
  set_method[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(set_method[0])));
  return {{"entries", std::move(entries)},
          {"method", method_name(ag.method)},
          {"edges", edge_list(ag.edges)},
          {"gsep", names(ag.gsep)},
          {"trivial_edges", edge_list(ag.trivial_edges)},
          {"gsep_placement",
           {{"rule", ag.placement.rule}, {"set_method", set_method}, {"set_edges", std::move(set_edges)}}}};
}

}  // namespace gam
