#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "gam/model.hpp"

namespace gam {

// One graph node per action effect. STRIPS actions give exactly one node;
// an ADL action gives one node per conditional effect with condition
// pre_0 ∪ pre_i. Nodes of the same action never interfere.
struct GraphNode {
  ActionId action = 0;
  std::uint32_t effect = 0;
  AtomSet cond;
  AtomSet adds;
  AtomSet dels;
};

struct GraphOptions {
  // Keep every layer (needed for search) or only the last two.
  bool keep_all_layers = true;
};

class PlanningGraph {
 public:
  PlanningGraph(const PlanningProblem& problem, GraphOptions options = {});
  PlanningGraph(const PlanningProblem& problem, const State& init, GraphOptions options = {});

  std::size_t num_atoms() const { return num_atoms_; }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  // Node ids at or above nodes().size() are no-ops: noop(p) = nodes().size() + p.
  std::uint32_t noop(AtomId p) const { return static_cast<std::uint32_t>(nodes_.size() + p); }
  bool is_noop(std::uint32_t n) const { return n >= nodes_.size(); }
  const std::vector<std::uint32_t>& achievers(AtomId p) const { return achievers_[p]; }

  // First t whose layer equals layer t+1 in facts and fact-mutex count.
  std::size_t leveled_at() const { return leveled_at_; }

  // Queries clamp t to leveled_at(): later layers are identical.
  const Bitset& facts(std::size_t t) const { return layer(t).facts; }
  AtomSet fact_set(std::size_t t) const { return facts(t).to_set(); }
  bool fact_mutex(std::size_t t, AtomId p, AtomId q) const {
    return layer(t).mutex[p].test(q);
  }
  const Bitset& mutex_row(std::size_t t, AtomId p) const { return layer(t).mutex[p]; }
  std::size_t fact_mutex_count(std::size_t t) const { return layer(t).mutex_pairs; }
  // Nodes in action layer t (between fact layers t and t+1).
  const Bitset& active_nodes(std::size_t t) const { return layer(t).nodes; }
  bool node_active(std::size_t t, std::uint32_t n) const;
  bool node_mutex(std::size_t t, std::uint32_t a, std::uint32_t b) const;

  nlohmann::json dump() const;

 private:
  struct Layer {
    std::size_t index = 0;
    Bitset facts;
    std::vector<Bitset> mutex;  // symmetric; rows of facts outside the layer are empty
    std::size_t mutex_pairs = 0;
    Bitset nodes;
  };

  void build();
  Layer next_layer(const Layer& cur) const;
  bool interfere(std::uint32_t a, std::uint32_t b) const;
  bool competing(const Layer& l, std::uint32_t a, std::uint32_t b) const;
  bool mutex_in(const Layer& l, std::uint32_t a, std::uint32_t b) const;
  const AtomSet& cond_of(std::uint32_t n, AtomSet& scratch) const;
  const Layer& layer(std::size_t t) const;

  std::size_t num_atoms_ = 0;
  std::vector<GraphNode> nodes_;
  std::vector<std::vector<std::uint32_t>> achievers_;  // real nodes only
  std::vector<Layer> layers_;
  std::size_t leveled_at_ = 0;
  bool keep_all_ = true;
  State init_;

  // Per-layer statistics, kept even when layers are dropped.
  struct Stats {
    std::size_t facts, mutex_pairs, nodes;
  };
  std::vector<Stats> stats_;
};

class AnchorUnreachable : public std::runtime_error {
 public:
  explicit AnchorUnreachable(AtomId atom)
      : std::runtime_error("anchor atom #" + std::to_string(atom) + " never enters the planning graph"),
        atom_(atom) {}
  AtomId atom() const { return atom_; }

 private:
  AtomId atom_;
};

struct FalseSet {
  AtomSet anchor;
  AtomSet atoms;
};

PlanningGraph build_graph(const PlanningProblem& problem, GraphOptions options = {});

// Atoms mutex with some anchor atom once the graph has leveled off.
FalseSet false_set(const PlanningGraph& graph, const AtomSet& anchor);

struct SearchLimits {
  std::size_t max_layers = 128;
  std::size_t max_nodes = 10'000'000;
  std::size_t max_states = 200'000;
};

enum class SearchStatus { kSolved, kUnsolvable, kResourceLimit };

struct SearchResult {
  SearchStatus status = SearchStatus::kUnsolvable;
  Plan plan;
  std::string limit;  // which limit was hit, if any
  std::size_t expanded = 0;
  std::size_t layers = 0;
};

SearchResult graphplan_search(const PlanningProblem& problem, const SearchLimits& limits = {});
SearchResult graphplan_search(const PlanningProblem& problem, const State& from, const AtomSet& goals,
                              const SearchLimits& limits = {});

}  // namespace gam
