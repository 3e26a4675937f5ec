#include "gam/graphplan.hpp"

#include <algorithm>
#include <map>

namespace gam {

PlanningGraph::PlanningGraph(const PlanningProblem& problem, GraphOptions options)
    : PlanningGraph(problem, problem.init, options) {}

PlanningGraph::PlanningGraph(const PlanningProblem& problem, const State& init, GraphOptions options)
    : num_atoms_(problem.num_atoms()), keep_all_(options.keep_all_layers), init_(init) {
  achievers_.resize(num_atoms_);
  for (ActionId a = 0; a < problem.actions.size(); ++a) {
    const auto& act = problem.actions[a];
    for (std::uint32_t i = 0; i < act.num_effects(); ++i) {
      const auto& e = act.effect(i);
      GraphNode n;
      n.action = a;
      n.effect = i;
      n.cond = i == 0 ? e.condition : sets::set_union(act.pre(), e.condition);
      n.adds = e.adds;
      n.dels = e.dels;
      auto id = static_cast<std::uint32_t>(nodes_.size());
      for (auto p : n.adds) achievers_[p].push_back(id);
      nodes_.push_back(std::move(n));
    }
  }
  build();
}

const AtomSet& PlanningGraph::cond_of(std::uint32_t n, AtomSet& scratch) const {
  if (!is_noop(n)) return nodes_[n].cond;
  scratch.assign(1, static_cast<AtomId>(n - nodes_.size()));
  return scratch;
}

bool PlanningGraph::interfere(std::uint32_t a, std::uint32_t b) const {
  const auto& x = nodes_[a];
  const auto& y = nodes_[b];
  if (x.action == y.action) return false;
  return sets::intersects(x.dels, y.cond) || sets::intersects(x.dels, y.adds) ||
         sets::intersects(y.dels, x.cond) || sets::intersects(y.dels, x.adds);
}

bool PlanningGraph::competing(const Layer& l, std::uint32_t a, std::uint32_t b) const {
  AtomSet sa, sb;
  const auto& ca = cond_of(a, sa);
  const auto& cb = cond_of(b, sb);
  for (auto p : ca) {
    const auto& row = l.mutex[p];
    for (auto q : cb) {
      if (row.test(q)) return true;
    }
  }
  return false;
}

bool PlanningGraph::mutex_in(const Layer& l, std::uint32_t a, std::uint32_t b) const {
  if (a == b) return false;
  bool na = is_noop(a);
  bool nb = is_noop(b);
  if (na && nb) {
    return l.mutex[a - nodes_.size()].test(b - nodes_.size());
  }
  if (na || nb) {
    auto p = static_cast<AtomId>((na ? a : b) - nodes_.size());
    const auto& real = nodes_[na ? b : a];
    if (sets::contains(real.dels, p)) return true;
    const auto& row = l.mutex[p];
    for (auto q : real.cond) {
      if (row.test(q)) return true;
    }
    return false;
  }
  return interfere(a, b) || competing(l, a, b);
}

namespace {

bool condition_holds(const Bitset& facts, const std::vector<Bitset>& mutex, const AtomSet& cond) {
  if (!facts.all_of(cond)) return false;
  for (std::size_t i = 0; i < cond.size(); ++i) {
    for (std::size_t j = i + 1; j < cond.size(); ++j) {
      if (mutex[cond[i]].test(cond[j])) return false;
    }
  }
  return true;
}

}  // namespace

PlanningGraph::Layer PlanningGraph::next_layer(const Layer& cur) const {
  Layer nx;
  nx.index = cur.index + 1;
  nx.facts = cur.facts;
  for (std::uint32_t n = 0; n < nodes_.size(); ++n) {
    if (cur.nodes.test(n)) nx.facts.set_all(nodes_[n].adds);
  }
  nx.mutex.assign(num_atoms_, Bitset(num_atoms_));

  const AtomSet fresh = [&] {
    AtomSet out;
    for (auto p : nx.facts.to_set()) {
      if (!cur.facts.test(p)) out.push_back(p);
    }
    return out;
  }();

  // Achievers of p in action layer cur.index, no-op first.
  std::vector<std::vector<std::uint32_t>> ach(num_atoms_);
  const AtomSet present = nx.facts.to_set();
  for (auto p : present) {
    auto& v = ach[p];
    if (cur.facts.test(p)) v.push_back(noop(p));
    for (auto n : achievers_[p]) {
      if (cur.nodes.test(n)) v.push_back(n);
    }
  }

  auto decide = [&](AtomId p, AtomId q) {
    for (auto a : ach[p]) {
      for (auto b : ach[q]) {
        if (!mutex_in(cur, a, b)) return false;
      }
    }
    return true;
  };

  // Pairs that were not mutex stay not mutex, so only previously mutex
  // pairs and pairs touching fresh facts need checking.
  std::vector<std::pair<AtomId, AtomId>> candidates;
  for (auto p : present) {
    if (cur.facts.test(p)) {
      for (auto q : cur.mutex[p].to_set()) {
        if (q > p) candidates.emplace_back(p, q);
      }
    }
  }
  for (auto p : fresh) {
    for (auto q : present) {
      if (q == p) continue;
      if (cur.facts.test(q) || q > p) candidates.emplace_back(std::min(p, q), std::max(p, q));
    }
  }
  for (auto [p, q] : candidates) {
    if (decide(p, q)) {
      nx.mutex[p].set(q);
      nx.mutex[q].set(p);
      ++nx.mutex_pairs;
    }
  }

  nx.nodes = Bitset(nodes_.size());
  for (std::uint32_t n = 0; n < nodes_.size(); ++n) {
    if (condition_holds(nx.facts, nx.mutex, nodes_[n].cond)) nx.nodes.set(n);
  }
  return nx;
}

void PlanningGraph::build() {
  Layer l0;
  l0.index = 0;
  l0.facts = init_.bits();
  l0.mutex.assign(num_atoms_, Bitset(num_atoms_));
  l0.nodes = Bitset(nodes_.size());
  for (std::uint32_t n = 0; n < nodes_.size(); ++n) {
    if (l0.facts.all_of(nodes_[n].cond)) l0.nodes.set(n);
  }
  layers_.push_back(std::move(l0));
  stats_.push_back({layers_.back().facts.count(), 0, layers_.back().nodes.count()});

  for (;;) {
    Layer nx = next_layer(layers_.back());
    const Layer& cur = layers_.back();
    bool same = nx.facts == cur.facts && nx.mutex_pairs == cur.mutex_pairs;
    stats_.push_back({nx.facts.count(), nx.mutex_pairs, nx.nodes.count()});
    if (same) {
      leveled_at_ = cur.index;
      stats_.pop_back();
      return;
    }
    if (!keep_all_ && layers_.size() >= 2) layers_.erase(layers_.begin());
    layers_.push_back(std::move(nx));
  }
}

const PlanningGraph::Layer& PlanningGraph::layer(std::size_t t) const {
  t = std::min(t, leveled_at_);
  std::size_t first = layers_.front().index;
  if (t < first) throw std::logic_error("planning graph layer " + std::to_string(t) + " was discarded");
  return layers_[t - first];
}

bool PlanningGraph::node_active(std::size_t t, std::uint32_t n) const {
  if (is_noop(n)) return facts(t).test(n - nodes_.size());
  return active_nodes(t).test(n);
}

bool PlanningGraph::node_mutex(std::size_t t, std::uint32_t a, std::uint32_t b) const {
  return mutex_in(layer(t), a, b);
}

nlohmann::json PlanningGraph::dump() const {
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t t = 0; t < stats_.size(); ++t) {
    layers.push_back({{"layer", t},
                      {"facts", stats_[t].facts},
                      {"fact_mutex_pairs", stats_[t].mutex_pairs},
                      {"action_nodes", stats_[t].nodes}});
  }
  return {{"leveled_at", leveled_at_}, {"num_atoms", num_atoms_}, {"num_nodes", nodes_.size()},
          {"layers", std::move(layers)}};
}

PlanningGraph build_graph(const PlanningProblem& problem, GraphOptions options) {
  return PlanningGraph(problem, options);
}

FalseSet false_set(const PlanningGraph& graph, const AtomSet& anchor) {
  FalseSet out;
  out.anchor = anchor;
  const auto t = graph.leveled_at();
  Bitset acc(graph.num_atoms());
  for (auto a : anchor) {
    if (!graph.facts(t).test(a)) throw AnchorUnreachable(a);
    acc |= graph.mutex_row(t, a);
  }
  out.atoms = sets::set_difference(acc.to_set(), anchor);
  return out;
}

// ---------------------------------------------------------------- search

namespace {

struct GoalSetHash {
  std::size_t operator()(const AtomSet& s) const {
    std::size_t h = s.size();
    for (auto a : s) h ^= a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class ResourceHit {
 public:
  explicit ResourceHit(std::string which) : which(std::move(which)) {}
  std::string which;
};

class BackwardSearch {
 public:
  BackwardSearch(const PlanningGraph& g, const SearchLimits& limits) : g_(g), limits_(limits) {}

  // Tries to extract a plan with `top` action layers.
  bool run(const AtomSet& goals, std::size_t top) {
    if (memo_.size() <= top) memo_.resize(top + 1);
    steps_.assign(top, {});
    return extract(goals, top);
  }

  std::size_t memo_size(std::size_t t) const { return t < memo_.size() ? memo_[t].size() : 0; }
  std::size_t expanded() const { return expanded_; }

  Plan plan() const {
    Plan p;
    for (const auto& s : steps_) {
      if (!s.empty()) p.steps.push_back(s);
    }
    return p;
  }

 private:
  bool extract(const AtomSet& goals, std::size_t t) {
    if (t == 0) return true;
    if (memo_[t].count(goals)) return false;
    std::vector<std::uint32_t> chosen;
    if (assign(goals, 0, t, chosen)) return true;
    memo_[t].insert(goals);
    return false;
  }

  bool covered(AtomId g, const std::vector<std::uint32_t>& chosen) const {
    for (auto n : chosen) {
      if (g_.is_noop(n)) {
        if (n - g_.nodes().size() == g) return true;
      } else if (sets::contains(g_.nodes()[n].adds, g)) {
        return true;
      }
    }
    return false;
  }

  bool assign(const AtomSet& goals, std::size_t i, std::size_t t, std::vector<std::uint32_t>& chosen) {
    if (++expanded_ > limits_.max_nodes) throw ResourceHit("max_nodes");
    while (i < goals.size() && covered(goals[i], chosen)) ++i;
    const std::size_t layer = t - 1;
    if (i == goals.size()) {
      AtomSet sub;
      for (auto n : chosen) {
        if (g_.is_noop(n)) {
          sub.push_back(static_cast<AtomId>(n - g_.nodes().size()));
        } else {
          const auto& c = g_.nodes()[n].cond;
          sub.insert(sub.end(), c.begin(), c.end());
        }
      }
      sub = sets::normalized(std::move(sub));
      if (!extract(sub, layer)) return false;
      std::vector<ActionId> step;
      for (auto n : chosen) {
        if (!g_.is_noop(n)) step.push_back(g_.nodes()[n].action);
      }
      steps_[layer] = sets::normalized(std::move(step));
      return true;
    }
    const AtomId goal = goals[i];
    auto try_node = [&](std::uint32_t n) {
      for (auto c : chosen) {
        if (g_.node_mutex(layer, c, n)) return false;
      }
      chosen.push_back(n);
      bool ok = assign(goals, i + 1, t, chosen);
      chosen.pop_back();
      return ok;
    };
    if (g_.facts(layer).test(goal) && try_node(g_.noop(goal))) return true;
    for (auto n : g_.achievers(goal)) {
      if (g_.node_active(layer, n) && try_node(n)) return true;
    }
    return false;
  }

  const PlanningGraph& g_;
  const SearchLimits& limits_;
  std::vector<std::unordered_set<AtomSet, GoalSetHash>> memo_;
  std::vector<std::vector<ActionId>> steps_;
  std::size_t expanded_ = 0;
};

bool goals_reachable(const PlanningGraph& g, std::size_t t, const AtomSet& goals) {
  if (!g.facts(t).all_of(goals)) return false;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    for (std::size_t j = i + 1; j < goals.size(); ++j) {
      if (g.fact_mutex(t, goals[i], goals[j])) return false;
    }
  }
  return true;
}

}  // namespace

SearchResult graphplan_search(const PlanningProblem& problem, const SearchLimits& limits) {
  return graphplan_search(problem, problem.init, problem.goals, limits);
}

SearchResult graphplan_search(const PlanningProblem& problem, const State& from, const AtomSet& goals,
                              const SearchLimits& limits) {
  if (!problem.is_strips()) throw std::invalid_argument("graphplan search needs a STRIPS problem");
  SearchResult res;
  if (from.contains_all(goals)) {
    res.status = SearchStatus::kSolved;
    return res;
  }
  PlanningGraph g(problem, from);
  const std::size_t n = g.leveled_at();
  std::size_t top = 1;
  while (top <= n && !goals_reachable(g, top, goals)) ++top;
  if (!goals_reachable(g, top, goals)) {
    res.status = SearchStatus::kUnsolvable;
    return res;
  }
  BackwardSearch search(g, limits);
  std::size_t prev_memo = 0;
  bool have_prev = false;
  try {
    for (;; ++top) {
      if (top > limits.max_layers) {
        res.status = SearchStatus::kResourceLimit;
        res.limit = "max_layers";
        break;
      }
      res.layers = top;
      if (search.run(goals, top)) {
        res.status = SearchStatus::kSolved;
        res.plan = search.plan();
        break;
      }
      if (top > n) {
        std::size_t now = search.memo_size(n);
        if (have_prev && now == prev_memo) {
          res.status = SearchStatus::kUnsolvable;
          break;
        }
        prev_memo = now;
        have_prev = true;
      }
    }
  } catch (const ResourceHit& hit) {
    res.status = SearchStatus::kResourceLimit;
    res.limit = hit.which;
  }
  res.expanded = search.expanded();
  return res;
}

}  // namespace gam
