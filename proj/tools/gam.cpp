#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gam/agenda.hpp"
#include "gam/agenda_planner.hpp"
#include "gam/corpus.hpp"
#include "gam/graphplan.hpp"
#include "gam/ground_json.hpp"
#include "gam/oracle.hpp"
#include "gam/ordering.hpp"
#include "gam/pddl.hpp"

namespace {

using gam::PlanningProblem;
using nlohmann::json;

enum Exit { kOk = 0, kUnsolvable = 1, kLimit = 2, kInput = 3 };

struct Config {
  std::string domain, problem, ground;
  std::string method = "h";
  std::string set_method;
  std::string base = "graphplan";
  bool linearize = false;
  gam::SearchLimits limits;
  std::string output;
  std::string format = "json";
  bool timings = false;
  std::string corpus_dir = "corpus";
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Timer {
 public:
  explicit Timer(bool on) : on_(on) {}
  void lap(const std::string& what) {
    auto now = std::chrono::steady_clock::now();
    if (on_) {
      std::cerr << "time " << what << ": " << std::chrono::duration<double>(now - last_).count() << " s\n";
    }
    last_ = now;
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

PlanningProblem load(const Config& c) {
  if (!c.ground.empty()) {
    if (!c.domain.empty() || !c.problem.empty()) throw InputError("--ground excludes --domain/--problem");
    return gam::load_ground_problem(c.ground);
  }
  if (c.domain.empty() || c.problem.empty()) throw InputError("need --domain and --problem, or --ground");
  return gam::pddl::load(c.domain, c.problem);
}

void emit(const Config& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw InputError("cannot write '" + c.output + "'");
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json names(const PlanningProblem& p, const gam::AtomSet& s) {
  json a = json::array();
  for (auto id : s) a.push_back(p.atoms.name(id));
  return a;
}

std::string agenda_text(const PlanningProblem& p, const gam::Agenda& ag) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ag.entries.size(); ++i) {
    os << i + 1 << ":";
    for (std::size_t k = 0; k < ag.entries[i].size(); ++k) {
      os << (k ? ", " : " ") << p.atoms.name(ag.entries[i][k]);
    }
    os << '\n';
  }
  return os.str();
}

gam::Agenda agenda_for(const PlanningProblem& p, const Config& c) {
  gam::AgendaOptions opts;
  if (!c.set_method.empty()) opts.set_method = gam::parse_method(c.set_method);
  return gam::compute_agenda(p, gam::parse_method(c.method), opts);
}

int run_analyze(const Config& c) {
  Timer t(c.timings);
  auto p = load(c);
  t.lap("parse+ground");
  auto ag = agenda_for(p, c);
  t.lap("analysis");
  emit(c, c.format == "text" ? agenda_text(p, ag) : dump(gam::agenda_to_json(p, ag)));
  return kOk;
}

json deadlock_report(const PlanningProblem& p, const Config& c) {
  std::optional<gam::ReachabilityIndex> idx;
  try {
    idx = gam::enumerate_reachable(p, c.limits.max_states);
  } catch (const gam::LimitExceeded&) {
  }
  auto rep = gam::check_invertibility(p, idx ? &*idx : nullptr);
  json j = {{"deadlock_freeness", rep.certified ? "certified" : "uncertified"},
            {"invertibility", gam::invertibility_to_json(p, rep)}};
  if (idx) j["deadlock_states"] = gam::find_deadlocks(p, *idx).size();
  return j;
}

int run_plan(const Config& c) {
  Timer t(c.timings);
  auto p = load(c);
  t.lap("parse+ground");
  gam::PlannerOptions opts;
  if (c.base == "graphplan") {
    opts.base = gam::BasePlanner::kGraphplan;
  } else if (c.base == "forward") {
    opts.base = gam::BasePlanner::kForward;
  } else {
    throw InputError("unknown base planner '" + c.base + "'");
  }
  if (opts.base == gam::BasePlanner::kGraphplan && !p.is_strips()) {
    throw InputError("the graphplan base planner needs STRIPS input; use --base forward");
  }
  opts.linearize_entries = c.linearize;
  opts.limits = c.limits;
  auto ag = agenda_for(p, c);
  t.lap("analysis");
  auto run = gam::plan_with_agenda(p, ag.entries, opts);
  t.lap("search");

  json j = gam::trace_to_json(p, run);
  j["agenda"] = gam::agenda_to_json(p, ag);
  int code = kOk;
  if (run.status != gam::RunStatus::kSolved) {
    code = run.status == gam::RunStatus::kResourceLimit ? kLimit : kUnsolvable;
    auto d = deadlock_report(p, c);
    std::cerr << "episode " << run.failed_episode << " "
              << (code == kLimit ? "hit the " + run.limit + " limit" : "is unsolvable")
              << "; deadlock-freeness is " << d["deadlock_freeness"].get<std::string>() << "\n";
    j["diagnosis"] = std::move(d);
  }
  if (c.format == "text") {
    emit(c, code == kOk ? gam::plan_to_text(p, run.plan) : "");
  } else {
    emit(c, dump(j));
  }
  return code;
}

int run_verify(const Config& c) {
  Timer t(c.timings);
  auto p = load(c);
  t.lap("parse+ground");
  gam::ReachabilityIndex idx;
  try {
    idx = gam::enumerate_reachable(p, c.limits.max_states);
  } catch (const gam::LimitExceeded& e) {
    std::cerr << "not exhaustible: " << e.what() << "\n";
    return kLimit;
  }
  t.lap("enumeration");
  const gam::PlanningGraph graph(p, gam::GraphOptions{false});
  json pairs = json::array();
  std::size_t violations = 0;
  std::size_t r_count = 0, e_count = 0, h_count = 0;
  for (auto b : p.goals) {
    for (auto a : p.goals) {
      if (a == b) continue;
      auto e = gam::order_e(p, graph, b, a);
      bool h = gam::order_h(p, b, a);
      auto r = gam::decide_reasonable(p, idx, b, a);
      auto f = gam::decide_forced(p, idx, b, a);
      violations += (e.holds && !r.holds) ? 1 : 0;
      r_count += r.holds ? 1 : 0;
      e_count += (e.holds && r.holds) ? 1 : 0;
      h_count += (h && r.holds) ? 1 : 0;
      pairs.push_back({{"before", p.atoms.name(b)},
                       {"after", p.atoms.name(a)},
                       {"e", e.holds},
                       {"h", h},
                       {"r", r.holds},
                       {"f", f.holds},
                       {"trivial", r.trivial}});
    }
  }
  t.lap("verification");
  json j = {{"states", idx.size()},
            {"deadlocks", gam::find_deadlocks(p, idx).size()},
            {"pairs", std::move(pairs)},
            {"summary",
             {{"reasonable", r_count},
              {"e_recall", e_count},
              {"h_recall", h_count},
              {"e_unsound", violations}}}};
  if (c.format == "text") {
    std::ostringstream os;
    for (const auto& row : j["pairs"]) {
      os << row["before"].get<std::string>() << " <= " << row["after"].get<std::string>() << "  e=" << row["e"]
         << " h=" << row["h"] << " r=" << row["r"] << " f=" << row["f"] << " trivial=" << row["trivial"] << '\n';
    }
    emit(c, os.str());
  } else {
    emit(c, dump(j));
  }
  return kOk;
}

int run_graph_dump(const Config& c) {
  Timer t(c.timings);
  auto p = load(c);
  t.lap("parse+ground");
  const gam::PlanningGraph graph(p);
  t.lap("graph");
  json j = graph.dump();
  json fs = json::object();
  for (auto g : p.goals) {
    try {
      fs[p.atoms.name(g)] = names(p, gam::false_set(graph, {g}).atoms);
    } catch (const gam::AnchorUnreachable&) {
      fs[p.atoms.name(g)] = nullptr;
    }
  }
  j["false_sets"] = std::move(fs);
  emit(c, dump(j));
  return kOk;
}

void add_input(CLI::App* sub, Config& c) {
  sub->add_option("--domain", c.domain, "PDDL domain file");
  sub->add_option("--problem", c.problem, "PDDL problem file");
  sub->add_option("--ground", c.ground, "ground problem JSON file");
  sub->add_option("--output,-o", c.output, "write the result here instead of stdout");
  sub->add_flag("--timings", c.timings, "print phase timings to stderr");
}

void add_limits(CLI::App* sub, Config& c) {
  sub->add_option("--max-layers", c.limits.max_layers, "graph layer limit");
  sub->add_option("--max-nodes", c.limits.max_nodes, "graph search node limit");
  sub->add_option("--max-states", c.limits.max_states, "state limit for forward search and enumeration");
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"goal agenda manager"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "compute the goal agenda");
  auto* plan = app.add_subcommand("plan", "plan along the goal agenda");
  auto* verify = app.add_subcommand("verify", "compare orderings against exhaustive search");
  auto* graph = app.add_subcommand("graph-dump", "planning graph statistics and false sets");
  auto* generate = app.add_subcommand("generate", "write the benchmark corpus");
  for (auto* sub : {analyze, plan, verify, graph}) add_input(sub, c);
  for (auto* sub : {analyze, plan}) {
    sub->add_option("--method", c.method, "ordering method")->check(CLI::IsMember({"e", "h"}));
    sub->add_option("--set-method", c.set_method, "method for placing disconnected goals")
        ->check(CLI::IsMember({"e", "h", "E", "H"}));
  }
  for (auto* sub : {analyze, plan, verify}) {
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}));
  }
  plan->add_option("--base", c.base, "base planner")->check(CLI::IsMember({"graphplan", "forward"}));
  plan->add_flag("--linearize", c.linearize, "split agenda entries into single goals");
  add_limits(plan, c);
  add_limits(verify, c);
  add_limits(graph, c);
  generate->add_option("--dir", c.corpus_dir, "target directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*analyze) return run_analyze(c);
    if (*plan) return run_plan(c);
    if (*verify) return run_verify(c);
    if (*graph) return run_graph_dump(c);
    if (*generate) {
      gam::corpus::write_corpus(c.corpus_dir);
      return kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const gam::pddl::PddlError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const gam::GroundFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const gam::InvalidPlan& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
