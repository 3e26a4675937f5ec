#include "gam/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gam::corpus {

namespace {

std::string numbered(const std::string& prefix, int i) { return prefix + std::to_string(i); }

void diff_facts(std::ostringstream& os, const std::vector<std::string>& objs) {
  for (const auto& x : objs) {
    for (const auto& y : objs) {
      if (x != y) os << "    (diff " << x << ' ' << y << ")\n";
    }
  }
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

}  // namespace

std::string blocks_domain() {
  return R"((define (domain blocksworld)
  (:requirements :strips)
  (:predicates (clear ?x) (on-table ?x) (arm-empty) (holding ?x) (on ?x ?y) (diff ?x ?y))
  (:action pickup
    :parameters (?ob)
    :precondition (and (clear ?ob) (on-table ?ob) (arm-empty))
    :effect (and (holding ?ob) (not (clear ?ob)) (not (on-table ?ob)) (not (arm-empty))))
  (:action putdown
    :parameters (?ob)
    :precondition (holding ?ob)
    :effect (and (clear ?ob) (arm-empty) (on-table ?ob) (not (holding ?ob))))
  (:action stack
    :parameters (?ob ?underob)
    :precondition (and (clear ?underob) (holding ?ob) (diff ?ob ?underob))
    :effect (and (arm-empty) (clear ?ob) (on ?ob ?underob) (not (clear ?underob)) (not (holding ?ob))))
  (:action unstack
    :parameters (?ob ?underob)
    :precondition (and (on ?ob ?underob) (clear ?ob) (arm-empty) (diff ?ob ?underob))
    :effect (and (holding ?ob) (clear ?underob) (not (on ?ob ?underob)) (not (clear ?ob)) (not (arm-empty)))))
)";
}

namespace {

std::string table_problem(const std::string& name, const std::vector<std::string>& blocks,
                          const std::vector<std::pair<std::string, std::string>>& goals) {
  std::ostringstream os;
  os << "(define (problem " << name << ")\n  (:domain blocksworld)\n  (:objects " << join(blocks) << ")\n"
     << "  (:init\n    (arm-empty)\n";
  for (const auto& b : blocks) os << "    (on-table " << b << ")\n    (clear " << b << ")\n";
  diff_facts(os, blocks);
  os << "  )\n  (:goal (and";
  for (const auto& [x, y] : goals) os << "\n    (on " << x << ' ' << y << ")";
  os << ")))\n";
  return os.str();
}

}  // namespace

std::string blocks3_problem() { return table_problem("blocks3", {"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

std::string stack_problem(int n) {
  if (n < 2) throw std::invalid_argument("stack_n needs at least two blocks");
  std::vector<std::string> blocks;
  for (int i = 1; i <= n; ++i) blocks.push_back(numbered("b", i));
  std::vector<std::pair<std::string, std::string>> goals;
  for (int i = 0; i + 1 < n; ++i) goals.emplace_back(blocks[i], blocks[i + 1]);
  return table_problem("stack_" + std::to_string(n), blocks, goals);
}

std::string hanoi_domain() {
  return R"((define (domain hanoi)
  (:requirements :strips)
  (:predicates (on ?x ?y) (clear ?x) (smaller ?x ?y) (diff ?x ?y))
  (:action move
    :parameters (?disc ?from ?to)
    :precondition (and (smaller ?disc ?to) (diff ?from ?to) (diff ?disc ?from)
                       (on ?disc ?from) (clear ?disc) (clear ?to))
    :effect (and (clear ?from) (on ?disc ?to) (not (on ?disc ?from)) (not (clear ?to)))))
)";
}

// d1 is the smallest disc; the tower starts on peg1 and must end on peg3.
std::string hanoi_problem(int discs) {
  if (discs < 1) throw std::invalid_argument("hanoi needs at least one disc");
  std::vector<std::string> d, pegs{"peg1", "peg2", "peg3"};
  for (int i = 1; i <= discs; ++i) d.push_back(numbered("d", i));
  std::vector<std::string> all = d;
  all.insert(all.end(), pegs.begin(), pegs.end());
  std::ostringstream os;
  os << "(define (problem hanoi" << discs << ")\n  (:domain hanoi)\n  (:objects " << join(all) << ")\n  (:init\n";
  for (int i = 0; i < discs; ++i) {
    for (int j = i + 1; j < discs; ++j) os << "    (smaller " << d[i] << ' ' << d[j] << ")\n";
    for (const auto& p : pegs) os << "    (smaller " << d[i] << ' ' << p << ")\n";
  }
  diff_facts(os, all);
  os << "    (clear d1)\n    (clear peg2)\n    (clear peg3)\n";
  for (int i = 0; i + 1 < discs; ++i) os << "    (on " << d[i] << ' ' << d[i + 1] << ")\n";
  os << "    (on " << d.back() << " peg1)\n  )\n  (:goal (and\n    (on " << d.back() << " peg3)";
  for (int i = discs - 2; i >= 0; --i) os << "\n    (on " << d[i] << ' ' << d[i + 1] << ")";
  os << ")))\n";
  return os.str();
}

std::string tyreworld_domain() {
  return R"((define (domain tyreworld)
  (:requirements :strips :typing)
  (:types wheel nut tool - item item hub container)
  (:constants wrench jack pump - tool boot - container)
  (:predicates (open ?x - container) (closed ?x - container) (unlocked ?x - container)
               (in ?x - item ?y - container) (have ?x - item)
               (tight ?x - nut ?y - hub) (loose ?x - nut ?y - hub)
               (on-ground ?y - hub) (not-on-ground ?y - hub)
               (fastened ?y - hub) (unfastened ?y - hub) (free ?y - hub)
               (on ?x - wheel ?y - hub)
               (inflated ?x - wheel) (not-inflated ?x - wheel) (intact ?x - wheel)
               (annoyed))
  (:action cuss
    :parameters ()
    :precondition (annoyed)
    :effect (not (annoyed)))
  (:action open
    :parameters (?x - container)
    :precondition (and (unlocked ?x) (closed ?x))
    :effect (and (open ?x) (not (closed ?x))))
  (:action close
    :parameters (?x - container)
    :precondition (open ?x)
    :effect (and (closed ?x) (not (open ?x))))
  (:action fetch
    :parameters (?x - item ?y - container)
    :precondition (and (in ?x ?y) (open ?y))
    :effect (and (have ?x) (not (in ?x ?y))))
  (:action put-away
    :parameters (?x - item ?y - container)
    :precondition (and (have ?x) (open ?y))
    :effect (and (in ?x ?y) (not (have ?x))))
  (:action loosen
    :parameters (?x - nut ?y - hub)
    :precondition (and (have wrench) (tight ?x ?y) (on-ground ?y))
    :effect (and (loose ?x ?y) (not (tight ?x ?y))))
  (:action tighten
    :parameters (?x - nut ?y - hub)
    :precondition (and (have wrench) (loose ?x ?y) (on-ground ?y))
    :effect (and (tight ?x ?y) (not (loose ?x ?y))))
  (:action jack-up
    :parameters (?y - hub)
    :precondition (and (on-ground ?y) (have jack))
    :effect (and (not-on-ground ?y) (not (on-ground ?y)) (not (have jack))))
  (:action jack-down
    :parameters (?y - hub)
    :precondition (not-on-ground ?y)
    :effect (and (on-ground ?y) (have jack) (not (not-on-ground ?y))))
  (:action undo
    :parameters (?x - nut ?y - hub)
    :precondition (and (not-on-ground ?y) (fastened ?y) (have wrench) (loose ?x ?y))
    :effect (and (have ?x) (unfastened ?y) (not (fastened ?y)) (not (loose ?x ?y))))
  (:action do-up
    :parameters (?x - nut ?y - hub)
    :precondition (and (have wrench) (unfastened ?y) (not-on-ground ?y) (have ?x))
    :effect (and (loose ?x ?y) (fastened ?y) (not (have ?x)) (not (unfastened ?y))))
  (:action remove-wheel
    :parameters (?x - wheel ?y - hub)
    :precondition (and (not-on-ground ?y) (on ?x ?y) (unfastened ?y))
    :effect (and (have ?x) (free ?y) (not (on ?x ?y))))
  (:action put-on-wheel
    :parameters (?x - wheel ?y - hub)
    :precondition (and (have ?x) (free ?y) (unfastened ?y) (not-on-ground ?y))
    :effect (and (on ?x ?y) (not (have ?x)) (not (free ?y))))
  (:action inflate
    :parameters (?x - wheel)
    :precondition (and (have pump) (not-inflated ?x) (intact ?x))
    :effect (and (inflated ?x) (not (not-inflated ?x)))))
)";
}

// Flat wheels w<i> sit on hub<i>; spares r<i> are in the closed boot with the tools.
std::string tyreworld_problem(int tires) {
  if (tires < 1) throw std::invalid_argument("tyreworld needs at least one tire");
  std::vector<std::string> w, r, n, h;
  for (int i = 1; i <= tires; ++i) {
    w.push_back(numbered("w", i));
    r.push_back(numbered("r", i));
    n.push_back(numbered("n", i));
    h.push_back(numbered("hub", i));
  }
  std::vector<std::string> wheels = w;
  wheels.insert(wheels.end(), r.begin(), r.end());
  std::ostringstream os;
  os << "(define (problem fixit" << tires << ")\n  (:domain tyreworld)\n  (:objects " << join(wheels)
     << " - wheel " << join(n) << " - nut " << join(h) << " - hub)\n  (:init\n"
     << "    (in jack boot)\n    (in pump boot)\n    (in wrench boot)\n    (unlocked boot)\n    (closed boot)\n";
  for (int i = 0; i < tires; ++i) {
    os << "    (intact " << r[i] << ")\n    (in " << r[i] << " boot)\n    (not-inflated " << r[i] << ")\n"
       << "    (on " << w[i] << ' ' << h[i] << ")\n    (on-ground " << h[i] << ")\n"
       << "    (tight " << n[i] << ' ' << h[i] << ")\n    (fastened " << h[i] << ")\n";
  }
  os << "  )\n  (:goal (and\n";
  for (int i = 0; i < tires; ++i) {
    os << "    (on " << r[i] << ' ' << h[i] << ")\n    (inflated " << r[i] << ")\n"
       << "    (tight " << n[i] << ' ' << h[i] << ")\n    (in " << w[i] << " boot)\n";
  }
  os << "    (in wrench boot)\n    (in jack boot)\n    (in pump boot)\n    (closed boot))))\n";
  return os.str();
}

std::string gripper_domain() {
  return R"((define (domain gripper)
  (:requirements :strips :typing)
  (:types room ball gripper)
  (:predicates (at-robby ?r - room) (at ?b - ball ?r - room) (free ?g - gripper)
               (carry ?b - ball ?g - gripper) (diff ?x - room ?y - room))
  (:action move
    :parameters (?from ?to - room)
    :precondition (and (at-robby ?from) (diff ?from ?to))
    :effect (and (at-robby ?to) (not (at-robby ?from))))
  (:action pick
    :parameters (?obj - ball ?room - room ?g - gripper)
    :precondition (and (at ?obj ?room) (at-robby ?room) (free ?g))
    :effect (and (carry ?obj ?g) (not (at ?obj ?room)) (not (free ?g))))
  (:action drop
    :parameters (?obj - ball ?room - room ?g - gripper)
    :precondition (and (carry ?obj ?g) (at-robby ?room))
    :effect (and (at ?obj ?room) (free ?g) (not (carry ?obj ?g)))))
)";
}

std::string gripper_problem(int balls) {
  if (balls < 1) throw std::invalid_argument("gripper needs at least one ball");
  std::vector<std::string> b;
  for (int i = 1; i <= balls; ++i) b.push_back(numbered("ball", i));
  std::ostringstream os;
  os << "(define (problem gripper" << balls << ")\n  (:domain gripper)\n"
     << "  (:objects roomA roomB - room " << join(b) << " - ball left right - gripper)\n"
     << "  (:init\n    (at-robby roomA)\n    (free left)\n    (free right)\n"
     << "    (diff roomA roomB)\n    (diff roomB roomA)\n";
  for (const auto& x : b) os << "    (at " << x << " roomA)\n";
  os << "  )\n  (:goal (and";
  for (const auto& x : b) os << "\n    (at " << x << " roomB)";
  os << ")))\n";
  return os.str();
}

std::string briefcase_domain() {
  return R"((define (domain briefcase)
  (:requirements :strips :typing :conditional-effects)
  (:types location portable)
  (:constants paycheck dictionary - portable)
  (:predicates (at-b ?l - location) (at ?x - portable ?l - location) (in ?x - portable)
               (diff ?x - location ?y - location))
  (:action move-b
    :parameters (?from ?to - location)
    :precondition (and (at-b ?from) (diff ?from ?to))
    :effect (and (at-b ?to) (not (at-b ?from))
                 (when (in paycheck) (and (at paycheck ?to) (not (at paycheck ?from))))
                 (when (in dictionary) (and (at dictionary ?to) (not (at dictionary ?from))))))
  (:action put-in
    :parameters (?x - portable ?l - location)
    :precondition (and (at ?x ?l) (at-b ?l))
    :effect (in ?x))
  (:action take-out
    :parameters (?x - portable)
    :precondition (in ?x)
    :effect (not (in ?x))))
)";
}

std::string briefcase_problem() {
  return R"((define (problem briefcase1)
  (:domain briefcase)
  (:objects home office - location)
  (:init
    (at-b home)
    (at paycheck home)
    (at dictionary home)
    (in paycheck)
    (diff home office)
    (diff office home))
  (:goal (and
    (at-b office)
    (at dictionary office)
    (at paycheck home))))
)";
}

PlanningProblem ground(const Instance& inst, pddl::GroundingStats* stats) {
  auto [d, p] = pddl::parse(inst.domain, inst.problem);
  return pddl::ground(d, p, stats);
}

std::vector<Instance> standard_instances() {
  std::vector<Instance> out;
  out.push_back({"blocks/blocks3", blocks_domain(), blocks3_problem()});
  for (int n : {4, 5, 10, 20}) out.push_back({"blocks/stack_" + std::to_string(n), blocks_domain(), stack_problem(n)});
  for (int n = 3; n <= 7; ++n) out.push_back({"hanoi/hanoi" + std::to_string(n), hanoi_domain(), hanoi_problem(n)});
  for (int n = 1; n <= 4; ++n) {
    out.push_back({"tyreworld/fixit" + std::to_string(n), tyreworld_domain(), tyreworld_problem(n)});
  }
  for (int n : {2, 4}) out.push_back({"gripper/gripper" + std::to_string(n), gripper_domain(), gripper_problem(n)});
  out.push_back({"briefcase/briefcase1", briefcase_domain(), briefcase_problem()});
  return out;
}

void write_corpus(const std::filesystem::path& dir) {
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
  };
  for (const auto& inst : standard_instances()) {
    const auto family = inst.name.substr(0, inst.name.find('/'));
    const auto file = inst.name.substr(inst.name.find('/') + 1);
    write(dir / family / "domain.pddl", inst.domain);
    write(dir / family / (file + ".pddl"), inst.problem);
  }
}

}  // namespace gam::corpus
