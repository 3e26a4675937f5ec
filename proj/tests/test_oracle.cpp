#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "gam/graphplan.hpp"
#include "gam/oracle.hpp"
#include "gam/ordering.hpp"

using namespace gam;

namespace {

const ActionInvertibility& entry(const PlanningProblem& p, const InvertibilityReport& r, const std::string& name) {
  return r.actions.at(fx::action(p, name));
}

}  // namespace

TEST_CASE("reachable states") {
  SUBCASE("two blocks") {
    auto p = fx::pddl(corpus::blocks_domain(), corpus::stack_problem(2));
    CHECK(enumerate_reachable(p).size() == 5);
  }
  SUBCASE("no actions") {
    auto p = fx::ground_file("deadlock");
    p.actions.clear();
    auto idx = enumerate_reachable(p);
    REQUIRE(idx.size() == 1);
    CHECK(idx.states[0] == p.init);
  }
  SUBCASE("single action from C") {
    PlanningProblem p;
    auto a = p.atoms.intern("A");
    auto c = p.atoms.intern("C");
    p.actions.push_back(Action::strips("oI1", {c}, {a}, {c}));
    p.init = State(p.num_atoms(), AtomSet{c});
    auto idx = enumerate_reachable(p);
    REQUIRE(idx.size() == 2);
    CHECK(idx.states[1] == State(p.num_atoms(), AtomSet{a}));
    CHECK(idx.entry_adds[1].test(a));
  }
  SUBCASE("limit") {
    auto p = fx::pddl(corpus::hanoi_domain(), corpus::hanoi_problem(4));
    CHECK_THROWS_AS(enumerate_reachable(p, 10), LimitExceeded);
  }
}

TEST_CASE("reasonable orderings on blocks3") {
  auto p = fx::blocks3();
  auto idx = enumerate_reachable(p);
  auto ab = fx::atom(p, "on(a,b)");
  auto bc = fx::atom(p, "on(b,c)");
  CHECK(decide_reasonable(p, idx, bc, ab).holds);
  auto no = decide_reasonable(p, idx, ab, bc);
  CHECK_FALSE(no.holds);
  REQUIRE(no.witness_state);
  const auto& from = idx.states[*no.witness_state];
  CHECK(from.contains(bc));
  CHECK_FALSE(from.contains(ab));
  CHECK(result_sequence(from, p.actions, no.witness_plan).contains(ab));
}

TEST_CASE("forced orderings on the deadlock example") {
  auto p = fx::ground_file("deadlock");
  auto idx = enumerate_reachable(p);
  auto a = fx::atom(p, "A");
  auto b = fx::atom(p, "B");

  auto ba = decide_forced(p, idx, b, a);
  CHECK_FALSE(ba.holds);

  // A <=_f B fails: <op2, op3, op1> reaches {B, C, E, F} where op4 gives A.
  auto ab = decide_forced(p, idx, a, b);
  CHECK_FALSE(ab.holds);
  REQUIRE(ab.witness_state);
  CHECK(idx.states[*ab.witness_state] == fx::state(p, {"B", "C", "E", "F"}));
  CHECK(ab.witness_plan == std::vector<ActionId>{fx::action(p, "op4")});

  CHECK(decide_reasonable(p, idx, b, a).holds == false);
  CHECK(order_h(p, b, a));
}

TEST_CASE("trivial orderings") {
  PlanningProblem p;
  auto a = p.atoms.intern("A");
  auto b = p.atoms.intern("B");
  p.init = State(p.num_atoms(), AtomSet{b});
  p.goals = {a, b};
  auto idx = enumerate_reachable(p);
  auto v = decide_reasonable(p, idx, b, a);
  CHECK(v.holds);
  CHECK(v.trivial);
}

TEST_CASE("solvable inner problem is not reasonable") {
  // Inner problem {A} -> {B} is solvable, so B is reachable after A.
  PlanningProblem p;
  auto a = p.atoms.intern("A");
  auto b = p.atoms.intern("B");
  auto c = p.atoms.intern("C");
  p.actions.push_back(Action::strips("oI1", {c}, {a}, {c}));
  p.actions.push_back(Action::strips("inner", {a}, {b}, {}));
  p.init = State(p.num_atoms(), AtomSet{c});
  p.goals = {a, b};
  auto idx = enumerate_reachable(p);
  CHECK_FALSE(decide_reasonable(p, idx, b, a).holds);
}

TEST_CASE("deadlocks") {
  auto p = fx::ground_file("deadlock");
  auto idx = enumerate_reachable(p);
  auto dead = find_deadlocks(p, idx);
  REQUIRE(dead.size() == 1);
  CHECK(idx.states[dead[0]] == fx::state(p, {"B", "C"}));

  for (auto q : {fx::blocks3(), fx::pddl(corpus::hanoi_domain(), corpus::hanoi_problem(3))}) {
    CHECK(find_deadlocks(q, enumerate_reachable(q)).empty());
  }
}

TEST_CASE("invertibility") {
  SUBCASE("blocks") {
    auto p = fx::blocks3();
    auto idx = enumerate_reachable(p);
    auto r = check_invertibility(p, &idx);
    CHECK(r.certified);
    CHECK(*entry(p, r, "stack(a,b)").inverse == fx::action(p, "unstack(a,b)"));
    CHECK(*entry(p, r, "pickup(c)").inverse == fx::action(p, "putdown(c)"));
    CHECK(entry(p, r, "stack(a,b)").side == SideCondition::kVerified);
    CHECK(check_invertibility(p).actions.front().side == SideCondition::kUnverified);
    CHECK_FALSE(check_invertibility(p).certified);
  }
  SUBCASE("gripper") {
    auto p = fx::pddl(corpus::gripper_domain(), corpus::gripper_problem(2));
    auto idx = enumerate_reachable(p);
    auto r = check_invertibility(p, &idx);
    CHECK(r.certified);
    CHECK(*entry(p, r, "move(rooma,roomb)").inverse == fx::action(p, "move(roomb,rooma)"));
  }
  SUBCASE("hanoi exempts moves onto a smaller disc") {
    auto p = fx::pddl(corpus::hanoi_domain(), corpus::hanoi_problem(3));
    auto idx = enumerate_reachable(p);
    CHECK(check_invertibility(p, &idx).certified);
  }
  SUBCASE("tyreworld inflate has no inverse") {
    auto p = fx::pddl(corpus::tyreworld_domain(), corpus::tyreworld_problem(1));
    auto idx = enumerate_reachable(p);
    auto r = check_invertibility(p, &idx);
    CHECK_FALSE(r.certified);
    const auto& inflate = entry(p, r, "inflate(r1)");
    CHECK_FALSE(inflate.inverse);
    CHECK(inflate.note == "no inverse action; deletes only its own precondition");
  }
  SUBCASE("deadlock example") {
    auto p = fx::ground_file("deadlock");
    auto idx = enumerate_reachable(p);
    auto r = check_invertibility(p, &idx);
    CHECK_FALSE(r.certified);
    CHECK(entry(p, r, "op1").note == "no inverse action");
    CHECK_FALSE(entry(p, r, "op1").del_within_pre);
  }
  SUBCASE("adl is never certified") {
    auto p = fx::pddl(corpus::briefcase_domain(), corpus::briefcase_problem());
    auto r = check_invertibility(p);
    CHECK_FALSE(r.strips);
    CHECK_FALSE(r.certified);
  }
}

TEST_CASE("relaxed achievability") {
  auto p = fx::ground_file("deadlock");
  CHECK(relaxed_achievable(p, p.init, fx::atom(p, "A")));
  CHECK_FALSE(relaxed_achievable(p, fx::state(p, {"B", "C"}), fx::atom(p, "A")));
  CHECK(relaxed_achievable(p, fx::state(p, {"B"}), fx::atom(p, "B")));

  auto view = reduced_actions(p, fx::atoms(p, {"F"}));
  view.drop_action(fx::action(p, "op3"));
  CHECK_FALSE(relaxed_achievable(p, p.init, fx::atom(p, "A"), &view));

  // Monotone in the state.
  auto b = fx::blocks3();
  auto idx = enumerate_reachable(b);
  for (const auto& s : idx.states) {
    for (auto g : b.goals) {
      if (relaxed_achievable(b, s, g)) {
        auto bigger = s;
        for (AtomId x = 0; x < b.num_atoms(); ++x) bigger.insert(x);
        CHECK(relaxed_achievable(b, bigger, g));
      }
    }
  }
}

TEST_CASE("forced implies reasonable") {
  for (auto p : {fx::blocks3(), fx::ground_file("deadlock"), fx::ground_file("fixpoint"),
                 fx::pddl(corpus::gripper_domain(), corpus::gripper_problem(2))}) {
    auto idx = enumerate_reachable(p);
    for (auto a : p.goals) {
      for (auto b : p.goals) {
        if (a == b) continue;
        if (decide_forced(p, idx, b, a).holds) CHECK(decide_reasonable(p, idx, b, a).holds);
      }
    }
  }
}

TEST_CASE("ordering soundness against the oracle") {
  for (auto p : {fx::blocks3(), fx::pddl(corpus::blocks_domain(), corpus::stack_problem(4)),
                 fx::pddl(corpus::hanoi_domain(), corpus::hanoi_problem(3)),
                 fx::pddl(corpus::tyreworld_domain(), corpus::tyreworld_problem(1)),
                 fx::pddl(corpus::briefcase_domain(), corpus::briefcase_problem())}) {
    auto idx = enumerate_reachable(p);
    PlanningGraph g(p, GraphOptions{false});
    for (auto a : p.goals) {
      for (auto b : p.goals) {
        if (a == b) continue;
        if (order_e(p, g, b, a).holds) CHECK(decide_reasonable(p, idx, b, a).holds);
      }
    }
  }
}

TEST_CASE("fixpoint premise diagnostic") {
  auto p = fx::blocks3();
  auto idx = enumerate_reachable(p);
  auto d = fixpoint_premise(p, idx, fx::atom(p, "on(b,c)"), fx::atom(p, "on(a,b)"));
  CHECK(d.states > 0);
  CHECK(d.satisfied <= d.states);
}

TEST_CASE("invertibility json") {
  auto p = fx::blocks3();
  auto idx = enumerate_reachable(p);
  auto j = invertibility_to_json(p, check_invertibility(p, &idx));
  CHECK(j["certified"] == true);
  CHECK(j["actions"].size() == p.actions.size());
}
