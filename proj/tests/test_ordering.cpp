#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "gam/graphplan.hpp"
#include "gam/ordering.hpp"

using namespace gam;

namespace {

AtomSet goals_matching(const PlanningProblem& p, const std::string& prefix) {
  AtomSet out;
  for (auto g : p.goals) {
    if (p.atoms.name(g).rfind(prefix, 0) == 0) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("reduced action set") {
  auto p = fx::blocks3();
  auto view = reduced_actions(p, {fx::atom(p, "on(b,c)")});
  CHECK(view.num_actions() == p.actions.size() - 1);
  CHECK_FALSE(view.has_action(fx::action(p, "unstack(b,c)")));
  CHECK(reduced_actions(p, {}).num_actions() == p.actions.size());
}

TEST_CASE("adl reduction drops effects whose implied deletes hit the anchor") {
  auto p = fx::ground_file("adl_dsets");
  auto view = reduced_actions(p, fx::atoms(p, {"Y"}));
  CHECK(view.has_effect(0, 0));
  CHECK_FALSE(view.has_effect(0, 1));
  CHECK_FALSE(view.has_effect(0, 2));
  auto x = reduced_actions(p, fx::atoms(p, {"X"}));
  CHECK_FALSE(x.has_action(0));
}

TEST_CASE("implied deletes") {
  auto p = fx::ground_file("adl_dsets");
  const auto& o = p.actions[0];
  CHECK(implied_deletes(o, 0) == fx::atoms(p, {"X"}));
  CHECK(implied_deletes(o, 1) == fx::atoms(p, {"X", "Y"}));
  CHECK(implied_deletes(o, 2) == fx::atoms(p, {"X", "Y"}));
  CHECK(achieving_deletes(o, fx::atom(p, "A")) == fx::atoms(p, {"X", "Y"}));

  auto v = fx::ground_file("adl_dsets_variant");
  CHECK(achieving_deletes(v.actions[0], fx::atom(v, "A")) == fx::atoms(v, {"X"}));
}

TEST_CASE("order_e on blocks3") {
  auto p = fx::blocks3();
  PlanningGraph g(p);
  auto ab = fx::atom(p, "on(a,b)");
  auto bc = fx::atom(p, "on(b,c)");
  auto t = order_e(p, g, bc, ab);
  CHECK(t.holds);
  CHECK_FALSE(t.trivial);
  CHECK_FALSE(order_e(p, g, ab, bc).holds);
  CHECK_THROWS_AS(order_e(p, g, ab, ab), std::invalid_argument);
}

TEST_CASE("order_e without achievers holds vacuously") {
  auto p = fx::ground_file("deadlock");
  auto lonely = p.atoms.intern("Z");
  p.init = State(p.num_atoms(), p.init.atoms());
  p.goals = sets::normalized({fx::atom(p, "A"), lonely});
  PlanningGraph g(p);
  CHECK(order_e(p, g, lonely, fx::atom(p, "A")).holds);
  auto t = order_e(p, g, fx::atom(p, "A"), lonely);
  CHECK(t.holds);
  CHECK(t.trivial);
}

TEST_CASE("delete-list false sets") {
  auto p = fx::blocks3();
  CHECK(compute_f_da(p, {fx::atom(p, "on(b,c)")}) == fx::atoms(p, {"clear(c)", "holding(b)"}));
  CHECK(compute_f_da(p, {fx::atom(p, "on(a,b)")}) == fx::atoms(p, {"clear(b)", "holding(a)"}));
  auto f2 = fx::ground_file("fixpoint");
  CHECK(compute_f_da(f2, fx::atoms(f2, {"A"})) == fx::atoms(f2, {"D"}));
  auto d = fx::ground_file("deadlock");
  CHECK(compute_f_da(d, fx::atoms(d, {"B"})) == fx::atoms(d, {"D"}));
  CHECK(compute_f_da(d, fx::atoms(d, {"C"})).empty());
}

TEST_CASE("fixpoint reduction") {
  SUBCASE("four-action example empties F") {
    auto p = fx::ground_file("fixpoint");
    auto r = fixpoint_reduce(p, fx::atoms(p, {"A"}));
    CHECK(r.f_da == fx::atoms(p, {"D"}));
    CHECK(r.f_star.empty());
    CHECK(r.o_star.num_actions() == 4);
    CHECK(r.removed == fx::atoms(p, {"D"}));
  }
  SUBCASE("blocks3 keeps F unchanged") {
    auto p = fx::blocks3();
    auto r = fixpoint_reduce(p, {fx::atom(p, "on(b,c)")});
    CHECK(r.f_star == r.f_da);
    CHECK(r.f_star == fx::atoms(p, {"clear(c)", "holding(b)"}));
    CHECK(r.removed.empty());
    for (auto a : r.o_star.actions()) CHECK_FALSE(sets::intersects(p.actions[a].pre(), r.f_star));
  }
  SUBCASE("empty F_DA") {
    auto p = fx::ground_file("deadlock");
    auto r = fixpoint_reduce(p, fx::atoms(p, {"C"}));
    CHECK(r.f_star.empty());
    CHECK(r.removed.empty());
    CHECK(r.o_star == reduced_actions(p, fx::atoms(p, {"C"})));
  }
}

TEST_CASE("possible achievability") {
  auto p = fx::blocks3();
  auto ab = fx::atom(p, "on(a,b)");
  auto bc = fx::atom(p, "on(b,c)");
  CHECK(possibly_achievable(p, ab, fixpoint_reduce(p, {bc}).o_star));
  CHECK_FALSE(possibly_achievable(p, bc, fixpoint_reduce(p, {ab}).o_star));

  PlanningProblem q;
  auto x = q.atoms.intern("X");
  q.actions.push_back(Action::strips("make", {}, {x}, {}));
  q.init = State(q.num_atoms());
  CHECK(possibly_achievable(q, x, ActionView(q)));
}

TEST_CASE("order_h") {
  auto p = fx::blocks3();
  auto ab = fx::atom(p, "on(a,b)");
  auto bc = fx::atom(p, "on(b,c)");
  CHECK(order_h(p, bc, ab));
  CHECK_FALSE(order_h(p, ab, bc));

  auto d = fx::ground_file("deadlock");
  CHECK(order_h(d, fx::atom(d, "B"), fx::atom(d, "A")));
  CHECK_FALSE(order_h(d, fx::atom(d, "A"), fx::atom(d, "B")));

  auto f = fx::ground_file("fixpoint");
  CHECK_FALSE(order_h(f, fx::atom(f, "B"), fx::atom(f, "A")));
}

TEST_CASE("set orderings") {
  auto p = fx::blocks3();
  PlanningGraph g(p);
  auto ab = fx::atom(p, "on(a,b)");
  auto bc = fx::atom(p, "on(b,c)");
  CHECK(order_H(p, {bc}, {ab}) == order_h(p, bc, ab));
  CHECK(order_H(p, {ab}, {bc}) == order_h(p, ab, bc));
  CHECK(order_E(p, g, {bc}, {ab}).holds == order_e(p, g, bc, ab).holds);
  CHECK(order_E(p, g, {ab}, {bc}).holds == order_e(p, g, ab, bc).holds);
  CHECK_THROWS_AS(order_H(p, {}, {ab}), std::invalid_argument);
  CHECK_THROWS_AS(order_E(p, g, {ab}, {}), std::invalid_argument);

  auto t = fx::pddl(corpus::tyreworld_domain(), corpus::tyreworld_problem(3));
  PlanningGraph tg(t, GraphOptions{false});
  auto on = goals_matching(t, "on(");
  auto tight = goals_matching(t, "tight(");
  REQUIRE(on.size() == 3);
  REQUIRE(tight.size() == 3);
  CHECK(order_E(t, tg, on, tight).holds);
  CHECK_FALSE(order_H(t, tight, on));
}

TEST_CASE("adl orderings on the briefcase") {
  auto p = fx::pddl(corpus::briefcase_domain(), corpus::briefcase_problem());
  PlanningGraph g(p);
  auto home = fx::atom(p, "at(paycheck,home)");
  auto office = fx::atom(p, "at-b(office)");
  auto dict = fx::atom(p, "at(dictionary,office)");
  CHECK(order_h(p, dict, office));
  CHECK(order_h(p, home, office));
  CHECK(order_h(p, office, dict));  // a cycle, so one agenda entry
  CHECK(order_e(p, g, dict, office).holds);
}

TEST_CASE("goal analysis caches agree with the free functions") {
  auto p = fx::pddl(corpus::tyreworld_domain(), corpus::tyreworld_problem(2));
  GoalAnalysis ga(p);
  for (auto a : p.goals) {
    CHECK(ga.f_da({a}) == compute_f_da(p, {a}));
    auto fp = ga.fixpoint({a});
    auto ref = fixpoint_reduce(p, {a});
    CHECK(fp.f_star == ref.f_star);
    CHECK(fp.o_star == ref.o_star);
    CHECK(sets::is_subset(fp.f_star, fp.f_da));
  }
}
