#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "symaut/errors.hpp"
#include "symaut/objective.hpp"

using namespace symaut;

TEST_CASE("error cost on the two-example dataset") {
  const Dataset d = fixtures::table1();
  CHECK(error_cost(fixtures::parse(fixtures::kFig2, d), d, fixtures::strict_end()) == 0);
  CHECK(error_cost(Asa::empty(2), d, fixtures::strict_end()) == 1);

  Semantics skip;
  skip.policy = ConsumptionPolicy::skip_till_any_match;
  ObjectiveConfig w;
  w.w_fp = 2;
  CHECK(error_cost(Asa(1, state_bit(0), {}), d, skip, w) == 2);
}

TEST_CASE("regularization terms of the two-state example") {
  const Dataset d = fixtures::table1();
  const Asa asa = fixtures::parse(fixtures::kTwoState, d);
  ObjectiveConfig cfg;
  CHECK(reg_cost(asa, d, fixtures::strict_earliest(), cfg) == 2);

  cfg.earliness_enabled = true;
  cfg.earliness_mode = EarlinessMode::first_accept_step;
  CHECK(reg_cost(asa, d, fixtures::strict_earliest(), cfg) == 2 + 6);
  cfg.earliness_mode = EarlinessMode::sum_all_accept_steps;
  CHECK(reg_cost(asa, d, fixtures::strict_earliest(), cfg) == 2 + 51);
  const RunResult r = run(asa, d[0].mvs, fixtures::strict_earliest());
  CHECK(earliness_term(r, 10, EarlinessMode::sum_all_accept_steps) == 51);
  CHECK(earliness_term(r, 10, EarlinessMode::first_accept_step) == 6);

  CHECK_THROWS_AS(reg_cost(asa, d, fixtures::strict_end(), cfg), ConfigError);
}

TEST_CASE("structural checks") {
  const Dataset d = fixtures::table1();
  StructuralConfig cfg;
  cfg.max_states = 3;
  cfg.accepting_absorbing = true;
  CHECK(check_structural(fixtures::parse(fixtures::kFig2, d), cfg).empty());

  const Asa leaky = fixtures::parse("transition(q1,eq(alive,a),q0). accepting(q1).", d);
  const auto v = check_structural(leaky, cfg);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "accepting_absorbing");
  CHECK(v[0].transition.has_value());

  StructuralConfig start;
  start.start_not_accepting = true;
  const auto s = check_structural(fixtures::parse(fixtures::kSingleState, d), start);
  REQUIRE(s.size() == 1);
  CHECK(s[0].rule == "start_not_accepting");

  StructuralConfig small;
  small.max_states = 1;
  CHECK(check_structural(fixtures::parse(fixtures::kFig2, d), small).size() == 1);
}

TEST_CASE("cost vectors compare lexicographically") {
  CHECK(CostVector{0, 100} < CostVector{1, 0});
  CHECK(CostVector{1, 2} < CostVector{1, 3});
  CHECK(CostVector{1, 2} == CostVector{1, 2});
  CHECK(to_string(CostVector{3, 4}) == "(3@2, 4@1)");
}

TEST_CASE("compatibility checks") {
  ObjectiveConfig early;
  early.earliness_enabled = true;
  CHECK_THROWS_AS(check_compatible(early, fixtures::strict_end()), ConfigError);
  CHECK_NOTHROW(check_compatible(early, fixtures::strict_earliest()));
  StructuralConfig plain;
  CHECK_THROWS_AS(check_compatible(plain, fixtures::strict_earliest()), ConfigError);
  ObjectiveConfig bad;
  bad.w_fp = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("balanced weights follow class sizes") {
  const Dataset d = fixtures::table1();
  auto ex = d.examples();
  ex.push_back(ex[1]);
  ex.push_back(ex[1]);
  const Dataset skewed(d.alphabet(), d.attributes(), ex);
  const ObjectiveConfig w = ObjectiveConfig::balanced(skewed);
  CHECK(w.w_fn == 3);
  CHECK(w.w_fp == 1);
}

TEST_CASE("error cost is invariant under renaming non-start states") {
  std::mt19937_64 rng(9);
  const Dataset d = fixtures::table1();
  const auto universe = ground_universe(d.attributes(), d.alphabet(), GuardKinds::symbolic());
  Semantics skip;
  skip.policy = ConsumptionPolicy::skip_till_any_match;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<Transition> ts;
    for (int i = 0; i < 5; ++i)
      ts.push_back({static_cast<State>(rng() % n), universe[rng() % universe.size()], static_cast<State>(rng() % n)});
    const StateSet acc = rng() % (StateSet{1} << n);
    std::vector<State> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<State>(i);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    std::vector<Transition> renamed;
    StateSet racc = 0;
    for (const auto& t : ts) renamed.push_back({perm[t.from], t.guard, perm[t.to]});
    for (std::size_t q = 0; q < n; ++q)
      if (contains(acc, static_cast<State>(q))) racc |= state_bit(perm[q]);
    for (const Semantics& sem : {fixtures::strict_end(), skip}) {
      CHECK(error_cost(Asa(n, acc, ts), d, sem) == error_cost(Asa(n, racc, renamed), d, sem));
    }
  }
}
