#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "symaut/automaton.hpp"
#include "symaut/errors.hpp"

using namespace symaut;

TEST_CASE("fig2 automaton accepts id1 at step 8 and dies on id2 at time 6") {
  const Dataset d = fixtures::table1();
  const Asa asa = fixtures::parse(fixtures::kFig2, d);
  const RunResult r1 = run(asa, d[0].mvs, fixtures::strict_end());
  CHECK(r1.accepted);
  CHECK(r1.first_accept_time == 8u);
  CHECK(r1.occupied_at(1) == state_bit(0));
  CHECK(r1.occupied_at(11) == state_bit(1));

  const RunResult r2 = run(asa, d[1].mvs, fixtures::strict_end());
  CHECK_FALSE(r2.accepted);
  CHECK(r2.dead_time == 6u);
  CHECK(r2.occupied_at(6) == 0);
  CHECK(r2.used_transitions.empty());
}

TEST_CASE("two-state example accepts id1 at step 6 under earliest acceptance") {
  const Dataset d = fixtures::table1();
  const Asa asa = fixtures::parse(fixtures::kTwoState, d);
  const RunResult r1 = run(asa, d[0].mvs, fixtures::strict_earliest());
  CHECK(r1.accepted);
  CHECK(r1.first_accept_time == 6u);
  CHECK_FALSE(run(asa, d[1].mvs, fixtures::strict_earliest()).accepted);
}

TEST_CASE("single-state example separates the two examples") {
  const Dataset d = fixtures::table1();
  const Asa asa = fixtures::parse(fixtures::kSingleState, d);
  CHECK(run(asa, d[0].mvs, fixtures::strict_end()).accepted);
  const RunResult r2 = run(asa, d[1].mvs, fixtures::strict_end());
  CHECK_FALSE(r2.accepted);
  CHECK(r2.dead_time == 6u);
  CHECK(r2.first_accept_time == 1u);
}

TEST_CASE("skip-till-any-match keeps states whose guards do not fire") {
  const Dataset d = fixtures::table1();
  const Asa asa = fixtures::parse(fixtures::kFig2, d);
  Semantics skip;
  skip.policy = ConsumptionPolicy::skip_till_any_match;
  const RunResult r2 = run(asa, d[1].mvs, skip);
  CHECK_FALSE(r2.dead_time.has_value());
  for (std::size_t t = 1; t <= 11; ++t) CHECK(r2.occupied_at(t) != 0);
}

TEST_CASE("used transitions of the fig2 run") {
  const Dataset d = fixtures::table1();
  const Asa asa = fixtures::parse(fixtures::kFig2, d);
  const RunResult r = run(asa, d[0].mvs, fixtures::strict_end());
  CHECK(r.used_transitions.size() == 3);
  Semantics witness;
  witness.attribution = PathAttribution::single_witness;
  CHECK(run(asa, d[0].mvs, witness).used_transitions.size() == 3);
}

TEST_CASE("render and parse round trip") {
  const Dataset d = fixtures::table1();
  const Asa asa = fixtures::parse(fixtures::kFig2, d);
  const std::string text = render_asa(asa, d.attributes(), d.alphabet());
  CHECK(fixtures::parse(text.c_str(), d) == asa);
  CHECK(text.find("accepting(q1).") != std::string::npos);
}

TEST_CASE("parse errors carry line and column") {
  const Dataset d = fixtures::table1();
  try {
    parse_asa("accepting(q0).\ntransition(q0,foo(alive,b),q0).\n", d.attributes(), d.alphabet());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_asa("transition(q0,eq(alive,b),q0)", d.attributes(), d.alphabet()), ParseError);
  CHECK_THROWS_AS(parse_asa("accepting(x1).", d.attributes(), d.alphabet()), ParseError);
  CHECK_THROWS_AS(parse_asa("initial(q0).", d.attributes(), d.alphabet()), ParseError);
  // comments and blank lines
  const Asa a = parse_asa("% c\n\naccepting(q2). % trailing\n", d.attributes(), d.alphabet());
  CHECK(a.num_states() == 3);
}

namespace {

// Enumerates every state path explicitly.
struct PathOracle {
  const Asa& asa;
  const Mvs& mvs;
  Semantics sem;
  std::vector<StateSet> occupancy;
  std::set<std::size_t> used;

  struct Step {
    State to;
    int fact;
  };

  std::vector<Step> moves(State q, std::size_t t) const {
    std::vector<Step> out;
    const auto& ts = asa.transitions();
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (ts[i].from == q && satisfies(ts[i].guard, mvs.coordinate(t))) out.push_back({ts[i].to, static_cast<int>(i)});
    const bool retain = sem.acceptance == AcceptanceMode::earliest_absorbing && asa.is_accepting(q);
    if ((out.empty() && sem.policy == ConsumptionPolicy::skip_till_any_match) || retain) out.push_back({q, -1});
    return out;
  }

  void walk(State q, std::size_t t, std::vector<int>& facts) {
    occupancy[t - 1] |= state_bit(q);
    const std::size_t n = mvs.length();
    const bool ends_here = asa.is_accepting(q) && (sem.acceptance == AcceptanceMode::earliest_absorbing || t == n + 1);
    if (ends_here)
      for (int f : facts)
        if (f >= 0) used.insert(static_cast<std::size_t>(f));
    if (t == n + 1) return;
    for (const Step& s : moves(q, t)) {
      facts.push_back(s.fact);
      walk(s.to, t + 1, facts);
      facts.pop_back();
    }
  }

  void run() {
    occupancy.assign(mvs.length() + 1, 0);
    std::vector<int> facts;
    walk(0, 1, facts);
  }
};

}  // namespace

TEST_CASE("interpreter agrees with explicit path enumeration") {
  std::mt19937_64 rng(11);
  const auto alphabet = AlphabetSpec::letters(3);
  const AttributeSet attrs({"x", "y"});
  const auto universe = ground_universe(attrs, alphabet, GuardKinds::symbolic());
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n_states = 1 + rng() % 3;
    std::vector<Transition> ts;
    const std::size_t n_trans = rng() % 5;
    for (std::size_t i = 0; i < n_trans; ++i)
      ts.push_back({static_cast<State>(rng() % n_states), universe[rng() % universe.size()],
                    static_cast<State>(rng() % n_states)});
    const Asa asa(n_states, rng() % (StateSet{1} << n_states), ts);
    const std::size_t len = 1 + rng() % 6;
    std::vector<Symbol> codes(len * 2);
    for (auto& c : codes) c = static_cast<Symbol>(rng() % 3);
    const Mvs mvs("m", 2, len, codes);
    for (int s = 0; s < 4; ++s) {
      Semantics sem;
      sem.policy = s & 1 ? ConsumptionPolicy::skip_till_any_match : ConsumptionPolicy::strict_contiguity;
      sem.acceptance = s & 2 ? AcceptanceMode::earliest_absorbing : AcceptanceMode::end_of_sequence;
      const RunResult r = run(asa, mvs, sem);
      PathOracle oracle{asa, mvs, sem, {}, {}};
      oracle.run();
      REQUIRE(r.occupancy == oracle.occupancy);
      std::set<std::size_t> got;
      for (const auto& t : r.used_transitions)
        got.insert(static_cast<std::size_t>(std::find(asa.transitions().begin(), asa.transitions().end(), t) -
                                            asa.transitions().begin()));
      CHECK(got == oracle.used);

      Semantics witness = sem;
      witness.attribution = PathAttribution::single_witness;
      const RunResult w = run(asa, mvs, witness);
      CHECK(w.accepted == r.accepted);
      for (const auto& t : w.used_transitions)
        CHECK(std::find(r.used_transitions.begin(), r.used_transitions.end(), t) != r.used_transitions.end());
    }
  }
}

TEST_CASE("earliest acceptance never flips back once absorbing") {
  const Dataset d = fixtures::table1();
  const Asa asa = fixtures::parse(fixtures::kTwoState, d);
  const RunResult r = run(asa, d[0].mvs, fixtures::strict_earliest());
  for (std::size_t t = *r.first_accept_time; t <= 11; ++t) CHECK((r.occupied_at(t) & asa.accepting()) != 0);
}

TEST_CASE("automaton construction validates states") {
  CHECK_THROWS_AS(Asa(2, state_bit(2), {}), std::invalid_argument);
  CHECK_THROWS_AS(Asa(1, 0, {{0, GroundGuard{}, 1}}), std::invalid_argument);
  const Asa a(2, 0, {{1, GroundGuard{}, 0}, {0, GroundGuard{}, 1}, {0, GroundGuard{}, 1}});
  CHECK(a.transitions().size() == 2);
  CHECK(a.transitions()[0].from == 0);
}
