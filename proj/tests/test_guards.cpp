#include <doctest.h>

#include "fixtures.hpp"
#include "symaut/errors.hpp"
#include "symaut/guards.hpp"

using namespace symaut;

TEST_CASE("satisfaction on the running example") {
  const Dataset d = fixtures::table1();
  const auto& attrs = d.attributes();
  const auto& alpha = d.alphabet();
  const Mvs& id1 = d[0].mvs;
  CHECK(satisfies(parse_guard("lt(alive,necrotic)", attrs, alpha), id1.coordinate(7)));
  CHECK_FALSE(satisfies(parse_guard("neg(alive,b)", attrs, alpha), id1.coordinate(7)));
  CHECK(satisfies(parse_guard("at_least(necrotic,c)", attrs, alpha), id1.coordinate(8)));
  CHECK(satisfies(parse_guard("at_most(alive,b)", attrs, alpha), id1.coordinate(7)));
  CHECK(satisfies(parse_guard("eq(apoptotic,h)", attrs, alpha), id1.coordinate(10)));
  // id1 at t=3: alive=e, necrotic=b -> not lt either way round for equal values
  const Mvs same("s", 3, 1, std::vector<Symbol>{2, 2, 0});
  CHECK_FALSE(satisfies(parse_guard("lt(alive,necrotic)", attrs, alpha), same.coordinate(1)));
  CHECK_FALSE(satisfies(parse_guard("lt(necrotic,alive)", attrs, alpha), same.coordinate(1)));
}

TEST_CASE("universe sizes") {
  const AttributeSet three({"alive", "necrotic", "apoptotic"});
  const auto h = AlphabetSpec::letters(8);
  CHECK(ground_universe(three, h, {GuardKind::neg, GuardKind::lt, GuardKind::at_least}).size() == 54);
  CHECK(ground_universe(AttributeSet({"x"}), h, {GuardKind::lt}).size() == 0);
  CHECK(ground_universe(three, AlphabetSpec::letters(10), GuardKinds::classic()).size() == 30);
  CHECK(ground_universe(three, h, GuardKinds::symbolic()).size() == 4 * 3 * 8 + 6);
  CHECK_THROWS_AS(ground_universe(three, h, GuardKinds{}), ConfigError);
}

TEST_CASE("universe order is kind, attribute, value") {
  const AttributeSet two({"x", "y"});
  const auto u = ground_universe(two, AlphabetSpec::letters(2), GuardKinds::symbolic());
  for (std::size_t i = 1; i < u.size(); ++i) CHECK(u[i - 1] < u[i]);
  CHECK(u[0] == GroundGuard{GuardKind::eq, 0, 0});
  CHECK(u.find(u[5]) == 5u);
}

TEST_CASE("observed grounding uses only occurring symbols") {
  const Dataset d = fixtures::table1();
  const auto obs = observed_symbols(d);
  CHECK(obs.size() == 8);
  const auto u = ground_for_dataset(d, GuardKinds::classic());
  CHECK(u.size() == 24);
}

TEST_CASE("render and parse guards") {
  const Dataset d = fixtures::table1();
  const auto universe = ground_universe(d.attributes(), d.alphabet(), GuardKinds::symbolic());
  for (const auto& g : universe.guards())
    CHECK(parse_guard(render_guard(g, d.attributes(), d.alphabet()), d.attributes(), d.alphabet()) == g);
  CHECK(render_guard(GroundGuard{GuardKind::at_least, 0, 4}, d.attributes(), d.alphabet()) == "at_least(alive,e)");
  CHECK_THROWS_AS(parse_guard("lt(alive,alive)", d.attributes(), d.alphabet()), ValidationError);
  CHECK_THROWS_AS(parse_guard("eq(mass,a)", d.attributes(), d.alphabet()), ValidationError);
  CHECK_THROWS_AS(parse_guard("eq(alive,z)", d.attributes(), d.alphabet()), ValidationError);
  CHECK_THROWS_AS(parse_guard("near(alive,a)", d.attributes(), d.alphabet()), ValidationError);
}

TEST_CASE("kind sets") {
  CHECK(GuardKinds::parse("eq,lt").to_string() == "eq,lt");
  CHECK(GuardKinds::parse("symbolic") == GuardKinds::symbolic());
  CHECK(GuardKinds::parse("classic") == GuardKinds::classic());
  CHECK_THROWS_AS(GuardKinds::parse("eq,bogus"), ConfigError);
}
