#pragma once

#include <string>
#include <vector>

#include "symaut/automaton.hpp"
#include "symaut/batch_learner.hpp"
#include "symaut/model.hpp"

namespace fixtures {

inline symaut::Mvs make_mvs(const std::string& id, const std::vector<std::string>& rows,
                            const symaut::AlphabetSpec& alphabet) {
  const std::size_t n = rows.front().size();
  std::vector<symaut::Symbol> codes;
  for (std::size_t t = 0; t < n; ++t)
    for (const auto& row : rows) codes.push_back(*alphabet.find(std::string(1, row[t])));
  return symaut::Mvs(id, rows.size(), n, std::move(codes));
}

/// Two cell-population examples over alive/necrotic/apoptotic.
inline symaut::Dataset table1() {
  const auto alphabet = symaut::AlphabetSpec::letters(8);
  const symaut::AttributeSet attrs({"alive", "necrotic", "apoptotic"});
  std::vector<symaut::LabeledExample> ex;
  ex.push_back({make_mvs("id1", {"eeeedcbbbb", "aabbbcccde", "bbbcdghhhh"}, alphabet), symaut::Label::positive});
  ex.push_back({make_mvs("id2", {"eecdbbbbbb", "aabbbbcccc", "bbbcfghhhh"}, alphabet), symaut::Label::negative});
  return symaut::Dataset(alphabet, attrs, std::move(ex));
}

inline const char* const kFig2 =
    "transition(q0,neg(alive,b),q0).\n"
    "transition(q0,lt(alive,necrotic),q1).\n"
    "transition(q1,at_least(necrotic,c),q1).\n"
    "accepting(q1).\n";

inline const char* const kTwoState =
    "transition(q0,at_least(alive,e),q0).\n"
    "transition(q0,at_least(apoptotic,d),q1).\n"
    "accepting(q1).\n";

inline const char* const kSingleState =
    "transition(q0,neg(apoptotic,f),q0).\n"
    "accepting(q0).\n";

inline symaut::Asa parse(const char* text, const symaut::Dataset& d, std::size_t min_states = 1) {
  return symaut::parse_asa(text, d.attributes(), d.alphabet(), min_states);
}

inline symaut::Semantics strict_end() { return {}; }

inline symaut::Semantics strict_earliest() {
  symaut::Semantics s;
  s.acceptance = symaut::AcceptanceMode::earliest_absorbing;
  return s;
}

}  // namespace fixtures

namespace fixtures {

/// One-state automaton looping on eq(x,a) and eq(x,b), accepting q0, and a
/// batch of two identical "ab" sequences with opposite labels, so no revision
/// can change the batch error. With `more_negatives` the training set gives
/// eq(x,b) n > p, otherwise p > n.
struct RevisionFixture {
  symaut::Dataset training;
  symaut::Dataset batch;
  symaut::Asa incumbent;
  symaut::Transition b_loop;
};

inline RevisionFixture revision_fixture(bool more_negatives) {
  using namespace symaut;
  const auto alphabet = AlphabetSpec::letters(3);
  const AttributeSet attrs({"x"});
  auto seq = [&](const std::string& id, const std::string& s) { return make_mvs(id, {s}, alphabet); };
  std::vector<LabeledExample> ex;
  int k = 0;
  auto add = [&](const std::string& s, Label l, int count) {
    for (int i = 0; i < count; ++i) ex.push_back({seq("t" + std::to_string(++k), s), l});
  };
  if (more_negatives) {
    add("aa", Label::positive, 5);
    add("ab", Label::negative, 3);
    add("ab", Label::positive, 1);
  } else {
    add("aa", Label::positive, 2);
    add("ab", Label::positive, 4);
    add("ab", Label::negative, 1);
  }
  Dataset training(alphabet, attrs, ex);
  Dataset batch(alphabet, attrs, {{seq("b1", "ab"), Label::positive}, {seq("b2", "ab"), Label::negative}});
  Asa incumbent = parse_asa("transition(q0,eq(x,a),q0).\ntransition(q0,eq(x,b),q0).\naccepting(q0).\n", attrs,
                            alphabet);
  const Transition b_loop{0, parse_guard("eq(x,b)", attrs, alphabet), 0};
  return {std::move(training), std::move(batch), std::move(incumbent), b_loop};
}

}  // namespace fixtures

namespace fixtures {

/// Configuration behind the checked-in ASP programs.
inline symaut::BatchConfig golden_asp_config() {
  symaut::BatchConfig cfg;
  cfg.structural.max_states = 2;
  cfg.structural.accepting_absorbing = true;
  cfg.semantics.acceptance = symaut::AcceptanceMode::earliest_absorbing;
  cfg.objective.earliness_enabled = true;
  return cfg;
}

}  // namespace fixtures
