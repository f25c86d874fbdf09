#pragma once

#include <string>

#include "symaut/automaton.hpp"
#include "symaut/batch_learner.hpp"
#include "symaut/incremental.hpp"
#include "symaut/model.hpp"

namespace symaut {

/// An automaton to revise together with the statistics of its transitions.
struct AspIncumbent {
  const Asa& asa;
  const GuardStats& stats;
};

/// Learning program in ASP syntax: generate rules, guard definitions,
/// interpreter, weak constraints and the example facts. States are the
/// integers 1..N with 1 the start state; q<i> in model files is state i+1.
/// Output is deterministic for equal inputs.
std::string export_asp(const Dataset& dataset, const BatchConfig& cfg, const AspIncumbent* incumbent = nullptr);

/// ASP term for a name: kept as is when it is a lowercase identifier or an
/// integer, quoted otherwise.
std::string asp_term(std::string_view name);

}  // namespace symaut
