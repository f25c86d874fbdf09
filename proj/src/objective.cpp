#include "symaut/objective.hpp"

#include <cmath>

#include "symaut/errors.hpp"

namespace symaut {

std::string_view earliness_mode_name(EarlinessMode mode) {
  return mode == EarlinessMode::sum_all_accept_steps ? "sum" : "first";
}

void ObjectiveConfig::validate() const {
  if (w_fp < 1 || w_fn < 1) throw ConfigError("error weights must be at least 1");
  if (transition_penalty < 0) throw ConfigError("transition penalty must be non-negative");
}

ObjectiveConfig ObjectiveConfig::balanced(const Dataset& dataset, ObjectiveConfig base) {
  const auto pos = static_cast<double>(dataset.count(Label::positive));
  const auto neg = static_cast<double>(dataset.count(Label::negative));
  if (pos > 0 && neg > 0) {
    base.w_fn = std::max<std::int64_t>(1, std::llround(neg / pos));
    base.w_fp = std::max<std::int64_t>(1, std::llround(pos / neg));
  }
  return base;
}

ObjectiveConfig ObjectiveConfig::balanced(const Dataset& dataset) { return balanced(dataset, ObjectiveConfig{}); }

void StructuralConfig::validate() const {
  if (max_states < 1 || max_states > kMaxStates)
    throw ConfigError("state budget must lie in 1.." + std::to_string(kMaxStates));
}

std::string to_string(const CostVector& c) {
  return "(" + std::to_string(c.error) + "@2, " + std::to_string(c.reg) + "@1)";
}

void check_compatible(const ObjectiveConfig& objective, const Semantics& sem) {
  if (objective.earliness_enabled && sem.acceptance != AcceptanceMode::earliest_absorbing)
    throw ConfigError("earliness regularization requires earliest_absorbing acceptance");
}

void check_compatible(const StructuralConfig& structural, const Semantics& sem) {
  if (sem.acceptance == AcceptanceMode::earliest_absorbing && !structural.accepting_absorbing)
    throw ConfigError("earliest_absorbing acceptance requires absorbing accepting states");
}

std::int64_t error_cost(const Asa& asa, const Dataset& dataset, const Semantics& sem, const ObjectiveConfig& cfg) {
  std::int64_t total = 0;
  for (const auto& e : dataset.examples()) {
    const bool accepted = run(asa, e.mvs, sem).accepted;
    if (e.label == Label::positive && !accepted) total += cfg.w_fn;
    if (e.label == Label::negative && accepted) total += cfg.w_fp;
  }
  return total;
}

std::int64_t earliness_term(const RunResult& r, std::size_t length, EarlinessMode mode) {
  if (!r.accepted || !r.first_accept_time) return 0;
  const auto first = static_cast<std::int64_t>(*r.first_accept_time);
  if (mode == EarlinessMode::first_accept_step) return first;
  // Every time step from first acceptance to n+1 has an accepting occupancy
  // (accepting states are absorbing); sum them from the trace.
  std::int64_t sum = 0;
  for (std::size_t t = *r.first_accept_time; t <= length + 1; ++t)
    if (r.occupied_at(t) != 0) sum += static_cast<std::int64_t>(t);
  return sum;
}

std::int64_t reg_cost(const Asa& asa, const Dataset& dataset, const Semantics& sem, const ObjectiveConfig& cfg) {
  check_compatible(cfg, sem);
  std::int64_t total = cfg.transition_penalty * static_cast<std::int64_t>(asa.transitions().size());
  if (!cfg.earliness_enabled) return total;
  for (const auto& e : dataset.examples())
    total += earliness_term(run(asa, e.mvs, sem), e.mvs.length(), cfg.earliness_mode);
  return total;
}

CostVector evaluate_cost(const Asa& asa, const Dataset& dataset, const Semantics& sem, const ObjectiveConfig& cfg) {
  return {error_cost(asa, dataset, sem, cfg), reg_cost(asa, dataset, sem, cfg)};
}

std::vector<StructuralViolation> check_structural(const Asa& asa, const StructuralConfig& cfg) {
  std::vector<StructuralViolation> out;
  if (asa.num_states() > cfg.max_states)
    out.push_back({"max_states", std::nullopt, std::nullopt,
                   std::to_string(asa.num_states()) + " states exceed budget " + std::to_string(cfg.max_states)});
  if (cfg.accepting_absorbing) {
    for (const auto& t : asa.transitions())
      if (asa.is_accepting(t.from) && t.to != t.from)
        out.push_back({"accepting_absorbing", t, t.from,
                       "transition leaves accepting state " + state_name(t.from) + " for " + state_name(t.to)});
  }
  if (cfg.start_not_accepting && asa.is_accepting(asa.start()))
    out.push_back({"start_not_accepting", std::nullopt, asa.start(), "start state q0 is accepting"});
  return out;
}

}  // namespace symaut
