#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symaut/automaton.hpp"
#include "symaut/model.hpp"

namespace symaut {

enum class EarlinessMode : std::uint8_t {
  /// Every time step at which an accepting state is occupied costs its index.
  sum_all_accept_steps,
  /// Only the first accepting time step is charged.
  first_accept_step,
};

std::string_view earliness_mode_name(EarlinessMode mode);

struct ObjectiveConfig {
  std::int64_t w_fp = 1;  ///< per accepted negative (level 2)
  std::int64_t w_fn = 1;  ///< per rejected positive (level 2)
  std::int64_t transition_penalty = 1;  ///< per transition fact (level 1)
  bool earliness_enabled = false;
  EarlinessMode earliness_mode = EarlinessMode::sum_all_accept_steps;

  void validate() const;

  /// Weights proportional to the opposite class size, rounded, at least 1.
  static ObjectiveConfig balanced(const Dataset& dataset, ObjectiveConfig base);
  static ObjectiveConfig balanced(const Dataset& dataset);
};

struct StructuralConfig {
  std::size_t max_states = 3;
  bool accepting_absorbing = false;
  bool start_not_accepting = false;

  void validate() const;
};

/// Two priority levels, minimized lexicographically: error first.
struct CostVector {
  std::int64_t error = 0;
  std::int64_t reg = 0;

  auto operator<=>(const CostVector&) const = default;
};

std::string to_string(const CostVector& c);

/// Throws ConfigError when the objective needs semantics the interpreter is
/// not using (earliness without earliest_absorbing acceptance).
void check_compatible(const ObjectiveConfig& objective, const Semantics& sem);

/// Throws ConfigError for earliest_absorbing acceptance without absorbing
/// accepting states.
void check_compatible(const StructuralConfig& structural, const Semantics& sem);

/// w_fn * rejected positives + w_fp * accepted negatives.
std::int64_t error_cost(const Asa& asa, const Dataset& dataset, const Semantics& sem, const ObjectiveConfig& cfg = {});

/// Transition term plus, when enabled, the earliness term over accepted examples.
std::int64_t reg_cost(const Asa& asa, const Dataset& dataset, const Semantics& sem, const ObjectiveConfig& cfg);

/// Earliness charge of one run (0 when rejected).
std::int64_t earliness_term(const RunResult& run, std::size_t length, EarlinessMode mode);

CostVector evaluate_cost(const Asa& asa, const Dataset& dataset, const Semantics& sem, const ObjectiveConfig& cfg);

struct StructuralViolation {
  std::string rule;  ///< "max_states", "accepting_absorbing", "start_not_accepting"
  std::optional<Transition> transition;
  std::optional<State> state;
  std::string detail;
};

std::vector<StructuralViolation> check_structural(const Asa& asa, const StructuralConfig& cfg);

}  // namespace symaut
