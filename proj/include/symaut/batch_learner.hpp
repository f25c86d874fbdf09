#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symaut/automaton.hpp"
#include "symaut/evaluator.hpp"
#include "symaut/guards.hpp"
#include "symaut/objective.hpp"
#include "symaut/simd/kernels.hpp"

namespace symaut {

struct BatchConfig {
  StructuralConfig structural;
  ObjectiveConfig objective;
  Semantics semantics;
  GuardKinds kinds = GuardKinds::symbolic();
  ValueDomain values = ValueDomain::observed;

  double timeout_seconds = 60.0;
  std::uint64_t seed = 0;
  std::size_t restarts = 8;
  /// Upper bound on transition facts; 0 means unbounded.
  std::size_t max_transitions = 0;
  /// Compound (two-change) moves examined per step; sampled when larger.
  std::size_t pair_move_cap = 50000;
  /// Equal-cost moves allowed in a row before a restart.
  std::size_t sideways_cap = 16;
  /// Resume runs from the first diverging time step instead of re-simulating.
  bool use_prefix_cache = true;
  simd::Backend backend = simd::active_backend();

  void validate() const;
};

struct LearnerReport {
  Asa best_asa = Asa::empty(1);
  CostVector cost;
  double wall_seconds = 0.0;
  std::size_t iterations = 0;
  /// True when the whole search space was covered (proof of optimality).
  bool exhaustive = false;
  bool timed_out = false;
  /// Best-so-far cost after every improvement; non-increasing.
  std::vector<CostVector> trajectory;
};

/// Extra level-1 cost for removing facts of an existing automaton.
struct RemovalPenalties {
  std::vector<std::pair<Fact, std::int64_t>> transitions;  ///< cost charged when the fact is absent
  StateSet accepting = 0;  ///< each absent state costs 1

  std::int64_t cost(const Candidate& c) const;
};

struct SearchOptions {
  std::optional<Candidate> start;
  RemovalPenalties penalties;
  /// Number of distinct best candidates to keep (>= 1).
  std::size_t k_best = 1;
};

struct ScoredCandidate {
  Candidate candidate;
  CostVector cost;
};

struct SearchOutcome {
  std::vector<ScoredCandidate> best;  ///< up to k_best, ascending cost
  std::size_t iterations = 0;
  bool timed_out = false;
  std::vector<CostVector> trajectory;
};

/// Restarted hill climbing over {add, remove, redirect, toggle accepting}
/// plus two-change compound moves. Deterministic for a fixed seed unless the
/// timeout fires.
SearchOutcome search(Evaluator& evaluator, const GuardUniverse& universe, const BatchConfig& cfg,
                     const SearchOptions& options = {});

/// True when the candidate satisfies the structural configuration and the
/// transition cap.
bool structurally_valid(const Candidate& c, const BatchConfig& cfg);

/// Anytime native search for a CostVector-minimal ASA.
LearnerReport local_search(const Dataset& dataset, const BatchConfig& cfg);

struct EnumerationCaps {
  std::size_t max_transitions = 2;
  double max_candidates = 1e7;
};

/// Exhaustive search over all fact subsets of size <= caps.max_transitions and
/// all valid accepting sets. Ties: fewer transitions, then the lexicographically
/// smallest sorted list of rendered facts. Throws ConfigError when the space
/// exceeds caps.max_candidates.
LearnerReport enumerate_optimal(const Dataset& dataset, const BatchConfig& cfg, EnumerationCaps caps = {});

/// Number of candidates enumerate_optimal would examine.
double enumeration_size(std::size_t num_facts, std::size_t max_transitions, std::size_t num_accepting_sets);

/// Sorted rendered facts of a candidate (tie-break key).
std::vector<std::string> rendered_facts(const Candidate& c, std::size_t num_states, const GuardUniverse& universe,
                                        const Dataset& dataset);

}  // namespace symaut
