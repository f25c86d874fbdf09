#pragma once

// Fast cost evaluation for the learners. The reference interpreter in
// automaton.hpp stays the semantic authority; this engine must agree with
// it exactly (see tests/test_evaluator.cpp).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "symaut/automaton.hpp"
#include "symaut/guards.hpp"
#include "symaut/model.hpp"
#include "symaut/objective.hpp"
#include "symaut/simd/kernels.hpp"

namespace symaut {

/// A transition fact whose guard is an index into a GuardUniverse.
struct Fact {
  State from = 0;
  std::uint16_t guard = 0;
  State to = 0;

  auto operator<=>(const Fact&) const = default;
};

/// Search-space point: a sorted, duplicate-free fact list and an accepting set.
struct Candidate {
  std::vector<Fact> facts;
  StateSet accepting = 0;

  void normalize();
  bool has(const Fact& f) const;
  auto operator<=>(const Candidate&) const = default;
};

Asa to_asa(const Candidate& c, std::size_t num_states, const GuardUniverse& universe);
/// Throws ConfigError if a guard of the automaton is not in the universe.
Candidate from_asa(const Asa& asa, const GuardUniverse& universe);

/// Guard-major bit matrix: bit (g, p) says whether guard g holds at global
/// position p, where positions enumerate (example, time) pairs.
class SatisfactionTable {
 public:
  SatisfactionTable(const Dataset& dataset, const GuardUniverse& universe,
                    simd::Backend backend = simd::active_backend());

  bool test(std::size_t guard, std::size_t position) const {
    return (bits_[guard * words_ + (position >> 6)] >> (position & 63)) & 1u;
  }
  std::size_t position(std::size_t example, std::size_t t) const { return offsets_[example] + t - 1; }
  std::size_t length(std::size_t example) const { return lengths_[example]; }
  std::size_t num_examples() const noexcept { return lengths_.size(); }
  std::size_t num_guards() const noexcept { return num_guards_; }
  std::span<const std::uint64_t> row(std::size_t guard) const {
    return std::span<const std::uint64_t>(bits_).subspan(guard * words_, words_);
  }

 private:
  std::size_t num_guards_ = 0;
  std::size_t positions_ = 0;
  std::size_t words_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> lengths_;
  std::vector<std::uint64_t> bits_;
};

struct ExampleOutcome {
  bool accepted = false;
  std::uint32_t first_accept = 0;  ///< first accepting time under earliest acceptance, else 0
};

/// per_example simulates each example with a state bitmask. example_parallel
/// keeps one bitset over examples per (state, time) and advances all examples
/// together; automatic picks it unless its tables would exceed a memory cap.
enum class EvalLayout : std::uint8_t { automatic, per_example, example_parallel };

/// Not safe for concurrent use: cost queries share scratch buffers.
class Evaluator {
 public:
  Evaluator(const Dataset& dataset, const GuardUniverse& universe, std::size_t num_states, Semantics sem,
            ObjectiveConfig objective, simd::Backend backend = simd::active_backend(),
            EvalLayout layout = EvalLayout::automatic);

  EvalLayout layout() const noexcept { return layout_; }

  std::size_t num_examples() const noexcept { return labels_.size(); }
  std::size_t num_states() const noexcept { return num_states_; }
  const Semantics& semantics() const noexcept { return sem_; }
  const ObjectiveConfig& objective() const noexcept { return objective_; }
  Label label(std::size_t e) const { return labels_[e]; }

  /// Full simulation of every example.
  std::vector<ExampleOutcome> outcomes(const Candidate& c) const;
  CostVector cost(const Candidate& c) const;

  /// Records per-example occupancy traces of `c` for cost_incremental.
  void set_incumbent(const Candidate& c);
  const Candidate& incumbent() const noexcept { return incumbent_; }
  CostVector incumbent_cost() const noexcept { return incumbent_cost_; }

  /// Same value as cost(c), resuming each example from the first time step
  /// at which `c` can differ from the incumbent.
  CostVector cost_incremental(const Candidate& c) const;

  CostVector cost_of(std::span<const ExampleOutcome> outcomes, std::size_t num_facts) const;

 private:
  struct Compiled {
    std::vector<std::uint16_t> guards;
    std::vector<State> targets;
    std::vector<std::uint32_t> begin;  // per source state, size num_states + 1
    StateSet accepting = 0;
  };

  Compiled compile(const Candidate& c) const;
  StateSet step(const Compiled& c, StateSet occ, std::size_t position) const;
  ExampleOutcome simulate(std::size_t e, const Compiled& c, std::size_t t_start, StateSet occ_start,
                          std::vector<StateSet>* trace, std::uint32_t* stop) const;
  std::int64_t example_error(std::size_t e, const ExampleOutcome& o) const;
  std::int64_t example_earliness(std::size_t e, const ExampleOutcome& o) const;

  // example_parallel layout
  void build_slices();
  const std::uint64_t* slice(std::size_t guard, std::size_t t) const {
    return slices_.data() + (guard * max_len_ + t - 1) * words_;
  }
  const std::uint64_t* alive(std::size_t t) const { return alive_.data() + (t - 1) * words_; }
  // State before each time t: occupancy [t-1][state][word], accepted set
  // [t-1][word] and the earliness accumulated over earlier times.
  struct Frames {
    std::vector<std::uint64_t> occ, acc;
    std::vector<std::int64_t> reg;
    std::size_t stop = 0;  ///< last recorded time
  };
  /// Runs from time t with occ_/acc_ loaded; `reg` is earliness accumulated before t.
  CostVector sweep(const Compiled& c, std::size_t num_facts, std::size_t t, std::int64_t reg, Frames* record) const;
  CostVector parallel_incremental(const Candidate& c) const;

  EvalLayout layout_ = EvalLayout::per_example;
  std::size_t words_ = 0;    // words per example bitset
  std::size_t max_len_ = 0;  // longest example
  std::vector<std::uint64_t> slices_;  // [guard][t-1][word], bit e: guard holds at (e, t)
  std::vector<std::uint64_t> alive_;   // [t-1][word], t = 1..max_len+1, bit e: length(e) >= t-1
  std::vector<std::uint64_t> positives_, negatives_;
  Frames frames_;  // of the incumbent
  mutable std::vector<std::uint64_t> occ_, next_, acc_, fired_;

  SatisfactionTable table_;
  std::vector<Label> labels_;
  std::size_t num_states_;
  Semantics sem_;
  ObjectiveConfig objective_;

  Candidate incumbent_;
  CostVector incumbent_cost_;
  std::vector<ExampleOutcome> incumbent_outcomes_;
  std::vector<std::vector<StateSet>> traces_;
  std::vector<std::uint32_t> stops_;
};

}  // namespace symaut
