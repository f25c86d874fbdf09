#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "symaut/automaton.hpp"
#include "symaut/batch_learner.hpp"
#include "symaut/guards.hpp"
#include "symaut/model.hpp"
#include "symaut/objective.hpp"

namespace symaut {

struct IncrConfig {
  std::size_t batch_size = 50;
  /// A batch is revised when its error rate (misclassified / size) exceeds this.
  double error_threshold = 0.0;
  double per_batch_timeout = 5.0;
  std::size_t k_best = 3;
  std::size_t iterations = 3;
  std::uint64_t shuffle_seed = 0;
  /// Compare only the error level when deciding adoption.
  bool error_only = false;
  /// Search settings for each revision; its timeout is replaced by per_batch_timeout.
  BatchConfig batch;

  void validate() const;
};

/// Acceptance counts of one transition fact over the accepting paths of the
/// current incumbent.
struct FactStats {
  Transition transition;
  std::int64_t p = 0;  ///< accepted positives whose accepting paths use the fact
  std::int64_t n = 0;  ///< accepted negatives whose accepting paths use the fact

  std::int64_t weight() const noexcept { return n - p; }
};

struct GuardStats {
  std::vector<FactStats> facts;  ///< one entry per transition of the automaton, same order

  const FactStats* find(const Transition& t) const;
};

GuardStats guard_stats(const Asa& asa, const Dataset& dataset, const Semantics& sem);

struct Revision {
  Asa asa;
  CostVector local_cost;  ///< batch cost including removal penalties
};

/// Local search on `batch` started from the incumbent. Removing an existing
/// transition costs -w (a reward when n > p); removing an existing accepting
/// state costs 1. Returns up to k_best distinct automata by ascending local cost.
std::vector<Revision> revise(const Asa& incumbent, const Dataset& batch, const GuardStats& stats,
                             const IncrConfig& cfg, const GuardUniverse& universe);
/// Same, grounding over the batch plus the incumbent's own guards.
std::vector<Revision> revise(const Asa& incumbent, const Dataset& batch, const GuardStats& stats,
                             const IncrConfig& cfg);

struct BatchLogEntry {
  std::size_t iteration = 0;
  std::size_t batch = 0;
  double local_error = 0.0;
  bool revised = false;
  bool adopted = false;
  CostVector global_cost;
};

struct IncrementalLog {
  std::vector<BatchLogEntry> batches;
  /// Global cost of the incumbent after each adoption, preceded by the initial cost.
  std::vector<CostVector> adoptions;
};

/// Tab-separated: iteration, batch, local_error, revised, adopted, error, reg.
void write_progress(std::ostream& out, const IncrementalLog& log);

LearnerReport learn_incremental(const Dataset& dataset, const IncrConfig& cfg, IncrementalLog* log = nullptr);

}  // namespace symaut
