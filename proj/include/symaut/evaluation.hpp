#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symaut/automaton.hpp"
#include "symaut/batch_learner.hpp"
#include "symaut/incremental.hpp"
#include "symaut/model.hpp"

namespace symaut {

struct Metrics {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;  ///< 0 when precision + recall is 0
};

/// `accepted[i]` is the prediction for example i; accepted means positive.
Metrics compute_metrics(const std::vector<bool>& accepted, std::span<const Label> truth);
std::vector<bool> predict(const Asa& asa, const Dataset& dataset, const Semantics& sem);

/// Test-set indices of each fold, stratified by label. Throws ConfigError for
/// fewer than 2 folds or a class with fewer examples than folds.
std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& dataset, std::size_t folds, std::uint64_t seed);

/// q0 plus every state that is the source or target of a transition.
std::size_t reported_states(const Asa& asa);

enum class LearnerKind { batch, incremental };

struct CrossValidationConfig {
  LearnerKind learner = LearnerKind::batch;
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  BatchConfig batch;
  IncrConfig incremental;
  /// 0 reads SYMAUT_WORKERS (default 1).
  std::size_t workers = 0;
};

struct FoldResult {
  Metrics metrics;
  std::size_t states = 0;
  std::size_t transitions = 0;
  double train_minutes = 0.0;
  Asa model = Asa::empty(1);
};

struct Prediction {
  std::size_t fold = 0;
  std::string seq_id;
  Label label = Label::negative;
  bool accepted = false;
};

struct EvalReport {
  std::vector<FoldResult> folds;
  double mean_f1 = 0.0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_states = 0.0;
  double mean_transitions = 0.0;
  double mean_train_minutes = 0.0;
  std::vector<Prediction> predictions;
};

EvalReport cross_validate(const Dataset& dataset, const CrossValidationConfig& cfg);

/// CSV `fold,seq_id,label,predicted`.
std::string write_predictions(std::span<const Prediction> predictions);

std::size_t worker_count_from_env();

/// 64-bit FNV-1a, used for configuration fingerprints.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

}  // namespace symaut
