#include "symaut/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "symaut/errors.hpp"

namespace symaut {

Metrics compute_metrics(const std::vector<bool>& accepted, std::span<const Label> truth) {
  if (accepted.size() != truth.size()) throw std::invalid_argument("prediction and label counts differ");
  Metrics m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool pos = truth[i] == Label::positive;
    if (accepted[i]) {
      ++(pos ? m.tp : m.fp);
    } else {
      ++(pos ? m.fn : m.tn);
    }
  }
  if (m.tp + m.fp > 0) m.precision = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
  if (m.tp + m.fn > 0) m.recall = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
  if (m.precision + m.recall > 0) m.f1 = 2 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

std::vector<bool> predict(const Asa& asa, const Dataset& dataset, const Semantics& sem) {
  std::vector<bool> out;
  out.reserve(dataset.size());
  for (const auto& ex : dataset.examples()) out.push_back(run(asa, ex.mvs, sem).accepted);
  return out;
}

std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& dataset, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  std::vector<std::vector<std::size_t>> out(folds);
  std::mt19937_64 rng(seed);
  std::size_t next = 0;
  for (Label label : {Label::positive, Label::negative}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < dataset.size(); ++i)
      if (dataset[i].label == label) idx.push_back(i);
    if (idx.size() < folds)
      throw ConfigError("stratification failed: class '" + std::string(label_name(label)) + "' has " +
                        std::to_string(idx.size()) + " examples for " + std::to_string(folds) + " folds");
    std::shuffle(idx.begin(), idx.end(), rng);
    // continue the round robin across classes so fold sizes stay balanced
    for (std::size_t i : idx) out[next++ % folds].push_back(i);
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

std::size_t reported_states(const Asa& asa) {
  std::set<State> states{asa.start()};
  for (const auto& t : asa.transitions()) {
    states.insert(t.from);
    states.insert(t.to);
  }
  return states.size();
}

std::size_t worker_count_from_env() {
  const char* v = std::getenv("SYMAUT_WORKERS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw ConfigError("SYMAUT_WORKERS must be a positive integer");
  return static_cast<std::size_t>(n);
}

EvalReport cross_validate(const Dataset& dataset, const CrossValidationConfig& cfg) {
  const auto folds = stratified_folds(dataset, cfg.folds, cfg.seed);
  const Semantics sem = cfg.learner == LearnerKind::batch ? cfg.batch.semantics : cfg.incremental.batch.semantics;

  EvalReport report;
  report.folds.resize(folds.size());
  std::vector<std::vector<Prediction>> fold_predictions(folds.size());

  auto run_fold = [&](std::size_t f) {
    std::vector<bool> in_test(dataset.size(), false);
    for (std::size_t i : folds[f]) in_test[i] = true;
    std::vector<std::size_t> train_idx;
    for (std::size_t i = 0; i < dataset.size(); ++i)
      if (!in_test[i]) train_idx.push_back(i);
    const Dataset train = dataset.subset(train_idx);
    const Dataset test = dataset.subset(folds[f]);

    LearnerReport learned;
    if (cfg.learner == LearnerKind::batch) {
      BatchConfig b = cfg.batch;
      b.seed = cfg.batch.seed + f;
      learned = local_search(train, b);
    } else {
      IncrConfig inc = cfg.incremental;
      inc.batch.seed = cfg.incremental.batch.seed + f;
      inc.shuffle_seed = cfg.incremental.shuffle_seed + 7919 * f;
      inc.batch_size = std::min(inc.batch_size, train.size());
      learned = learn_incremental(train, inc);
    }

    FoldResult& r = report.folds[f];
    const auto accepted = predict(learned.best_asa, test, sem);
    std::vector<Label> truth;
    for (const auto& ex : test.examples()) truth.push_back(ex.label);
    r.metrics = compute_metrics(accepted, truth);
    r.states = reported_states(learned.best_asa);
    r.transitions = learned.best_asa.transitions().size();
    r.train_minutes = learned.wall_seconds / 60.0;
    r.model = learned.best_asa;
    for (std::size_t i = 0; i < test.size(); ++i)
      fold_predictions[f].push_back({f, test[i].mvs.id(), test[i].label, accepted[i]});
  };

  const std::size_t workers = std::min(cfg.workers ? cfg.workers : worker_count_from_env(), folds.size());
  if (workers <= 1) {
    for (std::size_t f = 0; f < folds.size(); ++f) run_fold(f);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t f; (f = next.fetch_add(1)) < folds.size();) {
          try {
            run_fold(f);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  const auto k = static_cast<double>(folds.size());
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto& r = report.folds[f];
    report.mean_f1 += r.metrics.f1 / k;
    report.mean_precision += r.metrics.precision / k;
    report.mean_recall += r.metrics.recall / k;
    report.mean_states += static_cast<double>(r.states) / k;
    report.mean_transitions += static_cast<double>(r.transitions) / k;
    report.mean_train_minutes += r.train_minutes / k;
    report.predictions.insert(report.predictions.end(), fold_predictions[f].begin(), fold_predictions[f].end());
  }
  return report;
}

std::string write_predictions(std::span<const Prediction> predictions) {
  std::ostringstream out;
  out << "fold,seq_id,label,predicted\n";
  for (const auto& p : predictions)
    out << p.fold << ',' << p.seq_id << ',' << label_name(p.label) << ',' << (p.accepted ? "pos" : "neg") << '\n';
  return out.str();
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace symaut
