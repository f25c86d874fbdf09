#include "symaut/incremental.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>

#include "symaut/errors.hpp"
#include "symaut/evaluator.hpp"

namespace symaut {

void IncrConfig::validate() const {
  if (batch_size < 1) throw ConfigError("batch size must be positive");
  if (!(error_threshold >= 0.0 && error_threshold <= 1.0)) throw ConfigError("error threshold must lie in [0,1]");
  if (!(per_batch_timeout > 0.0)) throw ConfigError("per-batch timeout must be positive");
  if (k_best < 1) throw ConfigError("k_best must be positive");
  if (iterations < 1) throw ConfigError("iterations must be positive");
  batch.validate();
}

const FactStats* GuardStats::find(const Transition& t) const {
  for (const auto& f : facts)
    if (f.transition == t) return &f;
  return nullptr;
}

GuardStats guard_stats(const Asa& asa, const Dataset& dataset, const Semantics& sem) {
  GuardStats stats;
  for (const auto& t : asa.transitions()) stats.facts.push_back({t, 0, 0});
  for (const auto& ex : dataset.examples()) {
    const RunResult r = run(asa, ex.mvs, sem);
    if (!r.accepted) continue;
    for (const auto& used : r.used_transitions) {
      auto it = std::lower_bound(stats.facts.begin(), stats.facts.end(), used,
                                 [](const FactStats& f, const Transition& t) { return f.transition < t; });
      if (it == stats.facts.end() || it->transition != used) continue;
      (ex.label == Label::positive ? it->p : it->n) += 1;
    }
  }
  return stats;
}

namespace {

BatchConfig revision_config(const IncrConfig& cfg) {
  BatchConfig b = cfg.batch;
  b.timeout_seconds = cfg.per_batch_timeout;
  return b;
}

GuardUniverse covering_universe(const Dataset& batch, const Asa& incumbent, const BatchConfig& cfg) {
  std::set<Symbol> values;
  if (cfg.values == ValueDomain::full_alphabet) {
    for (std::size_t s = 0; s < batch.alphabet().size(); ++s) values.insert(static_cast<Symbol>(s));
  } else {
    for (Symbol s : observed_symbols(batch)) values.insert(s);
  }
  GuardKinds kinds = cfg.kinds;
  for (const auto& t : incumbent.transitions()) {
    kinds.insert(t.guard.kind);
    if (t.guard.kind != GuardKind::lt) values.insert(static_cast<Symbol>(t.guard.operand));
  }
  const std::vector<Symbol> list(values.begin(), values.end());
  return ground_universe(batch.attributes(), list, kinds);
}

}  // namespace

std::vector<Revision> revise(const Asa& incumbent, const Dataset& batch, const GuardStats& stats,
                             const IncrConfig& cfg, const GuardUniverse& universe) {
  const BatchConfig bcfg = revision_config(cfg);
  const std::size_t num_states = std::max(bcfg.structural.max_states, incumbent.num_states());
  BatchConfig search_cfg = bcfg;
  search_cfg.structural.max_states = num_states;

  SearchOptions options;
  options.start = from_asa(incumbent, universe);
  options.k_best = cfg.k_best;
  for (const auto& t : incumbent.transitions()) {
    const FactStats* s = stats.find(t);
    const std::int64_t w = s ? s->weight() : 0;
    const Fact f{t.from, static_cast<std::uint16_t>(*universe.find(t.guard)), t.to};
    options.penalties.transitions.emplace_back(f, -w);
  }
  options.penalties.accepting = incumbent.accepting();

  Evaluator ev(batch, universe, num_states, bcfg.semantics, bcfg.objective, bcfg.backend);
  const SearchOutcome outcome = search(ev, universe, search_cfg, options);

  std::vector<Revision> out;
  for (const auto& s : outcome.best) out.push_back({to_asa(s.candidate, num_states, universe), s.cost});
  return out;
}

std::vector<Revision> revise(const Asa& incumbent, const Dataset& batch, const GuardStats& stats,
                             const IncrConfig& cfg) {
  return revise(incumbent, batch, stats, cfg, covering_universe(batch, incumbent, cfg.batch));
}

void write_progress(std::ostream& out, const IncrementalLog& log) {
  out << "iteration\tbatch\tlocal_error\trevised\tadopted\terror\treg\n";
  for (const auto& e : log.batches) {
    out << e.iteration << '\t' << e.batch << '\t' << e.local_error << '\t' << (e.revised ? 1 : 0) << '\t'
        << (e.adopted ? 1 : 0) << '\t' << e.global_cost.error << '\t' << e.global_cost.reg << '\n';
  }
}

LearnerReport learn_incremental(const Dataset& dataset, const IncrConfig& cfg, IncrementalLog* log) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  if (dataset.size() == 0) throw ConfigError("cannot learn from an empty dataset");
  if (cfg.batch_size > dataset.size()) throw ConfigError("batch size exceeds the dataset size");

  const BatchConfig& bcfg = cfg.batch;
  const std::size_t num_states = bcfg.structural.max_states;
  const GuardUniverse universe = ground_for_dataset(dataset, bcfg.kinds, bcfg.values);
  Evaluator global(dataset, universe, num_states, bcfg.semantics, bcfg.objective, bcfg.backend);

  Candidate incumbent;
  CostVector incumbent_cost = global.cost(incumbent);
  std::vector<ExampleOutcome> outcomes = global.outcomes(incumbent);
  Asa incumbent_asa = to_asa(incumbent, num_states, universe);
  GuardStats stats = guard_stats(incumbent_asa, dataset, bcfg.semantics);

  IncrementalLog local_log;
  IncrementalLog& lg = log ? *log : local_log;
  lg.adoptions.push_back(incumbent_cost);

  auto better = [&](const CostVector& a, const CostVector& b) {
    return cfg.error_only ? a.error < b.error : a < b;
  };

  LearnerReport report;
  report.trajectory.push_back(incumbent_cost);
  std::vector<std::size_t> order(dataset.size());
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(cfg.shuffle_seed + it);
    std::shuffle(order.begin(), order.end(), rng);

    const std::size_t num_batches = (dataset.size() + cfg.batch_size - 1) / cfg.batch_size;
    for (std::size_t b = 0; b < num_batches; ++b) {
      const std::size_t lo = b * cfg.batch_size;
      const std::size_t hi = std::min(lo + cfg.batch_size, dataset.size());
      const std::span<const std::size_t> idx(order.data() + lo, hi - lo);

      std::size_t wrong = 0;
      for (std::size_t i : idx) wrong += outcomes[i].accepted != (dataset[i].label == Label::positive);
      BatchLogEntry entry{it, b, static_cast<double>(wrong) / static_cast<double>(idx.size()), false, false, {}};

      if (entry.local_error > cfg.error_threshold) {
        entry.revised = true;
        ++report.iterations;
        IncrConfig local = cfg;
        local.batch.seed = bcfg.seed + it * 1000003u + b;
        const Dataset batch = dataset.subset(idx);
        const auto revisions = revise(incumbent_asa, batch, stats, local, universe);

        std::optional<Candidate> chosen;
        CostVector chosen_cost = incumbent_cost;
        for (const auto& r : revisions) {
          const Candidate c = from_asa(r.asa, universe);
          const CostVector g = global.cost(c);
          if (better(g, chosen_cost) || (chosen && g < chosen_cost)) {
            chosen = c;
            chosen_cost = g;
          }
        }
        if (chosen) {
          if (!(cfg.error_only ? chosen_cost.error < incumbent_cost.error : chosen_cost < incumbent_cost))
            throw std::logic_error("adoption without strict improvement");
          incumbent = *chosen;
          incumbent_cost = chosen_cost;
          outcomes = global.outcomes(incumbent);
          incumbent_asa = to_asa(incumbent, num_states, universe);
          stats = guard_stats(incumbent_asa, dataset, bcfg.semantics);
          entry.adopted = true;
          lg.adoptions.push_back(incumbent_cost);
          report.trajectory.push_back(incumbent_cost);
        }
      }
      entry.global_cost = incumbent_cost;
      lg.batches.push_back(entry);
    }
  }

  report.best_asa = incumbent_asa;
  report.cost = incumbent_cost;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace symaut
