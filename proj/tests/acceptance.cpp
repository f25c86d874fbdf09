// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "symaut/asp_export.hpp"
#include "symaut/batch_learner.hpp"
#include "symaut/discretize.hpp"
#include "symaut/evaluation.hpp"
#include "symaut/incremental.hpp"
#include "symaut/io.hpp"
#include "symaut/planted.hpp"

using namespace symaut;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (ok ? "" : "[failed] ") << what << "; ";
  }
};

std::string render(const Asa& asa, const Dataset& d) {
  std::string s = render_asa(asa, d.attributes(), d.alphabet());
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::vector<Label> labels_of(const Dataset& d) {
  std::vector<Label> out;
  for (const auto& e : d.examples()) out.push_back(e.label);
  return out;
}

// Interpreter behavior on the two cell-population examples.
void criterion1(Outcome& o) {
  const Dataset d = fixtures::table1();
  const Asa fig2 = fixtures::parse(fixtures::kFig2, d);
  const RunResult a = run(fig2, d[0].mvs, fixtures::strict_end());
  o.check(a.accepted && a.first_accept_time == 8u, "three-transition ASA accepts id1, first accepting occupancy 8");
  const RunResult b = run(fig2, d[1].mvs, fixtures::strict_end());
  o.check(!b.accepted && b.dead_time == 6u && b.occupied_at(6) == 0, "rejects id2 with no state occupied at time 6");

  const Asa two = fixtures::parse(fixtures::kTwoState, d);
  const RunResult c = run(two, d[0].mvs, fixtures::strict_earliest());
  o.check(c.accepted && c.first_accept_time == 6u, "two-state ASA accepts id1 at step 6");

  const Asa one = fixtures::parse(fixtures::kSingleState, d);
  o.check(run(one, d[0].mvs, fixtures::strict_end()).accepted && !run(one, d[1].mvs, fixtures::strict_end()).accepted,
          "single-state ASA accepts id1 and rejects id2");
}

BatchConfig criterion2_config() {
  BatchConfig cfg;
  cfg.structural.max_states = 2;
  cfg.structural.accepting_absorbing = true;
  cfg.structural.start_not_accepting = true;
  cfg.semantics.acceptance = AcceptanceMode::earliest_absorbing;
  cfg.objective.earliness_enabled = true;
  cfg.kinds = GuardKinds::symbolic();
  cfg.max_transitions = 2;
  cfg.seed = 1;
  return cfg;
}

// Exhaustive optimum versus local search on the two-example dataset.
void criterion2(Outcome& o) {
  const Dataset d = fixtures::table1();
  BatchConfig cfg = criterion2_config();
  const LearnerReport exact = enumerate_optimal(d, cfg, EnumerationCaps{2, 1e7});
  const RunResult r = run(exact.best_asa, d[0].mvs, cfg.semantics);
  o.detail << "enumerator " << to_string(exact.cost) << " [" << render(exact.best_asa, d) << "]; ";
  o.check(exact.exhaustive, "enumeration covered the space");
  o.check(exact.cost.error == 0, "enumerator error 0");
  o.check(exact.best_asa.transitions().size() == 2, "two transition facts");
  o.check(r.first_accept_time == 6u,
          "id1 first_accept_time 6 (observed " + std::to_string(r.first_accept_time.value_or(0)) + ")");

  cfg.timeout_seconds = 30;
  const LearnerReport ls = local_search(d, cfg);
  o.check(ls.cost == exact.cost, "local search reaches " + to_string(ls.cost));

  BatchConfig first = criterion2_config();
  first.objective.earliness_mode = EarlinessMode::first_accept_step;
  const LearnerReport f = enumerate_optimal(d, first, EnumerationCaps{2, 1e7});
  o.detail << "(first-step earliness: " << to_string(f.cost) << ", id1 accepted at "
           << run(f.best_asa, d[0].mvs, first.semantics).first_accept_time.value_or(0) << ") ";
}

Dataset random_tiny(std::mt19937_64& rng) {
  for (;;) {
    const std::size_t attrs = 1 + rng() % 3;
    const std::size_t symbols = 2 + rng() % 3;
    const std::size_t examples = 3 + rng() % 6;
    std::vector<std::string> names;
    for (std::size_t a = 0; a < attrs; ++a) names.push_back("a" + std::to_string(a));
    const auto alphabet = AlphabetSpec::letters(symbols);
    std::vector<LabeledExample> ex;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < examples; ++i) {
      const std::size_t len = 1 + rng() % 8;
      std::vector<Symbol> codes(len * attrs);
      for (auto& c : codes) c = static_cast<Symbol>(rng() % symbols);
      const Label l = rng() % 2 ? Label::positive : Label::negative;
      pos += l == Label::positive;
      ex.push_back({Mvs("e" + std::to_string(i), attrs, len, codes), l});
    }
    if (pos == 0 || pos == examples) continue;
    Dataset d(alphabet, AttributeSet(names), std::move(ex));
    if (ground_for_dataset(d, GuardKinds::symbolic()).size() <= 60) return d;
  }
}

// Local search against exhaustive enumeration on random tiny instances.
void criterion3(Outcome& o) {
  std::mt19937_64 rng(20240601);
  const int instances = 60;
  int equal = 0, lower = 0;
  for (int i = 0; i < instances; ++i) {
    const Dataset d = random_tiny(rng);
    BatchConfig cfg;
    cfg.structural.max_states = 1 + rng() % 2;
    cfg.semantics.policy = rng() % 2 ? ConsumptionPolicy::skip_till_any_match : ConsumptionPolicy::strict_contiguity;
    cfg.semantics.acceptance = rng() % 2 ? AcceptanceMode::earliest_absorbing : AcceptanceMode::end_of_sequence;
    const bool earliest = cfg.semantics.acceptance == AcceptanceMode::earliest_absorbing;
    cfg.objective.earliness_enabled = earliest && rng() % 2;
    cfg.structural.accepting_absorbing = earliest;
    cfg.max_transitions = 2;
    cfg.timeout_seconds = 60;
    cfg.seed = static_cast<std::uint64_t>(i);
    const LearnerReport exact = enumerate_optimal(d, cfg, EnumerationCaps{2, 1e7});
    const LearnerReport ls = local_search(d, cfg);
    if (ls.cost == exact.cost) ++equal;
    if (ls.cost < exact.cost) ++lower;
  }
  const double rate = static_cast<double>(equal) / instances;
  o.detail << equal << "/" << instances << " equal; ";
  o.check(rate >= 0.95, "equal in at least 95% of instances");
  o.check(lower == 0, "never lower than the enumerator (" + std::to_string(lower) + " lower)");
}

PlantedModelSpec planted_spec(double noise) {
  PlantedModelSpec spec;
  spec.attributes = AttributeSet({"speed", "heading", "depth"});
  spec.alphabet = AlphabetSpec::letters(5);
  spec.truth = parse_asa(
      "transition(q0,at_most(speed,c),q0).\n"
      "transition(q0,lt(speed,depth),q1).\n"
      "transition(q1,neg(heading,a),q1).\n"
      "accepting(q1).\n",
      spec.attributes, spec.alphabet);
  spec.positives = 500;
  spec.negatives = 500;
  spec.length = 10;
  spec.noise = noise;
  spec.seed = 2024;
  return spec;
}

// Recovery of a planted automaton by mini-batch revision.
void criterion4(Outcome& o) {
  IncrConfig cfg;
  cfg.batch_size = 50;
  cfg.iterations = 3;
  cfg.batch.structural.max_states = 2;
  cfg.batch.seed = 1;
  cfg.shuffle_seed = 1;

  const PlantedDataset clean = generate_planted(planted_spec(0.0));
  IncrementalLog log;
  const LearnerReport r = learn_incremental(clean.dataset, cfg, &log);
  const Metrics m = compute_metrics(predict(r.best_asa, clean.dataset, cfg.batch.semantics), labels_of(clean.dataset));
  o.detail << "noise 0: F1 " << m.f1 << " after " << r.iterations << " revisions [" << render(r.best_asa, clean.dataset)
           << "]; ";
  o.check(m.f1 >= 0.95, "training F1 >= 0.95");
  bool monotone = true;
  for (std::size_t i = 1; i < log.adoptions.size(); ++i) monotone = monotone && !(log.adoptions[i - 1] < log.adoptions[i]);
  o.check(monotone, "global cost non-increasing over " + std::to_string(log.adoptions.size()) + " logged costs");

  const PlantedDataset noisy = generate_planted(planted_spec(0.1));
  CrossValidationConfig cv;
  cv.learner = LearnerKind::incremental;
  cv.folds = 5;
  cv.seed = 1;
  cv.incremental = cfg;
  cv.incremental.error_threshold = 0.1;  // the label noise rate
  cv.batch = cfg.batch;
  const EvalReport report = cross_validate(noisy.dataset, cv);
  o.check(report.mean_f1 >= 0.85, "noise 0.1: held-out F1 " + std::to_string(report.mean_f1) + " >= 0.85");
}

// Removal weights of existing transitions during revision.
void criterion5(Outcome& o) {
  for (const bool more_negatives : {true, false}) {
    const auto fx = fixtures::revision_fixture(more_negatives);
    IncrConfig cfg;
    cfg.batch.structural.max_states = 1;
    cfg.batch.seed = 3;
    const GuardStats stats = guard_stats(fx.incumbent, fx.training, cfg.batch.semantics);
    const FactStats* fs = stats.find(fx.b_loop);
    const std::int64_t w = fs ? fs->weight() : 0;
    const auto revisions = revise(fx.incumbent, fx.batch, stats, cfg);
    const bool kept = !revisions.empty() && std::count(revisions.front().asa.transitions().begin(),
                                                        revisions.front().asa.transitions().end(), fx.b_loop) == 1;
    if (more_negatives) {
      o.check(w > 0, "n > p gives positive weight (" + std::to_string(w) + ")");
      o.check(!revisions.empty() && !kept, "the fact is removed");
    } else {
      o.check(w < 0, "p > n gives negative weight (" + std::to_string(w) + ")");
      o.check(kept, "the fact is retained");
    }
  }
}

// Exported learning programs against the checked-in files.
void criterion6(Outcome& o) {
  const Dataset d = fixtures::table1();
  const BatchConfig cfg = fixtures::golden_asp_config();
  const std::string golden = SYMAUT_TEST_GOLDEN;
  o.check(export_asp(d, cfg) == read_file(golden + "/table1.lp"), "table1.lp byte-identical");
  const Asa fig2 = fixtures::parse(fixtures::kFig2, d);
  const GuardStats stats = guard_stats(fig2, d, cfg.semantics);
  const AspIncumbent inc{fig2, stats};
  o.check(export_asp(d, cfg, &inc) == read_file(golden + "/table1_fig2.lp"), "table1_fig2.lp byte-identical");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double bisect_quantile(double p) {
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Discretizer invariants.
void criterion7(Outcome& o) {
  double worst = 0.0;
  for (std::size_t k = 2; k <= 20; ++k) {
    const auto b = gaussian_breakpoints(k);
    for (std::size_t i = 1; i < k; ++i)
      worst = std::max(worst, std::abs(b[i - 1] - bisect_quantile(static_cast<double>(i) / static_cast<double>(k))));
  }
  o.check(worst < 1e-3, "gaussian breakpoints within 1e-3 of the inverse CDF (max error " + std::to_string(worst) + ")");

  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(3.0, 2.0);
  bool monotone = true, in_range = true;
  for (int round = 0; round < 200; ++round) {
    const std::size_t k = 2 + rng() % 15;
    const std::size_t n = 5 + rng() % 60;
    RawSeries s{"s", 1, n, {}};
    for (std::size_t t = 0; t < n; ++t) s.values.push_back(normal(rng));
    SaxConfig cfg;
    cfg.alphabet_size = k;
    cfg.breakpoint_mode = rng() % 2 ? BreakpointMode::uniform_range : BreakpointMode::gaussian_equiprobable;
    const Mvs m = discretize(s, cfg, AlphabetSpec::letters(k));
    for (std::size_t i = 1; i <= n; ++i) {
      in_range = in_range && m.at(0, i) < k;
      for (std::size_t j = 1; j <= n; ++j)
        if (s.at(0, i) <= s.at(0, j)) monotone = monotone && m.at(0, i) <= m.at(0, j);
    }
  }
  o.check(monotone, "symbol order follows value order");
  o.check(in_range, "every value lands in one of the k bins");

  // Equiprobable bins on a large normal sample.
  const std::size_t k = 8, n = 80000;
  RawSeries big{"big", 1, n, {}};
  for (std::size_t t = 0; t < n; ++t) big.values.push_back(normal(rng));
  SaxConfig cfg;
  cfg.alphabet_size = k;
  const Mvs m = discretize(big, cfg, AlphabetSpec::letters(k));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t t = 1; t <= n; ++t) ++counts[m.at(0, t)];
  double spread = 0.0;
  for (auto c : counts) spread = std::max(spread, std::abs(static_cast<double>(c) / n - 1.0 / k));
  o.check(spread < 0.01, "gaussian bins are equiprobable within 0.01 (max deviation " + std::to_string(spread) + ")");
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7},
  };
  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s (%.1f s) %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.str().c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
