// Command-line front end: data conversion, learning, evaluation, export.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symaut/asp_export.hpp"
#include "symaut/automaton.hpp"
#include "symaut/batch_learner.hpp"
#include "symaut/discretize.hpp"
#include "symaut/errors.hpp"
#include "symaut/evaluation.hpp"
#include "symaut/incremental.hpp"
#include "symaut/io.hpp"
#include "symaut/planted.hpp"
#include "symaut/simd/kernels.hpp"

namespace {

using json = nlohmann::json;
using namespace symaut;

constexpr const char* kVersion = "0.1.0";

struct DataOptions {
  std::string data;
  std::string labels;
  std::string format = "long_csv";
  std::string alphabet;  // comma-separated, optional

  void add(CLI::App* app) {
    app->add_option("--data", data, "observations CSV")->required();
    app->add_option("--labels", labels, "labels CSV (seq_id,label)")->required();
    app->add_option("--format", format, "long_csv or wide_csv")->capture_default_str();
    app->add_option("--alphabet", alphabet, "ordered symbols, comma-separated (default: sorted distinct values)");
  }

  Dataset load() const {
    const auto fmt = parse_csv_format(format);
    if (!fmt) throw ConfigError("unknown format '" + format + "'");
    std::optional<AlphabetSpec> alpha;
    if (!alphabet.empty()) alpha = AlphabetSpec(split(alphabet));
    return load_dataset(data, labels, *fmt, alpha);
  }

  static std::vector<std::string> split(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) out.push_back(item);
    return out;
  }
};

struct SemanticsOptions {
  std::string policy = "strict";
  std::string acceptance = "end";
  std::string attribution = "all";

  void add(CLI::App* app) {
    app->add_option("--policy", policy, "strict or skip")->capture_default_str();
    app->add_option("--acceptance", acceptance, "end or earliest")->capture_default_str();
    app->add_option("--attribution", attribution, "all or witness")->capture_default_str();
  }

  Semantics get() const {
    Semantics s;
    if (policy == "strict") {
      s.policy = ConsumptionPolicy::strict_contiguity;
    } else if (policy == "skip") {
      s.policy = ConsumptionPolicy::skip_till_any_match;
    } else {
      throw ConfigError("unknown policy '" + policy + "'");
    }
    if (acceptance == "end") {
      s.acceptance = AcceptanceMode::end_of_sequence;
    } else if (acceptance == "earliest") {
      s.acceptance = AcceptanceMode::earliest_absorbing;
    } else {
      throw ConfigError("unknown acceptance mode '" + acceptance + "'");
    }
    if (attribution == "all") {
      s.attribution = PathAttribution::all_accepting_paths;
    } else if (attribution == "witness") {
      s.attribution = PathAttribution::single_witness;
    } else {
      throw ConfigError("unknown attribution '" + attribution + "'");
    }
    return s;
  }
};

struct LearnOptions {
  SemanticsOptions semantics;
  std::size_t states = 3;
  bool absorbing = false;
  bool start_not_accepting = false;
  bool earliness = false;
  std::string earliness_mode = "sum";
  std::int64_t w_fp = 1;
  std::int64_t w_fn = 1;
  bool balanced = false;
  std::int64_t transition_penalty = 1;
  std::string kinds = "symbolic";
  std::string values = "observed";
  double timeout = 60.0;
  std::optional<std::uint64_t> seed;
  std::size_t restarts = 8;
  std::size_t max_transitions = 0;
  std::size_t pair_move_cap = 50000;
  std::string backend;

  void add(CLI::App* app) {
    semantics.add(app);
    app->add_option("--states", states, "state budget N")->capture_default_str();
    app->add_flag("--absorbing", absorbing, "accepting states are absorbing");
    app->add_flag("--start-not-accepting", start_not_accepting, "q0 may not be accepting");
    app->add_flag("--earliness", earliness, "add the earliness regularizer");
    app->add_option("--earliness-mode", earliness_mode, "sum or first")->capture_default_str();
    app->add_option("--w-fp", w_fp, "false-positive weight")->capture_default_str();
    app->add_option("--w-fn", w_fn, "false-negative weight")->capture_default_str();
    app->add_flag("--balanced", balanced, "set error weights from class sizes");
    app->add_option("--transition-penalty", transition_penalty)->capture_default_str();
    app->add_option("--kinds", kinds, "guard kinds: symbolic, classic or a list like eq,lt")->capture_default_str();
    app->add_option("--values", values, "observed or full")->capture_default_str();
    app->add_option("--timeout", timeout, "search timeout in seconds")->capture_default_str();
    app->add_option("--seed", seed, "random seed (required)");
    app->add_option("--restarts", restarts)->capture_default_str();
    app->add_option("--max-transitions", max_transitions, "0 = unbounded")->capture_default_str();
    app->add_option("--pair-move-cap", pair_move_cap)->capture_default_str();
    app->add_option("--backend", backend, "scalar, avx2 or neon (default: best available)");
  }

  BatchConfig get(const Dataset* dataset) const {
    if (!seed) throw ConfigError("--seed is required for learning");
    BatchConfig c;
    c.semantics = semantics.get();
    c.structural.max_states = states;
    c.structural.accepting_absorbing = absorbing;
    c.structural.start_not_accepting = start_not_accepting;
    c.objective.w_fp = w_fp;
    c.objective.w_fn = w_fn;
    c.objective.transition_penalty = transition_penalty;
    c.objective.earliness_enabled = earliness;
    if (earliness_mode == "sum") {
      c.objective.earliness_mode = EarlinessMode::sum_all_accept_steps;
    } else if (earliness_mode == "first") {
      c.objective.earliness_mode = EarlinessMode::first_accept_step;
    } else {
      throw ConfigError("unknown earliness mode '" + earliness_mode + "'");
    }
    if (balanced && dataset) c.objective = ObjectiveConfig::balanced(*dataset, c.objective);
    c.kinds = GuardKinds::parse(kinds);
    if (values == "observed") {
      c.values = ValueDomain::observed;
    } else if (values == "full") {
      c.values = ValueDomain::full_alphabet;
    } else {
      throw ConfigError("unknown value domain '" + values + "'");
    }
    c.timeout_seconds = timeout;
    c.seed = *seed;
    c.restarts = restarts;
    c.max_transitions = max_transitions;
    c.pair_move_cap = pair_move_cap;
    if (!backend.empty()) {
      bool found = false;
      for (auto b : simd::available_backends())
        if (simd::backend_name(b) == backend) {
          c.backend = b;
          found = true;
        }
      if (!found) throw ConfigError("SIMD backend '" + backend + "' is not available");
    }
    c.validate();
    return c;
  }
};

struct IncrOptions {
  std::size_t batch_size = 50;
  double threshold = 0.0;
  double batch_timeout = 5.0;
  std::size_t k_best = 3;
  std::size_t iterations = 3;
  std::optional<std::uint64_t> shuffle_seed;
  bool error_only = false;

  void add(CLI::App* app) {
    app->add_option("--batch-size", batch_size)->capture_default_str();
    app->add_option("--threshold", threshold, "revise batches whose error rate exceeds this")->capture_default_str();
    app->add_option("--batch-timeout", batch_timeout, "seconds per revision")->capture_default_str();
    app->add_option("--k-best", k_best)->capture_default_str();
    app->add_option("--iterations", iterations)->capture_default_str();
    app->add_option("--shuffle-seed", shuffle_seed, "default: --seed");
    app->add_flag("--error-only", error_only, "adopt on lower error only");
  }

  IncrConfig get(const BatchConfig& batch) const {
    IncrConfig c;
    c.batch_size = batch_size;
    c.error_threshold = threshold;
    c.per_batch_timeout = batch_timeout;
    c.k_best = k_best;
    c.iterations = iterations;
    c.shuffle_seed = shuffle_seed.value_or(batch.seed);
    c.error_only = error_only;
    c.batch = batch;
    c.validate();
    return c;
  }
};

json semantics_json(const Semantics& s) {
  return {{"policy", policy_name(s.policy)},
          {"acceptance", acceptance_name(s.acceptance)},
          {"attribution", s.attribution == PathAttribution::all_accepting_paths ? "all" : "witness"}};
}

json config_json(const BatchConfig& c) {
  return {{"semantics", semantics_json(c.semantics)},
          {"max_states", c.structural.max_states},
          {"accepting_absorbing", c.structural.accepting_absorbing},
          {"start_not_accepting", c.structural.start_not_accepting},
          {"w_fp", c.objective.w_fp},
          {"w_fn", c.objective.w_fn},
          {"transition_penalty", c.objective.transition_penalty},
          {"earliness", c.objective.earliness_enabled},
          {"earliness_mode", earliness_mode_name(c.objective.earliness_mode)},
          {"kinds", c.kinds.to_string()},
          {"values", c.values == ValueDomain::observed ? "observed" : "full"},
          {"timeout_seconds", c.timeout_seconds},
          {"seed", c.seed},
          {"restarts", c.restarts},
          {"max_transitions", c.max_transitions},
          {"pair_move_cap", c.pair_move_cap},
          {"backend", simd::backend_name(c.backend)}};
}

json config_json(const IncrConfig& c) {
  return {{"batch_size", c.batch_size},           {"error_threshold", c.error_threshold},
          {"per_batch_timeout", c.per_batch_timeout}, {"k_best", c.k_best},
          {"iterations", c.iterations},           {"shuffle_seed", c.shuffle_seed},
          {"error_only", c.error_only},           {"batch", config_json(c.batch)}};
}

json cost_json(const CostVector& c) { return {{"error", c.error}, {"reg", c.reg}}; }

/// Writes `<output>.manifest.json` describing the run.
void write_manifest(const std::string& output, const std::string& command, const json& config,
                    const json& extra = json::object()) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["config"] = config;
  m["fingerprint"] = hex64(fnv1a64(config.dump()));
  m["simd_backend"] = simd::backend_name(simd::active_backend());
  m["workers"] = worker_count_from_env();
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
  write_file(output + ".manifest.json", m.dump(2) + "\n");
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn and run symbolic automata over multivariate symbolic sequences"};
  app.set_config("--config", "", "TOML or INI file with option values; command-line flags win");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // discretize
  auto* disc = app.add_subcommand("discretize", "SAX-discretize real-valued sequences");
  std::string disc_in, disc_out, disc_format = "long_csv", disc_breaks = "gaussian", disc_norm = "zscore";
  SaxConfig sax;
  disc->add_option("--input", disc_in, "real-valued observations CSV")->required();
  disc->add_option("--output", disc_out, "symbolic observations CSV")->required();
  disc->add_option("--format", disc_format, "long_csv or wide_csv")->capture_default_str();
  disc->add_option("--alphabet-size", sax.alphabet_size)->capture_default_str();
  disc->add_option("--breakpoints", disc_breaks, "gaussian or uniform")->capture_default_str();
  disc->add_option("--paa", sax.paa_window, "PAA window")->capture_default_str();
  disc->add_option("--normalize", disc_norm, "zscore or none")->capture_default_str();

  // learn-batch
  auto* lb = app.add_subcommand("learn-batch", "learn an ASA from the whole training set");
  DataOptions lb_data;
  LearnOptions lb_learn;
  std::string lb_out, lb_report;
  bool lb_exhaustive = false;
  std::size_t lb_enum_k = 2;
  lb_data.add(lb);
  lb_learn.add(lb);
  lb->add_option("--out", lb_out, "model file (ASA facts)")->required();
  lb->add_option("--report", lb_report, "JSON report (default: <out>.report.json)");
  lb->add_flag("--exhaustive", lb_exhaustive, "enumerate all small automata instead of local search");
  lb->add_option("--enum-max-transitions", lb_enum_k, "transition bound for --exhaustive")->capture_default_str();

  // learn-incr
  auto* li = app.add_subcommand("learn-incr", "learn an ASA by mini-batch revision");
  DataOptions li_data;
  LearnOptions li_learn;
  IncrOptions li_incr;
  std::string li_out, li_report, li_progress;
  li_learn.timeout = 5.0;
  li_data.add(li);
  li_learn.add(li);
  li_incr.add(li);
  li->add_option("--out", li_out, "model file (ASA facts)")->required();
  li->add_option("--report", li_report, "JSON report (default: <out>.report.json)");
  li->add_option("--progress", li_progress, "progress log TSV (default: <out>.progress.tsv)");

  // run
  auto* rn = app.add_subcommand("run", "run an ASA over a dataset");
  DataOptions rn_data;
  SemanticsOptions rn_sem;
  std::string rn_model, rn_out;
  rn_data.add(rn);
  rn_sem.add(rn);
  rn->add_option("--model", rn_model, "model file")->required();
  rn->add_option("--out", rn_out, "predictions CSV (default: stdout)");

  // eval
  auto* ev = app.add_subcommand("eval", "stratified cross-validation");
  DataOptions ev_data;
  LearnOptions ev_learn;
  IncrOptions ev_incr;
  std::string ev_learner = "batch", ev_out;
  std::size_t ev_folds = 5;
  ev_data.add(ev);
  ev_learn.add(ev);
  ev_incr.add(ev);
  ev->add_option("--learner", ev_learner, "batch or incremental")->capture_default_str();
  ev->add_option("--folds", ev_folds)->capture_default_str();
  ev->add_option("--out", ev_out, "JSON report; predictions go to <out>.predictions.csv")->required();

  // export-asp
  auto* ex = app.add_subcommand("export-asp", "write the ASP learning program");
  DataOptions ex_data;
  LearnOptions ex_learn;
  std::string ex_out, ex_incumbent;
  ex_learn.seed = 0;
  ex_data.add(ex);
  ex_learn.add(ex);
  ex->add_option("--incumbent", ex_incumbent, "model file to revise");
  ex->add_option("--out", ex_out, "program file (default: stdout)");

  // generate
  auto* gen = app.add_subcommand("generate", "sample a labeled dataset from a planted ASA");
  std::string gen_model, gen_attrs, gen_alpha = "a,b,c,d,e", gen_data, gen_labels, gen_truth;
  SemanticsOptions gen_sem;
  PlantedModelSpec spec;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--model", gen_model, "planted model file")->required();
  gen->add_option("--attributes", gen_attrs, "attribute names, comma-separated")->required();
  gen->add_option("--alphabet", gen_alpha, "ordered symbols, comma-separated")->capture_default_str();
  gen->add_option("--length", spec.length)->capture_default_str();
  gen->add_option("--positives", spec.positives)->capture_default_str();
  gen->add_option("--negatives", spec.negatives)->capture_default_str();
  gen->add_option("--noise", spec.noise)->capture_default_str();
  gen->add_option("--seed", gen_seed)->required();
  gen->add_option("--out-data", gen_data, "long_csv observations")->required();
  gen->add_option("--out-labels", gen_labels, "labels CSV")->required();
  gen_sem.add(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*disc) {
      const auto fmt = parse_csv_format(disc_format);
      if (!fmt) throw ConfigError("unknown format '" + disc_format + "'");
      if (disc_breaks == "gaussian") {
        sax.breakpoint_mode = BreakpointMode::gaussian_equiprobable;
      } else if (disc_breaks == "uniform") {
        sax.breakpoint_mode = BreakpointMode::uniform_range;
      } else {
        throw ConfigError("unknown breakpoint mode '" + disc_breaks + "'");
      }
      if (disc_norm == "zscore") {
        sax.normalize = Normalization::per_sequence_per_attribute_zscore;
      } else if (disc_norm == "none") {
        sax.normalize = Normalization::none;
      } else {
        throw ConfigError("unknown normalization '" + disc_norm + "'");
      }
      sax.validate();
      const auto raw = build_raw(parse_observations(read_file(disc_in), *fmt));
      const AlphabetSpec alpha = AlphabetSpec::letters(sax.alphabet_size);
      std::vector<LabeledExample> examples;
      for (const auto& s : raw.series) examples.push_back({discretize(s, sax, alpha), Label::negative});
      const Dataset symbolic(alpha, raw.attributes, std::move(examples));
      write_file(disc_out, *fmt == CsvFormat::long_csv ? write_long_csv(symbolic) : write_wide_csv(symbolic));
      write_manifest(disc_out, "discretize",
                     {{"alphabet_size", sax.alphabet_size},
                      {"breakpoints", breakpoint_mode_name(sax.breakpoint_mode)},
                      {"paa_window", sax.paa_window},
                      {"normalize", normalization_name(sax.normalize)},
                      {"input", disc_in}});
      return 0;
    }

    if (*lb) {
      const Dataset data = lb_data.load();
      const BatchConfig cfg = lb_learn.get(&data);
      const LearnerReport r =
          lb_exhaustive ? enumerate_optimal(data, cfg, EnumerationCaps{lb_enum_k, 1e7}) : local_search(data, cfg);
      write_file(lb_out, render_asa(r.best_asa, data.attributes(), data.alphabet()));
      json trajectory = json::array();
      for (const auto& c : r.trajectory) trajectory.push_back(cost_json(c));
      const json report = {{"cost", cost_json(r.cost)},          {"wall_seconds", r.wall_seconds},
                           {"iterations", r.iterations},          {"exhaustive", r.exhaustive},
                           {"timed_out", r.timed_out},            {"trajectory", trajectory},
                           {"states", reported_states(r.best_asa)}, {"transitions", r.best_asa.transitions().size()}};
      write_file(lb_report.empty() ? lb_out + ".report.json" : lb_report, report.dump(2) + "\n");
      write_manifest(lb_out, "learn-batch", config_json(cfg), {{"seeds", {{"search", cfg.seed}}}, {"data", lb_data.data}});
      std::cout << render_asa(r.best_asa, data.attributes(), data.alphabet()) << "% cost " << to_string(r.cost)
                << "\n";
      return 0;
    }

    if (*li) {
      const Dataset data = li_data.load();
      const BatchConfig bcfg = li_learn.get(&data);
      const IncrConfig cfg = li_incr.get(bcfg);
      IncrementalLog log;
      const LearnerReport r = learn_incremental(data, cfg, &log);
      write_file(li_out, render_asa(r.best_asa, data.attributes(), data.alphabet()));
      std::ofstream progress(li_progress.empty() ? li_out + ".progress.tsv" : li_progress);
      write_progress(progress, log);
      json adoptions = json::array();
      for (const auto& c : log.adoptions) adoptions.push_back(cost_json(c));
      const json report = {{"cost", cost_json(r.cost)},       {"wall_seconds", r.wall_seconds},
                           {"revisions", r.iterations},        {"adoptions", adoptions},
                           {"states", reported_states(r.best_asa)}, {"transitions", r.best_asa.transitions().size()}};
      write_file(li_report.empty() ? li_out + ".report.json" : li_report, report.dump(2) + "\n");
      write_manifest(li_out, "learn-incr", config_json(cfg),
                     {{"seeds", {{"search", bcfg.seed}, {"shuffle", cfg.shuffle_seed}}}, {"data", li_data.data}});
      std::cout << render_asa(r.best_asa, data.attributes(), data.alphabet()) << "% cost " << to_string(r.cost)
                << "\n";
      return 0;
    }

    if (*rn) {
      const Dataset data = rn_data.load();
      const Semantics sem = rn_sem.get();
      const Asa asa = parse_asa(read_file(rn_model), data.attributes(), data.alphabet());
      std::ostringstream out;
      out << "seq_id,label,predicted,first_accept_time,dead_time\n";
      std::vector<bool> accepted;
      std::vector<Label> truth;
      for (const auto& e : data.examples()) {
        const RunResult r = run(asa, e.mvs, sem);
        accepted.push_back(r.accepted);
        truth.push_back(e.label);
        out << e.mvs.id() << ',' << label_name(e.label) << ',' << (r.accepted ? "pos" : "neg") << ','
            << (r.first_accept_time ? std::to_string(*r.first_accept_time) : "") << ','
            << (r.dead_time ? std::to_string(*r.dead_time) : "") << '\n';
      }
      emit(rn_out, out.str());
      const Metrics m = compute_metrics(accepted, truth);
      std::cerr << "precision " << m.precision << " recall " << m.recall << " f1 " << m.f1 << "\n";
      if (!rn_out.empty() && rn_out != "-")
        write_manifest(rn_out, "run", {{"model", rn_model}, {"semantics", semantics_json(sem)}});
      return 0;
    }

    if (*ev) {
      const Dataset data = ev_data.load();
      CrossValidationConfig cv;
      cv.folds = ev_folds;
      cv.batch = ev_learn.get(&data);
      cv.seed = cv.batch.seed;
      json config;
      if (ev_learner == "batch") {
        cv.learner = LearnerKind::batch;
        config = {{"learner", "batch"}, {"folds", ev_folds}, {"batch", config_json(cv.batch)}};
      } else if (ev_learner == "incremental" || ev_learner == "incr") {
        cv.learner = LearnerKind::incremental;
        cv.incremental = ev_incr.get(cv.batch);
        config = {{"learner", "incremental"}, {"folds", ev_folds}, {"incremental", config_json(cv.incremental)}};
      } else {
        throw ConfigError("unknown learner '" + ev_learner + "'");
      }
      const EvalReport r = cross_validate(data, cv);
      json folds = json::array();
      for (const auto& f : r.folds)
        folds.push_back({{"f1", f.metrics.f1},
                         {"precision", f.metrics.precision},
                         {"recall", f.metrics.recall},
                         {"states", f.states},
                         {"transitions", f.transitions},
                         {"train_minutes", f.train_minutes},
                         {"model", render_asa(f.model, data.attributes(), data.alphabet())}});
      const json report = {{"folds", folds},
                           {"mean_f1", r.mean_f1},
                           {"mean_precision", r.mean_precision},
                           {"mean_recall", r.mean_recall},
                           {"mean_states", r.mean_states},
                           {"mean_transitions", r.mean_transitions},
                           {"mean_train_minutes", r.mean_train_minutes},
                           {"fingerprint", hex64(fnv1a64(config.dump()))}};
      write_file(ev_out, report.dump(2) + "\n");
      write_file(ev_out + ".predictions.csv", write_predictions(r.predictions));
      write_manifest(ev_out, "eval", config, {{"seeds", {{"folds", cv.seed}}}, {"data", ev_data.data}});
      std::cout << "mean F1 " << r.mean_f1 << " precision " << r.mean_precision << " recall " << r.mean_recall
                << "\n";
      return 0;
    }

    if (*ex) {
      const Dataset data = ex_data.load();
      const BatchConfig cfg = ex_learn.get(&data);
      std::string program;
      if (!ex_incumbent.empty()) {
        const Asa asa = parse_asa(read_file(ex_incumbent), data.attributes(), data.alphabet());
        const GuardStats stats = guard_stats(asa, data, cfg.semantics);
        const AspIncumbent inc{asa, stats};
        program = export_asp(data, cfg, &inc);
      } else {
        program = export_asp(data, cfg);
      }
      emit(ex_out, program);
      if (!ex_out.empty() && ex_out != "-") write_manifest(ex_out, "export-asp", config_json(cfg));
      return 0;
    }

    if (*gen) {
      spec.attributes = AttributeSet(DataOptions::split(gen_attrs));
      spec.alphabet = AlphabetSpec(DataOptions::split(gen_alpha));
      spec.truth = parse_asa(read_file(gen_model), spec.attributes, spec.alphabet);
      spec.semantics = gen_sem.get();
      spec.seed = *gen_seed;
      const PlantedDataset planted = generate_planted(spec);
      write_file(gen_data, write_long_csv(planted.dataset));
      write_file(gen_labels, write_labels(planted.dataset));
      write_file(gen_data + ".truth.asa", render_asa(spec.truth, spec.attributes, spec.alphabet));
      write_manifest(gen_data, "generate",
                     {{"model", gen_model},
                      {"length", spec.length},
                      {"positives", spec.positives},
                      {"negatives", spec.negatives},
                      {"noise", spec.noise},
                      {"semantics", semantics_json(spec.semantics)}},
                     {{"seeds", {{"generator", spec.seed}}}, {"flipped", planted.flipped}});
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
