#include "symaut/batch_learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "symaut/errors.hpp"

namespace symaut {

void BatchConfig::validate() const {
  structural.validate();
  objective.validate();
  check_compatible(objective, semantics);
  check_compatible(structural, semantics);
  if (kinds.empty()) throw ConfigError("at least one guard kind must be enabled");
  if (!(timeout_seconds > 0)) throw ConfigError("timeout must be positive");
  if (restarts < 1) throw ConfigError("restarts must be at least 1");
}

std::int64_t RemovalPenalties::cost(const Candidate& c) const {
  std::int64_t total = 0;
  for (const auto& [fact, weight] : transitions)
    if (!c.has(fact)) total += weight;
  total += std::popcount(accepting & ~c.accepting);
  return total;
}

bool structurally_valid(const Candidate& c, const BatchConfig& cfg) {
  if (cfg.max_transitions != 0 && c.facts.size() > cfg.max_transitions) return false;
  if (cfg.structural.start_not_accepting && contains(c.accepting, 0)) return false;
  if (cfg.structural.max_states < kMaxStates && (c.accepting >> cfg.structural.max_states) != 0) return false;
  if (cfg.structural.accepting_absorbing) {
    for (const Fact& f : c.facts)
      if (f.from != f.to && contains(c.accepting, f.from)) return false;
  }
  return true;
}

std::vector<std::string> rendered_facts(const Candidate& c, std::size_t num_states, const GuardUniverse& universe,
                                        const Dataset& dataset) {
  const std::string text = render_asa(to_asa(c, num_states, universe), dataset.attributes(), dataset.alphabet());
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(double seconds)
      : end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))) {}
  bool expired() const { return Clock::now() >= end_; }

 private:
  Clock::time_point end_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Fact> fact_pool(std::size_t num_states, std::size_t num_guards) {
  std::vector<Fact> pool;
  pool.reserve(num_states * num_states * num_guards);
  for (std::size_t from = 0; from < num_states; ++from)
    for (std::size_t g = 0; g < num_guards; ++g)
      for (std::size_t to = 0; to < num_states; ++to)
        pool.push_back({static_cast<State>(from), static_cast<std::uint16_t>(g), static_cast<State>(to)});
  return pool;
}

// Total order used to pick among equal costs: fewer facts, then fact list.
bool preferred(const ScoredCandidate& a, const ScoredCandidate& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.candidate.facts.size() != b.candidate.facts.size())
    return a.candidate.facts.size() < b.candidate.facts.size();
  return a.candidate < b.candidate;
}

class KBest {
 public:
  explicit KBest(std::size_t k) : k_(std::max<std::size_t>(k, 1)) {}

  void offer(const Candidate& c, const CostVector& cost) {
    ScoredCandidate s{c, cost};
    if (items_.size() == k_ && !preferred(s, items_.back())) return;
    for (const auto& it : items_)
      if (it.candidate == c) return;
    items_.insert(std::upper_bound(items_.begin(), items_.end(), s, preferred), std::move(s));
    if (items_.size() > k_) items_.pop_back();
  }

  const std::vector<ScoredCandidate>& items() const { return items_; }

 private:
  std::size_t k_;
  std::vector<ScoredCandidate> items_;
};

Candidate with_fact(const Candidate& c, const Fact& f) {
  Candidate out = c;
  out.facts.insert(std::upper_bound(out.facts.begin(), out.facts.end(), f), f);
  return out;
}

Candidate without_fact(const Candidate& c, std::size_t index) {
  Candidate out = c;
  out.facts.erase(out.facts.begin() + static_cast<std::ptrdiff_t>(index));
  return out;
}

// Flip one state's accepting flag; when it becomes accepting under the
// absorbing constraint, drop its outgoing non-loop facts.
Candidate toggled(const Candidate& c, State q, const BatchConfig& cfg) {
  Candidate out = c;
  out.accepting ^= state_bit(q);
  if (cfg.structural.accepting_absorbing && contains(out.accepting, q)) {
    std::erase_if(out.facts, [q](const Fact& f) { return f.from == q && f.to != q; });
  }
  return out;
}

class LocalSearch {
 public:
  LocalSearch(Evaluator& ev, const GuardUniverse& universe, const BatchConfig& cfg, const SearchOptions& options)
      : ev_(ev),
        cfg_(cfg),
        options_(options),
        num_states_(ev.num_states()),
        pool_(fact_pool(ev.num_states(), universe.size())),
        rng_(cfg.seed),
        deadline_(cfg.timeout_seconds),
        kbest_(options.k_best) {
    for (std::size_t q = 0; q < num_states_; ++q)
      if (!(cfg_.structural.start_not_accepting && q == 0)) toggle_states_.push_back(static_cast<State>(q));
  }

  SearchOutcome run() {
    for (std::size_t r = 0; r < cfg_.restarts; ++r) {
      if (deadline_.expired()) {
        out_.timed_out = true;
        break;
      }
      climb(r == 0 ? initial() : seeded(r));
      if (out_.timed_out) break;
    }
    out_.best = kbest_.items();
    if (best_ && (out_.best.empty() || preferred(*best_, out_.best.front()))) out_.best.insert(out_.best.begin(), *best_);
    return std::move(out_);
  }

 private:
  Candidate initial() const {
    if (options_.start) return *options_.start;
    Candidate c;
    if (cfg_.structural.start_not_accepting && cfg_.objective.earliness_enabled && num_states_ > 1)
      c.accepting = state_bit(static_cast<State>(num_states_ - 1));
    return c;
  }

  // With a start candidate, odd restarts perturb it and even ones begin afresh.
  Candidate seeded(std::size_t restart) {
    const bool fresh = !options_.start || restart % 2 == 0;
    Candidate c = fresh ? Candidate{} : *options_.start;
    if (fresh) {
      for (State q : toggle_states_)
        if (coin()) c = toggled(c, q, cfg_);
    } else if (!c.facts.empty() && coin()) {
      c = without_fact(c, rng_() % c.facts.size());
    }
    for (int tries = 0; tries < 16 && !pool_.empty(); ++tries) {
      const Candidate next = with_fact(c, pool_[rng_() % pool_.size()]);
      if (structurally_valid(next, cfg_)) {
        c = next;
        break;
      }
    }
    return c;
  }

  bool coin() { return (rng_() & 1u) != 0; }

  CostVector total(const Candidate& c) {
    CostVector v = cfg_.use_prefix_cache ? ev_.cost_incremental(c) : ev_.cost(c);
    v.reg += options_.penalties.cost(c);
    kbest_.offer(c, v);
    if ((++evaluations_ & 63u) == 0 && deadline_.expired()) out_.timed_out = true;
    return v;
  }

  void record(const Candidate& c, const CostVector& cost) {
    ScoredCandidate s{c, cost};
    if (!best_ || preferred(s, *best_)) {
      if (!best_ || cost < best_->cost) out_.trajectory.push_back(cost);
      best_ = std::move(s);
    }
  }

  void set_current(const Candidate& c) {
    ev_.set_incumbent(c);
    current_ = c;
    current_cost_ = ev_.incumbent_cost();
    current_cost_.reg += options_.penalties.cost(c);
    kbest_.offer(current_, current_cost_);
    record(current_, current_cost_);
  }

  // Evaluates one neighbor; tracks the best strict improvement and the
  // unvisited equal-cost moves.
  void consider(const Candidate& n) {
    if (out_.timed_out || !structurally_valid(n, cfg_)) return;
    const CostVector c = total(n);
    ScoredCandidate s{n, c};
    if (c < current_cost_) {
      if (!move_ || preferred(s, *move_)) move_ = std::move(s);
    } else if (c == current_cost_ && sideways_pool_.size() < 256 && !visited_.contains(n)) {
      sideways_pool_.push_back(n);
    }
  }

  void scan_single() {
    const bool can_add = cfg_.max_transitions == 0 || current_.facts.size() < cfg_.max_transitions;
    if (can_add) {
      for (const Fact& f : pool_)
        if (!current_.has(f)) consider(with_fact(current_, f));
    }
    for (std::size_t i = 0; i < current_.facts.size(); ++i) {
      consider(without_fact(current_, i));
      for (std::size_t to = 0; to < num_states_; ++to) {
        Fact f = current_.facts[i];
        if (f.to == to) continue;
        f.to = static_cast<State>(to);
        if (current_.has(f)) continue;
        consider(with_fact(without_fact(current_, i), f));
      }
    }
    for (State q : toggle_states_) consider(toggled(current_, q, cfg_));
  }

  void scan_compound() {
    std::vector<std::size_t> absent;
    for (std::size_t i = 0; i < pool_.size(); ++i)
      if (!current_.has(pool_[i])) absent.push_back(i);
    const std::size_t room =
        cfg_.max_transitions == 0 ? 2 : (cfg_.max_transitions > current_.facts.size()
                                             ? cfg_.max_transitions - current_.facts.size()
                                             : 0);
    const double a = static_cast<double>(absent.size());
    const double pairs = room >= 2 ? a * (a - 1) / 2 : 0.0;
    const double add_toggle = room >= 1 ? a * static_cast<double>(toggle_states_.size()) : 0.0;
    const double swaps = a * static_cast<double>(current_.facts.size());
    const double total_moves = pairs + add_toggle + swaps;
    if (total_moves == 0) return;

    auto pair_move = [&](std::size_t i, std::size_t j) {
      consider(with_fact(with_fact(current_, pool_[absent[i]]), pool_[absent[j]]));
    };
    auto add_toggle_move = [&](std::size_t i, State q) {
      consider(with_fact(toggled(current_, q, cfg_), pool_[absent[i]]));
    };
    auto swap_move = [&](std::size_t removed, std::size_t i) {
      consider(with_fact(without_fact(current_, removed), pool_[absent[i]]));
    };

    // First improvement: stop at the first strictly better compound move. The
    // full neighborhood is walked from a random start with a stride coprime
    // to its size, so every move is visited once in a scrambled order.
    if (total_moves <= static_cast<double>(cfg_.pair_move_cap)) {
      const std::uint64_t a_n = absent.size();
      const std::uint64_t grid = room >= 2 ? a_n * a_n : 0;  // (i, j) with i < j used
      const std::uint64_t toggles = room >= 1 ? a_n * toggle_states_.size() : 0;
      const std::uint64_t size = grid + toggles + current_.facts.size() * a_n;
      if (size == 0) return;
      std::uint64_t stride = 1 + rng_() % size;
      while (std::gcd(stride, size) != 1) stride = stride % size + 1;
      std::uint64_t k = rng_() % size;
      for (std::uint64_t n = 0; n < size && !move_ && !out_.timed_out; ++n, k = (k + stride) % size) {
        if (k < grid) {
          const std::size_t i = k / a_n, j = k % a_n;
          if (i < j) pair_move(i, j);
        } else if (k < grid + toggles) {
          const std::uint64_t x = k - grid;
          add_toggle_move(x / toggle_states_.size(), toggle_states_[x % toggle_states_.size()]);
        } else {
          const std::uint64_t x = k - grid - toggles;
          swap_move(x / a_n, x % a_n);
        }
      }
      return;
    }
    std::uniform_real_distribution<double> pick(0.0, total_moves);
    for (std::size_t s = 0; s < cfg_.pair_move_cap && !out_.timed_out && !move_; ++s) {
      const double x = pick(rng_);
      if (x < pairs) {
        const std::size_t i = rng_() % absent.size();
        const std::size_t j = rng_() % absent.size();
        if (i != j) pair_move(std::min(i, j), std::max(i, j));
      } else if (x < pairs + add_toggle) {
        add_toggle_move(rng_() % absent.size(), toggle_states_[rng_() % toggle_states_.size()]);
      } else {
        swap_move(rng_() % current_.facts.size(), rng_() % absent.size());
      }
    }
  }

  void climb(Candidate start) {
    if (!structurally_valid(start, cfg_)) {
      // drop facts until the start point is admissible
      start.accepting &= ~(cfg_.structural.start_not_accepting ? state_bit(0) : StateSet{0});
      if (cfg_.structural.accepting_absorbing)
        std::erase_if(start.facts, [&](const Fact& f) { return f.from != f.to && contains(start.accepting, f.from); });
      if (cfg_.max_transitions != 0 && start.facts.size() > cfg_.max_transitions)
        start.facts.resize(cfg_.max_transitions);
    }
    visited_.clear();
    set_current(start);
    visited_.insert(current_);
    std::size_t sideways = 0;
    while (!out_.timed_out) {
      ++out_.iterations;
      move_.reset();
      sideways_pool_.clear();
      scan_single();
      if (!move_ && !out_.timed_out) scan_compound();
      if (out_.timed_out) break;
      if (move_) {
        const Candidate next = move_->candidate;
        set_current(next);
        visited_.insert(next);
        sideways = 0;
        continue;
      }
      if (sideways < cfg_.sideways_cap && !sideways_pool_.empty()) {
        const Candidate next = sideways_pool_[rng_() % sideways_pool_.size()];
        set_current(next);
        visited_.insert(next);
        ++sideways;
        continue;
      }
      break;
    }
  }

  Evaluator& ev_;
  const BatchConfig& cfg_;
  const SearchOptions& options_;
  std::size_t num_states_;
  std::vector<Fact> pool_;
  std::vector<State> toggle_states_;
  std::mt19937_64 rng_;
  Deadline deadline_;
  KBest kbest_;
  std::size_t evaluations_ = 0;

  Candidate current_;
  CostVector current_cost_;
  std::optional<ScoredCandidate> move_;
  std::vector<Candidate> sideways_pool_;
  std::set<Candidate> visited_;
  std::optional<ScoredCandidate> best_;
  SearchOutcome out_;
};

}  // namespace

SearchOutcome search(Evaluator& evaluator, const GuardUniverse& universe, const BatchConfig& cfg,
                     const SearchOptions& options) {
  cfg.validate();
  if (evaluator.num_states() > cfg.structural.max_states)
    throw ConfigError("evaluator state count exceeds the state budget");
  return LocalSearch(evaluator, universe, cfg, options).run();
}

LearnerReport local_search(const Dataset& dataset, const BatchConfig& cfg) {
  const auto started = Clock::now();
  cfg.validate();
  if (dataset.size() == 0) throw ConfigError("cannot learn from an empty dataset");
  const GuardUniverse universe = ground_for_dataset(dataset, cfg.kinds, cfg.values);
  Evaluator ev(dataset, universe, cfg.structural.max_states, cfg.semantics, cfg.objective, cfg.backend);
  SearchOutcome outcome = search(ev, universe, cfg);

  LearnerReport report;
  const ScoredCandidate& best = outcome.best.front();
  report.best_asa = to_asa(best.candidate, cfg.structural.max_states, universe);
  report.cost = best.cost;
  report.iterations = outcome.iterations;
  report.timed_out = outcome.timed_out;
  report.trajectory = std::move(outcome.trajectory);
  report.wall_seconds = seconds_since(started);
  return report;
}

double enumeration_size(std::size_t num_facts, std::size_t max_transitions, std::size_t num_accepting_sets) {
  double total = 0.0;
  double binom = 1.0;
  for (std::size_t k = 0; k <= max_transitions && k <= num_facts; ++k) {
    if (k > 0) binom = binom * static_cast<double>(num_facts - k + 1) / static_cast<double>(k);
    total += binom;
  }
  return total * static_cast<double>(num_accepting_sets);
}

LearnerReport enumerate_optimal(const Dataset& dataset, const BatchConfig& cfg, EnumerationCaps caps) {
  const auto started = Clock::now();
  cfg.validate();
  const std::size_t num_states = cfg.structural.max_states;
  if (num_states > 16) throw ConfigError("exhaustive enumeration supports at most 16 states");
  const GuardUniverse universe = ground_for_dataset(dataset, cfg.kinds, cfg.values);
  Evaluator ev(dataset, universe, num_states, cfg.semantics, cfg.objective, cfg.backend);
  const std::vector<Fact> pool = fact_pool(num_states, universe.size());

  std::size_t max_k = caps.max_transitions;
  if (cfg.max_transitions != 0) max_k = std::min(max_k, cfg.max_transitions);
  std::vector<StateSet> masks;
  for (StateSet m = 0; m < (StateSet{1} << num_states); ++m)
    if (!(cfg.structural.start_not_accepting && contains(m, 0))) masks.push_back(m);

  const double size = enumeration_size(pool.size(), max_k, masks.size());
  if (size > caps.max_candidates)
    throw ConfigError("enumeration would examine about " + std::to_string(static_cast<long long>(size)) +
                      " candidates, above the cap of " + std::to_string(static_cast<long long>(caps.max_candidates)));

  std::optional<ScoredCandidate> best;
  std::vector<std::string> best_key;
  std::size_t examined = 0;
  std::vector<CostVector> trajectory;

  auto offer = [&](const Candidate& c) {
    ++examined;
    const CostVector cost = ev.cost(c);
    if (best) {
      if (cost > best->cost) return;
      if (cost == best->cost) {
        if (c.facts.size() > best->candidate.facts.size()) return;
        if (c.facts.size() == best->candidate.facts.size()) {
          auto key = rendered_facts(c, num_states, universe, dataset);
          if (!(key < best_key)) return;
          best_key = std::move(key);
          best = ScoredCandidate{c, cost};
          return;
        }
      }
    }
    if (!best || cost < best->cost) trajectory.push_back(cost);
    best = ScoredCandidate{c, cost};
    best_key = rendered_facts(c, num_states, universe, dataset);
  };

  std::vector<std::size_t> idx;
  Candidate c;
  for (std::size_t k = 0; k <= max_k && k <= pool.size(); ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      c.facts.clear();
      for (std::size_t i : idx) c.facts.push_back(pool[i]);  // pool is sorted, so facts stay sorted
      for (StateSet m : masks) {
        c.accepting = m;
        if (structurally_valid(c, cfg)) offer(c);
      }
      // next k-combination
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  LearnerReport report;
  report.best_asa = to_asa(best->candidate, num_states, universe);
  report.cost = best->cost;
  report.iterations = examined;
  report.exhaustive = true;
  report.trajectory = std::move(trajectory);
  report.wall_seconds = seconds_since(started);
  return report;
}

}  // namespace symaut
