#include "symaut/evaluator.hpp"

#include <algorithm>
#include <bit>

#include "symaut/errors.hpp"

namespace symaut {

void Candidate::normalize() {
  std::sort(facts.begin(), facts.end());
  facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
}

bool Candidate::has(const Fact& f) const { return std::binary_search(facts.begin(), facts.end(), f); }

Asa to_asa(const Candidate& c, std::size_t num_states, const GuardUniverse& universe) {
  std::vector<Transition> ts;
  ts.reserve(c.facts.size());
  for (const Fact& f : c.facts) ts.push_back({f.from, universe[f.guard], f.to});
  return Asa(num_states, c.accepting, std::move(ts));
}

Candidate from_asa(const Asa& asa, const GuardUniverse& universe) {
  Candidate c;
  c.accepting = asa.accepting();
  for (const auto& t : asa.transitions()) {
    const auto g = universe.find(t.guard);
    if (!g) throw ConfigError("automaton uses a guard outside the guard universe");
    c.facts.push_back({t.from, static_cast<std::uint16_t>(*g), t.to});
  }
  c.normalize();
  return c;
}

SatisfactionTable::SatisfactionTable(const Dataset& dataset, const GuardUniverse& universe, simd::Backend backend)
    : num_guards_(universe.size()) {
  const std::size_t num_attrs = dataset.attributes().size();
  for (const auto& e : dataset.examples()) {
    if (e.mvs.num_attributes() != num_attrs) throw ValidationError("sequence '" + e.mvs.id() + "' has wrong arity");
    offsets_.push_back(positions_);
    lengths_.push_back(e.mvs.length());
    positions_ += e.mvs.length();
  }
  words_ = std::max<std::size_t>(1, simd::words_for_bits(positions_));

  // Attribute-major columns over all positions feed the comparison kernels.
  std::vector<std::vector<std::uint8_t>> columns(num_attrs, std::vector<std::uint8_t>(positions_));
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const Mvs& m = dataset[i].mvs;
    const auto codes = m.codes();
    for (std::size_t t = 0; t < m.length(); ++t)
      for (std::size_t a = 0; a < num_attrs; ++a) columns[a][offsets_[i] + t] = codes[t * num_attrs + a];
  }

  bits_.assign(num_guards_ * words_, 0);
  const auto& k = simd::kernels(backend);
  for (std::size_t g = 0; g < num_guards_; ++g) {
    const GroundGuard& guard = universe[g];
    std::uint64_t* out = bits_.data() + g * words_;
    const std::uint8_t* col = columns.at(guard.attribute).data();
    const auto value = static_cast<std::uint8_t>(guard.operand);
    switch (guard.kind) {
      case GuardKind::eq: k.compare_value(simd::CompareOp::eq, col, positions_, value, out); break;
      case GuardKind::neg: k.compare_value(simd::CompareOp::ne, col, positions_, value, out); break;
      case GuardKind::at_least: k.compare_value(simd::CompareOp::ge, col, positions_, value, out); break;
      case GuardKind::at_most: k.compare_value(simd::CompareOp::le, col, positions_, value, out); break;
      case GuardKind::lt:
        k.compare_columns(simd::CompareOp::lt, col, columns.at(guard.operand).data(), positions_, out);
        break;
    }
  }
}

namespace {

constexpr double kParallelByteCap = 512.0 * 1024 * 1024;

bool any(const std::uint64_t* words, std::size_t n) {
  for (std::size_t w = 0; w < n; ++w)
    if (words[w] != 0) return true;
  return false;
}

std::int64_t popcount(std::uint64_t x) { return std::popcount(x); }

}  // namespace

Evaluator::Evaluator(const Dataset& dataset, const GuardUniverse& universe, std::size_t num_states, Semantics sem,
                     ObjectiveConfig objective, simd::Backend backend, EvalLayout layout)
    : table_(dataset, universe, backend), num_states_(num_states), sem_(sem), objective_(objective) {
  if (num_states_ < 1 || num_states_ > kMaxStates) throw ConfigError("state budget out of range");
  check_compatible(objective_, sem_);
  labels_.reserve(dataset.size());
  for (const auto& e : dataset.examples()) labels_.push_back(e.label);

  if (layout != EvalLayout::per_example) {
    std::size_t longest = 0;
    for (std::size_t e = 0; e < table_.num_examples(); ++e) longest = std::max(longest, table_.length(e));
    const double words = static_cast<double>(simd::words_for_bits(std::max<std::size_t>(1, labels_.size())));
    const double bytes = 8.0 * words * static_cast<double>(longest + 1) *
                         static_cast<double>(table_.num_guards() + num_states_ + 2);
    if (layout == EvalLayout::example_parallel || bytes <= kParallelByteCap) build_slices();
  }
  set_incumbent(Candidate{});
}

void Evaluator::build_slices() {
  layout_ = EvalLayout::example_parallel;
  words_ = simd::words_for_bits(std::max<std::size_t>(1, labels_.size()));
  max_len_ = 0;
  for (std::size_t e = 0; e < table_.num_examples(); ++e) max_len_ = std::max(max_len_, table_.length(e));

  slices_.assign(table_.num_guards() * max_len_ * words_, 0);
  alive_.assign((max_len_ + 1) * words_, 0);
  positives_.assign(words_, 0);
  negatives_.assign(words_, 0);
  for (std::size_t e = 0; e < labels_.size(); ++e) {
    const std::uint64_t bit = std::uint64_t{1} << (e & 63);
    const std::size_t w = e >> 6;
    (labels_[e] == Label::positive ? positives_ : negatives_)[w] |= bit;
    const std::size_t n = table_.length(e);
    for (std::size_t t = 1; t <= n + 1; ++t) alive_[(t - 1) * words_ + w] |= bit;
    for (std::size_t g = 0; g < table_.num_guards(); ++g)
      for (std::size_t t = 1; t <= n; ++t)
        if (table_.test(g, table_.position(e, t))) slices_[(g * max_len_ + t - 1) * words_ + w] |= bit;
  }
  occ_.assign(num_states_ * words_, 0);
  next_.assign(num_states_ * words_, 0);
  acc_.assign(words_, 0);
  fired_.assign(words_, 0);
}

Evaluator::Compiled Evaluator::compile(const Candidate& c) const {
  Compiled out;
  out.accepting = c.accepting;
  out.begin.assign(num_states_ + 1, 0);
  out.guards.reserve(c.facts.size());
  out.targets.reserve(c.facts.size());
  // facts are sorted by source state
  for (const Fact& f : c.facts) {
    out.guards.push_back(f.guard);
    out.targets.push_back(f.to);
    ++out.begin[f.from + 1u];
  }
  for (std::size_t q = 0; q < num_states_; ++q) out.begin[q + 1] += out.begin[q];
  return out;
}

StateSet Evaluator::step(const Compiled& c, StateSet occ, std::size_t position) const {
  StateSet next = 0;
  const bool skip = sem_.policy == ConsumptionPolicy::skip_till_any_match;
  const bool retain = sem_.acceptance == AcceptanceMode::earliest_absorbing;
  for (StateSet rest = occ; rest != 0; rest &= rest - 1) {
    const auto q = static_cast<std::size_t>(std::countr_zero(rest));
    bool fired = false;
    for (std::uint32_t i = c.begin[q]; i < c.begin[q + 1]; ++i) {
      if (table_.test(c.guards[i], position)) {
        next |= state_bit(c.targets[i]);
        fired = true;
      }
    }
    if ((skip && !fired) || (retain && contains(c.accepting, static_cast<State>(q)))) next |= StateSet{1} << q;
  }
  return next;
}

ExampleOutcome Evaluator::simulate(std::size_t e, const Compiled& c, std::size_t t_start, StateSet occ,
                                   std::vector<StateSet>* trace, std::uint32_t* stop) const {
  const std::size_t n = table_.length(e);
  const bool earliest = sem_.acceptance == AcceptanceMode::earliest_absorbing;
  const std::size_t base = table_.position(e, 1);
  for (std::size_t t = t_start; t <= n; ++t) {
    if (trace) (*trace)[t - 1] = occ;
    if (earliest && (occ & c.accepting)) {
      if (stop) *stop = static_cast<std::uint32_t>(t);
      return {true, static_cast<std::uint32_t>(t)};
    }
    if (occ == 0) {
      if (stop) *stop = static_cast<std::uint32_t>(t);
      return {false, 0};
    }
    occ = step(c, occ, base + t - 1);
  }
  if (trace) (*trace)[n] = occ;
  if (stop) *stop = static_cast<std::uint32_t>(n + 1);
  const bool accepted = (occ & c.accepting) != 0;
  return {accepted, accepted && earliest ? static_cast<std::uint32_t>(n + 1) : 0u};
}

std::int64_t Evaluator::example_error(std::size_t e, const ExampleOutcome& o) const {
  if (labels_[e] == Label::positive) return o.accepted ? 0 : objective_.w_fn;
  return o.accepted ? objective_.w_fp : 0;
}

std::int64_t Evaluator::example_earliness(std::size_t e, const ExampleOutcome& o) const {
  if (!objective_.earliness_enabled || !o.accepted || o.first_accept == 0) return 0;
  const auto first = static_cast<std::int64_t>(o.first_accept);
  if (objective_.earliness_mode == EarlinessMode::first_accept_step) return first;
  const auto last = static_cast<std::int64_t>(table_.length(e)) + 1;
  return (first + last) * (last - first + 1) / 2;
}

CostVector Evaluator::cost_of(std::span<const ExampleOutcome> outcomes, std::size_t num_facts) const {
  CostVector cost{0, objective_.transition_penalty * static_cast<std::int64_t>(num_facts)};
  for (std::size_t e = 0; e < outcomes.size(); ++e) {
    cost.error += example_error(e, outcomes[e]);
    cost.reg += example_earliness(e, outcomes[e]);
  }
  return cost;
}

std::vector<ExampleOutcome> Evaluator::outcomes(const Candidate& c) const {
  const Compiled compiled = compile(c);
  std::vector<ExampleOutcome> out(num_examples());
  for (std::size_t e = 0; e < out.size(); ++e) out[e] = simulate(e, compiled, 1, state_bit(0), nullptr, nullptr);
  return out;
}

CostVector Evaluator::cost(const Candidate& c) const {
  if (layout_ == EvalLayout::example_parallel) {
    std::fill(occ_.begin(), occ_.end(), 0);
    std::copy_n(alive(1), words_, occ_.begin());
    std::fill(acc_.begin(), acc_.end(), 0);
    return sweep(compile(c), c.facts.size(), 1, 0, nullptr);
  }
  const auto o = outcomes(c);
  return cost_of(o, c.facts.size());
}

void Evaluator::set_incumbent(const Candidate& c) {
  incumbent_ = c;
  const Compiled compiled = compile(c);
  if (layout_ == EvalLayout::example_parallel) {
    const std::size_t frames = max_len_ + 1;
    frames_.occ.resize(frames * num_states_ * words_);
    frames_.acc.resize(frames * words_);
    frames_.reg.resize(frames);
    std::fill(occ_.begin(), occ_.end(), 0);
    std::copy_n(alive(1), words_, occ_.begin());
    std::fill(acc_.begin(), acc_.end(), 0);
    incumbent_cost_ = sweep(compiled, c.facts.size(), 1, 0, &frames_);
    return;
  }
  traces_.resize(num_examples());
  stops_.resize(num_examples());
  incumbent_outcomes_.resize(num_examples());
  for (std::size_t e = 0; e < num_examples(); ++e) {
    traces_[e].assign(table_.length(e) + 1, 0);
    incumbent_outcomes_[e] = simulate(e, compiled, 1, state_bit(0), &traces_[e], &stops_[e]);
  }
  incumbent_cost_ = cost_of(incumbent_outcomes_, c.facts.size());
}

CostVector Evaluator::cost_incremental(const Candidate& c) const {
  if (layout_ == EvalLayout::example_parallel) return parallel_incremental(c);
  // (source state, guard) pairs whose presence differs from the incumbent
  struct Change {
    State from;
    std::uint16_t guard;
  };
  std::vector<Change> changes;
  {
    auto a = incumbent_.facts.begin();
    auto b = c.facts.begin();
    while (a != incumbent_.facts.end() || b != c.facts.end()) {
      if (b == c.facts.end() || (a != incumbent_.facts.end() && *a < *b)) {
        changes.push_back({a->from, a->guard});
        ++a;
      } else if (a == incumbent_.facts.end() || *b < *a) {
        changes.push_back({b->from, b->guard});
        ++b;
      } else {
        ++a;
        ++b;
      }
    }
  }
  const StateSet toggled = incumbent_.accepting ^ c.accepting;
  if (changes.empty() && toggled == 0) return incumbent_cost_;

  std::optional<Compiled> compiled;
  CostVector cost{0, objective_.transition_penalty * static_cast<std::int64_t>(c.facts.size())};
  for (std::size_t e = 0; e < num_examples(); ++e) {
    const auto& trace = traces_[e];
    const std::uint32_t stop = stops_[e];
    const std::size_t base = table_.position(e, 1);
    std::size_t diverge = 0;
    for (std::size_t t = 1; t <= stop && diverge == 0; ++t) {
      const StateSet occ = trace[t - 1];
      if (occ & toggled) {
        diverge = t;
        break;
      }
      if (t == stop) break;  // no observation consumed at the stopping time
      for (const Change& ch : changes) {
        if (contains(occ, ch.from) && table_.test(ch.guard, base + t - 1)) {
          diverge = t;
          break;
        }
      }
    }
    ExampleOutcome o = incumbent_outcomes_[e];
    if (diverge != 0) {
      if (!compiled) compiled = compile(c);
      o = simulate(e, *compiled, diverge, trace[diverge - 1], nullptr, nullptr);
    }
    cost.error += example_error(e, o);
    cost.reg += example_earliness(e, o);
  }
  return cost;
}

// Advances every example at once. occ_ holds one bitset per state; acc_ the
// examples accepted so far. Under earliest acceptance accepted examples leave
// occ_, so retention needs no separate handling.
CostVector Evaluator::sweep(const Compiled& c, std::size_t num_facts, std::size_t t, std::int64_t reg,
                            Frames* record) const {
  const std::size_t W = words_;
  const bool earliest = sem_.acceptance == AcceptanceMode::earliest_absorbing;
  const bool skip = sem_.policy == ConsumptionPolicy::skip_till_any_match;
  const bool earliness = earliest && objective_.earliness_enabled;
  const bool sum_mode = objective_.earliness_mode == EarlinessMode::sum_all_accept_steps;
  std::uint64_t* occ = occ_.data();
  std::uint64_t* acc = acc_.data();

  auto live_states = [&] {
    StateSet live = 0;
    for (std::size_t q = 0; q < num_states_; ++q)
      if (any(occ + q * W, W)) live |= StateSet{1} << q;
    return live;
  };
  StateSet live = live_states();

  for (;; ++t) {
    if (record) {
      std::copy_n(occ, num_states_ * W, record->occ.begin() + static_cast<std::ptrdiff_t>((t - 1) * num_states_ * W));
      std::copy_n(acc, W, record->acc.begin() + static_cast<std::ptrdiff_t>((t - 1) * W));
      record->reg[t - 1] = reg;
      record->stop = t;
    }
    const std::uint64_t* al = alive(t);
    const StateSet hit_states = live & c.accepting;
    if (earliest) {
      if (hit_states) {
        for (std::size_t w = 0; w < W; ++w) {
          std::uint64_t h = 0;
          for (StateSet r = hit_states; r; r &= r - 1) h |= occ[std::countr_zero(r) * W + w];
          if (earliness && !sum_mode) reg += static_cast<std::int64_t>(t) * popcount(h & ~acc[w]);
          acc[w] |= h;
          for (StateSet r = live; r; r &= r - 1) occ[std::countr_zero(r) * W + w] &= ~h;
        }
        live = live_states();
      }
      if (earliness && sum_mode)
        for (std::size_t w = 0; w < W; ++w) reg += static_cast<std::int64_t>(t) * popcount(acc[w] & al[w]);
    } else if (hit_states) {
      const std::uint64_t* later = t <= max_len_ ? alive(t + 1) : nullptr;
      for (std::size_t w = 0; w < W; ++w) {
        std::uint64_t h = 0;
        for (StateSet r = hit_states; r; r &= r - 1) h |= occ[std::countr_zero(r) * W + w];
        acc[w] |= h & al[w] & ~(later ? later[w] : 0);
      }
    }
    if (t > max_len_ || live == 0) break;

    // consume observation t
    const std::uint64_t* active = alive(t + 1);
    std::uint64_t* next = next_.data();
    std::fill_n(next, num_states_ * W, 0);
    for (StateSet r = live; r; r &= r - 1) {
      const auto q = static_cast<std::size_t>(std::countr_zero(r));
      const std::uint64_t* oq = occ + q * W;
      if (skip) std::fill_n(fired_.data(), W, 0);
      for (std::uint32_t i = c.begin[q]; i < c.begin[q + 1]; ++i) {
        const std::uint64_t* s = slice(c.guards[i], t);
        std::uint64_t* nq = next + static_cast<std::size_t>(c.targets[i]) * W;
        for (std::size_t w = 0; w < W; ++w) nq[w] |= oq[w] & s[w];
        if (skip)
          for (std::size_t w = 0; w < W; ++w) fired_[w] |= s[w];
      }
      if (skip) {
        std::uint64_t* nq = next + q * W;
        for (std::size_t w = 0; w < W; ++w) nq[w] |= oq[w] & ~fired_[w] & active[w];
      }
    }
    std::swap(occ_, next_);
    occ = occ_.data();
    live = live_states();
  }

  // Accepted examples keep contributing their remaining times.
  if (earliness && sum_mode && t <= max_len_) {
    for (std::size_t w = 0; w < W; ++w) {
      for (std::uint64_t bits = acc[w] & alive(t + 1)[w]; bits; bits &= bits - 1) {
        const auto e = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        const auto first = static_cast<std::int64_t>(t) + 1;
        const auto last = static_cast<std::int64_t>(table_.length(e)) + 1;
        reg += (first + last) * (last - first + 1) / 2;
      }
    }
  }

  CostVector cost{0, reg + objective_.transition_penalty * static_cast<std::int64_t>(num_facts)};
  for (std::size_t w = 0; w < W; ++w) {
    cost.error += objective_.w_fp * popcount(acc[w] & negatives_[w]);
    cost.error += objective_.w_fn * popcount(positives_[w] & ~acc[w]);
  }
  return cost;
}

CostVector Evaluator::parallel_incremental(const Candidate& c) const {
  struct Change {
    State from;
    std::uint16_t guard;
  };
  std::vector<Change> changes;
  {
    auto a = incumbent_.facts.begin();
    auto b = c.facts.begin();
    while (a != incumbent_.facts.end() || b != c.facts.end()) {
      if (b == c.facts.end() || (a != incumbent_.facts.end() && *a < *b)) {
        changes.push_back({a->from, a->guard});
        ++a;
      } else if (a == incumbent_.facts.end() || *b < *a) {
        changes.push_back({b->from, b->guard});
        ++b;
      } else {
        ++a;
        ++b;
      }
    }
  }
  const StateSet toggled = incumbent_.accepting ^ c.accepting;
  const std::int64_t penalty_delta =
      objective_.transition_penalty *
      (static_cast<std::int64_t>(c.facts.size()) - static_cast<std::int64_t>(incumbent_.facts.size()));
  if (changes.empty() && toggled == 0) return incumbent_cost_;

  const std::size_t W = words_;
  std::size_t diverge = 0;
  for (std::size_t t = 1; t <= frames_.stop && diverge == 0; ++t) {
    const std::uint64_t* occ = frames_.occ.data() + (t - 1) * num_states_ * W;
    for (StateSet r = toggled; r; r &= r - 1)
      if (static_cast<std::size_t>(std::countr_zero(r)) < num_states_ && any(occ + std::countr_zero(r) * W, W)) {
        diverge = t;
        break;
      }
    if (diverge != 0 || t > max_len_) break;
    for (const Change& ch : changes) {
      const std::uint64_t* oq = occ + static_cast<std::size_t>(ch.from) * W;
      const std::uint64_t* s = slice(ch.guard, t);
      for (std::size_t w = 0; w < W && diverge == 0; ++w)
        if (oq[w] & s[w]) diverge = t;
      if (diverge != 0) break;
    }
  }
  if (diverge == 0) return {incumbent_cost_.error, incumbent_cost_.reg + penalty_delta};

  std::copy_n(frames_.occ.begin() + static_cast<std::ptrdiff_t>((diverge - 1) * num_states_ * W), num_states_ * W,
              occ_.begin());
  std::copy_n(frames_.acc.begin() + static_cast<std::ptrdiff_t>((diverge - 1) * W), W, acc_.begin());
  return sweep(compile(c), c.facts.size(), diverge, frames_.reg[diverge - 1], nullptr);
}

}  // namespace symaut
