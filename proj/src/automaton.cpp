#include "symaut/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "symaut/errors.hpp"

namespace symaut {

Asa::Asa(std::size_t num_states, StateSet accepting, std::vector<Transition> transitions)
    : num_states_(num_states), accepting_(accepting), transitions_(std::move(transitions)) {
  if (num_states_ < 1 || num_states_ > kMaxStates)
    throw std::invalid_argument("an automaton needs 1.." + std::to_string(kMaxStates) + " states");
  if (num_states_ < kMaxStates && (accepting_ >> num_states_) != 0)
    throw std::invalid_argument("accepting state out of range");
  for (const auto& t : transitions_)
    if (t.from >= num_states_ || t.to >= num_states_) throw std::invalid_argument("transition endpoint out of range");
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
}

Asa Asa::empty(std::size_t num_states) { return Asa(num_states, 0, {}); }

std::string_view policy_name(ConsumptionPolicy p) {
  return p == ConsumptionPolicy::strict_contiguity ? "strict" : "skip";
}

std::string_view acceptance_name(AcceptanceMode m) {
  return m == AcceptanceMode::end_of_sequence ? "end" : "earliest";
}

std::string state_name(State q) { return "q" + std::to_string(q); }

namespace {

// Enabled edges of one step: (from, to, transition index or -1 for an
// implicit stay).
struct Edge {
  State from;
  State to;
  int fact;
};

StateSet step_recording(const Asa& asa, StateSet occupied, const Coordinate& coord, const Semantics& sem,
                        std::vector<Edge>* edges) {
  StateSet next = 0;
  const auto& ts = asa.transitions();
  for (StateSet rest = occupied; rest != 0; rest &= rest - 1) {
    const auto q = static_cast<State>(std::countr_zero(rest));
    bool fired = false;
    // transitions are sorted by source state
    auto it = std::lower_bound(ts.begin(), ts.end(), q, [](const Transition& t, State s) { return t.from < s; });
    for (; it != ts.end() && it->from == q; ++it) {
      if (satisfies(it->guard, coord)) {
        next |= state_bit(it->to);
        fired = true;
        if (edges) edges->push_back({q, it->to, static_cast<int>(it - ts.begin())});
      }
    }
    const bool retain = sem.acceptance == AcceptanceMode::earliest_absorbing && asa.is_accepting(q);
    if ((!fired && sem.policy == ConsumptionPolicy::skip_till_any_match) || retain) {
      next |= state_bit(q);
      if (edges) edges->push_back({q, q, -1});
    }
  }
  return next;
}

}  // namespace

StateSet step(const Asa& asa, StateSet occupied, const Coordinate& coord, const Semantics& sem) {
  return step_recording(asa, occupied, coord, sem, nullptr);
}

RunResult run(const Asa& asa, const Mvs& mvs, const Semantics& sem) {
  const std::size_t n = mvs.length();
  RunResult result;
  result.occupancy.reserve(n + 1);
  std::vector<std::vector<Edge>> edges(n);

  StateSet occ = state_bit(asa.start());
  result.occupancy.push_back(occ);
  for (std::size_t t = 1; t <= n; ++t) {
    occ = step_recording(asa, occ, mvs.coordinate(t), sem, &edges[t - 1]);
    result.occupancy.push_back(occ);
  }

  const StateSet acc = asa.accepting();
  for (std::size_t t = 1; t <= n + 1; ++t) {
    const StateSet o = result.occupancy[t - 1];
    if (!result.first_accept_time && (o & acc)) result.first_accept_time = t;
    if (!result.dead_time && o == 0) result.dead_time = t;
  }
  if (sem.acceptance == AcceptanceMode::end_of_sequence) {
    result.accepted = (result.occupancy[n] & acc) != 0;
  } else {
    result.accepted = result.first_accept_time.has_value();
  }
  if (!result.accepted) return result;

  std::vector<bool> used(asa.transitions().size(), false);
  if (sem.attribution == PathAttribution::single_witness) {
    // One path: lowest accepting state at the deciding time, first recorded
    // predecessor edge at every step.
    const std::size_t t0 = sem.acceptance == AcceptanceMode::end_of_sequence ? n + 1 : *result.first_accept_time;
    auto current = static_cast<State>(std::countr_zero(result.occupancy[t0 - 1] & acc));
    for (std::size_t t = t0 - 1; t >= 1; --t) {
      for (const Edge& e : edges[t - 1]) {
        if (e.to != current) continue;
        if (e.fact >= 0) used[static_cast<std::size_t>(e.fact)] = true;
        current = e.from;
        break;
      }
    }
  } else {
    // Backward traversal over recorded edges from accepting occupancies.
    std::vector<StateSet> live(n + 2, 0);
    if (sem.acceptance == AcceptanceMode::end_of_sequence) {
      live[n + 1] = result.occupancy[n] & acc;
    } else {
      for (std::size_t t = 1; t <= n + 1; ++t) live[t] = result.occupancy[t - 1] & acc;
    }
    for (std::size_t t = n; t >= 1; --t) {
      if (live[t + 1] == 0) continue;
      for (const Edge& e : edges[t - 1]) {
        if (!contains(live[t + 1], e.to)) continue;
        if (e.fact >= 0) used[static_cast<std::size_t>(e.fact)] = true;
        live[t] |= state_bit(e.from);
      }
    }
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) result.used_transitions.push_back(asa.transitions()[i]);
  return result;
}

// ---------------------------------------------------------------------------
// Fact file parsing

namespace {

struct Term {
  std::string functor;
  std::vector<Term> args;
  std::size_t line = 1;
  std::size_t column = 1;
};

class FactReader {
 public:
  explicit FactReader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  Term read_fact() {
    Term t = read_term();
    skip_space();
    if (peek() != '.') fail("expected '.' after fact");
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column_); }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Term read_term() {
    skip_space();
    Term t;
    t.line = line_;
    t.column = column_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
          static_cast<unsigned char>(c) >= 0x80) {
        t.functor += c;
        advance();
      } else {
        break;
      }
    }
    if (t.functor.empty()) fail(pos_ < text_.size() ? std::string("unexpected character '") + peek() + "'"
                                                    : std::string("unexpected end of input"));
    skip_space();
    if (peek() == '(') {
      advance();
      for (;;) {
        t.args.push_back(read_term());
        skip_space();
        if (peek() == ',') {
          advance();
        } else if (peek() == ')') {
          advance();
          break;
        } else {
          fail("expected ',' or ')'");
        }
      }
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

State parse_state(const Term& t) {
  const std::string& s = t.functor;
  if (!t.args.empty() || s.size() < 2 || s[0] != 'q' ||
      !std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("expected a state name like q0, got '" + s + "'", t.line, t.column);
  const unsigned long v = std::stoul(s.substr(1));
  if (v >= kMaxStates) throw ParseError("state index exceeds " + std::to_string(kMaxStates - 1), t.line, t.column);
  return static_cast<State>(v);
}

GroundGuard parse_guard_term(const Term& t, const AttributeSet& attributes, const AlphabetSpec& alphabet) {
  const auto kind = parse_kind(t.functor);
  if (!kind) throw ParseError("unknown guard '" + t.functor + "'", t.line, t.column);
  if (t.args.size() != 2 || !t.args[0].args.empty() || !t.args[1].args.empty())
    throw ParseError("guard '" + t.functor + "' takes two constant arguments", t.line, t.column);
  try {
    return parse_guard(t.functor + "(" + t.args[0].functor + "," + t.args[1].functor + ")", attributes, alphabet);
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), t.line, t.column);
  }
}

}  // namespace

Asa parse_asa(std::string_view text, const AttributeSet& attributes, const AlphabetSpec& alphabet,
              std::size_t min_states) {
  FactReader reader(text);
  std::vector<Transition> transitions;
  StateSet accepting = 0;
  std::size_t num_states = std::max<std::size_t>(min_states, 1);

  while (!reader.at_end()) {
    const Term fact = reader.read_fact();
    if (fact.functor == "transition") {
      if (fact.args.size() != 3) throw ParseError("transition/3 expects three arguments", fact.line, fact.column);
      Transition t{parse_state(fact.args[0]), parse_guard_term(fact.args[1], attributes, alphabet),
                   parse_state(fact.args[2])};
      num_states = std::max<std::size_t>(num_states, std::max(t.from, t.to) + 1u);
      transitions.push_back(t);
    } else if (fact.functor == "accepting") {
      if (fact.args.size() != 1) throw ParseError("accepting/1 expects one argument", fact.line, fact.column);
      const State q = parse_state(fact.args[0]);
      num_states = std::max<std::size_t>(num_states, q + 1u);
      accepting |= state_bit(q);
    } else {
      throw ParseError("unknown predicate '" + fact.functor + "'", fact.line, fact.column);
    }
  }
  return Asa(num_states, accepting, std::move(transitions));
}

std::string render_asa(const Asa& asa, const AttributeSet& attributes, const AlphabetSpec& alphabet) {
  std::string out;
  for (const auto& t : asa.transitions()) {
    out += "transition(" + state_name(t.from) + "," + render_guard(t.guard, attributes, alphabet) + "," +
           state_name(t.to) + ").\n";
  }
  for (std::size_t q = 0; q < asa.num_states(); ++q)
    if (asa.is_accepting(static_cast<State>(q))) out += "accepting(" + state_name(static_cast<State>(q)) + ").\n";
  return out;
}

}  // namespace symaut
