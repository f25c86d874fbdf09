#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symaut/guards.hpp"
#include "symaut/model.hpp"

namespace symaut {

using State = std::uint8_t;
/// Bit q set <=> state q is in the set.
using StateSet = std::uint64_t;
inline constexpr std::size_t kMaxStates = 64;

inline constexpr StateSet state_bit(State q) { return StateSet{1} << q; }
inline constexpr bool contains(StateSet set, State q) { return (set >> q) & 1u; }

/// One fact transition(from, guard, to).
struct Transition {
  State from = 0;
  GroundGuard guard;
  State to = 0;

  auto operator<=>(const Transition&) const = default;
};

/// Answer set automaton: states q0..q{N-1}, start q0, accepting set and a
/// duplicate-free, sorted set of transition facts.
class Asa {
 public:
  /// Throws std::invalid_argument when a state is out of range.
  Asa(std::size_t num_states, StateSet accepting, std::vector<Transition> transitions);

  /// N states, no transitions, nothing accepting.
  static Asa empty(std::size_t num_states);

  std::size_t num_states() const noexcept { return num_states_; }
  State start() const noexcept { return 0; }
  StateSet accepting() const noexcept { return accepting_; }
  bool is_accepting(State q) const noexcept { return contains(accepting_, q); }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  bool operator==(const Asa&) const = default;

 private:
  std::size_t num_states_;
  StateSet accepting_;
  std::vector<Transition> transitions_;
};

/// What happens when no outgoing guard of an occupied state fires.
enum class ConsumptionPolicy : std::uint8_t { strict_contiguity, skip_till_any_match };

/// end_of_sequence: accept iff an accepting state is occupied after the last
/// observation. earliest_absorbing: accepting states are kept once entered and
/// the run accepts at the first time one is occupied.
enum class AcceptanceMode : std::uint8_t { end_of_sequence, earliest_absorbing };

/// Which accepting paths contribute to RunResult::used_transitions.
enum class PathAttribution : std::uint8_t { all_accepting_paths, single_witness };

struct Semantics {
  ConsumptionPolicy policy = ConsumptionPolicy::strict_contiguity;
  AcceptanceMode acceptance = AcceptanceMode::end_of_sequence;
  PathAttribution attribution = PathAttribution::all_accepting_paths;
};

std::string_view policy_name(ConsumptionPolicy p);
std::string_view acceptance_name(AcceptanceMode m);

/// Outcome of interpreting one MVS. Times are 1-based: occupancy at time t is
/// the state set before consuming observation t, so a sequence of length n
/// has occupancies for t = 1..n+1.
struct RunResult {
  bool accepted = false;
  std::optional<std::size_t> first_accept_time;
  std::optional<std::size_t> dead_time;
  /// Transition facts lying on at least one accepting path (sorted).
  std::vector<Transition> used_transitions;
  /// occupancy[i] is the occupied set at time i + 1.
  std::vector<StateSet> occupancy;

  StateSet occupied_at(std::size_t t) const { return occupancy.at(t - 1); }
};

/// One interpreter step on a single coordinate.
StateSet step(const Asa& asa, StateSet occupied, const Coordinate& coord, const Semantics& sem);

RunResult run(const Asa& asa, const Mvs& mvs, const Semantics& sem);

/// Parses "transition(q0,lt(alive,necrotic),q1)." / "accepting(q1)." facts.
/// `%` starts a comment. The state count is the largest mentioned state + 1,
/// raised to `min_states`. Throws ParseError with line/column.
Asa parse_asa(std::string_view text, const AttributeSet& attributes, const AlphabetSpec& alphabet,
              std::size_t min_states = 1);

/// One fact per line: transitions in sorted order, then accepting states.
std::string render_asa(const Asa& asa, const AttributeSet& attributes, const AlphabetSpec& alphabet);

std::string state_name(State q);

}  // namespace symaut
