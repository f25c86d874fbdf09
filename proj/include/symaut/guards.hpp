#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symaut/model.hpp"

namespace symaut {

/// Transition-feature templates. eq/neg/at_least/at_most take (attribute,
/// value); lt takes two distinct attributes.
enum class GuardKind : std::uint8_t { eq, neg, lt, at_least, at_most };

inline constexpr GuardKind kAllGuardKinds[] = {GuardKind::eq, GuardKind::neg, GuardKind::lt, GuardKind::at_least,
                                               GuardKind::at_most};

std::string_view kind_name(GuardKind kind);
std::optional<GuardKind> parse_kind(std::string_view name);

/// Small set of guard kinds.
class GuardKinds {
 public:
  constexpr GuardKinds() = default;
  constexpr GuardKinds(std::initializer_list<GuardKind> kinds) {
    for (GuardKind k : kinds) insert(k);
  }

  /// The five predefined features.
  static constexpr GuardKinds symbolic() {
    return {GuardKind::eq, GuardKind::neg, GuardKind::lt, GuardKind::at_least, GuardKind::at_most};
  }
  /// Equality only: automata that behave like classical ones.
  static constexpr GuardKinds classic() { return {GuardKind::eq}; }

  constexpr void insert(GuardKind k) { bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(k)); }
  constexpr bool contains(GuardKind k) const { return (bits_ >> static_cast<unsigned>(k)) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  std::vector<GuardKind> list() const;
  /// Comma-separated kind names, e.g. "eq,lt".
  std::string to_string() const;
  static GuardKinds parse(std::string_view csv);

  constexpr bool operator==(const GuardKinds&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

/// A fully instantiated transition feature. `operand` is a value code for
/// (attribute, value) kinds and the second attribute index for lt.
struct GroundGuard {
  GuardKind kind = GuardKind::eq;
  std::uint16_t attribute = 0;
  std::uint16_t operand = 0;

  auto operator<=>(const GroundGuard&) const = default;
};

/// Throws std::domain_error if a referenced attribute is outside the coordinate.
bool satisfies(const GroundGuard& guard, const Coordinate& coord);

/// Fact syntax, e.g. "lt(alive,necrotic)", "at_least(alive,e)".
std::string render_guard(const GroundGuard& guard, const AttributeSet& attributes, const AlphabetSpec& alphabet);

/// Inverse of render_guard; throws ValidationError on unknown kinds, names or arity.
GroundGuard parse_guard(std::string_view text, const AttributeSet& attributes, const AlphabetSpec& alphabet);

/// All ground guards of the enabled kinds over an attribute set and value domain,
/// ordered by kind, then attribute, then value (or second attribute).
class GuardUniverse {
 public:
  GuardUniverse(GuardKinds kinds, std::vector<GroundGuard> guards);

  GuardKinds kinds() const noexcept { return kinds_; }
  std::size_t size() const noexcept { return guards_.size(); }
  bool empty() const noexcept { return guards_.empty(); }
  const GroundGuard& operator[](std::size_t i) const { return guards_[i]; }
  std::span<const GroundGuard> guards() const noexcept { return guards_; }
  std::optional<std::size_t> find(const GroundGuard& g) const;

 private:
  GuardKinds kinds_;
  std::vector<GroundGuard> guards_;
  std::map<GroundGuard, std::size_t> index_;
};

/// Ground over the full alphabet. Throws ConfigError for an empty kind set.
GuardUniverse ground_universe(const AttributeSet& attributes, const AlphabetSpec& alphabet, GuardKinds kinds);

/// Ground over an explicit value domain (codes in alphabet order).
GuardUniverse ground_universe(const AttributeSet& attributes, std::span<const Symbol> values, GuardKinds kinds);

/// Symbols occurring anywhere in the dataset, in alphabet order.
std::vector<Symbol> observed_symbols(const Dataset& dataset);

enum class ValueDomain { observed, full_alphabet };

/// Grounding for learning: observed symbols by default.
GuardUniverse ground_for_dataset(const Dataset& dataset, GuardKinds kinds, ValueDomain domain = ValueDomain::observed);

}  // namespace symaut
