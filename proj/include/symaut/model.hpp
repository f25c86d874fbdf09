#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace symaut {

/// Symbol code: position of the symbol in its AlphabetSpec.
using Symbol = std::uint8_t;

/// Placeholder for a cell that was never observed. Never a valid code.
inline constexpr Symbol kMissingSymbol = 0xFF;
inline constexpr std::size_t kMaxSymbols = 255;

/// Ordered symbol names. The order of the list is the value order used by
/// comparison guards (lt, at_least, at_most).
class AlphabetSpec {
 public:
  explicit AlphabetSpec(std::vector<std::string> symbols);

  /// "a", "b", ... for n <= 26.
  static AlphabetSpec letters(std::size_t n);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& name(Symbol s) const { return symbols_.at(s); }
  std::optional<Symbol> find(std::string_view name) const;
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  bool operator==(const AlphabetSpec& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> index_;
};

/// Ordered attribute names (the component sequences of an MVS).
class AttributeSet {
 public:
  explicit AttributeSet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t a) const { return names_.at(a); }
  std::optional<std::size_t> find(std::string_view name) const;
  const std::vector<std::string>& names() const noexcept { return names_; }

  bool operator==(const AttributeSet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// The observations of one time point, indexed by attribute.
class Coordinate {
 public:
  explicit Coordinate(std::span<const Symbol> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  Symbol operator[](std::size_t attribute) const { return values_[attribute]; }
  /// Throws std::domain_error when the attribute is not part of the coordinate.
  Symbol at(std::size_t attribute) const;
  std::span<const Symbol> values() const noexcept { return values_; }

 private:
  std::span<const Symbol> values_;
};

/// Multivariate symbolic sequence. Stored time-major: the attribute values of
/// time t are contiguous, so a coordinate is a plain view.
class Mvs {
 public:
  Mvs(std::string id, std::size_t num_attributes, std::size_t length, std::vector<Symbol> codes);

  const std::string& id() const noexcept { return id_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t num_attributes() const noexcept { return num_attributes_; }

  /// Time is 1-based; throws std::out_of_range outside 1..length().
  Coordinate coordinate(std::size_t t) const;
  Symbol at(std::size_t attribute, std::size_t t) const;
  std::span<const Symbol> codes() const noexcept { return codes_; }

  bool operator==(const Mvs&) const = default;

 private:
  std::string id_;
  std::size_t num_attributes_;
  std::size_t length_;
  std::vector<Symbol> codes_;
};

enum class Label : std::uint8_t { positive, negative };

std::string_view label_name(Label label);

struct LabeledExample {
  Mvs mvs;
  Label label;

  bool operator==(const LabeledExample&) const = default;
};

class Dataset {
 public:
  Dataset(AlphabetSpec alphabet, AttributeSet attributes, std::vector<LabeledExample> examples);

  const AlphabetSpec& alphabet() const noexcept { return alphabet_; }
  const AttributeSet& attributes() const noexcept { return attributes_; }
  const std::vector<LabeledExample>& examples() const noexcept { return examples_; }
  std::size_t size() const noexcept { return examples_.size(); }
  const LabeledExample& operator[](std::size_t i) const { return examples_[i]; }

  std::size_t count(Label label) const;
  /// Same header, selected examples in the given order.
  Dataset subset(std::span<const std::size_t> indices) const;
  /// Same header and examples with the given labels.
  Dataset relabeled(std::span<const Label> labels) const;

  bool operator==(const Dataset&) const = default;

 private:
  AlphabetSpec alphabet_;
  AttributeSet attributes_;
  std::vector<LabeledExample> examples_;
};

struct Violation {
  std::string example_id;
  std::string kind;  // "duplicate id", "incomplete coordinate", ...
  std::string detail;
};

/// Empty iff every data-model invariant holds.
std::vector<Violation> validate_dataset(const Dataset& dataset);

/// Attribute name -> symbol name view of one coordinate, for display.
std::vector<std::pair<std::string, std::string>> named_coordinate(const Dataset& dataset, const Mvs& mvs,
                                                                  std::size_t t);

}  // namespace symaut
