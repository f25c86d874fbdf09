#include "symaut/model.hpp"

#include <stdexcept>
#include <unordered_set>

#include "symaut/errors.hpp"

namespace symaut {

AlphabetSpec::AlphabetSpec(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw ConfigError("alphabet must contain at least one symbol");
  if (symbols_.size() > kMaxSymbols) throw ConfigError("alphabet exceeds 255 symbols");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) throw ConfigError("empty symbol name in alphabet");
    if (!index_.emplace(symbols_[i], static_cast<Symbol>(i)).second)
      throw ConfigError("duplicate symbol '" + symbols_[i] + "' in alphabet");
  }
}

AlphabetSpec AlphabetSpec::letters(std::size_t n) {
  if (n == 0 || n > 26) throw ConfigError("letter alphabets support 1..26 symbols");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('a' + i));
  return AlphabetSpec(std::move(out));
}

std::optional<Symbol> AlphabetSpec::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AttributeSet::AttributeSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ConfigError("attribute set must not be empty");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw ConfigError("empty attribute name");
    if (!index_.emplace(names_[i], i).second) throw ConfigError("duplicate attribute '" + names_[i] + "'");
  }
}

std::optional<std::size_t> AttributeSet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Coordinate::at(std::size_t attribute) const {
  if (attribute >= values_.size())
    throw std::domain_error("attribute " + std::to_string(attribute) + " is not part of the coordinate");
  return values_[attribute];
}

Mvs::Mvs(std::string id, std::size_t num_attributes, std::size_t length, std::vector<Symbol> codes)
    : id_(std::move(id)), num_attributes_(num_attributes), length_(length), codes_(std::move(codes)) {
  if (length_ == 0) throw ValidationError("sequence '" + id_ + "' is empty");
  if (num_attributes_ == 0) throw ValidationError("sequence '" + id_ + "' has no attributes");
  if (codes_.size() != num_attributes_ * length_)
    throw ValidationError("sequence '" + id_ + "': expected " + std::to_string(num_attributes_ * length_) +
                          " cells, got " + std::to_string(codes_.size()));
}

Coordinate Mvs::coordinate(std::size_t t) const {
  if (t < 1 || t > length_)
    throw std::out_of_range("time " + std::to_string(t) + " outside 1.." + std::to_string(length_) +
                            " for sequence '" + id_ + "'");
  return Coordinate(std::span<const Symbol>(codes_).subspan((t - 1) * num_attributes_, num_attributes_));
}

Symbol Mvs::at(std::size_t attribute, std::size_t t) const { return coordinate(t).at(attribute); }

std::string_view label_name(Label label) { return label == Label::positive ? "pos" : "neg"; }

Dataset::Dataset(AlphabetSpec alphabet, AttributeSet attributes, std::vector<LabeledExample> examples)
    : alphabet_(std::move(alphabet)), attributes_(std::move(attributes)), examples_(std::move(examples)) {}

std::size_t Dataset::count(Label label) const {
  std::size_t n = 0;
  for (const auto& e : examples_) n += e.label == label;
  return n;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<LabeledExample> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(examples_.at(i));
  return Dataset(alphabet_, attributes_, std::move(out));
}

Dataset Dataset::relabeled(std::span<const Label> labels) const {
  if (labels.size() != examples_.size()) throw std::invalid_argument("label count does not match dataset size");
  std::vector<LabeledExample> out = examples_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].label = labels[i];
  return Dataset(alphabet_, attributes_, std::move(out));
}

std::vector<Violation> validate_dataset(const Dataset& dataset) {
  std::vector<Violation> out;
  std::unordered_set<std::string> seen;
  const std::size_t num_attrs = dataset.attributes().size();
  const std::size_t num_symbols = dataset.alphabet().size();

  for (const auto& example : dataset.examples()) {
    const Mvs& m = example.mvs;
    if (!seen.insert(m.id()).second) out.push_back({m.id(), "duplicate id", "id occurs more than once"});
    if (m.num_attributes() != num_attrs) {
      out.push_back({m.id(), "attribute count mismatch",
                     "has " + std::to_string(m.num_attributes()) + " attributes, dataset declares " +
                         std::to_string(num_attrs)});
      continue;
    }
    bool incomplete = false;
    bool unknown = false;
    std::string first_incomplete, first_unknown;
    for (std::size_t t = 1; t <= m.length(); ++t) {
      const Coordinate c = m.coordinate(t);
      for (std::size_t a = 0; a < num_attrs; ++a) {
        const Symbol s = c[a];
        const std::string where = dataset.attributes().name(a) + "@" + std::to_string(t);
        if (s == kMissingSymbol) {
          if (!incomplete) first_incomplete = where;
          incomplete = true;
        } else if (s >= num_symbols) {
          if (!unknown) first_unknown = where;
          unknown = true;
        }
      }
    }
    if (incomplete) out.push_back({m.id(), "incomplete coordinate", "missing cell at " + first_incomplete});
    if (unknown) out.push_back({m.id(), "unknown symbol", "symbol outside alphabet at " + first_unknown});
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> named_coordinate(const Dataset& dataset, const Mvs& mvs,
                                                                  std::size_t t) {
  const Coordinate c = mvs.coordinate(t);
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t a = 0; a < c.size(); ++a)
    out.emplace_back(dataset.attributes().name(a), dataset.alphabet().name(c[a]));
  return out;
}

}  // namespace symaut
