#include "symaut/guards.hpp"

#include <algorithm>
#include <stdexcept>

#include "symaut/errors.hpp"

namespace symaut {

std::string_view kind_name(GuardKind kind) {
  switch (kind) {
    case GuardKind::eq: return "eq";
    case GuardKind::neg: return "neg";
    case GuardKind::lt: return "lt";
    case GuardKind::at_least: return "at_least";
    case GuardKind::at_most: return "at_most";
  }
  return "?";
}

std::optional<GuardKind> parse_kind(std::string_view name) {
  for (GuardKind k : kAllGuardKinds)
    if (kind_name(k) == name) return k;
  return std::nullopt;
}

std::vector<GuardKind> GuardKinds::list() const {
  std::vector<GuardKind> out;
  for (GuardKind k : kAllGuardKinds)
    if (contains(k)) out.push_back(k);
  return out;
}

std::string GuardKinds::to_string() const {
  std::string out;
  for (GuardKind k : list()) {
    if (!out.empty()) out += ',';
    out += kind_name(k);
  }
  return out;
}

GuardKinds GuardKinds::parse(std::string_view csv) {
  if (csv == "symbolic" || csv == "all") return symbolic();
  if (csv == "classic") return classic();
  GuardKinds out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    const std::string_view item = csv.substr(start, end - start);
    if (!item.empty()) {
      auto k = parse_kind(item);
      if (!k) throw ConfigError("unknown guard kind '" + std::string(item) + "'");
      out.insert(*k);
    }
    start = end + 1;
  }
  if (out.empty()) throw ConfigError("guard kind set is empty");
  return out;
}

bool satisfies(const GroundGuard& guard, const Coordinate& coord) {
  const Symbol v = coord.at(guard.attribute);
  switch (guard.kind) {
    case GuardKind::eq: return v == guard.operand;
    case GuardKind::neg: return v != guard.operand;
    case GuardKind::lt: return v < coord.at(guard.operand);
    case GuardKind::at_least: return v >= guard.operand;
    case GuardKind::at_most: return v <= guard.operand;
  }
  return false;
}

std::string render_guard(const GroundGuard& guard, const AttributeSet& attributes, const AlphabetSpec& alphabet) {
  std::string out(kind_name(guard.kind));
  out += '(';
  out += attributes.name(guard.attribute);
  out += ',';
  out += guard.kind == GuardKind::lt ? attributes.name(guard.operand)
                                     : alphabet.name(static_cast<Symbol>(guard.operand));
  out += ')';
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

GroundGuard parse_guard(std::string_view text, const AttributeSet& attributes, const AlphabetSpec& alphabet) {
  text = trim(text);
  const std::size_t open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw ValidationError("malformed guard '" + std::string(text) + "'");
  const std::string_view name = trim(text.substr(0, open));
  const auto kind = parse_kind(name);
  if (!kind) throw ValidationError("unknown guard kind '" + std::string(name) + "'");
  const std::string_view args = text.substr(open + 1, text.size() - open - 2);
  const std::size_t comma = args.find(',');
  if (comma == std::string_view::npos || args.find(',', comma + 1) != std::string_view::npos)
    throw ValidationError("guard '" + std::string(text) + "' must have exactly two arguments");
  const std::string_view first = trim(args.substr(0, comma));
  const std::string_view second = trim(args.substr(comma + 1));

  const auto attr = attributes.find(first);
  if (!attr) throw ValidationError("unknown attribute '" + std::string(first) + "'");
  GroundGuard g{*kind, static_cast<std::uint16_t>(*attr), 0};
  if (*kind == GuardKind::lt) {
    const auto other = attributes.find(second);
    if (!other) throw ValidationError("unknown attribute '" + std::string(second) + "'");
    if (*other == *attr) throw ValidationError("lt needs two distinct attributes");
    g.operand = static_cast<std::uint16_t>(*other);
  } else {
    const auto sym = alphabet.find(second);
    if (!sym) throw ValidationError("unknown symbol '" + std::string(second) + "'");
    g.operand = *sym;
  }
  return g;
}

GuardUniverse::GuardUniverse(GuardKinds kinds, std::vector<GroundGuard> guards)
    : kinds_(kinds), guards_(std::move(guards)) {
  for (std::size_t i = 0; i < guards_.size(); ++i)
    if (!index_.emplace(guards_[i], i).second) throw std::invalid_argument("duplicate guard in universe");
}

std::optional<std::size_t> GuardUniverse::find(const GroundGuard& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GuardUniverse ground_universe(const AttributeSet& attributes, std::span<const Symbol> values, GuardKinds kinds) {
  if (kinds.empty()) throw ConfigError("at least one guard kind must be enabled");
  std::vector<Symbol> domain(values.begin(), values.end());
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());

  const auto num_attrs = static_cast<std::uint16_t>(attributes.size());
  std::vector<GroundGuard> out;
  for (GuardKind k : kinds.list()) {
    for (std::uint16_t a = 0; a < num_attrs; ++a) {
      if (k == GuardKind::lt) {
        for (std::uint16_t b = 0; b < num_attrs; ++b)
          if (b != a) out.push_back({k, a, b});
      } else {
        for (Symbol v : domain) out.push_back({k, a, v});
      }
    }
  }
  return GuardUniverse(kinds, std::move(out));
}

GuardUniverse ground_universe(const AttributeSet& attributes, const AlphabetSpec& alphabet, GuardKinds kinds) {
  std::vector<Symbol> all(alphabet.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Symbol>(i);
  return ground_universe(attributes, all, kinds);
}

std::vector<Symbol> observed_symbols(const Dataset& dataset) {
  std::vector<bool> seen(kMaxSymbols + 1, false);
  for (const auto& e : dataset.examples())
    for (Symbol s : e.mvs.codes())
      if (s < dataset.alphabet().size()) seen[s] = true;
  std::vector<Symbol> out;
  for (std::size_t s = 0; s < dataset.alphabet().size(); ++s)
    if (seen[s]) out.push_back(static_cast<Symbol>(s));
  return out;
}

GuardUniverse ground_for_dataset(const Dataset& dataset, GuardKinds kinds, ValueDomain domain) {
  if (domain == ValueDomain::full_alphabet) return ground_universe(dataset.attributes(), dataset.alphabet(), kinds);
  const auto values = observed_symbols(dataset);
  return ground_universe(dataset.attributes(), values, kinds);
}

}  // namespace symaut
