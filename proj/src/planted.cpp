#include "symaut/planted.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "symaut/errors.hpp"

namespace symaut {

PlantedDataset generate_planted(const PlantedModelSpec& spec) {
  if (spec.alphabet.size() == 0 || spec.attributes.size() == 0) throw ConfigError("empty alphabet or attribute set");
  if (spec.length < 1) throw ConfigError("sequence length must be positive");
  if (!(spec.noise >= 0.0 && spec.noise <= 1.0)) throw ConfigError("noise must lie in [0,1]");
  if (!spec.symbol_weights.empty() && spec.symbol_weights.size() != spec.alphabet.size())
    throw ConfigError("one symbol weight per alphabet symbol is required");
  for (const auto& t : spec.truth.transitions()) {
    if (t.guard.attribute >= spec.attributes.size() ||
        (t.guard.kind == GuardKind::lt ? t.guard.operand >= spec.attributes.size()
                                       : t.guard.operand >= spec.alphabet.size()))
      throw ConfigError("planted automaton refers to an unknown attribute or symbol");
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<double> weights = spec.symbol_weights;
  if (weights.empty()) weights.assign(spec.alphabet.size(), 1.0);
  std::discrete_distribution<int> symbol(weights.begin(), weights.end());

  const std::size_t cells = spec.length * spec.attributes.size();
  const std::size_t budget = spec.max_samples ? spec.max_samples : 1000 * (spec.positives + spec.negatives);
  std::vector<std::vector<Symbol>> pos, neg;
  std::size_t drawn = 0, accepted = 0;
  while ((pos.size() < spec.positives || neg.size() < spec.negatives) && drawn < budget) {
    std::vector<Symbol> codes(cells);
    for (auto& c : codes) c = static_cast<Symbol>(symbol(rng));
    ++drawn;
    const bool acc = run(spec.truth, Mvs("probe", spec.attributes.size(), spec.length, codes), spec.semantics).accepted;
    accepted += acc;
    auto& bucket = acc ? pos : neg;
    if (bucket.size() < (acc ? spec.positives : spec.negatives)) bucket.push_back(std::move(codes));
  }
  if (pos.size() < spec.positives || neg.size() < spec.negatives) {
    std::ostringstream msg;
    msg << "planted automaton cannot produce the requested classes: after " << drawn << " samples got "
        << pos.size() << "/" << spec.positives << " positives and " << neg.size() << "/" << spec.negatives
        << " negatives (acceptance rate " << static_cast<double>(accepted) / static_cast<double>(drawn) << ")";
    throw ValidationError(msg.str());
  }

  struct Item {
    std::vector<Symbol> codes;
    Label label;
  };
  std::vector<Item> items;
  for (auto& c : pos) items.push_back({std::move(c), Label::positive});
  for (auto& c : neg) items.push_back({std::move(c), Label::negative});
  std::shuffle(items.begin(), items.end(), rng);

  PlantedDataset out{Dataset(spec.alphabet, spec.attributes, {}), {}, 0};
  std::vector<LabeledExample> examples;
  std::bernoulli_distribution flip(spec.noise);
  for (std::size_t i = 0; i < items.size(); ++i) {
    Label label = items[i].label;
    out.clean_labels.push_back(label);
    if (flip(rng)) {
      label = label == Label::positive ? Label::negative : Label::positive;
      ++out.flipped;
    }
    examples.push_back(
        {Mvs("s" + std::to_string(i + 1), spec.attributes.size(), spec.length, std::move(items[i].codes)), label});
  }
  out.dataset = Dataset(spec.alphabet, spec.attributes, std::move(examples));
  return out;
}

}  // namespace symaut
