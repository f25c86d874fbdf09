#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "symaut/automaton.hpp"
#include "symaut/model.hpp"

namespace symaut {

struct PlantedModelSpec {
  Asa truth = Asa::empty(1);
  Semantics semantics;
  AttributeSet attributes{{"x"}};
  AlphabetSpec alphabet = AlphabetSpec::letters(2);
  std::size_t length = 10;
  std::size_t positives = 100;
  std::size_t negatives = 100;
  double noise = 0.0;  ///< probability of flipping each label
  std::uint64_t seed = 0;
  /// Sampling weight per symbol; empty means uniform.
  std::vector<double> symbol_weights;
  /// Samples drawn before giving up; 0 means 1000 per requested example.
  std::size_t max_samples = 0;
};

struct PlantedDataset {
  Dataset dataset;
  std::vector<Label> clean_labels;  ///< labels assigned by the planted automaton
  std::size_t flipped = 0;
};

/// Rejection-samples sequences until both class quotas are met, then flips
/// labels at the noise rate. Examples are interleaved in random order with ids
/// s1, s2, ... Throws ValidationError with the observed acceptance rate when
/// a quota cannot be met within the sample budget.
PlantedDataset generate_planted(const PlantedModelSpec& spec);

}  // namespace symaut
