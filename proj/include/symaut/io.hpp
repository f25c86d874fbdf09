#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symaut/discretize.hpp"
#include "symaut/model.hpp"

namespace symaut {

/// long_csv: `seq_id,attribute,t,value`, one row per cell.
/// wide_csv: `seq_id,t,<attribute>...`, one row per time point.
enum class CsvFormat { long_csv, wide_csv };

std::optional<CsvFormat> parse_csv_format(std::string_view name);

/// Cells as read, before they are interpreted as symbols or reals.
struct Observations {
  struct Sequence {
    std::string id;
    std::size_t length = 0;
    std::vector<std::string> cells;  ///< time-major, attributes in `attributes` order
  };
  std::vector<std::string> attributes;  ///< first-appearance order
  std::vector<Sequence> sequences;      ///< first-appearance order
};

/// Throws ValidationError naming the offending row (the header is row 1).
Observations parse_observations(std::string_view text, CsvFormat format);
/// `seq_id,label` with labels pos/neg.
std::map<std::string, Label> parse_labels(std::string_view text);

/// Symbolic dataset. Without an explicit alphabet the sorted set of distinct
/// values is used. Every sequence needs a label and every label a sequence.
Dataset build_dataset(const Observations& obs, const std::map<std::string, Label>& labels,
                      const std::optional<AlphabetSpec>& alphabet = std::nullopt);

struct RawCollection {
  AttributeSet attributes;
  std::vector<RawSeries> series;
};

/// Real-valued cells, for discretization.
RawCollection build_raw(const Observations& obs);

std::string write_long_csv(const Dataset& dataset);
std::string write_wide_csv(const Dataset& dataset);
std::string write_labels(const Dataset& dataset);

/// Throws ConfigError when the file cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

Dataset load_dataset(const std::string& observations_path, const std::string& labels_path, CsvFormat format,
                     const std::optional<AlphabetSpec>& alphabet = std::nullopt);

}  // namespace symaut
