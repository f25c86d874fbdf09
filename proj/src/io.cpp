#include "symaut/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "symaut/errors.hpp"

namespace symaut {

std::optional<CsvFormat> parse_csv_format(std::string_view name) {
  if (name == "long_csv" || name == "long") return CsvFormat::long_csv;
  if (name == "wide_csv" || name == "wide") return CsvFormat::wide_csv;
  return std::nullopt;
}

namespace {

struct Row {
  std::size_t number;
  std::vector<std::string> cells;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_line(std::string_view line, std::size_t row) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      cells.push_back(was_quoted ? cur : trim(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur += ch;
    }
  }
  if (quoted) throw ValidationError("row " + std::to_string(row) + ": unterminated quote");
  cells.push_back(was_quoted ? cur : trim(cur));
  return cells;
}

std::vector<Row> read_rows(std::string_view text) {
  std::vector<Row> rows;
  std::size_t number = 0;
  std::size_t pos = 0;
  if (text.starts_with("\xEF\xBB\xBF")) pos = 3;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (trim(line).empty()) continue;
    rows.push_back({number, split_line(line, number)});
  }
  if (rows.size() < 2) throw ValidationError("no rows");
  return rows;
}

[[noreturn]] void row_error(const Row& r, const std::string& what) {
  throw ValidationError("row " + std::to_string(r.number) + ": " + what);
}

void expect_header(const Row& header, const std::vector<std::string>& expected) {
  if (header.cells.size() < expected.size()) row_error(header, "header must start with " + expected.front());
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (header.cells[i] != expected[i]) row_error(header, "expected header column '" + expected[i] + "'");
}

const std::string& cell(const Row& r, std::size_t i, std::string_view name) {
  if (i >= r.cells.size() || r.cells[i].empty()) row_error(r, "missing cell '" + std::string(name) + "'");
  return r.cells[i];
}

std::size_t parse_time(const Row& r, const std::string& text) {
  std::size_t t = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), t);
  if (ec != std::errc{} || p != text.data() + text.size() || t < 1)
    row_error(r, "time index must be a positive integer, got '" + text + "'");
  return t;
}

Observations parse_long(const std::vector<Row>& rows) {
  expect_header(rows[0], {"seq_id", "attribute", "t", "value"});
  Observations obs;
  std::unordered_map<std::string, std::size_t> attr_index;
  std::unordered_map<std::string, std::size_t> seq_index;
  // per sequence, per attribute: values in time order
  std::vector<std::vector<std::vector<std::string>>> columns;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (r.cells.size() > 4) row_error(r, "too many cells");
    const std::string& id = cell(r, 0, "seq_id");
    const std::string& attr = cell(r, 1, "attribute");
    const std::size_t t = parse_time(r, cell(r, 2, "t"));
    const std::string& value = cell(r, 3, "value");

    auto [ait, new_attr] = attr_index.try_emplace(attr, obs.attributes.size());
    if (new_attr) obs.attributes.push_back(attr);
    auto [sit, new_seq] = seq_index.try_emplace(id, obs.sequences.size());
    if (new_seq) {
      obs.sequences.push_back({id, 0, {}});
      columns.emplace_back();
    }
    auto& cols = columns[sit->second];
    if (cols.size() <= ait->second) cols.resize(ait->second + 1);
    auto& col = cols[ait->second];
    if (t != col.size() + 1)
      row_error(r, "non-contiguous time index " + std::to_string(t) + " for sequence '" + id + "', attribute '" +
                       attr + "' (expected " + std::to_string(col.size() + 1) + ")");
    col.push_back(value);
  }
  for (std::size_t s = 0; s < obs.sequences.size(); ++s) {
    auto& seq = obs.sequences[s];
    auto& cols = columns[s];
    cols.resize(obs.attributes.size());
    seq.length = cols.front().size();
    for (std::size_t a = 0; a < cols.size(); ++a) {
      if (cols[a].size() != seq.length)
        throw ValidationError("sequence '" + seq.id + "': attribute '" + obs.attributes[a] + "' has " +
                              std::to_string(cols[a].size()) + " values, expected " + std::to_string(seq.length));
    }
    seq.cells.reserve(seq.length * cols.size());
    for (std::size_t t = 0; t < seq.length; ++t)
      for (auto& c : cols) seq.cells.push_back(std::move(c[t]));
  }
  return obs;
}

Observations parse_wide(const std::vector<Row>& rows) {
  expect_header(rows[0], {"seq_id", "t"});
  Observations obs;
  obs.attributes.assign(rows[0].cells.begin() + 2, rows[0].cells.end());
  if (obs.attributes.empty()) row_error(rows[0], "no attribute columns");
  std::unordered_map<std::string, std::size_t> seq_index;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (r.cells.size() > obs.attributes.size() + 2) row_error(r, "too many cells");
    const std::string& id = cell(r, 0, "seq_id");
    const std::size_t t = parse_time(r, cell(r, 1, "t"));
    auto [sit, fresh] = seq_index.try_emplace(id, obs.sequences.size());
    if (fresh) obs.sequences.push_back({id, 0, {}});
    auto& seq = obs.sequences[sit->second];
    if (t != seq.length + 1)
      row_error(r, "non-contiguous time index " + std::to_string(t) + " for sequence '" + id + "' (expected " +
                       std::to_string(seq.length + 1) + ")");
    for (std::size_t a = 0; a < obs.attributes.size(); ++a) seq.cells.push_back(cell(r, a + 2, obs.attributes[a]));
    ++seq.length;
  }
  return obs;
}

}  // namespace

Observations parse_observations(std::string_view text, CsvFormat format) {
  const auto rows = read_rows(text);
  return format == CsvFormat::long_csv ? parse_long(rows) : parse_wide(rows);
}

std::map<std::string, Label> parse_labels(std::string_view text) {
  const auto rows = read_rows(text);
  expect_header(rows[0], {"seq_id", "label"});
  std::map<std::string, Label> labels;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Row& r = rows[i];
    const std::string& id = cell(r, 0, "seq_id");
    const std::string& l = cell(r, 1, "label");
    Label label;
    if (l == "pos") {
      label = Label::positive;
    } else if (l == "neg") {
      label = Label::negative;
    } else {
      row_error(r, "unknown label '" + l + "' (expected pos or neg)");
    }
    if (!labels.emplace(id, label).second) row_error(r, "duplicate label for sequence '" + id + "'");
  }
  return labels;
}

Dataset build_dataset(const Observations& obs, const std::map<std::string, Label>& labels,
                      const std::optional<AlphabetSpec>& alphabet) {
  const AlphabetSpec alpha = [&] {
    if (alphabet) return *alphabet;
    std::set<std::string> values;
    for (const auto& s : obs.sequences) values.insert(s.cells.begin(), s.cells.end());
    if (values.size() > kMaxSymbols) throw ValidationError("too many distinct symbols");
    return AlphabetSpec(std::vector<std::string>(values.begin(), values.end()));
  }();
  std::vector<LabeledExample> examples;
  for (const auto& s : obs.sequences) {
    const auto l = labels.find(s.id);
    if (l == labels.end()) throw ValidationError("no label for sequence '" + s.id + "'");
    std::vector<Symbol> codes;
    codes.reserve(s.cells.size());
    for (const auto& c : s.cells) {
      const auto code = alpha.find(c);
      if (!code) throw ValidationError("sequence '" + s.id + "': unknown symbol '" + c + "'");
      codes.push_back(*code);
    }
    examples.push_back({Mvs(s.id, obs.attributes.size(), s.length, std::move(codes)), l->second});
  }
  for (const auto& [id, label] : labels) {
    const bool known = std::any_of(obs.sequences.begin(), obs.sequences.end(), [&](const auto& s) { return s.id == id; });
    if (!known) throw ValidationError("label for unknown sequence '" + id + "'");
  }
  return Dataset(alpha, AttributeSet(obs.attributes), std::move(examples));
}

RawCollection build_raw(const Observations& obs) {
  RawCollection out{AttributeSet(obs.attributes), {}};
  for (const auto& s : obs.sequences) {
    RawSeries r{s.id, obs.attributes.size(), s.length, {}};
    r.values.reserve(s.cells.size());
    for (const auto& c : s.cells) {
      double v = 0.0;
      const auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc{} || p != c.data() + c.size())
        throw ValidationError("sequence '" + s.id + "': value '" + c + "' is not a real number");
      r.values.push_back(v);
    }
    out.series.push_back(std::move(r));
  }
  return out;
}

std::string write_long_csv(const Dataset& dataset) {
  std::ostringstream out;
  out << "seq_id,attribute,t,value\n";
  for (const auto& ex : dataset.examples())
    for (std::size_t a = 0; a < dataset.attributes().size(); ++a)
      for (std::size_t t = 1; t <= ex.mvs.length(); ++t)
        out << ex.mvs.id() << ',' << dataset.attributes().name(a) << ',' << t << ','
            << dataset.alphabet().name(ex.mvs.at(a, t)) << '\n';
  return out.str();
}

std::string write_wide_csv(const Dataset& dataset) {
  std::ostringstream out;
  out << "seq_id,t";
  for (const auto& n : dataset.attributes().names()) out << ',' << n;
  out << '\n';
  for (const auto& ex : dataset.examples())
    for (std::size_t t = 1; t <= ex.mvs.length(); ++t) {
      out << ex.mvs.id() << ',' << t;
      for (std::size_t a = 0; a < dataset.attributes().size(); ++a)
        out << ',' << dataset.alphabet().name(ex.mvs.at(a, t));
      out << '\n';
    }
  return out.str();
}

std::string write_labels(const Dataset& dataset) {
  std::ostringstream out;
  out << "seq_id,label\n";
  for (const auto& ex : dataset.examples()) out << ex.mvs.id() << ',' << label_name(ex.label) << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

Dataset load_dataset(const std::string& observations_path, const std::string& labels_path, CsvFormat format,
                     const std::optional<AlphabetSpec>& alphabet) {
  const auto obs = parse_observations(read_file(observations_path), format);
  const auto labels = parse_labels(read_file(labels_path));
  return build_dataset(obs, labels, alphabet);
}

}  // namespace symaut
