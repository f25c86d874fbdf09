#include <doctest.h>

#include "fixtures.hpp"
#include "symaut/errors.hpp"
#include "symaut/io.hpp"

using namespace symaut;

namespace {

std::string data_path(const std::string& name) { return std::string(SYMAUT_TEST_DATA) + "/" + name; }

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("long and wide files load the two-example dataset") {
  const Dataset expected = fixtures::table1();
  const auto alpha = AlphabetSpec::letters(8);
  const Dataset lng = load_dataset(data_path("table1_long.csv"), data_path("table1_labels.csv"), CsvFormat::long_csv, alpha);
  const Dataset wide = load_dataset(data_path("table1_wide.csv"), data_path("table1_labels.csv"), CsvFormat::wide_csv, alpha);
  CHECK(lng == expected);
  CHECK(wide == expected);
  CHECK(lng.size() == 2);
  CHECK(lng[0].mvs.length() == 10);
  CHECK(lng.attributes().size() == 3);

  const Dataset inferred = load_dataset(data_path("table1_long.csv"), data_path("table1_labels.csv"), CsvFormat::long_csv);
  CHECK(inferred.alphabet() == alpha);  // a..h all occur
}

TEST_CASE("writers round trip") {
  const Dataset d = fixtures::table1();
  const auto labels = parse_labels(write_labels(d));
  CHECK(build_dataset(parse_observations(write_long_csv(d), CsvFormat::long_csv), labels, d.alphabet()) == d);
  CHECK(build_dataset(parse_observations(write_wide_csv(d), CsvFormat::wide_csv), labels, d.alphabet()) == d);
}

TEST_CASE("row-numbered validation errors") {
  CHECK(error_of([] { parse_observations("", CsvFormat::long_csv); }) == "no rows");
  CHECK(error_of([] { parse_observations("seq_id,attribute,t,value\n", CsvFormat::long_csv); }) == "no rows");
  const std::string gap = "seq_id,attribute,t,value\ns,x,1,a\ns,x,2,a\ns,x,4,b\n";
  const std::string msg = error_of([&] { parse_observations(gap, CsvFormat::long_csv); });
  CHECK(msg.starts_with("row 4: non-contiguous time index"));
  CHECK(error_of([] { parse_observations("seq_id,attribute,t,value\ns,x,1,\n", CsvFormat::long_csv); })
            .starts_with("row 2: missing cell"));
  CHECK(error_of([] { parse_observations("seq_id,t,x\ns,1,a\ns,3,a\n", CsvFormat::wide_csv); })
            .starts_with("row 3: non-contiguous"));
  CHECK(error_of([] { parse_labels("seq_id,label\ns,maybe\n"); }).starts_with("row 2: unknown label"));
  CHECK(error_of([] { parse_observations("id,attribute,t,value\ns,x,1,a\n", CsvFormat::long_csv); })
            .starts_with("row 1:"));
  CHECK(error_of([] { parse_observations("seq_id,attribute,t,value\ns,x,zero,a\n", CsvFormat::long_csv); })
            .starts_with("row 2:"));
}

TEST_CASE("label coverage and symbol checks") {
  const auto obs = parse_observations("seq_id,t,x\ns,1,a\nr,1,b\n", CsvFormat::wide_csv);
  CHECK_THROWS_AS(build_dataset(obs, parse_labels("seq_id,label\ns,pos\n")), ValidationError);
  CHECK_THROWS_AS(build_dataset(obs, parse_labels("seq_id,label\ns,pos\nr,neg\nq,neg\n")), ValidationError);
  CHECK_THROWS_AS(build_dataset(obs, parse_labels("seq_id,label\ns,pos\nr,neg\n"), AlphabetSpec::letters(1)),
                  ValidationError);
  const Dataset d = build_dataset(obs, parse_labels("seq_id,label\ns,pos\nr,neg\n"));
  CHECK(d.alphabet().size() == 2);
}

TEST_CASE("attribute lengths must agree within a sequence") {
  CHECK_THROWS_AS(parse_observations("seq_id,attribute,t,value\ns,x,1,a\ns,x,2,a\ns,y,1,a\n", CsvFormat::long_csv),
                  ValidationError);
}

TEST_CASE("real-valued cells") {
  const auto raw = build_raw(parse_observations("seq_id,t,x,y\ns,1,1.5,-2\ns,2,3e2,0\n", CsvFormat::wide_csv));
  REQUIRE(raw.series.size() == 1);
  CHECK(raw.series[0].at(0, 2) == 300.0);
  CHECK(raw.series[0].at(1, 1) == -2.0);
  CHECK_THROWS_AS(build_raw(parse_observations("seq_id,t,x\ns,1,abc\n", CsvFormat::wide_csv)), ValidationError);
}

TEST_CASE("quoted cells and format names") {
  const auto obs = parse_observations("seq_id,t,x\n\"s,1\",1,\"a\"\n", CsvFormat::wide_csv);
  CHECK(obs.sequences[0].id == "s,1");
  CHECK(parse_csv_format("wide") == CsvFormat::wide_csv);
  CHECK_FALSE(parse_csv_format("xml").has_value());
}
