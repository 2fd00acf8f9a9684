#include <string>
#include <vector>

#include "doctest.h"
#include "reclink/csv.hpp"
#include "reclink/errors.hpp"
#include "reclink/ingest.hpp"

using namespace reclink;

namespace {

CsvTable make_table(std::vector<std::string> header,
                    std::vector<std::vector<std::string>> rows) {
  CsvTable t;
  t.header = std::move(header);
  t.rows = std::move(rows);
  return t;
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("soundex matches the classic reference codes") {
  REQUIRE(soundex("Robert") == "R163");
  REQUIRE(soundex("Rupert") == "R163");
  REQUIRE(soundex("Ashcraft") == "A261");  // h is transparent between s and c
  REQUIRE(soundex("Ashcroft") == "A261");
  REQUIRE(soundex("Tymczak") == "T522");   // vowel separates the z and k codes
  REQUIRE(soundex("Pfister") == "P236");   // adjacent same-class letters collapse
  REQUIRE(soundex("Honeyman") == "H555");
  REQUIRE(soundex("mark") == "M620");
  REQUIRE(soundex("MARC") == "M620");
  REQUIRE(soundex("Michel") == "M240");
}

TEST_CASE("soundex folds diacritics before coding") {
  REQUIRE(soundex("Michèle") == soundex("Michele"));
  REQUIRE(soundex("Müller") == soundex("Muller"));
  REQUIRE(soundex("Łukasz") == soundex("Lukasz"));
}

TEST_CASE("soundex with no codable letters returns the all-zero code") {
  REQUIRE(soundex("") == "0000");
  REQUIRE(soundex("123") == "0000");
  REQUIRE(soundex("---") == "0000");
}

TEST_CASE("soundex keeps the first letter class stable under re-encoding") {
  for (const char* name : {"Robert", "Ashcraft", "Oona", "Wu"}) {
    std::string code = soundex(name);
    REQUIRE(soundex(code)[0] == code[0]);
  }
}

TEST_CASE("missing tokens compare case-insensitively") {
  const auto& tokens = default_missing_tokens();
  REQUIRE(is_missing_token("", tokens));
  REQUIRE(is_missing_token("NA", tokens));
  REQUIRE(is_missing_token("na", tokens));
  REQUIRE(is_missing_token("Na", tokens));
  REQUIRE_FALSE(is_missing_token("0", tokens));
  REQUIRE_FALSE(is_missing_token("NAN", tokens));
}

TEST_CASE("supports assign codes in first-appearance order, file A first") {
  SupportMap s = build_support({"blue", "red", "blue"}, {"green", "red"},
                               default_missing_tokens(), false);
  REQUIRE(s.size() == 3);
  REQUIRE(s.lookup("blue") == 1);
  REQUIRE(s.lookup("red") == 2);
  REQUIRE(s.lookup("green") == 3);
  REQUIRE(s.lookup("absent") == 0);
}

TEST_CASE("an all-missing column cannot form a support") {
  REQUIRE_THROWS_AS(build_support({"", "NA"}, {"na"}, default_missing_tokens(), false),
                    ConfigError);
}

TEST_CASE("encoding round-trips every non-missing value") {
  SupportMap s = build_support({"x", "y"}, {"z"}, default_missing_tokens(), false);
  std::vector<int32_t> codes =
      encode_column({"y", "", "z", "NA", "x"}, s, default_missing_tokens(), false, "v");
  REQUIRE(codes == std::vector<int32_t>{2, 0, 3, 0, 1});
  for (size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] != 0) {
      REQUIRE(s.labels[codes[i] - 1] == std::vector<std::string>{"y", "", "z", "NA", "x"}[i]);
    }
  }
}

TEST_CASE("a value outside the support is a data error naming the culprit") {
  SupportMap s = build_support({"x"}, {"y"}, default_missing_tokens(), false);
  REQUIRE_THROWS_WITH_AS(
      encode_column({"zz"}, s, default_missing_tokens(), false, "colour"),
      doctest::Contains("colour"), DataError);
}

TEST_CASE("encode_tables builds shared supports, codes, and times") {
  CsvTable a = make_table({"sex", "region", "t"},
                          {{"m", "north", "0.5"}, {"f", "", "1.5"}});
  CsvTable b = make_table({"region", "sex", "t"},
                          {{"south", "f", "3.5"}, {"north", "NA", "4.0"}});
  std::vector<PivSpec> specs(2);
  specs[0].name = "sex";
  specs[1].name = "region";
  EncodedPair enc = encode_tables(a, b, specs, "t", default_missing_tokens());

  REQUIRE(enc.a.n == 2);
  REQUIRE(enc.b.n == 2);
  REQUIRE(enc.a.k == 2);
  REQUIRE(enc.specs[0].support == 2);   // m, f
  REQUIRE(enc.specs[1].support == 2);   // north (seen in A first), south
  REQUIRE(enc.a.at(0, 0) == 1);         // m
  REQUIRE(enc.a.at(0, 1) == 1);         // north
  REQUIRE(enc.a.at(1, 1) == 0);         // empty region
  REQUIRE(enc.b.at(0, 0) == 2);         // f, mapped by column name not position
  REQUIRE(enc.b.at(0, 1) == 2);         // south
  REQUIRE(enc.b.at(1, 0) == 0);         // NA sex
  REQUIRE(enc.b.at(1, 1) == 1);         // north
  REQUIRE(enc.a.times == std::vector<double>{0.5, 1.5});
  REQUIRE(enc.b.times == std::vector<double>{3.5, 4.0});

  // every emitted code sits inside the shared support
  for (int r = 0; r < enc.a.n; ++r) {
    for (int k = 0; k < enc.a.k; ++k) {
      REQUIRE(enc.a.at(r, k) >= 0);
      REQUIRE(enc.a.at(r, k) <= enc.specs[k].support);
    }
  }
}

TEST_CASE("encode_tables without a time column leaves times empty") {
  CsvTable a = make_table({"v"}, {{"x"}});
  CsvTable b = make_table({"v"}, {{"x"}});
  std::vector<PivSpec> specs(1);
  specs[0].name = "v";
  EncodedPair enc = encode_tables(a, b, specs, "", default_missing_tokens());
  REQUIRE_FALSE(enc.a.has_times());
  REQUIRE_FALSE(enc.b.has_times());
}

TEST_CASE("encode_tables rejects unknown columns and bad times") {
  CsvTable a = make_table({"v", "t"}, {{"x", "1.0"}});
  CsvTable b = make_table({"v", "t"}, {{"x", "oops"}});
  std::vector<PivSpec> specs(1);
  specs[0].name = "v";
  REQUIRE_THROWS_AS(encode_tables(a, b, specs, "no_such_time", default_missing_tokens()),
                    ConfigError);
  std::vector<PivSpec> bad(1);
  bad[0].name = "nope";
  REQUIRE_THROWS_AS(encode_tables(a, b, bad, "t", default_missing_tokens()), ConfigError);
  REQUIRE_THROWS_AS(encode_tables(a, b, specs, "t", default_missing_tokens()), DataError);
}

TEST_CASE("phonetic encoding collapses same-sounding names into one code") {
  CsvTable a = make_table({"name"}, {{"Marc"}, {"Mark"}});
  CsvTable b = make_table({"name"}, {{"Marck"}});
  std::vector<PivSpec> specs(1);
  specs[0].name = "name";
  specs[0].use_soundex = true;
  EncodedPair enc = encode_tables(a, b, specs, "", default_missing_tokens());
  REQUIRE(enc.specs[0].support == 1);
  REQUIRE(enc.a.at(0, 0) == enc.a.at(1, 0));
  REQUIRE(enc.a.at(0, 0) == enc.b.at(0, 0));
}

TEST_CASE("merging two PIVs keeps the missingness pattern and pairs codes") {
  CsvTable a = make_table({"u", "v"}, {{"x", "1"}, {"", "2"}, {"y", "1"}});
  CsvTable b = make_table({"u", "v"}, {{"x", "1"}, {"y", ""}});
  std::vector<PivSpec> specs(2);
  specs[0].name = "u";
  specs[1].name = "v";
  EncodedPair enc = encode_tables(a, b, specs, "", default_missing_tokens());
  MergeResult merged = merge_pivs(enc.a, enc.b, 0, 1, enc.supports, enc.specs);

  REQUIRE(merged.a.n == 3);
  REQUIRE(merged.b.n == 2);
  REQUIRE(merged.a.k == 1);
  REQUIRE(merged.specs.size() == 1);
  REQUIRE(merged.specs[0].name == "u|v");
  // missing iff either source was missing
  REQUIRE(merged.a.at(0, 0) != 0);
  REQUIRE(merged.a.at(1, 0) == 0);
  REQUIRE(merged.b.at(1, 0) == 0);
  // identical source pairs share a merged code across files
  REQUIRE(merged.a.at(0, 0) == merged.b.at(0, 0));
  // distinct pairs get distinct codes
  REQUIRE(merged.a.at(2, 0) != merged.a.at(0, 0));
  REQUIRE(merged.specs[0].support == merged.supports[0].size());
}

TEST_CASE("merging a PIV with itself or out of range is rejected") {
  CsvTable a = make_table({"u", "v"}, {{"x", "1"}});
  CsvTable b = make_table({"u", "v"}, {{"x", "1"}});
  std::vector<PivSpec> specs(2);
  specs[0].name = "u";
  specs[1].name = "v";
  EncodedPair enc = encode_tables(a, b, specs, "", default_missing_tokens());
  REQUIRE_THROWS_AS(merge_pivs(enc.a, enc.b, 0, 0, enc.supports, enc.specs), ConfigError);
  REQUIRE_THROWS_AS(merge_pivs(enc.a, enc.b, 0, 7, enc.supports, enc.specs), ConfigError);
}

TEST_CASE("merged stability and mistake bound take the stricter source") {
  CsvTable a = make_table({"u", "v"}, {{"x", "1"}});
  CsvTable b = make_table({"u", "v"}, {{"x", "1"}});
  std::vector<PivSpec> specs(2);
  specs[0].name = "u";
  specs[1].name = "v";
  specs[1].stable = false;
  specs[1].mistake_bound = 0.02;
  EncodedPair enc = encode_tables(a, b, specs, "", default_missing_tokens());
  MergeResult merged = merge_pivs(enc.a, enc.b, 0, 1, enc.supports, enc.specs);
  REQUIRE_FALSE(merged.specs[0].stable);
  REQUIRE(merged.specs[0].mistake_bound == doctest::Approx(0.02));
}

TEST_CASE("missing rates are exact fractions of zero codes") {
  RecordTable t;
  t.n = 4;
  t.k = 2;
  t.codes = {1, 0, 2, 0, 3, 0, 4, 1};
  auto rates = missing_rates(t);
  REQUIRE(rates[0] == doctest::Approx(0.0));
  REQUIRE(rates[1] == doctest::Approx(0.75));
}

}  // TEST_SUITE
