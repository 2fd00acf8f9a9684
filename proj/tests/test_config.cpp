#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "reclink/config.hpp"
#include "reclink/errors.hpp"

using namespace reclink;

namespace {

const char* kFullConfig = R"(
# run configuration
file_a = "data/a.csv"
file_b = "data/b.csv"
time_column = "t"
missing_values = ["", "NA", "?"]
seed = 99
threads = 2
v0 = 10
v1 = 5
z0 = 30
z1 = 40
posterior_burnin = 25
n_sim = 200
threshold = 0.6

[[piv]]
name = "sex"

[[piv]]
name = "region"
stable = false
mistake_bound = 0.05

[[piv]]
name = "surname"
soundex = true

[[merge]]
columns = ["sex", "region"]
)";

}  // namespace

TEST_SUITE("config") {

TEST_CASE("the TOML subset parses scalars, arrays, and tables") {
  TomlDoc doc = parse_toml(R"(
title = "demo"        # trailing comment
count = 1_000
rate = 0.25
neg = -3
on = true
items = [1, 2, 3]
nested = [[1, 2], [3]]
words = ["a", "b"]

[section]
key = "value"

[[entry]]
x = 1

[[entry]]
x = 2
)");
  REQUIRE(doc.root.at("title").as_string("title") == "demo");
  REQUIRE(doc.root.at("count").as_int("count") == 1000);
  REQUIRE(doc.root.at("rate").as_float("rate") == doctest::Approx(0.25));
  REQUIRE(doc.root.at("neg").as_int("neg") == -3);
  REQUIRE(doc.root.at("on").as_bool("on"));
  REQUIRE(doc.root.at("items").as_array("items").size() == 3);
  REQUIRE(doc.root.at("items").as_array("items")[2].as_int("items") == 3);
  REQUIRE(doc.root.at("nested").as_array("nested")[0].as_array("nested").size() == 2);
  REQUIRE(doc.root.at("words").as_array("words")[1].as_string("words") == "b");
  REQUIRE(doc.tables.at("section").at("key").as_string("key") == "value");
  REQUIRE(doc.table_arrays.at("entry").size() == 2);
  REQUIRE(doc.table_arrays.at("entry")[1].at("x").as_int("x") == 2);
}

TEST_CASE("strings support the basic escapes") {
  TomlDoc doc = parse_toml(R"(s = "a\"b\\c\nd\te")");
  REQUIRE(doc.root.at("s").as_string("s") == "a\"b\\c\nd\te");
}

TEST_CASE("multi-line arrays parse across line breaks") {
  TomlDoc doc = parse_toml("xs = [\n  1,\n  2,\n  3,\n]\n");
  REQUIRE(doc.root.at("xs").as_array("xs").size() == 3);
}

TEST_CASE("integers read as floats where a float is expected") {
  TomlDoc doc = parse_toml("x = 2");
  REQUIRE(doc.root.at("x").as_float("x") == doctest::Approx(2.0));
  REQUIRE_THROWS_AS(doc.root.at("x").as_string("x"), ConfigError);
}

TEST_CASE("malformed documents raise configuration errors with line numbers") {
  REQUIRE_THROWS_AS(parse_toml("key"), ConfigError);
  REQUIRE_THROWS_AS(parse_toml("key ="), ConfigError);
  REQUIRE_THROWS_AS(parse_toml("= 3"), ConfigError);
  REQUIRE_THROWS_AS(parse_toml("a = 1\na = 2\n"), ConfigError);
  REQUIRE_THROWS_AS(parse_toml("a = \"unterminated"), ConfigError);
  REQUIRE_THROWS_AS(parse_toml("a = [1, 2"), ConfigError);
  REQUIRE_THROWS_AS(parse_toml("a.b = 1"), ConfigError);   // dotted keys unsupported
  REQUIRE_THROWS_AS(parse_toml("a = 'literal'"), ConfigError);
  REQUIRE_THROWS_WITH_AS(parse_toml("ok = 1\nok = 2\n"), doctest::Contains("line 2"),
                         ConfigError);
}

TEST_CASE("a full run configuration resolves every field") {
  LinkConfig cfg = link_config_from_toml(parse_toml(kFullConfig));
  REQUIRE(cfg.file_a == "data/a.csv");
  REQUIRE(cfg.file_b == "data/b.csv");
  REQUIRE(cfg.time_column == "t");
  REQUIRE(cfg.missing_tokens == std::vector<std::string>{"", "NA", "?"});
  REQUIRE(cfg.seed == 99);
  REQUIRE(cfg.threads == 2);
  REQUIRE(cfg.v0 == 10);
  REQUIRE(cfg.v1 == 5);
  REQUIRE(cfg.z0 == 30);
  REQUIRE(cfg.z1 == 40);
  REQUIRE(cfg.posterior_burnin == 25);
  REQUIRE(cfg.n_sim == 200);
  REQUIRE(cfg.threshold == doctest::Approx(0.6));
  REQUIRE(cfg.fdr_max < 0.0);

  REQUIRE(cfg.pivs.size() == 3);
  REQUIRE(cfg.pivs[0].name == "sex");
  REQUIRE(cfg.pivs[0].stable);
  REQUIRE(cfg.pivs[0].mistake_bound == doctest::Approx(0.10));
  REQUIRE_FALSE(cfg.pivs[1].stable);
  REQUIRE(cfg.pivs[1].mistake_bound == doctest::Approx(0.05));
  REQUIRE(cfg.pivs[2].use_soundex);

  REQUIRE(cfg.merges.size() == 1);
  REQUIRE(cfg.merges[0].first == "sex");
  REQUIRE(cfg.merges[0].second == "region");
}

TEST_CASE("defaults fill every optional field") {
  LinkConfig cfg = link_config_from_toml(parse_toml(R"(
file_a = "a.csv"
file_b = "b.csv"

[[piv]]
name = "v"
)"));
  REQUIRE(cfg.seed == 17);
  REQUIRE(cfg.threads == 1);
  REQUIRE(cfg.v0 == 75);
  REQUIRE(cfg.v1 == 25);
  REQUIRE(cfg.z0 == 100);
  REQUIRE(cfg.z1 == 100);
  REQUIRE(cfg.n_sim == 1000);
  REQUIRE(cfg.threshold == doctest::Approx(0.5));
  REQUIRE(cfg.missing_tokens == std::vector<std::string>{"", "NA"});
  REQUIRE(cfg.time_column.empty());
}

TEST_CASE("required fields and ranges are enforced") {
  auto parse = [](const std::string& body) {
    return link_config_from_toml(parse_toml(body));
  };
  const std::string piv = "\n[[piv]]\nname = \"v\"\n";
  REQUIRE_THROWS_AS(parse("file_b = \"b\"" + piv), ConfigError);       // no file_a
  REQUIRE_THROWS_AS(parse("file_a = \"a\"\nfile_b = \"b\"\n"), ConfigError);  // no pivs
  REQUIRE_THROWS_AS(parse("file_a = \"a\"\nfile_b = \"b\"\n[[piv]]\nstable = true\n"),
                    ConfigError);  // piv without a name
  REQUIRE_THROWS_AS(parse("file_a = \"a\"\nfile_b = \"b\"" + piv + piv), ConfigError);
  REQUIRE_THROWS_AS(parse("file_a = \"a\"\nfile_b = \"b\"\nthreshold = 1.0" + piv),
                    ConfigError);
  REQUIRE_THROWS_AS(parse("file_a = \"a\"\nfile_b = \"b\"\nfdr_max = 0.0" + piv),
                    ConfigError);
  REQUIRE_THROWS_AS(parse("file_a = \"a\"\nfile_b = \"b\"\nv1 = 0" + piv), ConfigError);
  REQUIRE_THROWS_AS(parse("file_a = \"a\"\nfile_b = \"b\"\nthreads = 0" + piv),
                    ConfigError);
  REQUIRE_THROWS_AS(parse("file_a = \"a\"\nfile_b = \"b\"\nz1 = -5" + piv), ConfigError);
}

TEST_CASE("an unstable PIV demands a time column") {
  REQUIRE_THROWS_AS(link_config_from_toml(parse_toml(R"(
file_a = "a.csv"
file_b = "b.csv"

[[piv]]
name = "v"
stable = false
)")),
                    ConfigError);
}

TEST_CASE("merge entries must name exactly two columns") {
  const std::string head = "file_a = \"a\"\nfile_b = \"b\"\n[[piv]]\nname = \"v\"\n";
  REQUIRE_THROWS_AS(
      link_config_from_toml(parse_toml(head + "[[merge]]\ncolumns = [\"v\"]\n")),
      ConfigError);
  REQUIRE_THROWS_AS(
      link_config_from_toml(
          parse_toml(head + "[[merge]]\ncolumns = [\"a\", \"b\", \"c\"]\n")),
      ConfigError);
}

TEST_CASE("configurations load from disk and propagate file errors") {
  const std::string path = "/tmp/reclink_config_test.toml";
  {
    std::ofstream out(path);
    out << "file_a = \"a.csv\"\nfile_b = \"b.csv\"\n\n[[piv]]\nname = \"v\"\n";
  }
  LinkConfig cfg = load_link_config(path);
  REQUIRE(cfg.file_a == "a.csv");
  std::remove(path.c_str());
  REQUIRE_THROWS_AS(load_link_config(path), ConfigError);
}

}  // TEST_SUITE
