#include "reclink/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "reclink/errors.hpp"

namespace reclink {

const std::string& TomlValue::as_string(const std::string& key) const {
  if (!is_string()) throw ConfigError("config: '" + key + "' must be a string");
  return std::get<std::string>(v);
}

int64_t TomlValue::as_int(const std::string& key) const {
  if (!is_int()) throw ConfigError("config: '" + key + "' must be an integer");
  return std::get<int64_t>(v);
}

double TomlValue::as_float(const std::string& key) const {
  if (is_int()) return static_cast<double>(std::get<int64_t>(v));
  if (!is_float()) throw ConfigError("config: '" + key + "' must be a number");
  return std::get<double>(v);
}

bool TomlValue::as_bool(const std::string& key) const {
  if (!is_bool()) throw ConfigError("config: '" + key + "' must be true or false");
  return std::get<bool>(v);
}

const std::vector<TomlValue>& TomlValue::as_array(const std::string& key) const {
  if (!is_array()) throw ConfigError("config: '" + key + "' must be an array");
  return std::get<std::vector<TomlValue>>(v);
}

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;
  int line = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
  }
  void skip_blank() {  // spaces and tabs only
    while (!done() && (peek() == ' ' || peek() == '\t')) ++pos;
  }
  void skip_to_eol() {
    while (!done() && peek() != '\n') ++pos;
  }
};

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_bare_key(Cursor& cur) {
  std::string key;
  while (!cur.done() && is_bare_key_char(cur.peek())) key += cur.take();
  if (key.empty()) cur.fail("expected a key");
  return key;
}

std::string parse_basic_string(Cursor& cur) {
  cur.take();  // opening quote
  std::string out;
  while (true) {
    if (cur.done() || cur.peek() == '\n') cur.fail("unterminated string");
    char c = cur.take();
    if (c == '"') return out;
    if (c != '\\') {
      out += c;
      continue;
    }
    if (cur.done()) cur.fail("unterminated escape");
    char e = cur.take();
    switch (e) {
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      default: cur.fail(std::string("unsupported escape \\") + e);
    }
  }
}

TomlValue parse_value(Cursor& cur);

TomlValue parse_array(Cursor& cur) {
  cur.take();  // '['
  std::vector<TomlValue> items;
  while (true) {
    cur.skip_blank();
    if (cur.done()) cur.fail("unterminated array");
    if (cur.peek() == '\n') {  // arrays may span lines
      cur.take();
      continue;
    }
    if (cur.peek() == '#') {
      cur.skip_to_eol();
      continue;
    }
    if (cur.peek() == ']') {
      cur.take();
      return TomlValue{std::move(items)};
    }
    items.push_back(parse_value(cur));
    cur.skip_blank();
    if (!cur.done() && cur.peek() == ',') cur.take();
  }
}

TomlValue parse_scalar(Cursor& cur) {
  std::string token;
  while (!cur.done()) {
    char c = cur.peek();
    if (c == '\n' || c == '#' || c == ',' || c == ']' || c == ' ' || c == '\t') break;
    token += cur.take();
  }
  if (token.empty()) cur.fail("expected a value");
  if (token == "true") return TomlValue{true};
  if (token == "false") return TomlValue{false};

  const bool looks_float = token.find_first_of(".eE") != std::string::npos &&
                           token.find_first_not_of("+-0123456789.eE_") == std::string::npos;
  std::string digits;
  for (char c : token) {
    if (c != '_') digits += c;  // TOML allows underscore separators
  }
  if (!looks_float) {
    int64_t value = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc() && p == digits.data() + digits.size()) return TomlValue{value};
  }
  double value = 0.0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec == std::errc() && p == digits.data() + digits.size()) return TomlValue{value};
  cur.fail("cannot parse value '" + token + "'");
}

TomlValue parse_value(Cursor& cur) {
  cur.skip_blank();
  if (cur.done()) cur.fail("expected a value");
  char c = cur.peek();
  if (c == '"') return TomlValue{parse_basic_string(cur)};
  if (c == '[') return parse_array(cur);
  if (c == '\'') cur.fail("literal strings are not supported; use double quotes");
  return parse_scalar(cur);
}

void expect_line_end(Cursor& cur) {
  cur.skip_blank();
  if (cur.done()) return;
  if (cur.peek() == '#') {
    cur.skip_to_eol();
    return;
  }
  if (cur.peek() != '\n') cur.fail("unexpected trailing content");
}

}  // namespace

TomlDoc parse_toml(const std::string& text) {
  TomlDoc doc;
  Cursor cur{text};
  TomlTable* current = &doc.root;

  while (!cur.done()) {
    cur.skip_blank();
    if (cur.done()) break;
    char c = cur.peek();
    if (c == '\n') {
      cur.take();
      continue;
    }
    if (c == '#') {
      cur.skip_to_eol();
      continue;
    }
    if (c == '[') {
      cur.take();
      const bool array_of_tables = !cur.done() && cur.peek() == '[';
      if (array_of_tables) cur.take();
      cur.skip_blank();
      std::string name = parse_bare_key(cur);
      cur.skip_blank();
      if (cur.done() || cur.take() != ']') cur.fail("expected ']' after table name");
      if (array_of_tables && (cur.done() || cur.take() != ']')) {
        cur.fail("expected ']]' after table-array name");
      }
      expect_line_end(cur);
      if (array_of_tables) {
        doc.table_arrays[name].emplace_back();
        current = &doc.table_arrays[name].back();
      } else {
        if (doc.tables.count(name)) cur.fail("table '" + name + "' defined twice");
        current = &doc.tables[name];
      }
      continue;
    }
    std::string key = parse_bare_key(cur);
    cur.skip_blank();
    if (cur.done() || cur.peek() == '.') cur.fail("dotted keys are not supported");
    if (cur.take() != '=') cur.fail("expected '=' after key '" + key + "'");
    TomlValue value = parse_value(cur);
    expect_line_end(cur);
    if (current->count(key)) cur.fail("key '" + key + "' set twice");
    current->emplace(std::move(key), std::move(value));
  }
  return doc;
}

namespace {

template <class T>
void read_int_option(const TomlTable& table, const std::string& key, T& out, int64_t lo,
                     int64_t hi) {
  auto it = table.find(key);
  if (it == table.end()) return;
  const int64_t v = it->second.as_int(key);
  if (v < lo || v > hi) {
    throw ConfigError("config: '" + key + "' = " + std::to_string(v) +
                      " is outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  out = static_cast<T>(v);
}

}  // namespace

LinkConfig link_config_from_toml(const TomlDoc& doc) {
  LinkConfig cfg;
  const TomlTable& root = doc.root;

  auto require_string = [&](const char* key) {
    auto it = root.find(key);
    if (it == root.end()) throw ConfigError(std::string("config: missing '") + key + "'");
    return it->second.as_string(key);
  };
  cfg.file_a = require_string("file_a");
  cfg.file_b = require_string("file_b");

  if (auto it = root.find("time_column"); it != root.end()) {
    cfg.time_column = it->second.as_string("time_column");
  }
  if (auto it = root.find("missing_values"); it != root.end()) {
    cfg.missing_tokens.clear();
    for (const auto& v : it->second.as_array("missing_values")) {
      cfg.missing_tokens.push_back(v.as_string("missing_values entry"));
    }
  }
  if (auto it = root.find("seed"); it != root.end()) {
    cfg.seed = static_cast<uint64_t>(it->second.as_int("seed"));
  }
  read_int_option(root, "threads", cfg.threads, 1, 4096);
  read_int_option(root, "v0", cfg.v0, 0, 1000000);
  read_int_option(root, "v1", cfg.v1, 1, 1000000);
  read_int_option(root, "z0", cfg.z0, 0, 1000000);
  read_int_option(root, "z1", cfg.z1, 1, 1000000);
  read_int_option(root, "posterior_burnin", cfg.posterior_burnin, 0, 1000000);
  read_int_option(root, "n_sim", cfg.n_sim, 1, 100000000);
  if (auto it = root.find("threshold"); it != root.end()) {
    cfg.threshold = it->second.as_float("threshold");
    if (cfg.threshold < 0.0 || cfg.threshold >= 1.0) {
      throw ConfigError("config: 'threshold' must lie in [0, 1)");
    }
  }
  if (auto it = root.find("fdr_max"); it != root.end()) {
    cfg.fdr_max = it->second.as_float("fdr_max");
    if (cfg.fdr_max <= 0.0 || cfg.fdr_max >= 1.0) {
      throw ConfigError("config: 'fdr_max' must lie in (0, 1)");
    }
  }

  auto pivs_it = doc.table_arrays.find("piv");
  if (pivs_it == doc.table_arrays.end() || pivs_it->second.empty()) {
    throw ConfigError("config: at least one [[piv]] block is required");
  }
  for (const TomlTable& t : pivs_it->second) {
    PivSpec spec;
    auto name_it = t.find("name");
    if (name_it == t.end()) throw ConfigError("config: [[piv]] block without a 'name'");
    spec.name = name_it->second.as_string("piv.name");
    if (auto it = t.find("stable"); it != t.end()) spec.stable = it->second.as_bool("piv.stable");
    if (auto it = t.find("soundex"); it != t.end()) {
      spec.use_soundex = it->second.as_bool("piv.soundex");
    }
    if (auto it = t.find("mistake_bound"); it != t.end()) {
      spec.mistake_bound = it->second.as_float("piv.mistake_bound");
      if (spec.mistake_bound < 0.0 || spec.mistake_bound > 1.0) {
        throw ConfigError("config: 'mistake_bound' must lie in [0, 1]");
      }
    }
    for (const auto& other : cfg.pivs) {
      if (other.name == spec.name) {
        throw ConfigError("config: PIV '" + spec.name + "' declared twice");
      }
    }
    cfg.pivs.push_back(std::move(spec));
  }

  if (auto merges_it = doc.table_arrays.find("merge"); merges_it != doc.table_arrays.end()) {
    for (const TomlTable& t : merges_it->second) {
      auto cols_it = t.find("columns");
      if (cols_it == t.end()) throw ConfigError("config: [[merge]] block without 'columns'");
      const auto& arr = cols_it->second.as_array("merge.columns");
      if (arr.size() != 2) {
        throw ConfigError("config: 'merge.columns' must list exactly two PIV names");
      }
      cfg.merges.emplace_back(arr[0].as_string("merge.columns"),
                              arr[1].as_string("merge.columns"));
    }
  }

  for (const auto& spec : cfg.pivs) {
    if (!spec.stable && cfg.time_column.empty()) {
      throw ConfigError("config: PIV '" + spec.name +
                        "' is unstable but no 'time_column' is set");
    }
  }
  return cfg;
}

LinkConfig load_link_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return link_config_from_toml(parse_toml(buf.str()));
}

}  // namespace reclink
