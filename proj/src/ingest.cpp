#include "reclink/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "reclink/errors.hpp"

namespace reclink {

namespace {

// ASCII fold for U+00C0..U+00FF (Latin-1 supplement letters).
const char* const kLatin1Fold[64] = {
    "A", "A", "A", "A", "A", "A", "AE", "C", "E", "E", "E", "E", "I", "I", "I", "I",
    "D", "N", "O", "O", "O", "O", "O",  "",  "O", "U", "U", "U", "U", "Y", "TH", "SS",
    "A", "A", "A", "A", "A", "A", "AE", "C", "E", "E", "E", "E", "I", "I", "I", "I",
    "D", "N", "O", "O", "O", "O", "O",  "",  "O", "U", "U", "U", "U", "Y", "TH", "Y"};

// ASCII fold for U+0100..U+017F (Latin Extended-A).
const char* const kLatinExtAFold[128] = {
    "A", "A", "A", "A", "A", "A",                      // 0100 Aa Aa Aa
    "C", "C", "C", "C", "C", "C", "C", "C",            // 0106 Cc Cc Cc Cc
    "D", "D", "D", "D",                                // 010E Dd Dd
    "E", "E", "E", "E", "E", "E", "E", "E", "E", "E",  // 0112 Ee x5
    "G", "G", "G", "G", "G", "G", "G", "G",            // 011C Gg x4
    "H", "H", "H", "H",                                // 0124 Hh Hh
    "I", "I", "I", "I", "I", "I", "I", "I", "I", "I",  // 0128 Ii x5
    "IJ", "IJ",                                        // 0132
    "J", "J",                                          // 0134
    "K", "K", "K",                                     // 0136 Kk kra
    "L", "L", "L", "L", "L", "L", "L", "L", "L", "L",  // 0139 Ll x5
    "N", "N", "N", "N", "N", "N", "N", "N", "N",       // 0143 Nn Nn Nn 'n Nn
    "O", "O", "O", "O", "O", "O",                      // 014C Oo x3
    "OE", "OE",                                        // 0152
    "R", "R", "R", "R", "R", "R",                      // 0154 Rr x3
    "S", "S", "S", "S", "S", "S", "S", "S",            // 015A Ss x4
    "T", "T", "T", "T", "T", "T",                      // 0162 Tt x3
    "U", "U", "U", "U", "U", "U", "U", "U", "U", "U", "U", "U",  // 0168 Uu x6
    "W", "W",                                          // 0174
    "Y", "Y", "Y",                                     // 0176 Yy Y
    "Z", "Z", "Z", "Z", "Z", "Z",                      // 0179 Zz x3
    "S"};                                              // 017F long s

// Uppercase ASCII letters of `name`, with Latin-1 / Latin Extended-A
// codepoints folded to their base letters. Everything else is dropped.
std::string fold_letters(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  const auto* s = reinterpret_cast<const unsigned char*>(name.data());
  const size_t len = name.size();
  for (size_t i = 0; i < len; ++i) {
    unsigned c = s[i];
    if (c < 0x80) {
      if (std::isalpha(static_cast<int>(c))) out += static_cast<char>(std::toupper(static_cast<int>(c)));
      continue;
    }
    // UTF-8 multi-byte
    unsigned cp = 0;
    if ((c & 0xe0) == 0xc0 && i + 1 < len && (s[i + 1] & 0xc0) == 0x80) {
      cp = ((c & 0x1f) << 6) | (s[i + 1] & 0x3f);
      i += 1;
    } else if ((c & 0xf0) == 0xe0 && i + 2 < len && (s[i + 1] & 0xc0) == 0x80 &&
               (s[i + 2] & 0xc0) == 0x80) {
      cp = ((c & 0x0f) << 12) | ((s[i + 1] & 0x3f) << 6) | (s[i + 2] & 0x3f);
      i += 2;
    } else {
      continue;  // stray continuation or unsupported sequence
    }
    if (cp >= 0xc0 && cp <= 0xff) out += kLatin1Fold[cp - 0xc0];
    else if (cp >= 0x100 && cp <= 0x17f) out += kLatinExtAFold[cp - 0x100];
    // other scripts: dropped
  }
  return out;
}

// 1..6 for coded consonants, 0 for vowels/y, -1 for transparent h/w
int soundex_code(char upper) {
  switch (upper) {
    case 'B': case 'F': case 'P': case 'V':
      return 1;
    case 'C': case 'G': case 'J': case 'K': case 'Q': case 'S': case 'X': case 'Z':
      return 2;
    case 'D': case 'T':
      return 3;
    case 'L':
      return 4;
    case 'M': case 'N':
      return 5;
    case 'R':
      return 6;
    case 'H': case 'W':
      return -1;
    default:
      return 0;  // A E I O U Y
  }
}

std::string lower_ascii(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string soundex(const std::string& name) {
  const std::string letters = fold_letters(name);
  if (letters.empty()) return "0000";

  std::string out(1, letters[0]);
  int prev = soundex_code(letters[0]);
  if (prev == -1) prev = 0;  // leading h/w carries no code
  for (size_t i = 1; i < letters.size() && out.size() < 4; ++i) {
    int c = soundex_code(letters[i]);
    if (c == -1) continue;  // h/w: keep the previous code alive
    if (c == 0) {           // vowel: breaks a run of equal codes
      prev = 0;
      continue;
    }
    if (c != prev) {
      out += static_cast<char>('0' + c);
      prev = c;
    }
  }
  out.resize(4, '0');
  return out;
}

const std::vector<std::string>& default_missing_tokens() {
  static const std::vector<std::string> tokens = {"", "NA"};
  return tokens;
}

bool is_missing_token(const std::string& value, const std::vector<std::string>& missing_tokens) {
  const std::string v = lower_ascii(value);
  for (const auto& t : missing_tokens) {
    if (v == lower_ascii(t)) return true;
  }
  return false;
}

SupportMap build_support(const std::vector<std::string>& col_a,
                         const std::vector<std::string>& col_b,
                         const std::vector<std::string>& missing_tokens,
                         bool use_soundex) {
  SupportMap support;
  for (const auto* col : {&col_a, &col_b}) {
    for (const auto& raw : *col) {
      if (is_missing_token(raw, missing_tokens)) continue;
      support.add(use_soundex ? soundex(raw) : raw);
    }
  }
  if (support.size() == 0) {
    throw ConfigError("support is empty: every value in both files is missing");
  }
  return support;
}

std::vector<int32_t> encode_column(const std::vector<std::string>& col,
                                   const SupportMap& support,
                                   const std::vector<std::string>& missing_tokens,
                                   bool use_soundex,
                                   const std::string& piv_name) {
  std::vector<int32_t> codes(col.size(), 0);
  for (size_t i = 0; i < col.size(); ++i) {
    if (is_missing_token(col[i], missing_tokens)) continue;
    const std::string value = use_soundex ? soundex(col[i]) : col[i];
    int32_t c = support.lookup(value);
    if (c == 0) {
      throw DataError("PIV " + piv_name + ", row " + std::to_string(i) +
                      ": value '" + col[i] + "' is not in the support");
    }
    codes[i] = c;
  }
  return codes;
}

namespace {

std::vector<std::string> extract_column(const CsvTable& csv, const std::string& name,
                                        const std::string& file_tag) {
  int idx = csv.col_index(name);
  if (idx < 0) throw ConfigError("file " + file_tag + " has no column '" + name + "'");
  std::vector<std::string> col;
  col.reserve(csv.rows.size());
  for (const auto& row : csv.rows) col.push_back(row[idx]);
  return col;
}

std::vector<double> extract_times(const CsvTable& csv, const std::string& name,
                                  const std::string& file_tag) {
  int idx = csv.col_index(name);
  if (idx < 0) throw ConfigError("file " + file_tag + " has no time column '" + name + "'");
  std::vector<double> times;
  times.reserve(csv.rows.size());
  for (size_t r = 0; r < csv.rows.size(); ++r) {
    const std::string& f = csv.rows[r][idx];
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
      throw DataError("file " + file_tag + ", row " + std::to_string(r) +
                      ": time value '" + f + "' is not a number");
    }
    times.push_back(value);
  }
  return times;
}

}  // namespace

EncodedPair encode_tables(const CsvTable& csv_a, const CsvTable& csv_b,
                          std::vector<PivSpec> specs,
                          const std::string& time_column,
                          const std::vector<std::string>& missing_tokens) {
  if (specs.empty()) throw ConfigError("no PIV columns configured");

  EncodedPair out;
  const int k = static_cast<int>(specs.size());
  out.a.n = csv_a.n_rows();
  out.b.n = csv_b.n_rows();
  out.a.k = out.b.k = k;
  out.a.codes.assign(static_cast<size_t>(out.a.n) * k, 0);
  out.b.codes.assign(static_cast<size_t>(out.b.n) * k, 0);
  if (out.a.n == 0 || out.b.n == 0) throw DataError("input file has no data rows");

  for (int p = 0; p < k; ++p) {
    auto col_a = extract_column(csv_a, specs[p].name, "A");
    auto col_b = extract_column(csv_b, specs[p].name, "B");
    SupportMap support = build_support(col_a, col_b, missing_tokens, specs[p].use_soundex);
    auto codes_a = encode_column(col_a, support, missing_tokens, specs[p].use_soundex, specs[p].name);
    auto codes_b = encode_column(col_b, support, missing_tokens, specs[p].use_soundex, specs[p].name);
    for (int r = 0; r < out.a.n; ++r) out.a.at(r, p) = codes_a[r];
    for (int r = 0; r < out.b.n; ++r) out.b.at(r, p) = codes_b[r];
    specs[p].support = support.size();
    out.supports.push_back(std::move(support));
  }

  if (!time_column.empty()) {
    out.a.times = extract_times(csv_a, time_column, "A");
    out.b.times = extract_times(csv_b, time_column, "B");
  }
  out.specs = std::move(specs);
  return out;
}

MergeResult merge_pivs(const RecordTable& a, const RecordTable& b,
                       int k1, int k2,
                       const std::vector<SupportMap>& supports,
                       const std::vector<PivSpec>& specs) {
  const int k = a.k;
  if (b.k != k) throw DataError("merge: files have different PIV counts");
  if (k1 < 0 || k1 >= k || k2 < 0 || k2 >= k) throw ConfigError("merge: PIV index out of range");
  if (k1 == k2) throw ConfigError("merge: cannot merge PIV '" + specs[k1].name + "' with itself");
  if (static_cast<int>(supports.size()) != k || static_cast<int>(specs.size()) != k) {
    throw ConfigError("merge: supports/specs do not match table shape");
  }

  const int lo = std::min(k1, k2), hi = std::max(k1, k2);

  // Shared support over observed pairs, file A first; label is "v1|v2".
  SupportMap merged;
  auto pair_code = [&](const RecordTable& t, int row, bool grow) -> int32_t {
    int32_t c1 = t.at(row, k1), c2 = t.at(row, k2);
    if (c1 == 0 || c2 == 0) return 0;
    const std::string label = supports[k1].labels[c1 - 1] + "|" + supports[k2].labels[c2 - 1];
    return grow ? merged.add(label) : merged.lookup(label);
  };
  for (int r = 0; r < a.n; ++r) pair_code(a, r, true);
  for (int r = 0; r < b.n; ++r) pair_code(b, r, true);
  if (merged.size() == 0) {
    throw ConfigError("merge of '" + specs[k1].name + "' and '" + specs[k2].name +
                      "': no row has both values observed");
  }

  MergeResult out;
  auto rebuild = [&](const RecordTable& t) {
    RecordTable nt;
    nt.n = t.n;
    nt.k = k - 1;
    nt.times = t.times;
    nt.codes.assign(static_cast<size_t>(nt.n) * nt.k, 0);
    for (int r = 0; r < t.n; ++r) {
      int dst = 0;
      for (int p = 0; p < k; ++p) {
        if (p == hi) continue;
        nt.at(r, dst++) = (p == lo) ? pair_code(t, r, false) : t.at(r, p);
      }
    }
    return nt;
  };
  out.a = rebuild(a);
  out.b = rebuild(b);

  for (int p = 0; p < k; ++p) {
    if (p == hi) continue;
    if (p == lo) {
      PivSpec merged_spec = specs[k1];
      merged_spec.name = specs[k1].name + "|" + specs[k2].name;
      merged_spec.support = merged.size();
      merged_spec.stable = specs[k1].stable && specs[k2].stable;
      merged_spec.mistake_bound = std::min(specs[k1].mistake_bound, specs[k2].mistake_bound);
      merged_spec.use_soundex = false;
      out.specs.push_back(std::move(merged_spec));
      out.supports.push_back(merged);
    } else {
      out.specs.push_back(specs[p]);
      out.supports.push_back(supports[p]);
    }
  }
  return out;
}

std::vector<double> missing_rates(const RecordTable& table) {
  std::vector<double> rates(table.k, 0.0);
  if (table.n == 0) return rates;
  for (int p = 0; p < table.k; ++p) {
    int64_t zeros = 0;
    for (int r = 0; r < table.n; ++r) {
      if (table.at(r, p) == 0) ++zeros;
    }
    rates[p] = static_cast<double>(zeros) / table.n;
  }
  return rates;
}

}  // namespace reclink
