#pragma once

#include <string>
#include <vector>

#include "reclink/csv.hpp"
#include "reclink/types.hpp"

namespace reclink {

// American Soundex, 4 characters (letter + 3 digits, zero padded).
// h and w are transparent (do not break a run of equal codes); vowels do.
// UTF-8 diacritics in the Latin-1 / Latin Extended-A range are folded to
// ASCII first. Inputs with no codable letter map to the sentinel "0000",
// which acts as its own category.
std::string soundex(const std::string& name);

// True when the raw field counts as missing (case-insensitive match against
// the token list; by default "" and "NA").
bool is_missing_token(const std::string& value, const std::vector<std::string>& missing_tokens);

const std::vector<std::string>& default_missing_tokens();

// Shared support over both files' observed values, codes assigned by first
// appearance (file A scanned first). Missing tokens do not enter the support.
// Both columns all-missing raises ConfigError.
SupportMap build_support(const std::vector<std::string>& col_a,
                         const std::vector<std::string>& col_b,
                         const std::vector<std::string>& missing_tokens,
                         bool use_soundex);

// Encode one raw column against a support. Missing tokens -> 0. A non-missing
// value outside the support raises DataError naming the row and value.
std::vector<int32_t> encode_column(const std::vector<std::string>& col,
                                   const SupportMap& support,
                                   const std::vector<std::string>& missing_tokens,
                                   bool use_soundex,
                                   const std::string& piv_name);

// Both files encoded against shared supports, one per PIV. Fills in
// spec.support from the built supports. Column names in `specs` must exist in
// both CSV headers; the optional time column (empty = none) must parse as a
// real number in every row where present.
struct EncodedPair {
  RecordTable a, b;
  std::vector<SupportMap> supports;
  std::vector<PivSpec> specs;
};
EncodedPair encode_tables(const CsvTable& csv_a, const CsvTable& csv_b,
                          std::vector<PivSpec> specs,
                          const std::string& time_column,
                          const std::vector<std::string>& missing_tokens);

// Replace PIVs k1 and k2 by their interaction, rebuilt over both files with a
// shared support of observed pairs. A pair with either component missing is
// missing. The merged column lands at min(k1,k2); the other column is removed.
struct MergeResult {
  RecordTable a, b;
  std::vector<SupportMap> supports;
  std::vector<PivSpec> specs;
};
MergeResult merge_pivs(const RecordTable& a, const RecordTable& b,
                       int k1, int k2,
                       const std::vector<SupportMap>& supports,
                       const std::vector<PivSpec>& specs);

// Fraction of zeros per PIV column.
std::vector<double> missing_rates(const RecordTable& table);

}  // namespace reclink
