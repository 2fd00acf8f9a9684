#pragma once

#include <string>
#include <vector>

namespace reclink {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int n_rows() const { return static_cast<int>(rows.size()); }
  int n_cols() const { return static_cast<int>(header.size()); }
  // -1 if absent
  int col_index(const std::string& name) const;
};

// RFC-4180-ish: quoted fields, doubled quotes inside quotes, CR/LF line ends.
// First record is the header. Ragged rows raise DataError.
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

// Fields are quoted only when they contain a comma, quote, or newline.
void write_csv(const std::string& path, const CsvTable& table);

}  // namespace reclink
