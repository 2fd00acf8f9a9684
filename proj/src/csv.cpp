#include "reclink/csv.hpp"

#include <fstream>
#include <sstream>

#include "reclink/errors.hpp"

namespace reclink {

int CsvTable::col_index(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool row_open = false;  // true once the current record has any content

  auto end_field = [&] {
    record.push_back(field);
    field.clear();
    row_open = true;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    row_open = false;
  };

  const size_t len = text.size();
  for (size_t i = 0; i < len; ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < len && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      // swallowed; the matching \n (if any) ends the record
      if (i + 1 >= len || text[i + 1] != '\n') end_record();
    } else if (c == '\n') {
      end_record();
    } else {
      field += c;
      row_open = true;
    }
  }
  if (quoted) throw DataError("csv: unterminated quoted field");
  if (row_open || !field.empty() || !record.empty()) end_record();

  if (records.empty()) throw DataError("csv: empty input");

  CsvTable table;
  table.header = std::move(records.front());
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw DataError("csv: row " + std::to_string(r) + " has " +
                      std::to_string(records[r].size()) + " fields, header has " +
                      std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_csv(buf.str());
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

namespace {

void write_field(std::ostream& out, const std::string& f) {
  if (f.find_first_of(",\"\n\r") == std::string::npos) {
    out << f;
    return;
  }
  out << '"';
  for (char c : f) {
    if (c == '"') out << "\"\"";
    else out << c;
  }
  out << '"';
}

void write_record(std::ostream& out, const std::vector<std::string>& rec) {
  for (size_t i = 0; i < rec.size(); ++i) {
    if (i) out << ',';
    write_field(out, rec[i]);
  }
  out << '\n';
}

}  // namespace

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  write_record(out, table.header);
  for (const auto& row : table.rows) write_record(out, row);
  if (!out) throw DataError("short write to " + path);
}

}  // namespace reclink
