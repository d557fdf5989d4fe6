#include "riviv/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "riviv/errors.hpp"

namespace riviv {

namespace {

// One RFC-4180 record; returns false at end of input. Quoted fields may span
// lines and escape quotes by doubling.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int c;
  while ((c = in.get()) != EOF) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get();
      fields.push_back(std::move(field));
      return true;
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(static_cast<char>(c));
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, std::size_t row,
                  const std::string& col, const std::string& origin) {
  const std::string s = trim(raw);
  if (s.empty())
    throw CsvError(origin + ": missing value at data row " +
                   std::to_string(row) + ", column '" + col + "'");
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (s.size() > 1 && s[0] == '+') ++begin;  // from_chars rejects a leading +
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw CsvError(origin + ": non-numeric cell '" + s + "' at data row " +
                   std::to_string(row) + ", column '" + col + "'");
  return value;
}

}  // namespace

bool CsvTable::has_column(const std::string& name) const {
  for (const auto& h : header_)
    if (h == name) return true;
  return false;
}

Vec CsvTable::column(const std::string& name) const {
  for (std::size_t j = 0; j < header_.size(); ++j)
    if (header_[j] == name) return columns_[j];
  std::string available;
  for (const auto& h : header_) available += (available.empty() ? "" : ", ") + h;
  throw SchemaError("column '" + name + "' not found; available: " + available);
}

CsvTable CsvTable::parse(std::istream& in, const std::string& origin) {
  CsvTable table;
  std::vector<std::string> fields;
  if (!read_record(in, fields) || fields.empty())
    throw CsvError(origin + ": missing header row");
  for (auto& h : fields) table.header_.push_back(trim(h));

  std::vector<std::vector<double>> cols(table.header_.size());
  std::size_t row = 1;
  while (read_record(in, fields)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;  // blank line
    if (fields.size() != table.header_.size())
      throw CsvError(origin + ": data row " + std::to_string(row) + " has " +
                     std::to_string(fields.size()) + " fields, expected " +
                     std::to_string(table.header_.size()));
    for (std::size_t j = 0; j < fields.size(); ++j)
      cols[j].push_back(parse_cell(fields[j], row, table.header_[j], origin));
    ++row;
  }
  if (cols.empty() || cols[0].empty())
    throw CsvError(origin + ": no data rows");

  table.rows_ = cols[0].size();
  table.columns_.reserve(cols.size());
  for (auto& c : cols)
    table.columns_.push_back(Eigen::Map<Vec>(c.data(), c.size()));
  return table;
}

CsvTable CsvTable::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot open '" + path + "'");
  return parse(in, path);
}

}  // namespace riviv
