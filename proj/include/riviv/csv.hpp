#pragma once

#include <istream>
#include <string>
#include <vector>

#include "riviv/linalg.hpp"

namespace riviv {

/// Numeric table parsed from RFC-4180 CSV (header row required, quoted
/// fields and escaped quotes supported, CRLF or LF records). Every data cell
/// must parse as a number; empty cells are missing values and are an error,
/// reported with the offending row and column.
class CsvTable {
 public:
  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_; }

  bool has_column(const std::string& name) const;
  /// Throws SchemaError (naming available columns) for an unknown name.
  Vec column(const std::string& name) const;

  static CsvTable parse(std::istream& in, const std::string& origin = "csv");
  static CsvTable read_file(const std::string& path);

 private:
  std::vector<std::string> header_;
  std::vector<Vec> columns_;
  std::size_t rows_ = 0;
};

}  // namespace riviv
