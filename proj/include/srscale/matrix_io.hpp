#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "srscale/dense.hpp"
#include "srscale/errors.hpp"

namespace srscale {

// Text format: a "rows cols" header line, then one line per row with cols
// whitespace-separated decimal literals. Blank lines and lines starting
// with '#' are skipped.

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

DenseMatrix parse_matrix(std::istream& in);
DenseMatrix parse_matrix_string(const std::string& text);
DenseMatrix read_matrix_file(const std::string& path);

/// 17 significant digits, so parse(serialize(M)) == M bit for bit.
void write_matrix(std::ostream& out, const DenseMatrix& m);
std::string serialize_matrix(const DenseMatrix& m);
void write_matrix_file(const std::string& path, const DenseMatrix& m);

/// Shortest-roundtrip-safe "%.17g" formatting used by every text output.
std::string format_double(double v);

}  // namespace srscale
