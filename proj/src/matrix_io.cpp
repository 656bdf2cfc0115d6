#include "srscale/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace srscale {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_line(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

bool skippable(const std::vector<Token>& tokens) {
  return tokens.empty() || tokens.front().text.front() == '#';
}

double parse_double(const Token& tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError("value out of range: '" + tok.text + "'", line, tok.column);
  }
  if (ec != std::errc() || ptr != last) {
    throw ParseError("not a number: '" + tok.text + "'", line, tok.column);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + tok.text + "'", line, tok.column);
  return v;
}

Index parse_count(const Token& tok, std::size_t line) {
  Index v = 0;
  const char* last = tok.text.data() + tok.text.size();
  const auto [ptr, ec] = std::from_chars(tok.text.data(), last, v);
  if (ec != std::errc() || ptr != last || v == 0) {
    throw ParseError("expected a positive integer, got '" + tok.text + "'", line, tok.column);
  }
  return v;
}

}  // namespace

DenseMatrix parse_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<Token> tokens;

  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++lineno;
    tokens = split_line(line);
    have_header = !skippable(tokens);
  }
  if (!have_header) throw ParseError("missing 'rows cols' header", lineno + 1, 1);
  if (tokens.size() != 2) {
    throw ParseError("header must hold exactly two counts", lineno,
                     tokens.size() > 2 ? tokens[2].column : line.size() + 1);
  }
  const Index rows = parse_count(tokens[0], lineno);
  const Index cols = parse_count(tokens[1], lineno);

  std::vector<double> entries;
  entries.reserve(rows * cols);
  Index rows_read = 0;
  while (std::getline(in, line)) {
    ++lineno;
    tokens = split_line(line);
    if (skippable(tokens)) continue;
    if (rows_read == rows) throw ParseError("more rows than the header declares", lineno, 1);
    if (tokens.size() != cols) {
      const std::size_t col = tokens.size() > cols ? tokens[cols].column : line.size() + 1;
      throw ParseError("expected " + std::to_string(cols) + " values, found " +
                           std::to_string(tokens.size()),
                       lineno, col);
    }
    for (const auto& tok : tokens) entries.push_back(parse_double(tok, lineno));
    ++rows_read;
  }
  if (rows_read != rows) {
    throw ParseError("expected " + std::to_string(rows) + " rows, found " + std::to_string(rows_read),
                     lineno + 1, 1);
  }
  return DenseMatrix(rows, cols, std::move(entries));
}

DenseMatrix parse_matrix_string(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

DenseMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  return parse_matrix(in);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& out, const DenseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

std::string serialize_matrix(const DenseMatrix& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

void write_matrix_file(const std::string& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_matrix(out, m);
}

}  // namespace srscale
