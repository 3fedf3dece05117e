#include "latinhc/io.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <vector>

namespace latinhc {
namespace {

struct Token {
  std::string_view text;
  int line;
  int column;
};

// Splits into whitespace-separated tokens, dropping comments. Tokens are
// grouped by source line so the square format can check row lengths.
std::vector<std::vector<Token>> Tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) {
        tokens.push_back(Token{line.substr(start, i - start), line_no,
                               static_cast<int>(start) + 1});
      }
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
    pos = end + 1;
  }
  return lines;
}

long ParseInteger(const Token& token) {
  long value = 0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("expected an integer, found '" + std::string(token.text) +
                         "'",
                     token.line, token.column);
  }
  return value;
}

Symbol ParseSymbol(const Token& token, int order) {
  const long value = ParseInteger(token);
  if (value < 0 || value >= order) {
    throw ParseError("symbol " + std::to_string(value) +
                         " is out of range 0.." + std::to_string(order - 1),
                     token.line, token.column);
  }
  return static_cast<Symbol>(value);
}

LatinHypercube ParseSquare(const std::vector<std::vector<Token>>& lines) {
  const int n = static_cast<int>(lines.size());
  if (n > kMaxOrder) {
    throw ParseError("order exceeds " + std::to_string(kMaxOrder), 0, 0);
  }
  std::vector<Symbol> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : lines) {
    if (static_cast<int>(row.size()) != n) {
      throw ParseError("row has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(n),
                       row.front().line, row.front().column);
    }
    for (const Token& token : row) cells.push_back(ParseSymbol(token, n));
  }
  return LatinHypercube(2, n, std::move(cells));
}

LatinHypercube ParseHeadered(const std::vector<Token>& tokens) {
  if (tokens.size() < 3) {
    throw ParseError("header needs `latinhc <d> <n>`", tokens[0].line,
                     tokens[0].column);
  }
  const long d = ParseInteger(tokens[1]);
  const long n = ParseInteger(tokens[2]);
  if (d < 1 || d > 16) {
    throw ParseError("dimension must be in 1..16", tokens[1].line,
                     tokens[1].column);
  }
  if (n < 1 || n > kMaxOrder) {
    throw ParseError("order must be in 1.." + std::to_string(kMaxOrder),
                     tokens[2].line, tokens[2].column);
  }
  const std::size_t expected =
      CellCount(static_cast<int>(d), static_cast<int>(n));
  const std::size_t found = tokens.size() - 3;
  if (found != expected) {
    const Token& at = found > expected ? tokens[3 + expected] : tokens.back();
    throw ParseError("expected " + std::to_string(expected) +
                         " cells, found " + std::to_string(found),
                     found > expected ? at.line : 0,
                     found > expected ? at.column : 0);
  }
  std::vector<Symbol> cells;
  cells.reserve(expected);
  for (std::size_t i = 3; i < tokens.size(); ++i) {
    cells.push_back(ParseSymbol(tokens[i], static_cast<int>(n)));
  }
  return LatinHypercube(static_cast<int>(d), static_cast<int>(n),
                        std::move(cells));
}

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + message
                                  : message),
      line_(line),
      column_(column) {}

LatinHypercube ParseHypercube(std::string_view text) {
  const auto lines = Tokenize(text);
  if (lines.empty()) throw ParseError("empty input", 0, 0);
  if (lines.front().front().text == "latinhc") {
    std::vector<Token> flat;
    for (const auto& line : lines) flat.insert(flat.end(), line.begin(), line.end());
    return ParseHeadered(flat);
  }
  return ParseSquare(lines);
}

LatinHypercube ParseHypercube(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return ParseHypercube(text);
}

LatinHypercube ReadHypercubeFile(const std::string& path) {
  if (path == "-") return ParseHypercube(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ParseHypercube(in);
}

TextFormat DefaultFormat(const LatinHypercube& q) {
  return q.dimension() == 2 ? TextFormat::kSquare : TextFormat::kHypercube;
}

std::string FormatHypercube(const LatinHypercube& q, TextFormat format) {
  std::ostringstream out;
  const int n = q.order();
  if (format == TextFormat::kSquare) {
    if (q.dimension() != 2) {
      throw std::invalid_argument("square format needs dimension 2");
    }
  } else {
    out << "latinhc " << q.dimension() << ' ' << n << '\n';
  }
  // One line per row of the last two axes, a blank line between squares.
  const std::size_t square = static_cast<std::size_t>(n) * n;
  for (std::size_t i = 0; i < q.size(); ++i) {
    out << static_cast<int>(q.at(i));
    if ((i + 1) % n != 0) {
      out << ' ';
    } else {
      out << '\n';
      if (q.dimension() > 2 && (i + 1) % square == 0 && i + 1 < q.size()) {
        out << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace latinhc
