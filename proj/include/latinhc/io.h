#ifndef LATINHC_IO_H_
#define LATINHC_IO_H_

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "latinhc/hypercube.h"

namespace latinhc {

// Text formats. `#` starts a comment running to the end of the line.
//
//   square:     n lines of n whitespace-separated integers 0..n-1
//   hypercube:  header `latinhc <d> <n>`, then n^d integers in storage order
//               (last coordinate fastest), whitespace-insensitive
enum class TextFormat { kSquare, kHypercube };

// Syntax and shape problems; line and column are 1-based, 0 when the error
// has no single position (e.g. too few cells).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Detects the format from the first token. Throws ParseError for syntax,
// range and length errors, NotLatinError for a latin-property violation.
LatinHypercube ParseHypercube(std::string_view text);
LatinHypercube ParseHypercube(std::istream& in);

// Reads a file, or standard input when `path` is "-".
LatinHypercube ReadHypercubeFile(const std::string& path);

// Square format needs dimension 2.
std::string FormatHypercube(const LatinHypercube& q, TextFormat format);

// Square format for squares, hypercube format otherwise.
TextFormat DefaultFormat(const LatinHypercube& q);

}  // namespace latinhc

#endif  // LATINHC_IO_H_
