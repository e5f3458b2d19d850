#pragma once

#include <string>
#include <string_view>

#include "hod/errors.h"
#include "hod/polynomial.h"

namespace hod {

/// Input text that does not follow the grammar. line/column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// System text:
///   vars: x1 x2          (names separated by spaces or commas)
///   x1*x2;               (one polynomial per ';')
///   (2,0)*x1 - (0,3)*x2^2;
/// '#' starts a comment that runs to the end of the line.
PolySystem parse_system(std::string_view text);

/// Text that parse_system reads back to an equal system.
std::string serialize(const PolySystem& F);

/// One "name = value" per line, value a real number or (re,im). Every
/// variable of the system must be assigned exactly once.
Point parse_point(std::string_view text, const PolySystem& F);

std::string format_complex(cplx c);

/// Highest degree first; real coefficients plainly, others as (re,im).
/// Output is valid input for parse_system and reproduces p exactly.
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names);

/// Reads a whole file; "-" means standard input.
std::string read_input(const std::string& path);

}  // namespace hod
