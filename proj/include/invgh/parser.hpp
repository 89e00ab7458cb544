#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "invgh/ast.hpp"

namespace invgh {

struct SyntaxError : std::runtime_error {
  SyntaxError(std::string msg, int line, int col, std::vector<std::string> expected_tokens)
      : std::runtime_error(std::move(msg)), line(line), col(col),
        expected(std::move(expected_tokens)) {}
  int line;
  int col;
  std::vector<std::string> expected;
};

// Parses a whole program.  Deterministic; throws SyntaxError with
// line/column and the set of expected tokens.
Program parse_program(const std::string& text);

// Parses a single polynomial in the same syntax as the program grammar.
Polynomial parse_polynomial(const std::string& text);

}  // namespace invgh
