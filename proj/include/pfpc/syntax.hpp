#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "pfpc/terms.hpp"
#include "pfpc/types.hpp"

namespace pfpc {

/// Syntax error tagged with the 1-based source position of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Concrete syntax (`--` starts a line comment):
//
//   type := "mu" X "." type | type "->" type | type "+" type | type "*" type
//         | X | "0" | "1" | "Bool" | "Nat" | "(" type ")"
//   term := "fn" x ":" type "=>" term
//         | "let" x [":" type] "=" term "in" term
//         | "case" term "of" "inl" x "=>" term "|" "inr" y "=>" term
//         | term "or" "[" rational "]" term
//         | term term
//         | ("fst" | "snd" | "unfold") term
//         | ("inl" | "inr") ["[" type "]"] term
//         | "fold" "[" type "]" term | "fix" "[" type "->" type "]" term
//         | x | "()" | "tt" | "ff" | "(" term "," term ")" | "(" term ")"
//
// "->" is right-associative, "*" binds tighter than "+", both tighter than
// "->". Application is left-associative and binds tighter than the prefix
// keywords' argument only in the sense that `fst f x` is `(fst f) x`.
// `or` is right-associative and looser than application.
Type parse_type(std::string_view source);
Term parse_term(std::string_view source);

/// Inverse of parse_term up to alpha-equivalence.
std::string pretty(const Term& m);

}  // namespace pfpc
