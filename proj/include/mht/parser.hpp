/// \file parser.hpp
/// \brief Text syntax for metric formulas and theories, and the canonical
///        printer (round-trip safe).
///
/// Grammar sketch (see README for the full table):
///   theory   := (formula (";" | NEWLINE))*
///   formula  := iff ; iff := impl ("<->" impl)? ; impl := disj ("->" impl)?
///   disj     := conj ("|" conj)* ; conj := bin ("&" bin)*
///   bin      := unary (("U"|"R"|"S"|"T") bound? bin)?
///   unary    := ("~"|"X"|"wX"|"Y"|"wY") unary
///             | ("F"|"G"|"O"|"H") bound? unary | prim
///   prim     := ATOM | "#true" | "#false" | "#initial" | "#final"
///             | "(" formula ")"
///   bound    := "[" NUM "]" | "[" "l" "]" | "[" NUM ";" (NUM|"l") ")"
/// "%" starts a comment that runs to the end of the line.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "mht/formula.hpp"

namespace mht {

/// 1-based position of a token inside the parsed text.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceSpan where)
      : std::runtime_error(message + " (line " + std::to_string(where.line) +
                           ", column " + std::to_string(where.column) + ")"),
        span_(where) {}
  const SourceSpan& where() const { return span_; }

 private:
  SourceSpan span_;
};

/// Parses a single formula. Derived syntax (~, <->, F/G/O/H, #initial,
/// #final, intervals) is eliminated during construction.
Formula parse_formula(std::string_view text);

/// Parses a ';'- or newline-separated sequence of formulas.
Theory parse_theory(std::string_view text);

/// Canonical text. parse_formula(print_formula(f)) is structurally identical
/// to f. Re-sugars #true U / #false R / #true S / #false T into F/G/O/H and
/// "x -> #false" into "~x".
std::string print_formula(const Formula& f);

std::string print_theory(const Theory& t);

}  // namespace mht
