#pragma once

// Lexer and recursive-descent polynomial reader shared by the polynomial and
// formula front ends.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "boolelim/error.hpp"
#include "boolelim/poly.hpp"

namespace boolelim::detail {

enum class Tok {
  ident, number, plus, minus, star, slash, caret, lparen, rparen, comma,
  eq, neq, gt, ge, lt, le, conj, disj, neg, kw_true, kw_false, end,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::string describe(Tok kind);

/// Raised while parsing; converted to Error(SYNTAX_ERROR) at the entry point.
struct ParseFailure {
  std::size_t pos;
  std::string expected;
  std::string found;

  Error to_error() const {
    return Error(Errc::syntax_error,
                 "at position " + std::to_string(pos) + ": expected " + expected + ", found " + found);
  }
};

std::vector<Token> tokenize(std::string_view text);

class PolyReader {
 public:
  using VarHook = std::function<void(const std::string& name, std::size_t pos)>;

  PolyReader(std::vector<Token> tokens, ScalarField field, VarHook hook = {})
      : tokens_(std::move(tokens)), field_(field), hook_(std::move(hook)) {}

  MultiPoly sum();
  void expect_end();

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& advance() { return tokens_[pos_++]; }
  void expect(Tok k);
  std::size_t mark() const { return pos_; }
  void reset(std::size_t m) { pos_ = m; }
  [[noreturn]] void fail(const std::string& expected) const;
  ScalarField field() const { return field_; }

 private:
  MultiPoly product();
  MultiPoly unary();
  MultiPoly power();
  MultiPoly primary();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  ScalarField field_;
  VarHook hook_;
};

}  // namespace boolelim::detail
