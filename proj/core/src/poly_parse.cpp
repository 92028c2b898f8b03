#include <cctype>

#include "boolelim/poly.hpp"
#include "text_parser.hpp"

namespace boolelim {

namespace detail {

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::eq: return "'='";
    case Tok::neq: return "'!='";
    case Tok::gt: return "'>'";
    case Tok::ge: return "'>='";
    case Tok::lt: return "'<'";
    case Tok::le: return "'<='";
    case Tok::conj: return "'/\\'";
    case Tok::disj: return "'\\/'";
    case Tok::neg: return "'~'";
    case Tok::kw_true: return "'true'";
    case Tok::kw_false: return "'false'";
    case Tok::end: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back(Token{k, std::string(text.substr(i, len)), i});
    i += len;
  };
  auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c) != 0) {
      ++i;
    } else if (std::isdigit(c) != 0) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) != 0) ++j;
      push(Tok::number, j - i);
    } else if (std::isalpha(c) != 0 || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) != 0 || text[j] == '_'))
        ++j;
      const std::string_view word = text.substr(i, j - i);
      Tok k = Tok::ident;
      if (word == "and") k = Tok::conj;
      else if (word == "or") k = Tok::disj;
      else if (word == "not") k = Tok::neg;
      else if (word == "true") k = Tok::kw_true;
      else if (word == "false") k = Tok::kw_false;
      push(k, j - i);
    } else if (starts("/\\")) { push(Tok::conj, 2);
    } else if (starts("\\/")) { push(Tok::disj, 2);
    } else if (starts("!=")) { push(Tok::neq, 2);
    } else if (starts(">=")) { push(Tok::ge, 2);
    } else if (starts("<=")) { push(Tok::le, 2);
    } else if (starts("∧")) { push(Tok::conj, 3);
    } else if (starts("∨")) { push(Tok::disj, 3);
    } else if (starts("¬")) { push(Tok::neg, 2);
    } else if (starts("≠")) { push(Tok::neq, 3);
    } else if (starts("≥")) { push(Tok::ge, 3);
    } else if (starts("≤")) { push(Tok::le, 3);
    } else {
      switch (c) {
        case '+': push(Tok::plus, 1); break;
        case '-': push(Tok::minus, 1); break;
        case '*': push(Tok::star, 1); break;
        case '/': push(Tok::slash, 1); break;
        case '^': push(Tok::caret, 1); break;
        case '(': push(Tok::lparen, 1); break;
        case ')': push(Tok::rparen, 1); break;
        case ',': push(Tok::comma, 1); break;
        case '=': push(Tok::eq, 1); break;
        case '>': push(Tok::gt, 1); break;
        case '<': push(Tok::lt, 1); break;
        case '~': push(Tok::neg, 1); break;
        case '!': push(Tok::neg, 1); break;
        default:
          throw ParseFailure{i, "a token", "'" + std::string(1, text[i]) + "'"}.to_error();
      }
    }
  }
  out.push_back(Token{Tok::end, "", text.size()});
  return out;
}

void PolyReader::fail(const std::string& expected) const {
  const Token& t = peek();
  throw ParseFailure{t.pos, expected, t.kind == Tok::end ? "end of input" : "'" + t.text + "'"};
}

void PolyReader::expect(Tok k) {
  if (!at(k)) fail(describe(k));
  advance();
}

void PolyReader::expect_end() {
  if (!at(Tok::end)) fail("end of input");
}

MultiPoly PolyReader::sum() {
  // Summands are added pairwise in rounds, so an expanded polynomial with n
  // terms parses in O(n log n) merges instead of O(n^2).
  std::vector<MultiPoly> parts{product()};
  while (at(Tok::plus) || at(Tok::minus)) {
    const bool minus = advance().kind == Tok::minus;
    parts.push_back(minus ? -product() : product());
  }
  while (parts.size() > 1) {
    std::size_t kept = 0;
    for (std::size_t i = 0; i < parts.size(); i += 2) {
      if (i + 1 < parts.size()) parts[i] += parts[i + 1];
      if (kept != i) parts[kept] = std::move(parts[i]);
      ++kept;
    }
    parts.resize(kept);
  }
  return std::move(parts.front());
}

MultiPoly PolyReader::product() {
  MultiPoly acc = unary();
  while (at(Tok::star) || at(Tok::slash)) {
    const Token op = advance();
    MultiPoly rhs = unary();
    if (op.kind == Tok::star) {
      acc *= rhs;
    } else {
      if (!rhs.is_constant() || rhs.is_zero())
        throw ParseFailure{op.pos, "a nonzero constant divisor", "'" + rhs.str() + "'"};
      acc *= rhs.constant_value().inverse();
    }
  }
  return acc;
}

MultiPoly PolyReader::unary() {
  if (at(Tok::minus)) {
    advance();
    return -unary();
  }
  if (at(Tok::plus)) {
    advance();
    return unary();
  }
  return power();
}

MultiPoly PolyReader::power() {
  MultiPoly base = primary();
  if (at(Tok::caret)) {
    advance();
    if (!at(Tok::number)) fail("an exponent");
    const Token& t = advance();
    if (t.text.size() > 4) throw ParseFailure{t.pos, "a small exponent", "'" + t.text + "'"};
    base = base.pow(static_cast<unsigned>(std::stoul(t.text)));
  }
  return base;
}

MultiPoly PolyReader::primary() {
  if (at(Tok::number)) {
    const Token& t = advance();
    return MultiPoly::constant(Scalar(Rational(Integer(t.text, 10))), field_);
  }
  if (at(Tok::ident)) {
    const Token& t = advance();
    if (t.text == "I") {
      if (field_ != ScalarField::gaussian)
        throw ParseFailure{t.pos, "a real term (no imaginary unit over R or Q)", "'I'"};
      return MultiPoly::constant(GaussianRational::i(), field_);
    }
    if (hook_) hook_(t.text, t.pos);
    return MultiPoly::variable(Var(t.text), field_);
  }
  if (at(Tok::lparen)) {
    advance();
    MultiPoly inner = sum();
    expect(Tok::rparen);
    return inner;
  }
  fail("a number, variable or '('");
}

}  // namespace detail

MultiPoly parse_polynomial(std::string_view text, ScalarField field) {
  try {
    detail::PolyReader reader(detail::tokenize(text), field);
    MultiPoly p = reader.sum();
    reader.expect_end();
    return p;
  } catch (const detail::ParseFailure& f) {
    throw f.to_error();
  }
}

Scalar parse_scalar(std::string_view text, ScalarField field) {
  MultiPoly p = parse_polynomial(text, field);
  if (!p.is_constant()) throw Error(Errc::syntax_error, "expected a constant, got '" + p.str() + "'");
  return p.constant_value();
}

}  // namespace boolelim
