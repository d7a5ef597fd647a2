#include "engel/expression.hpp"

#include <cctype>

namespace engel {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    const int line = line_;
    const int column = column_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, column};
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(line, column);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        id += advance();
      }
      return {Tok::Ident, id, line, column};
    }
    advance();
    switch (c) {
      case '+':
        return {Tok::Plus, "+", line, column};
      case '-':
        return {Tok::Minus, "-", line, column};
      case '*':
        return {Tok::Star, "*", line, column};
      case '/':
        return {Tok::Slash, "/", line, column};
      case '^':
        return {Tok::Caret, "^", line, column};
      case '(':
        return {Tok::LParen, "(", line, column};
      case ')':
        return {Tok::RParen, ")", line, column};
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }
  }

 private:
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  Token number(int line, int column) {
    std::string s;
    int dots = 0;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      if (text_[pos_] == '.') ++dots;
      s += advance();
    }
    if (dots > 1 || s == "." || s.back() == '.' || s.front() == '.') {
      throw ParseError("malformed literal '" + s + "'", line, column);
    }
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      throw ParseError("malformed literal '" + s + text_[pos_] + "'", line, column);
    }
    return {Tok::Number, s, line, column};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

  RationalPolynomial parse() {
    if (tok_.kind == Tok::End) throw ParseError("empty expression", tok_.line, tok_.column);
    RationalPolynomial p = expr();
    if (tok_.kind != Tok::End) throw ParseError("unexpected '" + tok_.text + "'", tok_.line, tok_.column);
    return p;
  }

 private:
  void next() { tok_ = lex_.next(); }

  RationalPolynomial expr() {
    RationalPolynomial p = term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const bool plus = tok_.kind == Tok::Plus;
      next();
      RationalPolynomial q = term();
      p = plus ? p + q : p - q;
    }
    return p;
  }

  RationalPolynomial term() {
    RationalPolynomial p = unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const bool times = tok_.kind == Tok::Star;
      const Token op = tok_;
      next();
      RationalPolynomial q = unary();
      if (times) {
        p = p * q;
        continue;
      }
      if (q.total_degree() > 0) throw ParseError("division by a non-constant expression", op.line, op.column);
      const Rational c = q.constant_term();
      if (is_zero(c)) throw ParseError("division by zero", op.line, op.column);
      p = p * RationalPolynomial(Rational(1 / c));
    }
    return p;
  }

  RationalPolynomial unary() {
    if (tok_.kind == Tok::Minus) {
      next();
      return -unary();
    }
    if (tok_.kind == Tok::Plus) {
      next();
      return unary();
    }
    return power();
  }

  RationalPolynomial power() {
    RationalPolynomial p = atom();
    while (tok_.kind == Tok::Caret) {
      next();
      const Token e = tok_;
      if (e.kind == Tok::Minus) throw ParseError("negative exponent", e.line, e.column);
      if (e.kind != Tok::Number || e.text.find('.') != std::string::npos) {
        throw ParseError("exponent must be a non-negative integer", e.line, e.column);
      }
      if (e.text.size() > 3) throw ParseError("exponent too large", e.line, e.column);
      next();
      p = p.pow(std::stoi(e.text));
    }
    return p;
  }

  RationalPolynomial atom() {
    const Token t = tok_;
    switch (t.kind) {
      case Tok::Number: {
        next();
        try {
          return RationalPolynomial(parse_rational(t.text));
        } catch (const std::invalid_argument& ex) {
          throw ParseError(ex.what(), t.line, t.column);
        }
      }
      case Tok::Ident:
        next();
        if (t.text == "u1") return RationalPolynomial::variable(0);
        if (t.text == "u2") return RationalPolynomial::variable(1);
        throw ParseError("unknown identifier '" + t.text + "'", t.line, t.column);
      case Tok::LParen: {
        next();
        RationalPolynomial p = expr();
        if (tok_.kind != Tok::RParen) throw ParseError("expected ')'", tok_.line, tok_.column);
        next();
        return p;
      }
      case Tok::End:
        throw ParseError("unexpected end of expression", t.line, t.column);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.line, t.column);
    }
  }

  Lexer lex_;
  Token tok_;
};

}  // namespace

RationalPolynomial parse_expression(std::string_view text) { return Parser(text).parse(); }

std::string print_expression(const RationalPolynomial& p) { return to_string(p, {"u1", "u2", "u3", "u4"}); }

}  // namespace engel
