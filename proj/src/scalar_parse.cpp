#include <cctype>
#include <string>

#include "bks/error.hpp"
#include "bks/scalar.hpp"

namespace bks {

namespace {

enum class Tok { Integer, Sqrt, Var, Plus, Minus, Star, Slash, LParen, RParen, End };

struct Token {
  Tok kind;
  mpz_class value;     // Integer
  VarKind var_kind{};  // Var
  int var_id = 0;      // Var
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError("scalar expression: " + msg, at.line, at.col);
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      bump();
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char ch = text_[pos_];
    switch (ch) {
      case '+': tok_.kind = Tok::Plus; bump(); return;
      case '-': tok_.kind = Tok::Minus; bump(); return;
      case '*': tok_.kind = Tok::Star; bump(); return;
      case '/': tok_.kind = Tok::Slash; bump(); return;
      case '(': tok_.kind = Tok::LParen; bump(); return;
      case ')': tok_.kind = Tok::RParen; bump(); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits += text_[pos_];
        bump();
      }
      tok_.kind = Tok::Integer;
      tok_.value = mpz_class(digits, 10);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])))) {
        word += text_[pos_];
        bump();
      }
      if (word == "sqrt") {
        tok_.kind = Tok::Sqrt;
        return;
      }
      char head = word[0];
      if ((head == 'c' || head == 's' || head == 'm') && word.size() > 1) {
        bool digits_ok = true;
        for (size_t i = 1; i < word.size(); ++i) {
          if (!std::isdigit(static_cast<unsigned char>(word[i]))) digits_ok = false;
        }
        if (digits_ok) {
          tok_.kind = Tok::Var;
          tok_.var_kind = head == 'c' ? VarKind::ChainCos
                          : head == 's' ? VarKind::ChainSin
                                        : VarKind::Root;
          try {
            tok_.var_id = std::stoi(word.substr(1));
          } catch (const std::exception&) {
            throw ParseError("scalar expression: symbol index out of range '" + word + "'",
                             tok_.line, tok_.col);
          }
          return;
        }
      }
      throw ParseError("scalar expression: unknown token '" + word + "'", tok_.line, tok_.col);
    }
    throw ParseError(std::string("scalar expression: unexpected character '") + ch + "'",
                     line_, col_);
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
};

class Parser {
 public:
  Parser(const std::string& text, const ScalarTower& tower) : lex_(text), tower_(tower) {}

  ExactScalar run() {
    ExactScalar v = expr();
    if (lex_.peek().kind != Tok::End) {
      lex_.fail("trailing input after expression", lex_.peek());
    }
    return v;
  }

 private:
  Lexer lex_;
  const ScalarTower& tower_;

  ExactScalar expr() {
    ExactScalar acc = term();
    while (true) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Plus) {
        lex_.take();
        acc = acc + term();
      } else if (k == Tok::Minus) {
        lex_.take();
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  ExactScalar term() {
    ExactScalar acc = unary();
    while (true) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Star) {
        lex_.take();
        acc = acc * unary();
      } else if (k == Tok::Slash) {
        Token op = lex_.take();
        ExactScalar d = unary();
        auto f = d.as_field();
        if (!f) {
          lex_.fail("division by a symbolic scalar is not part of the grammar", op);
        }
        if (f->is_zero()) {
          lex_.fail("division by zero", op);
        }
        acc = acc * ExactScalar(f->inverse(), tower_.raw());
      } else {
        return acc;
      }
    }
  }

  ExactScalar unary() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return -unary();
    }
    return primary();
  }

  ExactScalar primary() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Integer:
        return ExactScalar(FieldElem(mpq_class(t.value)), tower_.raw());
      case Tok::Sqrt: {
        Token open = lex_.take();
        if (open.kind != Tok::LParen) lex_.fail("expected '(' after sqrt", open);
        Token arg = lex_.take();
        if (arg.kind != Tok::Integer) lex_.fail("sqrt takes a nonnegative integer", arg);
        Token close = lex_.take();
        if (close.kind != Tok::RParen) lex_.fail("expected ')' after sqrt argument", close);
        return ExactScalar(FieldElem::sqrt_int(arg.value), tower_.raw());
      }
      case Tok::Var: {
        switch (t.var_kind) {
          case VarKind::ChainCos:
            if (t.var_id >= tower_.chain_count()) {
              lex_.fail("unknown chain symbol c" + std::to_string(t.var_id), t);
            }
            return tower_.chain_cos(t.var_id);
          case VarKind::ChainSin:
            if (t.var_id >= tower_.chain_count()) {
              lex_.fail("unknown chain symbol s" + std::to_string(t.var_id), t);
            }
            return tower_.chain_sin(t.var_id);
          case VarKind::Root:
            if (t.var_id >= tower_.root_count()) {
              lex_.fail("unknown root symbol m" + std::to_string(t.var_id), t);
            }
            return tower_.root_sym(t.var_id);
        }
        lex_.fail("unreachable variable kind", t);
      }
      case Tok::LParen: {
        ExactScalar inner = expr();
        Token close = lex_.take();
        if (close.kind != Tok::RParen) lex_.fail("expected ')'", close);
        return inner;
      }
      case Tok::End:
        lex_.fail("unexpected end of expression", t);
      default:
        lex_.fail("unexpected token", t);
    }
  }
};

}  // namespace

ExactScalar parse_scalar(const std::string& text, const ScalarTower& tower) {
  return Parser(text, tower).run();
}

}  // namespace bks
