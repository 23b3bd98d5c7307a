#pragma once

// Line-oriented DSL for presentations (.mcat files) plus the term literals
// used on the command line. Composition is written ";" in circle order:
// "a;b" denotes a after b (b applied first), matching how relations such as
// "g;f = id(x)" type-check. "*" is the tensor and binds tighter than ";".

#include "laxcat/errors.hpp"
#include "laxcat/presentation.hpp"
#include "laxcat/word.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace laxcat {

namespace detail {

struct Token {
  enum class Kind { ident, number, symbol, arrow, end };
  Kind kind = Kind::end;
  std::string text;
  std::size_t line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { next(); }

  const Token& peek() const { return tok_; }
  const Token& peek2() {
    if (!tok2_) {
      Token save = tok_;
      next();  // the stream position stays past the lookahead token
      tok2_ = tok_;
      tok_ = save;
    }
    return *tok2_;
  }

  Token take() {
    Token t = tok_;
    if (tok2_) {
      tok_ = *tok2_;
      tok2_.reset();
    } else {
      next();
    }
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(tok_.line, tok_.col, msg);
  }

  Token expect_symbol(std::string_view s) {
    if (tok_.kind != Token::Kind::symbol || tok_.text != s)
      fail("expected '" + std::string(s) + "', got '" + tok_.text + "'");
    return take();
  }

  bool at_symbol(std::string_view s) const {
    return tok_.kind == Token::Kind::symbol && tok_.text == s;
  }
  bool at_ident(std::string_view s) const {
    return tok_.kind == Token::Kind::ident && tok_.text == s;
  }

 private:
  void next() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
      } else {
        break;
      }
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::end;
      tok_.text = "<end of input>";
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
              src_[pos_] == '\''))
        advance();
      tok_.kind = Token::Kind::ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      tok_.kind = Token::Kind::number;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      tok_.kind = Token::Kind::arrow;
      tok_.text = "->";
      return;
    }
    static const std::string symbols = ":;,=*().[]{}";
    if (symbols.find(c) != std::string::npos) {
      tok_.kind = Token::Kind::symbol;
      tok_.text = std::string(1, c);
      advance();
      return;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
  }

  void advance() {
    ++pos_;
    ++col_;
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
  Token tok_;
  std::optional<Token> tok2_;
};

inline bool is_reserved(const std::string& name) {
  static const std::vector<std::string> reserved = {"objects", "morphisms", "relations", "id",
                                                    "env",     "j",         "q",         "l",
                                                    "k"};
  for (const auto& r : reserved)
    if (r == name) return true;
  return false;
}

inline Word parse_word_tokens(Lexer& lx) {
  if (lx.peek().kind == Token::Kind::number && lx.peek().text == "1") {
    lx.take();
    return Word::one();
  }
  Word w;
  for (;;) {
    if (lx.peek().kind != Token::Kind::ident) lx.fail("expected object name or '1' in word");
    w.letters.push_back(lx.take().text);
    if (lx.at_symbol(".")) {
      lx.take();
      continue;
    }
    break;
  }
  return w;
}

// True when the token after the pending ';' can begin another composition
// factor rather than closing the section. Section keywords are reserved, so
// any other identifier (or an opening paren) starts an atom.
inline bool semicolon_continues(Lexer& lx) {
  const Token& t2 = lx.peek2();
  if (t2.kind == Token::Kind::symbol && t2.text == "(") return true;
  if (t2.kind != Token::Kind::ident) return false;
  return t2.text != "objects" && t2.text != "morphisms" && t2.text != "relations";
}

inline CTerm parse_cterm_atom(Lexer& lx, const Presentation& p);

inline CTerm parse_cterm_factor(Lexer& lx, const Presentation& p) {
  CTerm t = parse_cterm_atom(lx, p);
  while (lx.at_symbol("*")) {
    lx.take();
    t = CTerm::tensor(t, parse_cterm_atom(lx, p));
  }
  return t;
}

// Parses a composition chain, leaving a section-terminating ';' unconsumed.
inline CTerm parse_cterm_expr(Lexer& lx, const Presentation& p) {
  std::vector<CTerm> factors;
  std::vector<Token> ops;
  factors.push_back(parse_cterm_factor(lx, p));
  while (lx.at_symbol(";") && semicolon_continues(lx)) {
    ops.push_back(lx.take());
    factors.push_back(parse_cterm_factor(lx, p));
  }
  CTerm t = factors.back();
  for (std::size_t i = factors.size() - 1; i-- > 0;) {
    try {
      t = CTerm::compose(factors[i], t);
    } catch (const TypeError& e) {
      throw ParseError(ops[i].line, ops[i].col, e.what());
    }
  }
  return t;
}

inline CTerm parse_cterm_atom(Lexer& lx, const Presentation& p) {
  if (lx.at_symbol("(")) {
    lx.take();
    CTerm t = parse_cterm_expr(lx, p);
    lx.expect_symbol(")");
    return t;
  }
  if (lx.at_ident("id")) {
    lx.take();
    lx.expect_symbol("(");
    Word w = parse_word_tokens(lx);
    const Token& at = lx.peek();
    try {
      p.check_word(w);
    } catch (const NameError& e) {
      throw ParseError(at.line, at.col, e.what());
    }
    lx.expect_symbol(")");
    return CTerm::id(std::move(w));
  }
  if (lx.peek().kind == Token::Kind::ident) {
    Token t = lx.take();
    try {
      return p.gen(t.text);
    } catch (const NameError& e) {
      throw ParseError(t.line, t.col, e.what());
    }
  }
  lx.fail("expected a term (generator, id(...), or parenthesized expression)");
}

}  // namespace detail

inline Word parse_word(std::string_view text, const Presentation* p = nullptr) {
  detail::Lexer lx(text);
  Word w = detail::parse_word_tokens(lx);
  if (lx.peek().kind != detail::Token::Kind::end) lx.fail("trailing input after word");
  if (p) p->check_word(w);
  return w;
}

inline CTerm parse_cterm(std::string_view text, const Presentation& p) {
  detail::Lexer lx(text);
  CTerm t = detail::parse_cterm_expr(lx, p);
  if (lx.peek().kind != detail::Token::Kind::end) lx.fail("trailing input after term");
  return t;
}

// Parses a full .mcat presentation: sections "objects:", "morphisms:",
// "relations:", each ';'-terminated, in any order, each at most once.
inline Presentation parse_presentation(std::string_view text) {
  using detail::Token;
  detail::Lexer lx(text);
  Presentation p;
  bool seen_obj = false, seen_mor = false, seen_rel = false;

  while (lx.peek().kind != Token::Kind::end) {
    if (lx.peek().kind != Token::Kind::ident) lx.fail("expected section header");
    Token head = lx.take();
    lx.expect_symbol(":");
    if (head.text == "objects") {
      if (seen_obj) throw ParseError(head.line, head.col, "duplicate objects section");
      seen_obj = true;
      if (!lx.at_symbol(";")) {
        for (;;) {
          if (lx.peek().kind != Token::Kind::ident) lx.fail("expected object name");
          Token name = lx.take();
          if (detail::is_reserved(name.text))
            throw ParseError(name.line, name.col, "'" + name.text + "' is a reserved name");
          try {
            p.add_object(name.text);
          } catch (const NameError& e) {
            throw ParseError(name.line, name.col, e.what());
          }
          if (lx.at_symbol(",")) {
            lx.take();
            continue;
          }
          break;
        }
      }
      lx.expect_symbol(";");
    } else if (head.text == "morphisms") {
      if (seen_mor) throw ParseError(head.line, head.col, "duplicate morphisms section");
      seen_mor = true;
      if (!lx.at_symbol(";")) {
        for (;;) {
          if (lx.peek().kind != Token::Kind::ident) lx.fail("expected morphism name");
          Token name = lx.take();
          if (detail::is_reserved(name.text))
            throw ParseError(name.line, name.col, "'" + name.text + "' is a reserved name");
          lx.expect_symbol(":");
          Word dom = detail::parse_word_tokens(lx);
          if (lx.peek().kind != Token::Kind::arrow) lx.fail("expected '->'");
          lx.take();
          Word cod = detail::parse_word_tokens(lx);
          try {
            p.add_morphism(name.text, std::move(dom), std::move(cod));
          } catch (const Error& e) {
            throw ParseError(name.line, name.col, e.what());
          }
          if (lx.at_symbol(",")) {
            lx.take();
            continue;
          }
          break;
        }
      }
      lx.expect_symbol(";");
    } else if (head.text == "relations") {
      if (seen_rel) throw ParseError(head.line, head.col, "duplicate relations section");
      seen_rel = true;
      if (lx.at_symbol(";")) {
        lx.take();
        continue;
      }
      for (;;) {
        Token at = lx.peek();
        CTerm lhs = detail::parse_cterm_expr(lx, p);
        lx.expect_symbol("=");
        CTerm rhs = detail::parse_cterm_expr(lx, p);
        try {
          p.add_relation(lhs, rhs);
        } catch (const TypeError& e) {
          throw ParseError(at.line, at.col, e.what());
        }
        if (lx.at_symbol(",")) {
          lx.take();
          continue;
        }
        lx.expect_symbol(";");
        break;
      }
    } else {
      throw ParseError(head.line, head.col, "unknown section '" + head.text + "'");
    }
  }
  return p;
}

}  // namespace laxcat
