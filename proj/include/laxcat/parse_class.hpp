#pragma once

// Literals for classifier terms and LaxWords, as used on the command line:
//   id[x.y][z]   identity on a list of segments, id{} on the unit
//   l[x,z] k[x,z] j q   structure generators (words inside brackets)
//   env(<base term>)    an envelope; a bare generator name f abbreviates env(f)
// Composition ";" is circle order ("a;b" applies b first); "*" is tensor.

#include "laxcat/classifier.hpp"
#include "laxcat/parse.hpp"

#include <string_view>

namespace laxcat {

namespace detail {

inline LaxWord parse_laxword_tokens(Lexer& lx) {
  if (lx.at_symbol("{")) {
    lx.take();
    lx.expect_symbol("}");
    return LaxWord::unit();
  }
  LaxWord w;
  if (!lx.at_symbol("[")) lx.fail("expected a LaxWord ('{}' or '[word]...')");
  while (lx.at_symbol("[")) {
    lx.take();
    w.segments.push_back(parse_word_tokens(lx));
    lx.expect_symbol("]");
  }
  return w;
}

inline Term parse_class_atom(Lexer& lx, const ClassifierPresentation& c);

inline Term parse_class_factor(Lexer& lx, const ClassifierPresentation& c) {
  Term t = parse_class_atom(lx, c);
  while (lx.at_symbol("*")) {
    lx.take();
    t = Term::tensor(t, parse_class_atom(lx, c));
  }
  return t;
}

inline Term parse_class_expr(Lexer& lx, const ClassifierPresentation& c) {
  std::vector<Term> factors;
  std::vector<Token> ops;
  factors.push_back(parse_class_factor(lx, c));
  while (lx.at_symbol(";")) {
    ops.push_back(lx.take());
    factors.push_back(parse_class_factor(lx, c));
  }
  Term t = factors.back();
  for (std::size_t i = factors.size() - 1; i-- > 0;) {
    try {
      t = Term::compose(factors[i], t);
    } catch (const TypeError& e) {
      throw ParseError(ops[i].line, ops[i].col, e.what());
    }
  }
  return t;
}

inline Term parse_class_atom(Lexer& lx, const ClassifierPresentation& c) {
  const Token& t = lx.peek();
  auto guard = [&](auto&& f) -> Term {
    Token at = lx.peek();
    try {
      return f();
    } catch (const FlavorError& e) {
      throw ParseError(at.line, at.col, e.what());
    } catch (const NameError& e) {
      throw ParseError(at.line, at.col, e.what());
    }
  };
  if (lx.at_symbol("(")) {
    lx.take();
    Term r = parse_class_expr(lx, c);
    lx.expect_symbol(")");
    return r;
  }
  if (t.kind != Token::Kind::ident) lx.fail("expected a classifier term");
  if (t.text == "id") {
    lx.take();
    LaxWord w = parse_laxword_tokens(lx);
    for (const auto& seg : w.segments) c.base.check_word(seg);
    return Term::id(std::move(w), c.flavor);
  }
  if (t.text == "l" || t.text == "k") {
    bool is_l = t.text == "l";
    lx.take();
    lx.expect_symbol("[");
    Word x = parse_word_tokens(lx);
    lx.expect_symbol(",");
    Word z = parse_word_tokens(lx);
    lx.expect_symbol("]");
    c.base.check_word(x);
    c.base.check_word(z);
    return guard([&] {
      return is_l ? Term::l(std::move(x), std::move(z), c.flavor)
                  : Term::k(std::move(x), std::move(z), c.flavor);
    });
  }
  if (t.text == "j") {
    lx.take();
    return guard([&] { return Term::j(c.flavor); });
  }
  if (t.text == "q") {
    lx.take();
    return guard([&] { return Term::q(c.flavor); });
  }
  if (t.text == "env") {
    lx.take();
    lx.expect_symbol("(");
    CTerm inner = parse_cterm_expr(lx, c.base);
    lx.expect_symbol(")");
    return Term::env(std::move(inner), c.flavor);
  }
  // bare generator name: sugar for env(name)
  Token name = lx.take();
  return guard([&] { return Term::env(c.base.gen(name.text), c.flavor); });
}

}  // namespace detail

inline LaxWord parse_laxword(std::string_view text, const Presentation* p = nullptr) {
  detail::Lexer lx(text);
  LaxWord w = detail::parse_laxword_tokens(lx);
  if (lx.peek().kind != detail::Token::Kind::end) lx.fail("trailing input after LaxWord");
  if (p)
    for (const auto& seg : w.segments) p->check_word(seg);
  return w;
}

inline Term parse_class_term(std::string_view text, const ClassifierPresentation& c) {
  detail::Lexer lx(text);
  Term t = detail::parse_class_expr(lx, c);
  if (lx.peek().kind != detail::Token::Kind::end) lx.fail("trailing input after term");
  return t;
}

}  // namespace laxcat
