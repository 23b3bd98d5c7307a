#pragma once

// Classifier categories of a presented monoidal category: objects are lists
// of underlined base objects (LaxWords), morphisms are generated by
// envelopes of base terms together with the structure generators
//   l[x,z] : [x][z] -> [x.z]      j : {} -> [1]
//   k[x,z] : [x.z] -> [x][z]      q : [1] -> {}
// gated by flavor: the lax classifier has l and j only, the oplax classifier
// k and q only, and the Frobenius classifier all four.

#include "laxcat/cdiagram.hpp"
#include "laxcat/diagram.hpp"
#include "laxcat/errors.hpp"
#include "laxcat/presentation.hpp"
#include "laxcat/word.hpp"

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace laxcat {

enum class Flavor { lax, oplax, frob };

inline std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::lax: return "lax";
    case Flavor::oplax: return "oplax";
    case Flavor::frob: return "frob";
  }
  return {};
}

struct LaxWord {
  std::vector<Word> segments;

  LaxWord() = default;
  explicit LaxWord(std::vector<Word> segs) : segments(std::move(segs)) {}
  static LaxWord unit() { return LaxWord{}; }
  static LaxWord seg(Word w) { return LaxWord{{std::move(w)}}; }

  bool empty() const { return segments.empty(); }
  std::size_t size() const { return segments.size(); }

  friend LaxWord operator*(const LaxWord& a, const LaxWord& b) {
    LaxWord r = a;
    r.segments.insert(r.segments.end(), b.segments.begin(), b.segments.end());
    return r;
  }

  friend bool operator==(const LaxWord&, const LaxWord&) = default;
  friend std::strong_ordering operator<=>(const LaxWord& a, const LaxWord& b) {
    return a.segments <=> b.segments;
  }

  // Flattened underlying word (used by the renderer for strand boundaries).
  Word flatten() const {
    Word w;
    for (const auto& s : segments) w = w * s;
    return w;
  }

  std::string str() const {
    if (segments.empty()) return "{}";
    std::string s;
    for (const auto& seg : segments) s += "[" + seg.str() + "]";
    return s;
  }
};

// --- sliced classifier boxes ----------------------------------------------

struct ClassBox {
  enum class Kind { env, l, j, k, q };
  Kind kind = Kind::j;
  CDiagram content;  // env only; stored canonical and user-reduced
  Word x, z;         // parameters of l/k

  static ClassBox env(CDiagram c) {
    ClassBox b;
    b.kind = Kind::env;
    b.content = std::move(c);
    return b;
  }
  static ClassBox l(Word x, Word z) {
    ClassBox b;
    b.kind = Kind::l;
    b.x = std::move(x);
    b.z = std::move(z);
    return b;
  }
  static ClassBox k(Word x, Word z) {
    ClassBox b;
    b.kind = Kind::k;
    b.x = std::move(x);
    b.z = std::move(z);
    return b;
  }
  static ClassBox j() {
    ClassBox b;
    b.kind = Kind::j;
    return b;
  }
  static ClassBox q() {
    ClassBox b;
    b.kind = Kind::q;
    return b;
  }

  std::vector<Word> dom_types() const {
    switch (kind) {
      case Kind::env: return {boundary_word(content.dom())};
      case Kind::l: return {x, z};
      case Kind::j: return {};
      case Kind::k: return {x * z};
      case Kind::q: return {Word::one()};
    }
    return {};
  }
  std::vector<Word> cod_types() const {
    switch (kind) {
      case Kind::env: return {boundary_word(content.cod())};
      case Kind::l: return {x * z};
      case Kind::j: return {Word::one()};
      case Kind::k: return {x, z};
      case Kind::q: return {};
    }
    return {};
  }

  std::string str() const {
    switch (kind) {
      case Kind::env: return "env(" + diagram_to_cterm(content).str() + ")";
      case Kind::l: return "l[" + x.str() + "," + z.str() + "]";
      case Kind::j: return "j";
      case Kind::k: return "k[" + x.str() + "," + z.str() + "]";
      case Kind::q: return "q";
    }
    return {};
  }

  friend bool operator==(const ClassBox& a, const ClassBox& b) {
    return a.kind == b.kind && a.x == b.x && a.z == b.z && a.content == b.content;
  }
  friend bool operator<(const ClassBox& a, const ClassBox& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.x != b.x) return a.x < b.x;
    if (a.z != b.z) return a.z < b.z;
    return a.content < b.content;
  }
};

using ClassDiagram = Diagram<Word, ClassBox>;

// --- classifier morphism terms ----------------------------------------------

class Term {
 public:
  enum class Kind { id, env, l, j, k, q, tensor, compose };

  Term() : Term(id(LaxWord::unit(), Flavor::frob)) {}

  static Term id(LaxWord w, Flavor fl) {
    auto n = node(Kind::id, fl);
    n->laxword = w;
    n->dom = w;
    n->cod = std::move(w);
    return Term(std::move(n));
  }

  static Term env(CTerm t, Flavor fl) {
    auto n = node(Kind::env, fl);
    n->dom = LaxWord::seg(t.dom());
    n->cod = LaxWord::seg(t.cod());
    n->cterm = std::move(t);
    return Term(std::move(n));
  }

  static Term l(Word x, Word z, Flavor fl) {
    if (fl == Flavor::oplax) throw FlavorError("generator l is not available in the oplax classifier");
    auto n = node(Kind::l, fl);
    n->dom = LaxWord{{x, z}};
    n->cod = LaxWord::seg(x * z);
    n->x = std::move(x);
    n->z = std::move(z);
    return Term(std::move(n));
  }

  static Term j(Flavor fl) {
    if (fl == Flavor::oplax) throw FlavorError("generator j is not available in the oplax classifier");
    auto n = node(Kind::j, fl);
    n->dom = LaxWord::unit();
    n->cod = LaxWord::seg(Word::one());
    return Term(std::move(n));
  }

  static Term k(Word x, Word z, Flavor fl) {
    if (fl == Flavor::lax) throw FlavorError("generator k is not available in the lax classifier");
    auto n = node(Kind::k, fl);
    n->dom = LaxWord::seg(x * z);
    n->cod = LaxWord{{x, z}};
    n->x = std::move(x);
    n->z = std::move(z);
    return Term(std::move(n));
  }

  static Term q(Flavor fl) {
    if (fl == Flavor::lax) throw FlavorError("generator q is not available in the lax classifier");
    auto n = node(Kind::q, fl);
    n->dom = LaxWord::seg(Word::one());
    n->cod = LaxWord::unit();
    return Term(std::move(n));
  }

  static Term tensor(Term a, Term b) {
    Flavor fl = join_flavor(a, b);
    auto n = node(Kind::tensor, fl);
    n->dom = a.dom() * b.dom();
    n->cod = a.cod() * b.cod();
    n->a = a.n_;
    n->b = b.n_;
    return Term(std::move(n));
  }

  // g after f.
  static Term compose(Term g, Term f) {
    if (!(f.cod() == g.dom()))
      throw TypeError("cannot compose classifier terms: cod " + f.cod().str() +
                      " does not match dom " + g.dom().str());
    Flavor fl = join_flavor(g, f);
    auto n = node(Kind::compose, fl);
    n->dom = f.dom();
    n->cod = g.cod();
    n->a = g.n_;
    n->b = f.n_;
    return Term(std::move(n));
  }

  Kind kind() const { return n_->kind; }
  Flavor flavor() const { return n_->flavor; }
  const LaxWord& dom() const { return n_->dom; }
  const LaxWord& cod() const { return n_->cod; }
  const LaxWord& id_word() const { return n_->laxword; }
  const CTerm& env_content() const { return n_->cterm; }
  const Word& param_x() const { return n_->x; }
  const Word& param_z() const { return n_->z; }
  Term first() const { return Term(n_->a); }
  Term second() const { return Term(n_->b); }

  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }

  std::string str() const { return print(false); }

 private:
  struct Node {
    Kind kind;
    Flavor flavor;
    LaxWord laxword;
    CTerm cterm;
    Word x, z;
    std::shared_ptr<const Node> a, b;
    LaxWord dom, cod;
  };

  static std::shared_ptr<Node> node(Kind k, Flavor fl) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->flavor = fl;
    return n;
  }

  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  static Flavor join_flavor(const Term& a, const Term& b) {
    if (a.flavor() == b.flavor()) return a.flavor();
    if (a.flavor() == Flavor::frob || b.flavor() == Flavor::frob)
      throw FlavorError("cannot combine terms of different flavors");
    throw FlavorError("cannot combine lax and oplax terms");
  }

  static int compare(const Term& x, const Term& y) {
    if (x.n_ == y.n_) return 0;
    if (x.n_->kind != y.n_->kind) return x.n_->kind < y.n_->kind ? -1 : 1;
    auto cmp_words = [](const Word& a, const Word& b) {
      return a < b ? -1 : (b < a ? 1 : 0);
    };
    switch (x.n_->kind) {
      case Kind::id:
        return x.n_->laxword < y.n_->laxword ? -1 : (y.n_->laxword < x.n_->laxword ? 1 : 0);
      case Kind::env:
        return x.n_->cterm == y.n_->cterm ? 0 : (x.n_->cterm < y.n_->cterm ? -1 : 1);
      case Kind::l:
      case Kind::k: {
        int c = cmp_words(x.n_->x, y.n_->x);
        if (c) return c;
        return cmp_words(x.n_->z, y.n_->z);
      }
      case Kind::j:
      case Kind::q:
        return 0;
      default: {
        int c = compare(Term(x.n_->a), Term(y.n_->a));
        if (c) return c;
        return compare(Term(x.n_->b), Term(y.n_->b));
      }
    }
  }

  std::string print(bool in_tensor) const {
    switch (n_->kind) {
      case Kind::id:
        return "id" + n_->laxword.str();
      case Kind::env:
        return "env(" + n_->cterm.str() + ")";
      case Kind::l:
        return "l[" + n_->x.str() + "," + n_->z.str() + "]";
      case Kind::j:
        return "j";
      case Kind::k:
        return "k[" + n_->x.str() + "," + n_->z.str() + "]";
      case Kind::q:
        return "q";
      case Kind::tensor:
        return Term(n_->a).print(true) + "*" + Term(n_->b).print(true);
      case Kind::compose: {
        std::string s = Term(n_->a).print(false) + ";" + Term(n_->b).print(false);
        return in_tensor ? "(" + s + ")" : s;
      }
    }
    return {};
  }

  std::shared_ptr<const Node> n_;
};

// --- classifier presentations ----------------------------------------------

struct ClassifierPresentation {
  Presentation base;
  Flavor flavor = Flavor::lax;

  bool allows_l() const { return flavor != Flavor::oplax; }
  bool allows_k() const { return flavor != Flavor::lax; }

  // Names of the rewrite rules attached to this classifier, oriented rules
  // first. The rule behavior itself lives in rewrite.hpp.
  std::vector<std::string> rule_names() const {
    std::vector<std::string> r = {"drop-identity-envelope", "merge-envelopes"};
    if (allows_l()) {
      r.push_back("naturality-l");
      r.push_back("unit-l-left");
      r.push_back("unit-l-right");
    }
    if (allows_k()) {
      r.push_back("naturality-k");
      r.push_back("counit-k-left");
      r.push_back("counit-k-right");
    }
    if (allows_l()) r.push_back("assoc-l (search)");
    if (allows_k()) r.push_back("assoc-k (search)");
    if (allows_l()) r.push_back("split-env-l (search)");
    if (allows_k()) r.push_back("split-env-k (search)");
    if (flavor == Flavor::frob) {
      r.push_back("frobenius-1 (search)");
      r.push_back("frobenius-2 (search)");
    }
    if (!base.relations().empty()) r.push_back("base-relations (inside envelopes)");
    return r;
  }

  // Extended .mcat serialization: the base presentation plus the reserved
  // classifier generator schemas as comments.
  std::string str() const {
    std::string s = "# classifier: " + flavor_name(flavor) + "\n";
    s += base.str();
    s += "# objects: lists of underlined base words; unit {}\n";
    s += "# generators: env(t): [dom t] -> [cod t] for base terms t\n";
    if (allows_l()) {
      s += "#   l[x,z]: [x][z] -> [x.z] for all words x, z\n";
      s += "#   j: {} -> [1]\n";
    }
    if (allows_k()) {
      s += "#   k[x,z]: [x.z] -> [x][z] for all words x, z\n";
      s += "#   q: [1] -> {}\n";
    }
    s += "# rules:";
    for (const auto& r : rule_names()) s += " " + r + ";";
    s += "\n";
    return s;
  }
};

inline ClassifierPresentation build_lax(Presentation p) {
  return ClassifierPresentation{std::move(p), Flavor::lax};
}
inline ClassifierPresentation build_oplax(Presentation p) {
  return ClassifierPresentation{std::move(p), Flavor::oplax};
}
inline ClassifierPresentation build_frob(Presentation p) {
  return ClassifierPresentation{std::move(p), Flavor::frob};
}

// The canonical embedding of the base category: one envelope around the
// whole term.
inline Term embed(const ClassifierPresentation& c, const CTerm& t) {
  infer_type(c.base, t);
  return Term::env(t, c.flavor);
}

// --- term -> sliced diagram --------------------------------------------------

inline ClassDiagram to_sliced(const ClassifierPresentation& c, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::id:
      return ClassDiagram(t.id_word().segments);
    case Term::Kind::env: {
      ClassDiagram d(t.dom().segments);
      d.push(0, ClassBox::env(user_reduce(c.base, canonical_cdiagram(t.env_content()))));
      return d;
    }
    case Term::Kind::l: {
      ClassDiagram d(t.dom().segments);
      d.push(0, ClassBox::l(t.param_x(), t.param_z()));
      return d;
    }
    case Term::Kind::j: {
      ClassDiagram d;
      d.push(0, ClassBox::j());
      return d;
    }
    case Term::Kind::k: {
      ClassDiagram d(t.dom().segments);
      d.push(0, ClassBox::k(t.param_x(), t.param_z()));
      return d;
    }
    case Term::Kind::q: {
      ClassDiagram d(t.dom().segments);
      d.push(0, ClassBox::q());
      return d;
    }
    case Term::Kind::tensor:
      return beside(to_sliced(c, t.first()), to_sliced(c, t.second()));
    case Term::Kind::compose:
      return vertical(to_sliced(c, t.second()), to_sliced(c, t.first()));
  }
  return ClassDiagram{};
}

inline ClassDiagram to_sliced_canonical(const ClassifierPresentation& c, const Term& t) {
  return to_sliced(c, t).canonical();
}

// Reads a classifier diagram back as a term (composition of whiskered
// generator layers).
inline Term diagram_to_term(const ClassifierPresentation& c, const ClassDiagram& d) {
  Term t = Term::id(LaxWord{d.dom()}, c.flavor);
  std::vector<Word> b = d.dom();
  for (const auto& s : d.slices()) {
    std::size_t din = s.box.dom_types().size();
    LaxWord left{std::vector<Word>(b.begin(), b.begin() + s.offset)};
    LaxWord right{std::vector<Word>(b.begin() + s.offset + din, b.end())};
    Term layer = [&] {
      switch (s.box.kind) {
        case ClassBox::Kind::env: return Term::env(diagram_to_cterm(s.box.content), c.flavor);
        case ClassBox::Kind::l: return Term::l(s.box.x, s.box.z, c.flavor);
        case ClassBox::Kind::j: return Term::j(c.flavor);
        case ClassBox::Kind::k: return Term::k(s.box.x, s.box.z, c.flavor);
        case ClassBox::Kind::q: return Term::q(c.flavor);
      }
      return Term::j(c.flavor);
    }();
    if (!left.empty()) layer = Term::tensor(Term::id(left, c.flavor), layer);
    if (!right.empty()) layer = Term::tensor(layer, Term::id(right, c.flavor));
    t = Term::compose(layer, t);
    auto cods = s.box.cod_types();
    b.erase(b.begin() + s.offset, b.begin() + s.offset + din);
    b.insert(b.begin() + s.offset, cods.begin(), cods.end());
  }
  return t;
}

}  // namespace laxcat
