#pragma once

// Finitely presented strict monoidal categories with a free object monoid:
// object generators, typed morphism generators, and equational relations
// between composite terms. Terms are immutable trees with cached boundaries;
// the constructors reject ill-typed composites eagerly.

#include "laxcat/errors.hpp"
#include "laxcat/word.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace laxcat {

class Presentation;

class CTerm {
 public:
  enum class Kind { id, gen, tensor, compose };

  CTerm() : CTerm(id(Word::one())) {}

  static CTerm id(Word w) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::id;
    n->word = w;
    n->dom = w;
    n->cod = std::move(w);
    return CTerm(std::move(n));
  }

  static CTerm gen(std::string name, Word dom, Word cod) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::gen;
    n->name = std::move(name);
    n->dom = std::move(dom);
    n->cod = std::move(cod);
    return CTerm(std::move(n));
  }

  static CTerm tensor(CTerm a, CTerm b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::tensor;
    n->dom = a.dom() * b.dom();
    n->cod = a.cod() * b.cod();
    n->a = a.n_;
    n->b = b.n_;
    return CTerm(std::move(n));
  }

  // g after f; requires cod(f) = dom(g).
  static CTerm compose(CTerm g, CTerm f) {
    if (f.cod() != g.dom())
      throw TypeError("cannot compose: cod " + f.cod().str() + " does not match dom " +
                      g.dom().str());
    auto n = std::make_shared<Node>();
    n->kind = Kind::compose;
    n->dom = f.dom();
    n->cod = g.cod();
    n->a = g.n_;
    n->b = f.n_;
    return CTerm(std::move(n));
  }

  Kind kind() const { return n_->kind; }
  const Word& dom() const { return n_->dom; }
  const Word& cod() const { return n_->cod; }
  const Word& id_word() const { return n_->word; }
  const std::string& gen_name() const { return n_->name; }
  // compose: first() = the later factor g, second() = the earlier f.
  CTerm first() const { return CTerm(n_->a); }
  CTerm second() const { return CTerm(n_->b); }

  bool is_id() const { return n_->kind == Kind::id; }

  friend bool operator==(const CTerm& x, const CTerm& y) { return compare(x, y) == 0; }
  friend std::strong_ordering operator<=>(const CTerm& x, const CTerm& y) {
    int c = compare(x, y);
    return c <=> 0;
  }

  // Prints with ";" for composition in the same order as the mathematical
  // circle: "a;b" parses and prints as a composed with b, b applied first.
  std::string str() const { return print(false); }

 private:
  struct Node {
    Kind kind;
    Word word;         // id
    std::string name;  // gen
    std::shared_ptr<const Node> a, b;
    Word dom, cod;
  };

  explicit CTerm(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  static int compare(const CTerm& x, const CTerm& y) {
    if (x.n_ == y.n_) return 0;
    if (x.n_->kind != y.n_->kind) return x.n_->kind < y.n_->kind ? -1 : 1;
    switch (x.n_->kind) {
      case Kind::id:
        return x.n_->word < y.n_->word ? -1 : (y.n_->word < x.n_->word ? 1 : 0);
      case Kind::gen:
        return x.n_->name.compare(y.n_->name);
      default: {
        int c = compare(CTerm(x.n_->a), CTerm(y.n_->a));
        if (c != 0) return c;
        return compare(CTerm(x.n_->b), CTerm(y.n_->b));
      }
    }
  }

  std::string print(bool in_tensor) const {
    switch (n_->kind) {
      case Kind::id:
        return "id(" + n_->word.str() + ")";
      case Kind::gen:
        return n_->name;
      case Kind::tensor: {
        std::string s = CTerm(n_->a).print(true) + "*" + CTerm(n_->b).print(true);
        return s;
      }
      case Kind::compose: {
        std::string s = CTerm(n_->a).print(false) + ";" + CTerm(n_->b).print(false);
        if (in_tensor) s = "(" + s + ")";
        return s;
      }
    }
    return {};
  }

  std::shared_ptr<const Node> n_;

  friend class Presentation;
};

struct Relation {
  std::string name;  // optional label, used in rewrite traces
  CTerm lhs, rhs;
};

class Presentation {
 public:
  void add_object(const std::string& name) {
    if (has_name(name)) throw NameError("duplicate generator name '" + name + "'");
    objects_.push_back(name);
  }

  void add_morphism(const std::string& name, Word dom, Word cod) {
    if (has_name(name)) throw NameError("duplicate generator name '" + name + "'");
    check_word(dom);
    check_word(cod);
    morphism_order_.push_back(name);
    morphisms_[name] = {std::move(dom), std::move(cod)};
  }

  void add_relation(CTerm lhs, CTerm rhs, std::string name = "") {
    if (lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod())
      throw TypeError("relation sides have mismatched boundaries: " + lhs.str() + " : " +
                      lhs.dom().str() + " -> " + lhs.cod().str() + " vs " + rhs.str() + " : " +
                      rhs.dom().str() + " -> " + rhs.cod().str());
    if (name.empty()) name = "rel-" + std::to_string(relations_.size() + 1);
    relations_.push_back(Relation{std::move(name), std::move(lhs), std::move(rhs)});
  }

  bool has_object(const std::string& name) const {
    return std::find(objects_.begin(), objects_.end(), name) != objects_.end();
  }
  bool has_morphism(const std::string& name) const { return morphisms_.count(name) != 0; }
  bool has_name(const std::string& name) const { return has_object(name) || has_morphism(name); }

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& morphism_names() const { return morphism_order_; }
  const std::vector<Relation>& relations() const { return relations_; }

  std::pair<Word, Word> morphism_type(const std::string& name) const {
    auto it = morphisms_.find(name);
    if (it == morphisms_.end()) throw NameError("undeclared morphism generator '" + name + "'");
    return it->second;
  }

  CTerm gen(const std::string& name) const {
    auto [dom, cod] = morphism_type(name);
    return CTerm::gen(name, std::move(dom), std::move(cod));
  }

  void check_word(const Word& w) const {
    for (const auto& l : w.letters)
      if (!has_object(l)) throw NameError("undeclared object generator '" + l + "'");
  }

  std::string str() const {
    std::string s = "objects:";
    for (std::size_t i = 0; i < objects_.size(); ++i)
      s += (i ? ", " : " ") + objects_[i];
    s += ";\nmorphisms:";
    for (std::size_t i = 0; i < morphism_order_.size(); ++i) {
      const auto& [dom, cod] = morphisms_.at(morphism_order_[i]);
      s += (i ? ", " : " ") + morphism_order_[i] + ": " + dom.str() + " -> " + cod.str();
    }
    s += ";";
    if (!relations_.empty()) {
      s += "\nrelations:";
      for (std::size_t i = 0; i < relations_.size(); ++i)
        s += (i ? ", " : " ") + relations_[i].lhs.str() + " = " + relations_[i].rhs.str();
      s += ";";
    }
    s += "\n";
    return s;
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    if (a.objects_ != b.objects_ || a.morphism_order_ != b.morphism_order_ ||
        a.morphisms_ != b.morphisms_ || a.relations_.size() != b.relations_.size())
      return false;
    for (std::size_t i = 0; i < a.relations_.size(); ++i)
      if (a.relations_[i].lhs != b.relations_[i].lhs || a.relations_[i].rhs != b.relations_[i].rhs)
        return false;
    return true;
  }

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> morphism_order_;
  std::map<std::string, std::pair<Word, Word>> morphisms_;
  std::vector<Relation> relations_;
};

// Recomputes the boundary of `t` from scratch, verifying the cached dom/cod
// at every node and that all generators are declared in `p`. Throws TypeError
// with the offending subterm path on any mismatch.
inline std::pair<Word, Word> infer_type(const Presentation& p, const CTerm& t,
                                        const std::string& path = "") {
  auto here = [&](const std::string& seg) { return path.empty() ? seg : path + "." + seg; };
  Word dom, cod;
  switch (t.kind()) {
    case CTerm::Kind::id:
      p.check_word(t.id_word());
      dom = cod = t.id_word();
      break;
    case CTerm::Kind::gen: {
      auto [d, c] = p.morphism_type(t.gen_name());
      dom = std::move(d);
      cod = std::move(c);
      break;
    }
    case CTerm::Kind::tensor: {
      auto [d0, c0] = infer_type(p, t.first(), here("0"));
      auto [d1, c1] = infer_type(p, t.second(), here("1"));
      dom = d0 * d1;
      cod = c0 * c1;
      break;
    }
    case CTerm::Kind::compose: {
      auto [dg, cg] = infer_type(p, t.first(), here("0"));
      auto [df, cf] = infer_type(p, t.second(), here("1"));
      if (cf != dg)
        throw TypeError("composition boundary mismatch: " + cf.str() + " vs " + dg.str(),
                        path.empty() ? "root" : path);
      dom = std::move(df);
      cod = std::move(cg);
      break;
    }
  }
  if (dom != t.dom() || cod != t.cod())
    throw TypeError("cached boundary disagrees with recomputation",
                    path.empty() ? "root" : path);
  return {dom, cod};
}

}  // namespace laxcat
