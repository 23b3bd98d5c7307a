#pragma once

// Sliced diagrams for the base category: wires are object-generator names,
// boxes are morphism generators. The canonical sliced form decides equality
// modulo the strict monoidal axioms; user relations are handled by the
// rewrite engine on top of it.

#include "laxcat/diagram.hpp"
#include "laxcat/match.hpp"
#include "laxcat/presentation.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace laxcat {

struct CBox {
  std::string name;
  Word dom, cod;

  std::vector<std::string> dom_types() const { return dom.letters; }
  std::vector<std::string> cod_types() const { return cod.letters; }
  std::string str() const { return name; }

  friend bool operator==(const CBox&, const CBox&) = default;
  friend bool operator<(const CBox& a, const CBox& b) {
    if (a.name != b.name) return a.name < b.name;
    if (a.dom != b.dom) return a.dom < b.dom;
    return a.cod < b.cod;
  }
};

using CDiagram = Diagram<std::string, CBox>;

inline Word boundary_word(const std::vector<std::string>& wires) {
  return Word{wires};
}

inline CDiagram cterm_to_diagram(const CTerm& t) {
  switch (t.kind()) {
    case CTerm::Kind::id:
      return CDiagram(t.id_word().letters);
    case CTerm::Kind::gen: {
      CDiagram d(t.dom().letters);
      d.push(0, CBox{t.gen_name(), t.dom(), t.cod()});
      return d;
    }
    case CTerm::Kind::tensor:
      return beside(cterm_to_diagram(t.first()), cterm_to_diagram(t.second()));
    case CTerm::Kind::compose:
      // first() is the later factor
      return vertical(cterm_to_diagram(t.second()), cterm_to_diagram(t.first()));
  }
  return CDiagram{};
}

inline CDiagram canonical_cdiagram(const CTerm& t) {
  return cterm_to_diagram(t).canonical();
}

// Reads a sliced diagram back as a term: a composition of whiskered
// generators id_u * g * id_v, identity if there are no slices.
inline CTerm diagram_to_cterm(const CDiagram& d) {
  CTerm t = CTerm::id(boundary_word(d.dom()));
  std::vector<std::string> b = d.dom();
  for (const auto& s : d.slices()) {
    Word left{std::vector<std::string>(b.begin(), b.begin() + s.offset)};
    Word right{std::vector<std::string>(b.begin() + s.offset + s.box.dom.size(), b.end())};
    CTerm layer = CTerm::gen(s.box.name, s.box.dom, s.box.cod);
    if (!left.empty()) layer = CTerm::tensor(CTerm::id(left), layer);
    if (!right.empty()) layer = CTerm::tensor(layer, CTerm::id(right));
    t = CTerm::compose(layer, t);
    b.erase(b.begin() + s.offset, b.begin() + s.offset + s.box.dom.size());
    b.insert(b.begin() + s.offset, s.box.cod.letters.begin(), s.box.cod.letters.end());
  }
  return t;
}

// Splits a diagram as a side-by-side tensor u1 (x) u2 at the given seam of
// its domain, when every slice stays on one side. Returns nothing otherwise.
inline std::optional<std::pair<CDiagram, CDiagram>> split_beside(const CDiagram& d,
                                                                 std::size_t dom_seam) {
  if (dom_seam > d.dom().size()) return std::nullopt;
  std::vector<std::string> dl(d.dom().begin(), d.dom().begin() + dom_seam);
  std::vector<std::string> dr(d.dom().begin() + dom_seam, d.dom().end());
  CDiagram left{dl}, right{dr};
  std::size_t seam = dom_seam;  // current wire position of the seam
  for (const auto& s : d.slices()) {
    std::size_t din = s.box.dom.size(), dout = s.box.cod.size();
    if (s.offset + din <= seam) {
      left.push(s.offset, s.box);
      seam += dout;
      seam -= din;
    } else if (s.offset >= seam) {
      right.push(s.offset - seam, s.box);
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(std::move(left), std::move(right));
}

// Finds the domain seam whose induced split has `cod_seam` wires in the left
// codomain; returns width+1 when no such seam exists.
inline std::size_t cod_seam_to_dom(const CDiagram& d, std::size_t cod_seam) {
  for (std::size_t s = 0; s <= d.dom().size(); ++s) {
    auto parts = split_beside(d, s);
    if (parts && parts->first.cod().size() == cod_seam) return s;
  }
  return d.dom().size() + 1;
}

// One pass of oriented user-relation rewriting (each relation lhs -> rhs as
// supplied), first match in scan order. Returns the rewritten diagram or
// nothing when no relation applies.
inline std::optional<CDiagram> user_rewrite_step(const Presentation& p, const CDiagram& d) {
  for (const auto& rel : p.relations()) {
    CDiagram lhs = canonical_cdiagram(rel.lhs);
    if (lhs.empty() && rel.rhs.is_id()) continue;  // trivial identity relation
    if (lhs.empty()) continue;  // identity left sides are search moves, never oriented
    CDiagram rhs = canonical_cdiagram(rel.rhs);
    auto ms = find_matches(d, lhs);
    if (!ms.empty()) return apply_match(d, lhs, rhs, ms.front());
  }
  return std::nullopt;
}

// Oriented reduction to a fixpoint. User-supplied orientations need not
// terminate, so cycles are detected and resolved to the smallest diagram
// visited, which keeps the reduction deterministic and idempotent.
inline CDiagram user_reduce(const Presentation& p, CDiagram d, std::size_t max_steps = 1000) {
  d.canonicalize();
  if (p.relations().empty()) return d;
  std::vector<CDiagram> seen{d};
  for (std::size_t i = 0; i < max_steps; ++i) {
    auto next = user_rewrite_step(p, d);
    if (!next) return d;
    d = std::move(*next);
    for (const auto& s : seen)
      if (s == d) return *std::min_element(seen.begin(), seen.end());
    seen.push_back(d);
  }
  return *std::min_element(seen.begin(), seen.end());
}

}  // namespace laxcat
