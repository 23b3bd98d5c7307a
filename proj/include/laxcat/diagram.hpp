#pragma once

// Sliced diagrams over a typed box signature. A diagram is a domain boundary
// (a list of wire types) plus an ordered list of slices, each applying one
// box at a wire offset and the identity elsewhere. Two slices acting on
// disjoint wire intervals can be transposed (the interchange law); the
// canonical form orders slices leftmost-earliest, so exchange-equivalent
// terms produce identical diagrams.
//
// The same template serves base-category diagrams (wires = object letters,
// boxes = morphism generators) and classifier diagrams (wires = words,
// boxes = envelopes and structure maps).

#include "laxcat/errors.hpp"

#include <algorithm>
#include <compare>
#include <optional>
#include <cstddef>
#include <string>
#include <vector>

namespace laxcat {

// Box requirements: dom_types()/cod_types() returning std::vector<Wire>,
// operator== and operator<, and str() for printing.
template <typename Wire, typename Box>
class Diagram {
 public:
  struct Slice {
    std::size_t offset;
    Box box;
    friend bool operator==(const Slice&, const Slice&) = default;
  };

  Diagram() = default;
  explicit Diagram(std::vector<Wire> dom) : dom_(dom), cod_(std::move(dom)) {}

  const std::vector<Wire>& dom() const { return dom_; }
  const std::vector<Wire>& cod() const { return cod_; }
  const std::vector<Slice>& slices() const { return slices_; }
  std::size_t size() const { return slices_.size(); }
  bool empty() const { return slices_.empty(); }

  // Appends a box at `offset` on the current codomain; validates wire types.
  void push(std::size_t offset, Box box) {
    auto din = box.dom_types();
    auto dout = box.cod_types();
    if (offset + din.size() > cod_.size())
      throw TypeError("slice offset out of range: offset " + std::to_string(offset) + " arity " +
                      std::to_string(din.size()) + " on boundary of width " +
                      std::to_string(cod_.size()));
    for (std::size_t i = 0; i < din.size(); ++i)
      if (!(cod_[offset + i] == din[i]))
        throw TypeError("wire type mismatch applying " + box.str() + " at offset " +
                        std::to_string(offset));
    cod_.erase(cod_.begin() + offset, cod_.begin() + offset + din.size());
    cod_.insert(cod_.begin() + offset, dout.begin(), dout.end());
    slices_.push_back(Slice{offset, std::move(box)});
  }

  // Boundary before slice i (i = size() gives the codomain).
  std::vector<Wire> boundary_at(std::size_t i) const {
    std::vector<Wire> b = dom_;
    for (std::size_t k = 0; k < i; ++k) apply_to_boundary(b, slices_[k]);
    return b;
  }

  // g after f (g.dom must equal f.cod).
  friend Diagram vertical(const Diagram& f, const Diagram& g) {
    if (!(f.cod_ == g.dom_)) throw TypeError("diagram composition boundary mismatch");
    Diagram r = f;
    for (const auto& s : g.slices_) r.push(s.offset, s.box);
    return r;
  }

  friend Diagram beside(const Diagram& a, const Diagram& b) {
    std::vector<Wire> dom = a.dom_;
    dom.insert(dom.end(), b.dom_.begin(), b.dom_.end());
    Diagram r(std::move(dom));
    for (const auto& s : a.slices_) r.push(s.offset, s.box);
    std::size_t shift = a.cod_.size();
    for (const auto& s : b.slices_) r.push(s.offset + shift, s.box);
    return r;
  }

  // --- interchange canonicalization -------------------------------------

  // Adjacent slices (g at a, then h at b) may be transposed when h acts
  // entirely left of g's output interval or entirely right of it; offsets
  // are adjusted for the width change of the other box.
  //
  // Canonical form: greedily emit, among the slices that can be commuted to
  // the front, the one with the smallest (offset-at-front, box); identical
  // unit-armed boxes stacked in one gap are then aligned by a final pass of
  // lexicographically improving transpositions.
  Diagram& canonicalize() {
    for (int round = 0; round < 16; ++round) {
      bool changed = false;

      std::vector<Slice> pending = slices_;
      std::vector<Slice> emitted;
      emitted.reserve(pending.size());
      while (!pending.empty()) {
        std::size_t best = 0;
        bool have = false;
        Slice best_front{};
        for (std::size_t j = 0; j < pending.size(); ++j) {
          auto front = probe_front(pending, j);
          if (!front) continue;
          if (!have || slice_less(*front, best_front)) {
            have = true;
            best = j;
            best_front = *front;
          }
        }
        // pending[0] is always frontable, so `have` holds
        bubble_to_front(pending, best);
        emitted.push_back(pending.front());
        pending.erase(pending.begin());
      }
      if (!(emitted == slices_)) changed = true;
      slices_ = std::move(emitted);

      for (std::size_t i = 0; i + 1 < slices_.size(); ++i)
        if (try_improving_swap(i)) changed = true;

      // Wires emanating from identical zero-armed boxes are interchangeable,
      // so such an insertion can slide left past a token of identical
      // provenance; canonical form slides as far left as possible.
      {
        std::vector<int> producer;  // producing slice per boundary token
        for (std::size_t t = 0; t < dom_.size(); ++t) producer.push_back(-1);
        for (std::size_t i = 0; i < slices_.size(); ++i) {
          Slice& s = slices_[i];
          std::size_t din = s.box.dom_types().size();
          if (din == 0) {
            while (s.offset > 0) {
              int pr = producer[s.offset - 1];
              if (pr >= 0 && slices_[static_cast<std::size_t>(pr)].box == s.box) {
                --s.offset;
                changed = true;
              } else {
                break;
              }
            }
          }
          producer.erase(producer.begin() + s.offset, producer.begin() + s.offset + din);
          std::vector<int> made(s.box.cod_types().size(), static_cast<int>(i));
          producer.insert(producer.begin() + s.offset, made.begin(), made.end());
        }
      }

      if (!changed) break;
    }
    return *this;
  }

  Diagram canonical() const {
    Diagram d = *this;
    d.canonicalize();
    return d;
  }

  // Applies an arbitrary valid adjacent transposition (used by tests to
  // scramble a diagram within its interchange class). Returns false when the
  // pair does not commute.
  bool transpose_adjacent(std::size_t i) {
    if (i + 1 >= slices_.size()) return false;
    auto sw = swapped_pair(i);
    if (!sw.valid) return false;
    slices_[i] = sw.first;
    slices_[i + 1] = sw.second;
    return true;
  }

  // --- token flow --------------------------------------------------------

  struct Port {
    // producer/consumer slice index, or npos for the diagram boundary
    static constexpr std::size_t boundary = static_cast<std::size_t>(-1);
    std::size_t slice = boundary;
    std::size_t leg = 0;  // leg within that slice (or boundary position)
    friend bool operator==(const Port&, const Port&) = default;
  };

  struct Flow {
    // inputs[i][k]: where slice i's k-th input token comes from
    std::vector<std::vector<Port>> inputs;
    // outputs[i][k]: where slice i's k-th output token goes
    std::vector<std::vector<Port>> outputs;
    std::vector<Port> cod_sources;  // producer of each codomain wire
  };

  Flow flow() const {
    Flow f;
    f.inputs.resize(slices_.size());
    f.outputs.resize(slices_.size());
    std::vector<Port> tokens;  // current boundary: producing port of each wire
    tokens.reserve(dom_.size());
    for (std::size_t i = 0; i < dom_.size(); ++i) tokens.push_back(Port{Port::boundary, i});
    for (std::size_t i = 0; i < slices_.size(); ++i) {
      const auto& s = slices_[i];
      std::size_t din = s.box.dom_types().size();
      std::size_t dout = s.box.cod_types().size();
      f.inputs[i].assign(tokens.begin() + s.offset, tokens.begin() + s.offset + din);
      tokens.erase(tokens.begin() + s.offset, tokens.begin() + s.offset + din);
      std::vector<Port> prod;
      for (std::size_t k = 0; k < dout; ++k) prod.push_back(Port{i, k});
      tokens.insert(tokens.begin() + s.offset, prod.begin(), prod.end());
      f.outputs[i].assign(dout, Port{});
    }
    f.cod_sources = tokens;
    // fill consumers
    for (std::size_t i = 0; i < slices_.size(); ++i)
      for (std::size_t k = 0; k < f.inputs[i].size(); ++k) {
        const Port& src = f.inputs[i][k];
        if (src.slice != Port::boundary) f.outputs[src.slice][src.leg] = Port{i, k};
      }
    for (std::size_t i = 0; i < f.cod_sources.size(); ++i) {
      const Port& src = f.cod_sources[i];
      if (src.slice != Port::boundary) f.outputs[src.slice][src.leg] = Port{Port::boundary, i};
    }
    return f;
  }

  // --- ordering ----------------------------------------------------------

  friend bool operator==(const Diagram& x, const Diagram& y) {
    return x.dom_ == y.dom_ && x.slices_ == y.slices_;
  }

  // Total order: (slice count, dom, per-slice (offset, box)).
  friend bool operator<(const Diagram& x, const Diagram& y) {
    if (x.slices_.size() != y.slices_.size()) return x.slices_.size() < y.slices_.size();
    if (x.dom_ != y.dom_) return x.dom_ < y.dom_;
    for (std::size_t i = 0; i < x.slices_.size(); ++i) {
      const auto& a = x.slices_[i];
      const auto& b = y.slices_[i];
      if (a.offset != b.offset) return a.offset < b.offset;
      if (a.box < b.box) return true;
      if (b.box < a.box) return false;
    }
    return false;
  }

  std::string str() const {
    std::string s = "dom ";
    s += wires_str(dom_);
    for (const auto& sl : slices_)
      s += " | " + sl.box.str() + " @ " + std::to_string(sl.offset);
    s += " | cod " + wires_str(cod_);
    return s;
  }

 private:
  static void apply_to_boundary(std::vector<Wire>& b, const Slice& s) {
    auto din = s.box.dom_types();
    auto dout = s.box.cod_types();
    b.erase(b.begin() + s.offset, b.begin() + s.offset + din.size());
    b.insert(b.begin() + s.offset, dout.begin(), dout.end());
  }

  static std::string wires_str(const std::vector<Wire>& ws) {
    std::string s = "(";
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (i) s += ",";
      s += wire_str(ws[i]);
    }
    return s + ")";
  }

  static std::string wire_str(const Wire& w) {
    if constexpr (requires { w.str(); })
      return w.str();
    else
      return w;
  }

  struct SwapResult {
    bool valid = false;
    Slice first, second;
  };

  SwapResult swapped_pair(std::size_t i) const { return swapped_of(slices_[i], slices_[i + 1]); }

  static bool slice_less(const Slice& x, const Slice& y) {
    if (x.offset != y.offset) return x.offset < y.offset;
    return x.box < y.box;
  }

  static SwapResult swapped_of(const Slice& g, const Slice& h) {
    std::size_t m = g.box.dom_types().size(), n = g.box.cod_types().size();
    std::size_t p = h.box.dom_types().size(), q = h.box.cod_types().size();
    std::size_t a = g.offset, b = h.offset;
    SwapResult r;
    if (b + p <= a) {
      r.valid = true;
      r.first = h;
      r.second = Slice{a - p + q, g.box};
    } else if (b >= a + n) {
      r.valid = true;
      r.first = Slice{b - n + m, h.box};
      r.second = Slice{a, g.box};
    }
    return r;
  }

  // The slice pending[j] as it would appear at the front, or nothing when it
  // cannot be commuted past some earlier slice.
  static std::optional<Slice> probe_front(const std::vector<Slice>& pending, std::size_t j) {
    Slice mover = pending[j];
    for (std::size_t k = j; k-- > 0;) {
      auto sw = swapped_of(pending[k], mover);
      if (!sw.valid) return std::nullopt;
      mover = sw.first;
    }
    return mover;
  }

  static void bubble_to_front(std::vector<Slice>& pending, std::size_t j) {
    for (std::size_t k = j; k-- > 0;) {
      auto sw = swapped_of(pending[k], pending[k + 1]);
      pending[k + 1] = sw.second;
      pending[k] = sw.first;
    }
  }

  bool try_improving_swap(std::size_t i) {
    auto sw = swapped_pair(i);
    if (!sw.valid) return false;
    const Slice& c0 = slices_[i];
    const Slice& c1 = slices_[i + 1];
    // lexicographic comparison of (first, second) pairs
    bool better = false;
    if (slice_less(sw.first, c0))
      better = true;
    else if (!slice_less(c0, sw.first) && slice_less(sw.second, c1))
      better = true;
    if (!better) return false;
    slices_[i] = sw.first;
    slices_[i + 1] = sw.second;
    return true;
  }

  std::vector<Wire> dom_, cod_;
  std::vector<Slice> slices_;
};

}  // namespace laxcat
