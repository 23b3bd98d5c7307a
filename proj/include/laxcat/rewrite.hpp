#pragma once

// Rewriting and equality search for classifier diagrams.
//
// Oriented rules (each strictly decreases the lexicographic measure
// (envelope count, j/q count, slice count)):
//   drop-identity-envelope   env(id) deleted
//   merge-envelopes          env(g) over env(f)        -> env(g.f)
//   naturality-l             l after (env f (x) env h) -> env(f (x) h) after l
//   naturality-k             (env f (x) env h) after k -> k after env(f (x) h)
//   unit-l-left/right        l fed by j on either leg  -> deleted
//   counit-k-left/right      k feeding q on either leg -> deleted
//
// Search moves (bidirectional, used by the equality search):
//   assoc-l / assoc-k        re-bracketing of l (resp. k)
//   frobenius-1/2            the two l/k exchange laws
//   split-env-l / split-env-k  one-sided naturality: splitting a tensor
//                              envelope back across l (resp. k)
//   env-rel                  a base relation applied inside an envelope
//
// Verdicts are three-valued. Equal is backed by a replayable trace,
// Distinct by a separating registered model, Unknown by a budget report.

#include "laxcat/classifier.hpp"
#include "laxcat/matrix.hpp"

#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace laxcat {

struct Budget {
  std::size_t oriented_steps = 10000;
  std::size_t search_depth = 8;
  std::size_t frontier_cap = 50000;
  std::size_t content_steps = 1000;  // oriented base-relation steps inside envelopes
};

// --- termination measure -----------------------------------------------------

struct Measure {
  std::size_t envelopes = 0, units = 0, slices = 0;
  friend bool operator<(const Measure& a, const Measure& b) {
    if (a.envelopes != b.envelopes) return a.envelopes < b.envelopes;
    if (a.units != b.units) return a.units < b.units;
    return a.slices < b.slices;
  }
  friend bool operator==(const Measure&, const Measure&) = default;
};

inline Measure measure_of(const ClassDiagram& d) {
  Measure m;
  m.slices = d.size();
  for (const auto& s : d.slices()) {
    if (s.box.kind == ClassBox::Kind::env) ++m.envelopes;
    if (s.box.kind == ClassBox::Kind::j || s.box.kind == ClassBox::Kind::q) ++m.units;
  }
  return m;
}

// Global counters backing the termination-measure acceptance check.
struct RewriteStats {
  std::size_t oriented_steps = 0;
  std::size_t measure_decreases = 0;
};

inline RewriteStats& rewrite_stats() {
  static RewriteStats s;
  return s;
}

// --- steps and verdicts --------------------------------------------------------

struct RewriteStep {
  std::string rule;
  std::size_t slice = 0;
  std::size_t offset = 0;
  std::string note;  // extra parameters (seam position, relation name, ...)

  std::string str() const {
    std::string s = rule + " @ slice " + std::to_string(slice) + ", offset " +
                    std::to_string(offset);
    if (!note.empty()) s += " [" + note + "]";
    return s;
  }
};

struct EqualInfo {
  std::vector<RewriteStep> lhs_steps, rhs_steps;
};

struct DistinctInfo {
  std::string model_name;
  Matrix lhs_value, rhs_value;
};

struct UnknownInfo {
  std::size_t nodes_explored = 0;
  std::size_t depth_reached = 0;
  bool frontier_capped = false;
};

struct Verdict {
  enum class Kind { equal, distinct, unknown } kind = Kind::unknown;
  EqualInfo equal;
  DistinctInfo distinct;
  UnknownInfo unknown;

  bool is_equal() const { return kind == Kind::equal; }
  bool is_distinct() const { return kind == Kind::distinct; }
  bool is_unknown() const { return kind == Kind::unknown; }

  static Verdict mk_equal(EqualInfo e = {}) {
    Verdict v;
    v.kind = Kind::equal;
    v.equal = std::move(e);
    return v;
  }
  static Verdict mk_distinct(DistinctInfo d) {
    Verdict v;
    v.kind = Kind::distinct;
    v.distinct = std::move(d);
    return v;
  }
  static Verdict mk_unknown(UnknownInfo u) {
    Verdict v;
    v.kind = Kind::unknown;
    v.unknown = u;
    return v;
  }

  // Key-value serialization (see README for the format).
  std::string str() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::equal: {
        os << "verdict: equal\n";
        os << "lhs-steps: " << equal.lhs_steps.size() << "\n";
        os << "rhs-steps: " << equal.rhs_steps.size() << "\n";
        std::size_t n = 1;
        for (const auto& s : equal.lhs_steps)
          os << "step " << n++ << ": " << s.str() << " [side=lhs]\n";
        n = 1;
        for (const auto& s : equal.rhs_steps)
          os << "step " << n++ << ": " << s.str() << " [side=rhs]\n";
        break;
      }
      case Kind::distinct:
        os << "verdict: distinct\n";
        os << "model: " << distinct.model_name << "\n";
        os << "lhs-value: " << distinct.lhs_value.to_string() << "\n";
        os << "rhs-value: " << distinct.rhs_value.to_string() << "\n";
        break;
      case Kind::unknown:
        os << "verdict: unknown\n";
        os << "nodes-explored: " << unknown.nodes_explored << "\n";
        os << "depth-reached: " << unknown.depth_reached << "\n";
        os << "frontier-capped: " << (unknown.frontier_capped ? "yes" : "no") << "\n";
        break;
    }
    return os.str();
  }
};

// Models are consulted through this interface to keep the engine independent
// of the model layer; a validated ModelFunctor implements it.
struct ModelOracle {
  virtual ~ModelOracle() = default;
  virtual std::string name() const = 0;
  virtual Matrix eval_term(const Term& t) const = 0;
  virtual Matrix eval_cterm(const CTerm& t) const = 0;
};

// --- surgery -----------------------------------------------------------------

namespace detail_rw {

// A token reference: src -1 = domain wire, src >= 0 = output leg of original
// slice src, src <= -2 = output leg of inserted block slice (-2 - block_id).
struct Tok {
  int src = -1;
  std::size_t leg = 0;
  friend bool operator==(const Tok&, const Tok&) = default;
  friend bool operator<(const Tok& a, const Tok& b) {
    if (a.src != b.src) return a.src < b.src;
    return a.leg < b.leg;
  }
};

struct Insertion {
  std::size_t before = 0;  // original slice index to insert in front of
  ClassBox box;
  std::vector<Tok> inputs;  // raw token refs (no aliasing applied)
  int block_id = 0;
};

struct Surgery {
  std::set<std::size_t> removed;
  std::map<std::size_t, std::pair<ClassBox, std::vector<Tok>>> replaced;
  std::vector<Insertion> insertions;
  std::map<Tok, Tok> alias;  // applied to untouched slices and the codomain
};

inline Tok resolve(const std::map<Tok, Tok>& alias, Tok t) {
  for (std::size_t guard = 0; guard < 64; ++guard) {
    auto it = alias.find(t);
    if (it == alias.end()) return t;
    t = it->second;
  }
  return t;
}

// Rebuilds a diagram after a surgery. Returns nothing when the requested
// token arrangement is not realizable (the move is then inapplicable).
inline std::optional<ClassDiagram> rebuild(const ClassDiagram& d, const Surgery& su) {
  const auto& sl = d.slices();
  auto fl = d.flow();

  // original boundaries as token lists (for zero-input anchoring)
  std::vector<std::vector<Tok>> orig_bounds;
  {
    std::vector<Tok> cur;
    for (std::size_t i = 0; i < d.dom().size(); ++i) cur.push_back(Tok{-1, i});
    orig_bounds.push_back(cur);
    for (std::size_t i = 0; i < sl.size(); ++i) {
      std::size_t din = sl[i].box.dom_types().size();
      std::size_t dout = sl[i].box.cod_types().size();
      cur.erase(cur.begin() + sl[i].offset, cur.begin() + sl[i].offset + din);
      std::vector<Tok> prod;
      for (std::size_t k = 0; k < dout; ++k) prod.push_back(Tok{static_cast<int>(i), k});
      cur.insert(cur.begin() + sl[i].offset, prod.begin(), prod.end());
      orig_bounds.push_back(cur);
    }
  }

  ClassDiagram out(d.dom());
  std::vector<Tok> cur;
  for (std::size_t i = 0; i < d.dom().size(); ++i) cur.push_back(Tok{-1, i});

  auto locate = [&](const std::vector<Tok>& inputs) -> std::optional<std::size_t> {
    if (inputs.empty()) return std::nullopt;  // handled by anchoring
    auto it = std::find(cur.begin(), cur.end(), inputs[0]);
    if (it == cur.end()) return std::nullopt;
    std::size_t pos = static_cast<std::size_t>(it - cur.begin());
    if (pos + inputs.size() > cur.size()) return std::nullopt;
    for (std::size_t k = 1; k < inputs.size(); ++k)
      if (!(cur[pos + k] == inputs[k])) return std::nullopt;
    return pos;
  };

  auto emit = [&](const ClassBox& box, const std::vector<Tok>& inputs,
                  const std::vector<Tok>& outputs,
                  std::optional<std::size_t> anchored_pos) -> bool {
    std::size_t pos;
    if (!inputs.empty()) {
      auto p = locate(inputs);
      if (!p) return false;
      pos = *p;
    } else if (anchored_pos) {
      pos = *anchored_pos;
    } else {
      return false;
    }
    try {
      out.push(pos, box);
    } catch (const TypeError&) {
      return false;
    }
    cur.erase(cur.begin() + pos, cur.begin() + pos + inputs.size());
    cur.insert(cur.begin() + pos, outputs.begin(), outputs.end());
    return true;
  };

  auto zero_input_anchor = [&](std::size_t idx) -> std::size_t {
    // nearest surviving token left of the slice's original position
    const auto& b = orig_bounds[idx];
    std::size_t p = sl[idx].offset;
    for (std::size_t k = p; k-- > 0;) {
      Tok t = resolve(su.alias, b[k]);
      auto it = std::find(cur.begin(), cur.end(), t);
      if (it != cur.end()) return static_cast<std::size_t>(it - cur.begin()) + 1;
    }
    return 0;
  };

  std::size_t ins_i = 0;
  for (std::size_t idx = 0; idx <= sl.size(); ++idx) {
    while (ins_i < su.insertions.size() && su.insertions[ins_i].before == idx) {
      const auto& ins = su.insertions[ins_i];
      std::vector<Tok> outs;
      for (std::size_t k = 0; k < ins.box.cod_types().size(); ++k)
        outs.push_back(Tok{-2 - ins.block_id, k});
      if (!emit(ins.box, ins.inputs, outs, std::nullopt)) return std::nullopt;
      ++ins_i;
    }
    if (idx == sl.size()) break;
    if (su.removed.count(idx)) continue;
    auto rep = su.replaced.find(idx);
    std::vector<Tok> outs;
    const ClassBox* box;
    std::vector<Tok> inputs;
    if (rep != su.replaced.end()) {
      box = &rep->second.first;
      inputs = rep->second.second;  // raw refs
    } else {
      box = &sl[idx].box;
      for (const auto& port : fl.inputs[idx]) {
        Tok t{static_cast<int>(port.slice), port.leg};
        if (port.slice == ClassDiagram::Port::boundary) t = Tok{-1, port.leg};
        inputs.push_back(resolve(su.alias, t));
      }
    }
    for (std::size_t k = 0; k < box->cod_types().size(); ++k)
      outs.push_back(Tok{static_cast<int>(idx), k});
    std::optional<std::size_t> anchor;
    if (inputs.empty()) anchor = zero_input_anchor(idx);
    if (!emit(*box, inputs, outs, anchor)) return std::nullopt;
  }
  return out;
}

inline Tok port_tok(const ClassDiagram::Port& p) {
  if (p.slice == ClassDiagram::Port::boundary) return Tok{-1, p.leg};
  return Tok{static_cast<int>(p.slice), p.leg};
}

}  // namespace detail_rw

// --- oriented rules -----------------------------------------------------------

namespace detail_rw {

struct Candidate {
  ClassDiagram result;
  RewriteStep step;
};

// Enumerates every oriented redex of `d` (canonical form assumed). The first
// candidate in the returned order is the one `normalize` applies.
inline std::vector<Candidate> oriented_candidates(const ClassifierPresentation& c,
                                                  const ClassDiagram& d, bool first_only,
                                                  const Budget& budget) {
  std::vector<Candidate> out;
  const auto& sl = d.slices();
  auto fl = d.flow();
  using K = ClassBox::Kind;

  auto producer_env = [&](std::size_t i, std::size_t leg) -> std::optional<std::size_t> {
    const auto& p = fl.inputs[i][leg];
    if (p.slice == ClassDiagram::Port::boundary) return std::nullopt;
    if (sl[p.slice].box.kind != K::env) return std::nullopt;
    return p.slice;
  };
  auto producer_kind = [&](std::size_t i, std::size_t leg, K kind) -> std::optional<std::size_t> {
    const auto& p = fl.inputs[i][leg];
    if (p.slice == ClassDiagram::Port::boundary) return std::nullopt;
    if (sl[p.slice].box.kind != kind) return std::nullopt;
    return p.slice;
  };
  auto consumer_kind = [&](std::size_t i, std::size_t leg, K kind) -> std::optional<std::size_t> {
    const auto& p = fl.outputs[i][leg];
    if (p.slice == ClassDiagram::Port::boundary) return std::nullopt;
    if (sl[p.slice].box.kind != kind) return std::nullopt;
    return p.slice;
  };
  auto add = [&](Surgery su, std::string rule, std::size_t i) {
    auto r = rebuild(d, su);
    if (!r) return;
    r->canonicalize();
    out.push_back(Candidate{std::move(*r), RewriteStep{std::move(rule), i, sl[i].offset, ""}});
  };

  // drop-identity-envelope
  for (std::size_t i = 0; i < sl.size() && (out.empty() || !first_only); ++i) {
    if (sl[i].box.kind != K::env || !sl[i].box.content.empty()) continue;
    Surgery su;
    su.removed.insert(i);
    su.alias[Tok{static_cast<int>(i), 0}] = port_tok(fl.inputs[i][0]);
    add(std::move(su), "drop-identity-envelope", i);
  }
  if (first_only && !out.empty()) return out;

  // merge-envelopes: i's input produced by another envelope a
  for (std::size_t i = 0; i < sl.size() && (out.empty() || !first_only); ++i) {
    if (sl[i].box.kind != K::env) continue;
    auto a = producer_env(i, 0);
    if (!a) continue;
    CDiagram merged =
        user_reduce(c.base, vertical(sl[*a].box.content, sl[i].box.content).canonical(),
                    budget.content_steps);
    Surgery su;
    su.replaced[*a] = {ClassBox::env(std::move(merged)), {port_tok(fl.inputs[*a][0])}};
    su.removed.insert(i);
    su.alias[Tok{static_cast<int>(i), 0}] = Tok{static_cast<int>(*a), 0};
    add(std::move(su), "merge-envelopes", i);
  }
  if (first_only && !out.empty()) return out;

  // naturality-l: l whose two legs are produced by envelopes
  for (std::size_t i = 0; i < sl.size() && (out.empty() || !first_only); ++i) {
    if (sl[i].box.kind != K::l) continue;
    auto aL = producer_env(i, 0), aR = producer_env(i, 1);
    if (!aL || !aR) continue;
    const CDiagram& cf = sl[*aL].box.content;
    const CDiagram& ch = sl[*aR].box.content;
    CDiagram merged = user_reduce(c.base, beside(cf, ch).canonical(), budget.content_steps);
    Surgery su;
    su.removed.insert(*aL);
    su.removed.insert(*aR);
    su.alias[Tok{static_cast<int>(*aL), 0}] = port_tok(fl.inputs[*aL][0]);
    su.alias[Tok{static_cast<int>(*aR), 0}] = port_tok(fl.inputs[*aR][0]);
    su.replaced[i] = {ClassBox::l(boundary_word(cf.dom()), boundary_word(ch.dom())),
                      {port_tok(fl.inputs[*aL][0]), port_tok(fl.inputs[*aR][0])}};
    Insertion ins;
    ins.before = i + 1;
    ins.box = ClassBox::env(std::move(merged));
    ins.inputs = {Tok{static_cast<int>(i), 0}};
    ins.block_id = 0;
    su.insertions.push_back(std::move(ins));
    su.alias[Tok{static_cast<int>(i), 0}] = Tok{-2, 0};
    add(std::move(su), "naturality-l", i);
  }
  if (first_only && !out.empty()) return out;

  // naturality-k: k whose two output legs are consumed by envelopes
  for (std::size_t i = 0; i < sl.size() && (out.empty() || !first_only); ++i) {
    if (sl[i].box.kind != K::k) continue;
    auto c0 = consumer_kind(i, 0, K::env), c1 = consumer_kind(i, 1, K::env);
    if (!c0 || !c1) continue;
    const CDiagram& cf = sl[*c0].box.content;
    const CDiagram& ch = sl[*c1].box.content;
    CDiagram merged = user_reduce(c.base, beside(cf, ch).canonical(), budget.content_steps);
    Surgery su;
    Insertion ins;
    ins.before = i;
    ins.box = ClassBox::env(std::move(merged));
    ins.inputs = {port_tok(fl.inputs[i][0])};
    ins.block_id = 0;
    su.insertions.push_back(std::move(ins));
    su.replaced[i] = {ClassBox::k(boundary_word(cf.cod()), boundary_word(ch.cod())), {Tok{-2, 0}}};
    su.removed.insert(*c0);
    su.removed.insert(*c1);
    su.alias[Tok{static_cast<int>(*c0), 0}] = Tok{static_cast<int>(i), 0};
    su.alias[Tok{static_cast<int>(*c1), 0}] = Tok{static_cast<int>(i), 1};
    add(std::move(su), "naturality-k", i);
  }
  if (first_only && !out.empty()) return out;

  // unit-l: l fed by j on either leg
  for (std::size_t i = 0; i < sl.size() && (out.empty() || !first_only); ++i) {
    if (sl[i].box.kind != K::l) continue;
    for (std::size_t leg = 0; leg < 2; ++leg) {
      auto jj = producer_kind(i, leg, K::j);
      if (!jj) continue;
      Surgery su;
      su.removed.insert(*jj);
      su.removed.insert(i);
      su.alias[Tok{static_cast<int>(i), 0}] = port_tok(fl.inputs[i][1 - leg]);
      add(std::move(su), leg == 0 ? "unit-l-left" : "unit-l-right", i);
      if (first_only && !out.empty()) return out;
    }
  }
  if (first_only && !out.empty()) return out;

  // counit-k: k feeding q on either leg
  for (std::size_t i = 0; i < sl.size() && (out.empty() || !first_only); ++i) {
    if (sl[i].box.kind != K::k) continue;
    for (std::size_t leg = 0; leg < 2; ++leg) {
      auto qq = consumer_kind(i, leg, K::q);
      if (!qq) continue;
      Surgery su;
      su.removed.insert(i);
      su.removed.insert(*qq);
      su.alias[Tok{static_cast<int>(i), 1 - leg}] = port_tok(fl.inputs[i][0]);
      add(std::move(su), leg == 0 ? "counit-k-left" : "counit-k-right", i);
      if (first_only && !out.empty()) return out;
    }
  }
  return out;
}

}  // namespace detail_rw

// --- normalize -----------------------------------------------------------------

struct NormalizeResult {
  ClassDiagram diagram;
  std::vector<RewriteStep> steps;
  bool complete = true;  // false when the step budget ran out
};

inline NormalizeResult normalize(const ClassifierPresentation& c, ClassDiagram d,
                                 const Budget& budget = {}) {
  NormalizeResult r;
  d.canonicalize();
  for (;;) {
    if (r.steps.size() >= budget.oriented_steps) {
      r.complete = false;
      break;
    }
    auto cands = detail_rw::oriented_candidates(c, d, /*first_only=*/true, budget);
    if (cands.empty()) break;
    Measure before = measure_of(d);
    Measure after = measure_of(cands.front().result);
    ++rewrite_stats().oriented_steps;
    if (after < before) ++rewrite_stats().measure_decreases;
    else
      throw Error("internal: oriented step did not decrease the termination measure: " +
                  cands.front().step.str());
    r.steps.push_back(cands.front().step);
    d = std::move(cands.front().result);
  }
  r.diagram = std::move(d);
  return r;
}

// --- search moves ----------------------------------------------------------------

namespace detail_rw {

inline std::vector<Candidate> search_candidates(const ClassifierPresentation& c,
                                                const ClassDiagram& d, const Budget& budget) {
  std::vector<Candidate> out;
  const auto& sl = d.slices();
  auto fl = d.flow();
  using K = ClassBox::Kind;

  auto add = [&](Surgery su, std::string rule, std::size_t i, std::string note = "") {
    auto r = rebuild(d, su);
    if (!r) return;
    r->canonicalize();
    out.push_back(
        Candidate{std::move(*r), RewriteStep{std::move(rule), i, sl[i].offset, std::move(note)}});
  };
  auto ptok = [&](std::size_t i, std::size_t leg) { return port_tok(fl.inputs[i][leg]); };
  auto producer = [&](std::size_t i, std::size_t leg, K kind) -> std::optional<std::size_t> {
    const auto& p = fl.inputs[i][leg];
    if (p.slice == ClassDiagram::Port::boundary || sl[p.slice].box.kind != kind)
      return std::nullopt;
    return p.slice;
  };

  for (std::size_t i = 0; i < sl.size(); ++i) {
    const ClassBox& b = sl[i].box;

    if (b.kind == K::l) {
      // assoc-l forward: this l consumes the output of another l on leg 0
      if (auto i1 = producer(i, 0, K::l)) {
        const ClassBox& b1 = sl[*i1].box;  // l(x, z); this = l(x.z, w)
        Surgery su;
        su.removed.insert(*i1);
        Insertion ins;  // l(z, w) over the (z, w) tokens
        ins.before = i;
        ins.box = ClassBox::l(b1.z, b.z);
        ins.inputs = {ptok(*i1, 1), ptok(i, 1)};
        ins.block_id = 0;
        su.insertions.push_back(std::move(ins));
        su.replaced[i] = {ClassBox::l(b1.x, b1.z * b.z), {ptok(*i1, 0), Tok{-2, 0}}};
        add(std::move(su), "assoc-l", i, "fwd");
      }
      // assoc-l backward: this l consumes the output of another l on leg 1
      if (auto i1 = producer(i, 1, K::l)) {
        const ClassBox& b1 = sl[*i1].box;  // l(z, w); this = l(x, z.w)
        Surgery su;
        su.removed.insert(*i1);
        Insertion ins;  // l(x, z) over the (x, z) tokens
        ins.before = i;
        ins.box = ClassBox::l(b.x, b1.x);
        ins.inputs = {ptok(i, 0), ptok(*i1, 0)};
        ins.block_id = 0;
        su.insertions.push_back(std::move(ins));
        su.replaced[i] = {ClassBox::l(b.x * b1.x, b1.z), {Tok{-2, 0}, ptok(*i1, 1)}};
        add(std::move(su), "assoc-l", i, "bwd");
      }
      // split-env-l: an envelope right above this l, splittable at |x|
      if (auto c0 = [&]() -> std::optional<std::size_t> {
            const auto& p = fl.outputs[i][0];
            if (p.slice == ClassDiagram::Port::boundary || sl[p.slice].box.kind != K::env)
              return std::nullopt;
            return p.slice;
          }()) {
        auto parts = split_beside(sl[*c0].box.content, b.x.size());
        if (parts) {
          Surgery su;
          Insertion e1, e2;
          e1.before = i;
          e1.box = ClassBox::env(parts->first);
          e1.inputs = {ptok(i, 0)};
          e1.block_id = 0;
          e2.before = i;
          e2.box = ClassBox::env(parts->second);
          e2.inputs = {ptok(i, 1)};
          e2.block_id = 1;
          su.insertions.push_back(std::move(e1));
          su.insertions.push_back(std::move(e2));
          su.replaced[i] = {
              ClassBox::l(boundary_word(parts->first.cod()), boundary_word(parts->second.cod())),
              {Tok{-2, 0}, Tok{-3, 0}}};
          su.removed.insert(*c0);
          su.alias[Tok{static_cast<int>(*c0), 0}] = Tok{static_cast<int>(i), 0};
          add(std::move(su), "split-env-l", i, "seam=" + std::to_string(b.x.size()));
        }
      }
      // frobenius moves: k directly above this l
      if (c.flavor == Flavor::frob) {
        const auto& p = fl.outputs[i][0];
        if (p.slice != ClassDiagram::Port::boundary && sl[p.slice].box.kind == K::k) {
          std::size_t i2 = p.slice;
          const ClassBox& bk = sl[i2].box;
          // frobenius-1 forward: l(x, z.w) then k(x.z, w), with z = suffix
          if (bk.x.size() >= b.x.size()) {
            std::size_t zlen = bk.x.size() - b.x.size();
            if (b.z.size() >= zlen) {
              Word z{std::vector<std::string>(b.z.letters.begin(), b.z.letters.begin() + zlen)};
              Word w{std::vector<std::string>(b.z.letters.begin() + zlen, b.z.letters.end())};
              if (b.x * z == bk.x && w == bk.z) {
                Surgery su;
                Insertion ins;  // k(z, w) over the (z.w) token
                ins.before = i;
                ins.box = ClassBox::k(z, w);
                ins.inputs = {ptok(i, 1)};
                ins.block_id = 0;
                su.insertions.push_back(std::move(ins));
                su.replaced[i] = {ClassBox::l(b.x, z), {ptok(i, 0), Tok{-2, 0}}};
                su.removed.insert(i2);
                su.alias[Tok{static_cast<int>(i2), 0}] = Tok{static_cast<int>(i), 0};
                su.alias[Tok{static_cast<int>(i2), 1}] = Tok{-2, 1};
                add(std::move(su), "frobenius-1", i, "fwd");
              }
            }
          }
          // frobenius-2 forward: l(x.z, w) then k(x, z.w), with z = prefix split
          if (b.x.size() >= bk.x.size()) {
            std::size_t xlen = bk.x.size();
            Word x{std::vector<std::string>(b.x.letters.begin(), b.x.letters.begin() + xlen)};
            Word z{std::vector<std::string>(b.x.letters.begin() + xlen, b.x.letters.end())};
            if (x == bk.x && z * b.z == bk.z) {
              Surgery su;
              Insertion ins;  // k(x, z) over the (x.z) token
              ins.before = i;
              ins.box = ClassBox::k(x, z);
              ins.inputs = {ptok(i, 0)};
              ins.block_id = 0;
              su.insertions.push_back(std::move(ins));
              su.replaced[i] = {ClassBox::l(z, b.z), {Tok{-2, 1}, ptok(i, 1)}};
              su.removed.insert(i2);
              su.alias[Tok{static_cast<int>(i2), 0}] = Tok{-2, 0};
              su.alias[Tok{static_cast<int>(i2), 1}] = Tok{static_cast<int>(i), 0};
              add(std::move(su), "frobenius-2", i, "fwd");
            }
          }
        }
        // frobenius-1 backward: this l's leg 1 comes from leg 0 of a k
        if (auto i1 = producer(i, 1, K::k)) {
          if (fl.inputs[i][1].leg == 0) {
            const ClassBox& bk = sl[*i1].box;  // k(z, w); this = l(x, z)
            if (bk.x == b.z) {
              Surgery su;
              Insertion ins;  // l(x, z.w) over (x, z.w-token)
              ins.before = *i1;
              ins.box = ClassBox::l(b.x, bk.x * bk.z);
              ins.inputs = {ptok(i, 0), ptok(*i1, 0)};
              ins.block_id = 0;
              su.insertions.push_back(std::move(ins));
              su.replaced[*i1] = {ClassBox::k(b.x * bk.x, bk.z), {Tok{-2, 0}}};
              su.removed.insert(i);
              su.alias[Tok{static_cast<int>(i), 0}] = Tok{static_cast<int>(*i1), 0};
              add(std::move(su), "frobenius-1", i, "bwd");
            }
          }
        }
        // frobenius-2 backward: this l's leg 0 comes from leg 1 of a k
        if (auto i1 = producer(i, 0, K::k)) {
          if (fl.inputs[i][0].leg == 1) {
            const ClassBox& bk = sl[*i1].box;  // k(x, z); this = l(z, w)
            if (bk.z == b.x) {
              Surgery su;
              Insertion ins;  // l(x.z, w) over (x.z-token, w)
              ins.before = *i1;
              ins.box = ClassBox::l(bk.x * bk.z, b.z);
              ins.inputs = {ptok(*i1, 0), ptok(i, 1)};
              ins.block_id = 0;
              su.insertions.push_back(std::move(ins));
              su.replaced[*i1] = {ClassBox::k(bk.x, bk.z * b.z), {Tok{-2, 0}}};
              su.removed.insert(i);
              su.alias[Tok{static_cast<int>(i), 0}] = Tok{static_cast<int>(*i1), 1};
              add(std::move(su), "frobenius-2", i, "bwd");
            }
          }
        }
      }
    }

    if (b.kind == K::k) {
      // assoc-k forward: leg 0 of this k feeds another k
      const auto& p0 = fl.outputs[i][0];
      if (p0.slice != ClassDiagram::Port::boundary && sl[p0.slice].box.kind == K::k &&
          p0.leg == 0) {
        std::size_t i2 = p0.slice;
        const ClassBox& b2 = sl[i2].box;  // k(x, z); this = k(x.z, w)
        if (b2.x * b2.z == b.x) {
          Surgery su;
          su.replaced[i] = {ClassBox::k(b2.x, b2.z * b.z), {ptok(i, 0)}};
          Insertion ins;  // k(z, w) on the new (z.w) token
          ins.before = i + 1;
          ins.box = ClassBox::k(b2.z, b.z);
          ins.inputs = {Tok{static_cast<int>(i), 1}};
          ins.block_id = 0;
          su.insertions.push_back(std::move(ins));
          su.removed.insert(i2);
          su.alias[Tok{static_cast<int>(i2), 0}] = Tok{static_cast<int>(i), 0};
          su.alias[Tok{static_cast<int>(i2), 1}] = Tok{-2, 0};
          su.alias[Tok{static_cast<int>(i), 1}] = Tok{-2, 1};
          add(std::move(su), "assoc-k", i, "fwd");
        }
      }
      // assoc-k backward: leg 1 of this k feeds another k
      const auto& p1 = fl.outputs[i][1];
      if (p1.slice != ClassDiagram::Port::boundary && sl[p1.slice].box.kind == K::k &&
          p1.leg == 0) {
        std::size_t i2 = p1.slice;
        const ClassBox& b2 = sl[i2].box;  // k(z, w); this = k(x, z.w)
        if (b2.x * b2.z == b.z) {
          Surgery su;
          su.replaced[i] = {ClassBox::k(b.x * b2.x, b2.z), {ptok(i, 0)}};
          Insertion ins;  // k(x, z) on the new (x.z) token
          ins.before = i + 1;
          ins.box = ClassBox::k(b.x, b2.x);
          ins.inputs = {Tok{static_cast<int>(i), 0}};
          ins.block_id = 0;
          su.insertions.push_back(std::move(ins));
          su.removed.insert(i2);
          su.alias[Tok{static_cast<int>(i), 0}] = Tok{-2, 0};
          su.alias[Tok{static_cast<int>(i2), 0}] = Tok{-2, 1};
          su.alias[Tok{static_cast<int>(i2), 1}] = Tok{static_cast<int>(i), 1};
          add(std::move(su), "assoc-k", i, "bwd");
        }
      }
      // split-env-k: an envelope right below this k
      if (auto i1 = producer(i, 0, K::env)) {
        auto parts =
            split_beside(sl[*i1].box.content, cod_seam_to_dom(sl[*i1].box.content, b.x.size()));
        if (parts && boundary_word(parts->first.cod()) == b.x &&
            boundary_word(parts->second.cod()) == b.z) {
          Surgery su;
          su.replaced[*i1] = {
              ClassBox::k(boundary_word(parts->first.dom()), boundary_word(parts->second.dom())),
              {ptok(*i1, 0)}};
          Insertion e1, e2;
          e1.before = *i1 + 1;
          e1.box = ClassBox::env(parts->first);
          e1.inputs = {Tok{static_cast<int>(*i1), 0}};
          e1.block_id = 0;
          e2.before = *i1 + 1;
          e2.box = ClassBox::env(parts->second);
          e2.inputs = {Tok{static_cast<int>(*i1), 1}};
          e2.block_id = 1;
          su.insertions.push_back(std::move(e1));
          su.insertions.push_back(std::move(e2));
          su.removed.insert(i);
          su.alias[Tok{static_cast<int>(i), 0}] = Tok{-2, 0};
          su.alias[Tok{static_cast<int>(i), 1}] = Tok{-3, 0};
          add(std::move(su), "split-env-k", i, "seam=" + std::to_string(b.x.size()));
        }
      }
    }

    // env-rel: a base relation applied inside an envelope, either direction
    if (b.kind == K::env && !c.base.relations().empty()) {
      for (const auto& rel : c.base.relations()) {
        for (int dir = 0; dir < 2; ++dir) {
          CDiagram from = canonical_cdiagram(dir == 0 ? rel.lhs : rel.rhs);
          CDiagram to = canonical_cdiagram(dir == 0 ? rel.rhs : rel.lhs);
          auto ms = find_matches(b.content, from);
          for (std::size_t mi = 0; mi < ms.size(); ++mi) {
            CDiagram nc = apply_match(b.content, from, to, ms[mi]);
            Surgery su;
            su.replaced[i] = {ClassBox::env(std::move(nc)), {ptok(i, 0)}};
            add(std::move(su), "env-rel", i,
                rel.name + (dir == 0 ? " fwd" : " bwd") + " match=" + std::to_string(mi));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace detail_rw

// --- equality search -----------------------------------------------------------

namespace detail_rw {

// Expansion of a search node: apply one search move, then renormalize.
// Each edge carries the move step plus a "normalize" marker when the
// renormalization performed any work.
struct Edge {
  ClassDiagram target;
  std::vector<RewriteStep> steps;
};

inline std::vector<Edge> expand(const ClassifierPresentation& c, const ClassDiagram& d,
                                const Budget& budget) {
  std::vector<Edge> out;
  for (auto& cand : search_candidates(c, d, budget)) {
    Edge e;
    e.steps.push_back(cand.step);
    auto nr = normalize(c, std::move(cand.result), budget);
    if (!nr.steps.empty())
      e.steps.push_back(RewriteStep{"normalize", 0, 0, std::to_string(nr.steps.size()) + " steps"});
    e.target = std::move(nr.diagram);
    out.push_back(std::move(e));
  }
  return out;
}

struct SearchOutcome {
  bool met = false;
  std::vector<RewriteStep> lhs_steps, rhs_steps;
  UnknownInfo info;
};

// Bidirectional breadth-first search over normalized canonical diagrams.
inline SearchOutcome bidirectional_search(const ClassifierPresentation& c, const ClassDiagram& s0,
                                          std::vector<RewriteStep> s0_steps,
                                          const ClassDiagram& t0,
                                          std::vector<RewriteStep> t0_steps,
                                          const Budget& budget) {
  SearchOutcome res;
  struct NodeInfo {
    std::vector<RewriteStep> path;
    std::size_t depth = 0;
  };
  std::map<ClassDiagram, NodeInfo> seen[2];
  std::deque<ClassDiagram> frontier[2];
  seen[0][s0] = NodeInfo{std::move(s0_steps), 0};
  seen[1][t0] = NodeInfo{std::move(t0_steps), 0};
  frontier[0].push_back(s0);
  frontier[1].push_back(t0);

  auto meet_check = [&](int side, const ClassDiagram& d) -> bool {
    auto other = seen[1 - side].find(d);
    if (other == seen[1 - side].end()) return false;
    const auto& mine = seen[side].at(d);
    if (side == 0) {
      res.lhs_steps = mine.path;
      res.rhs_steps = other->second.path;
    } else {
      res.lhs_steps = other->second.path;
      res.rhs_steps = mine.path;
    }
    res.met = true;
    return true;
  };

  if (meet_check(0, s0)) return res;

  std::size_t nodes = 2;
  while (!frontier[0].empty() || !frontier[1].empty()) {
    int side = (frontier[0].size() <= frontier[1].size() && !frontier[0].empty()) || frontier[1].empty()
                   ? 0
                   : 1;
    ClassDiagram d = std::move(frontier[side].front());
    frontier[side].pop_front();
    NodeInfo info = seen[side].at(d);
    if (info.depth >= budget.search_depth) continue;
    for (auto& e : expand(c, d, budget)) {
      if (seen[side].count(e.target)) continue;
      if (nodes >= budget.frontier_cap) {
        res.info.frontier_capped = true;
        res.info.nodes_explored = nodes;
        res.info.depth_reached = info.depth;
        return res;
      }
      NodeInfo ni;
      ni.path = info.path;
      for (auto& st : e.steps) ni.path.push_back(st);
      ni.depth = info.depth + 1;
      seen[side][e.target] = std::move(ni);
      ++nodes;
      res.info.depth_reached = std::max(res.info.depth_reached, info.depth + 1);
      if (meet_check(side, e.target)) return res;
      frontier[side].push_back(e.target);
    }
  }
  res.info.nodes_explored = nodes;
  return res;
}

}  // namespace detail_rw

// Decides equality of two classifier terms with the same boundary. Equal is
// sound (a rewrite trace exists); Distinct requires a separating registered
// model; everything else is Unknown.
inline Verdict check_equal(const ClassifierPresentation& c, const Term& s, const Term& t,
                           const Budget& budget = {},
                           const std::vector<const ModelOracle*>& models = {}) {
  if (!(s.dom() == t.dom()) || !(s.cod() == t.cod()))
    throw TypeError("check_equal: boundary mismatch: " + s.dom().str() + " -> " + s.cod().str() +
                    " vs " + t.dom().str() + " -> " + t.cod().str());
  if (s == t) return Verdict::mk_equal();

  ClassDiagram ds = to_sliced(c, s).canonical();
  ClassDiagram dt = to_sliced(c, t).canonical();
  if (ds == dt) return Verdict::mk_equal();

  auto ns = normalize(c, ds, budget);
  auto nt = normalize(c, dt, budget);
  auto steps_of = [](const NormalizeResult& r) {
    std::vector<RewriteStep> v = r.steps;
    return v;
  };
  if (ns.diagram == nt.diagram)
    return Verdict::mk_equal(EqualInfo{steps_of(ns), steps_of(nt)});

  // model refutation before the search: a separating model settles it
  for (const auto* m : models) {
    Matrix a = m->eval_term(s);
    Matrix b = m->eval_term(t);
    if (a != b) return Verdict::mk_distinct(DistinctInfo{m->name(), std::move(a), std::move(b)});
  }

  auto sr = detail_rw::bidirectional_search(c, ns.diagram, steps_of(ns), nt.diagram, steps_of(nt),
                                            budget);
  if (sr.met) return Verdict::mk_equal(EqualInfo{std::move(sr.lhs_steps), std::move(sr.rhs_steps)});
  return Verdict::mk_unknown(sr.info);
}

// --- base-category equality (c_equal) -------------------------------------------

// Decides equality of base terms: interchange canonicalization, then the
// user relations oriented as supplied, then a bidirectional search applying
// relations both ways, with model refutation for Distinct.
inline Verdict c_equal(const Presentation& p, const CTerm& s, const CTerm& t,
                       const Budget& budget = {},
                       const std::vector<const ModelOracle*>& models = {}) {
  if (!(s.dom() == t.dom()) || !(s.cod() == t.cod()))
    throw TypeError("c_equal: boundary mismatch: " + s.dom().str() + " -> " + s.cod().str() +
                    " vs " + t.dom().str() + " -> " + t.cod().str());
  if (s == t) return Verdict::mk_equal();

  CDiagram ds = canonical_cdiagram(s);
  CDiagram dt = canonical_cdiagram(t);
  if (ds == dt) return Verdict::mk_equal();

  CDiagram rs = user_reduce(p, ds, budget.content_steps);
  CDiagram rt = user_reduce(p, dt, budget.content_steps);
  if (rs == rt) {
    EqualInfo e;
    if (!(rs == ds)) e.lhs_steps.push_back(RewriteStep{"user-reduce", 0, 0, ""});
    if (!(rt == dt)) e.rhs_steps.push_back(RewriteStep{"user-reduce", 0, 0, ""});
    return Verdict::mk_equal(std::move(e));
  }

  for (const auto* m : models) {
    Matrix a = m->eval_cterm(s);
    Matrix b = m->eval_cterm(t);
    if (a != b) return Verdict::mk_distinct(DistinctInfo{m->name(), std::move(a), std::move(b)});
  }

  if (p.relations().empty()) return Verdict::mk_unknown(UnknownInfo{2, 0, false});

  // bidirectional search with relation moves in both directions
  struct NodeInfo {
    std::vector<RewriteStep> path;
    std::size_t depth = 0;
  };
  std::map<CDiagram, NodeInfo> seen[2];
  std::deque<CDiagram> frontier[2];
  seen[0][rs] = {};
  seen[1][rt] = {};
  frontier[0].push_back(rs);
  frontier[1].push_back(rt);
  UnknownInfo info;
  std::size_t nodes = 2;
  Verdict result = Verdict::mk_unknown(info);
  bool met = false;
  EqualInfo meet_info;

  auto meet_check = [&](int side, const CDiagram& d) {
    auto other = seen[1 - side].find(d);
    if (other == seen[1 - side].end()) return false;
    const auto& mine = seen[side].at(d);
    meet_info.lhs_steps = side == 0 ? mine.path : other->second.path;
    meet_info.rhs_steps = side == 0 ? other->second.path : mine.path;
    met = true;
    return true;
  };

  while ((!frontier[0].empty() || !frontier[1].empty()) && !met) {
    int side = (frontier[0].size() <= frontier[1].size() && !frontier[0].empty()) || frontier[1].empty()
                   ? 0
                   : 1;
    CDiagram d = std::move(frontier[side].front());
    frontier[side].pop_front();
    NodeInfo ninfo = seen[side].at(d);
    if (ninfo.depth >= budget.search_depth) continue;
    for (const auto& rel : p.relations()) {
      for (int dir = 0; dir < 2 && !met; ++dir) {
        CDiagram from = canonical_cdiagram(dir == 0 ? rel.lhs : rel.rhs);
        CDiagram to = canonical_cdiagram(dir == 0 ? rel.rhs : rel.lhs);
        auto ms = find_matches(d, from);
        for (std::size_t mi = 0; mi < ms.size() && !met; ++mi) {
          CDiagram nd = apply_match(d, from, to, ms[mi]);
          if (seen[side].count(nd)) continue;
          if (nodes >= budget.frontier_cap) {
            info.frontier_capped = true;
            info.nodes_explored = nodes;
            return Verdict::mk_unknown(info);
          }
          NodeInfo ni;
          ni.path = ninfo.path;
          ni.path.push_back(RewriteStep{rel.name, ms[mi].start, ms[mi].shift,
                                        dir == 0 ? "fwd" : "bwd"});
          ni.depth = ninfo.depth + 1;
          info.depth_reached = std::max(info.depth_reached, ni.depth);
          seen[side][nd] = std::move(ni);
          ++nodes;
          if (meet_check(side, nd)) break;
          frontier[side].push_back(nd);
        }
      }
      if (met) break;
    }
  }
  if (met) return Verdict::mk_equal(std::move(meet_info));
  info.nodes_explored = nodes;
  return Verdict::mk_unknown(info);
}

// --- trace replay ------------------------------------------------------------------

// Replays one recorded step against a diagram. Oriented and search steps are
// identified by (rule, slice, offset, note); "normalize" runs normalize.
inline std::optional<ClassDiagram> apply_step(const ClassifierPresentation& c,
                                              const ClassDiagram& d, const RewriteStep& step,
                                              const Budget& budget = {}) {
  if (step.rule == "normalize") return normalize(c, d, budget).diagram;
  for (auto& cand : detail_rw::oriented_candidates(c, d, false, budget))
    if (cand.step.rule == step.rule && cand.step.slice == step.slice &&
        cand.step.offset == step.offset)
      return std::move(cand.result);
  for (auto& cand : detail_rw::search_candidates(c, d, budget))
    if (cand.step.rule == step.rule && cand.step.slice == step.slice &&
        cand.step.offset == step.offset && cand.step.note == step.note)
      return std::move(cand.result);
  return std::nullopt;
}

// Replays both halves of an Equal trace and checks that they converge.
inline bool replay_equal(const ClassifierPresentation& c, const Term& s, const Term& t,
                         const EqualInfo& e, const Budget& budget = {}) {
  ClassDiagram ds = to_sliced(c, s).canonical();
  ClassDiagram dt = to_sliced(c, t).canonical();
  for (const auto& st : e.lhs_steps) {
    auto nd = apply_step(c, ds, st, budget);
    if (!nd) return false;
    ds = std::move(*nd);
  }
  for (const auto& st : e.rhs_steps) {
    auto nd = apply_step(c, dt, st, budget);
    if (!nd) return false;
    dt = std::move(*nd);
  }
  return ds == dt;
}

// --- critical pairs -------------------------------------------------------------------

struct CriticalPairReport {
  std::size_t total = 0;
  std::size_t joined_oriented = 0;  // joined by normalization alone
  std::size_t joined_search = 0;    // joined with search moves
  std::vector<std::string> failures;
  bool all_joined() const { return failures.empty(); }
};

namespace detail_rw {

// Checks one host: for every unordered pair of distinct overlapping oriented
// redexes, rewrite both ways and join.
inline void check_host(const ClassifierPresentation& c, const ClassDiagram& host,
                       const Budget& budget, CriticalPairReport& rep) {
  ClassDiagram d = host.canonical();
  auto cands = oriented_candidates(c, d, false, budget);
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      if (cands[i].result == cands[j].result) continue;
      ++rep.total;
      auto ni = normalize(c, cands[i].result, budget);
      auto nj = normalize(c, cands[j].result, budget);
      if (ni.diagram == nj.diagram) {
        ++rep.joined_oriented;
        continue;
      }
      Budget small = budget;
      small.search_depth = 4;
      auto sr = bidirectional_search(c, ni.diagram, {}, nj.diagram, {}, small);
      if (sr.met) {
        ++rep.joined_search;
      } else {
        rep.failures.push_back("unjoined: " + d.str() + "  [" + cands[i].step.str() + "] vs [" +
                               cands[j].step.str() + "]");
      }
    }
}

}  // namespace detail_rw

// Enumerates overlap hosts for the oriented rule schemas, instantiated over
// the supplied words (expected: all words of length <= 3 over the test base),
// and checks that every critical pair joins.
inline CriticalPairReport check_critical_pairs(const ClassifierPresentation& c,
                                               const std::vector<Word>& words,
                                               const Budget& budget = {}) {
  CriticalPairReport rep;
  using B = ClassBox;

  // small words only, for the multi-parameter shapes
  std::vector<Word> small;
  for (const auto& w : words)
    if (w.size() <= 1) small.push_back(w);

  auto genbox = [&](const std::string& name, const Word& dom, const Word& cod) {
    CDiagram g(dom.letters);
    g.push(0, CBox{name, dom, cod});
    return ClassBox::env(g);
  };
  auto idbox = [&](const Word& w) { return ClassBox::env(CDiagram(w.letters)); };

  // envelope chains, possibly under l / over k  (drop/merge/naturality overlaps)
  for (const auto& u : words)
    for (const auto& v : small)
      for (const auto& w : small) {
        // [env a: u->v, env b: v->w, env c: w->u]  merge/merge overlap
        {
          ClassDiagram d(std::vector<Word>{u});
          d.push(0, genbox("a", u, v));
          d.push(0, genbox("b", v, w));
          d.push(0, genbox("c", w, u));
          detail_rw::check_host(c, d, budget, rep);
        }
        // identity envelopes inside a chain (drop vs merge)
        {
          ClassDiagram d(std::vector<Word>{u});
          d.push(0, idbox(u));
          d.push(0, genbox("a", u, v));
          detail_rw::check_host(c, d, budget, rep);
          ClassDiagram d2(std::vector<Word>{u});
          d2.push(0, genbox("a", u, v));
          d2.push(0, idbox(v));
          detail_rw::check_host(c, d2, budget, rep);
        }
        if (c.allows_l()) {
          // chain under the left leg of l, single env on the right
          ClassDiagram d(std::vector<Word>{u, w});
          d.push(0, genbox("a", u, v));
          d.push(0, genbox("b", v, u));
          d.push(1, genbox("h", w, w));
          d.push(0, B::l(u, w));
          detail_rw::check_host(c, d, budget, rep);
          // identity envelope as one leg of l
          ClassDiagram d2(std::vector<Word>{u, w});
          d2.push(0, idbox(u));
          d2.push(1, genbox("h", w, w));
          d2.push(0, B::l(u, w));
          detail_rw::check_host(c, d2, budget, rep);
        }
        if (c.allows_k()) {
          // chain over the left leg of k
          ClassDiagram d(std::vector<Word>{u * w});
          d.push(0, B::k(u, w));
          d.push(0, genbox("a", u, v));
          d.push(0, genbox("b", v, u));
          d.push(1, genbox("h", w, w));
          detail_rw::check_host(c, d, budget, rep);
          ClassDiagram d2(std::vector<Word>{u * w});
          d2.push(0, B::k(u, w));
          d2.push(0, idbox(u));
          d2.push(1, genbox("h", w, w));
          detail_rw::check_host(c, d2, budget, rep);
        }
        if (c.flavor == Flavor::frob) {
          // envelopes between k and l: fully shared legs
          {
            ClassDiagram d(std::vector<Word>{u * w});
            d.push(0, B::k(u, w));
            d.push(0, genbox("a", u, v));
            d.push(1, genbox("h", w, w));
            d.push(0, B::l(v, w));
            detail_rw::check_host(c, d, budget, rep);
          }
          // one shared env: k legs -> (a, m), l legs <- (m, h)
          {
            ClassDiagram d(std::vector<Word>{u * v, w});
            d.push(0, B::k(u, v));
            d.push(0, genbox("a", u, u));
            d.push(1, genbox("m", v, v));
            d.push(2, genbox("h", w, w));
            d.push(1, B::l(v, w));
            detail_rw::check_host(c, d, budget, rep);
          }
        }
      }

  // j into both legs of l; q from both legs of k
  if (c.allows_l()) {
    ClassDiagram d;
    d.push(0, B::j());
    d.push(1, B::j());
    d.push(0, B::l(Word::one(), Word::one()));
    detail_rw::check_host(c, d, budget, rep);
    // j into l with an envelope on the other leg
    for (const auto& u : words) {
      ClassDiagram d2(std::vector<Word>{u});
      d2.push(0, genbox("a", u, u));
      d2.push(1, B::j());
      d2.push(0, B::l(u, Word::one()));
      detail_rw::check_host(c, d2, budget, rep);
    }
  }
  if (c.allows_k()) {
    ClassDiagram d(std::vector<Word>{Word::one()});
    d.push(0, B::k(Word::one(), Word::one()));
    d.push(0, B::q());
    d.push(0, B::q());
    detail_rw::check_host(c, d, budget, rep);
    for (const auto& u : words) {
      ClassDiagram d2(std::vector<Word>{u});
      d2.push(0, B::k(u, Word::one()));
      d2.push(1, B::q());
      d2.push(0, genbox("a", u, u));
      detail_rw::check_host(c, d2, budget, rep);
    }
  }

  return rep;
}

}  // namespace laxcat
