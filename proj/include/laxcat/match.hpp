#pragma once

// Subdiagram matching and replacement for relation rewriting. An occurrence
// of a pattern inside a host diagram is an order-preserving embedding of the
// pattern's slices into the host's such that every skipped host slice in the
// window acts entirely left or entirely right of the pattern's wire region
// (and therefore commutes past the pattern by the interchange law).

#include "laxcat/diagram.hpp"

#include <cstddef>
#include <vector>

namespace laxcat {

struct Match {
  std::size_t start = 0;   // host index of the first matched slice
  std::size_t shift = 0;   // wire position of the pattern region at `start`
  std::vector<std::size_t> matched;  // host slice indices, increasing
};

namespace detail_match {

// Widths of the pattern's intermediate boundaries.
template <typename W, typename B>
std::vector<std::size_t> level_widths(const Diagram<W, B>& pat) {
  std::vector<std::size_t> ws;
  ws.push_back(pat.dom().size());
  std::size_t w = pat.dom().size();
  for (const auto& s : pat.slices()) {
    w = w - s.box.dom_types().size() + s.box.cod_types().size();
    ws.push_back(w);
  }
  return ws;
}

}  // namespace detail_match

// Matches with an empty-slice pattern (identity relations) are searched at
// slice position `start` on every wire window with the right boundary types.
template <typename W, typename B>
std::vector<Match> find_matches(const Diagram<W, B>& host, const Diagram<W, B>& pat) {
  std::vector<Match> out;
  const auto& hs = host.slices();
  auto pat_widths = detail_match::level_widths(pat);

  if (pat.empty()) {
    // identity pattern: match against boundary segments at each level
    for (std::size_t pos = 0; pos <= hs.size(); ++pos) {
      auto b = host.boundary_at(pos);
      if (pat.dom().size() > b.size()) continue;
      for (std::size_t shift = 0; shift + pat.dom().size() <= b.size(); ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < pat.dom().size(); ++i)
          if (!(b[shift + i] == pat.dom()[i])) {
            ok = false;
            break;
          }
        if (ok) out.push_back(Match{pos, shift, {}});
      }
    }
    return out;
  }

  for (std::size_t start = 0; start < hs.size(); ++start) {
    const auto& first = hs[start];
    if (!(first.box == pat.slices()[0].box)) continue;
    if (first.offset < pat.slices()[0].offset) continue;
    std::size_t shift = first.offset - pat.slices()[0].offset;

    // verify the domain window types
    auto b0 = host.boundary_at(start);
    if (shift + pat.dom().size() > b0.size()) continue;
    bool ok = true;
    for (std::size_t i = 0; i < pat.dom().size() && ok; ++i)
      if (!(b0[shift + i] == pat.dom()[i])) ok = false;
    if (!ok) continue;

    Match m{start, shift, {start}};
    std::size_t region = shift;        // current wire position of the region
    std::size_t k = 1;                 // next pattern slice to match
    std::size_t j = start + 1;
    while (k < pat.slices().size() && j < hs.size()) {
      const auto& cand = hs[j];
      std::size_t pw = pat_widths[k];
      if (cand.box == pat.slices()[k].box && cand.offset == pat.slices()[k].offset + region) {
        m.matched.push_back(j);
        ++k;
        ++j;
        continue;
      }
      // try to skip: cand must act entirely left or right of the region
      std::size_t din = cand.box.dom_types().size();
      std::size_t dout = cand.box.cod_types().size();
      if (cand.offset + din <= region) {
        region += dout;
        region -= din;
        ++j;
        continue;
      }
      if (cand.offset >= region + pw) {
        ++j;
        continue;
      }
      ok = false;
      break;
    }
    if (ok && k == pat.slices().size()) out.push_back(m);
  }
  return out;
}

// Replaces a matched occurrence of `lhs` by `rhs` (which must share lhs's
// boundaries). Skipped slices inside the window are re-emitted after the
// replacement block with adjusted offsets; the result is canonicalized.
template <typename W, typename B>
Diagram<W, B> apply_match(const Diagram<W, B>& host, const Diagram<W, B>& lhs,
                          const Diagram<W, B>& rhs, const Match& m) {
  const auto& hs = host.slices();
  Diagram<W, B> out(host.dom());

  if (lhs.empty()) {
    // insertion of rhs at (start, shift)
    for (std::size_t i = 0; i < m.start; ++i) out.push(hs[i].offset, hs[i].box);
    for (const auto& s : rhs.slices()) out.push(s.offset + m.shift, s.box);
    for (std::size_t i = m.start; i < hs.size(); ++i) {
      // wires right of the region shift by the width difference
      std::size_t delta_in = lhs.dom().size(), delta_out = rhs.cod().size();
      const auto& s = hs[i];
      std::size_t off = s.offset;
      if (off >= m.shift + delta_in) off += delta_out - delta_in;
      // rhs.cod == lhs.dom for identity patterns of a relation, so the
      // adjustment above is zero for well-formed relations
      out.push(off, s.box);
    }
    out.canonicalize();
    return out;
  }

  auto pat_widths = detail_match::level_widths(lhs);
  for (std::size_t i = 0; i < m.start; ++i) out.push(hs[i].offset, hs[i].box);
  for (const auto& s : rhs.slices()) out.push(s.offset + m.shift, s.box);

  // re-emit skipped slices from the window, preserving their order
  std::size_t region = m.shift;
  std::size_t k = 0;  // matched count so far
  std::size_t last = m.matched.back();
  std::size_t rhs_w = rhs.cod().size();
  for (std::size_t j = m.start; j <= last; ++j) {
    if (k < m.matched.size() && m.matched[k] == j) {
      ++k;
      continue;
    }
    const auto& s = hs[j];
    std::size_t din = s.box.dom_types().size();
    if (s.offset + din <= region) {
      out.push(s.offset, s.box);
      region += s.box.cod_types().size();
      region -= din;
    } else {
      // right of the region at pattern level k
      std::size_t rb = s.offset - (region + pat_widths[k]);
      out.push(region + rhs_w + rb, s.box);
    }
  }
  for (std::size_t j = last + 1; j < hs.size(); ++j) out.push(hs[j].offset, hs[j].box);
  out.canonicalize();
  return out;
}

}  // namespace laxcat
