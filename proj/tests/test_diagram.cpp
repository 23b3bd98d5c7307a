#include "laxcat/cdiagram.hpp"
#include "laxcat/match.hpp"
#include "laxcat/parse.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace laxcat;

namespace {

Presentation rich_base() {
  return parse_presentation(
      "objects: x, y;"
      "morphisms: f: x -> y, g: y -> x, h: y -> y, u: 1 -> x, v: y -> 1, m: x.y -> y,"
      " d: x -> x.y;");
}

// random well-typed term built by stacking random whiskered generators
CTerm random_cterm(const Presentation& p, std::mt19937_64& rng, std::size_t max_slices = 5,
                   std::size_t max_width = 4) {
  std::uniform_int_distribution<std::size_t> wl(0, 2);
  static const std::vector<std::string> objs = {"x", "y"};
  std::uniform_int_distribution<std::size_t> pick(0, objs.size() - 1);
  Word start;
  std::size_t n0 = wl(rng) + 1;
  for (std::size_t i = 0; i < n0; ++i) start.letters.push_back(objs[pick(rng)]);

  CTerm t = CTerm::id(start);
  std::uniform_int_distribution<std::size_t> ns(0, max_slices);
  std::size_t slices = ns(rng);
  for (std::size_t s = 0; s < slices; ++s) {
    Word cur = t.cod();
    // collect applicable (offset, generator) layers
    std::vector<std::pair<std::size_t, std::string>> options;
    for (const auto& name : p.morphism_names()) {
      auto [gd, gc] = p.morphism_type(name);
      if (cur.size() + gc.size() - gd.size() > max_width) continue;
      for (std::size_t off = 0; off + gd.size() <= cur.size(); ++off) {
        bool ok = true;
        for (std::size_t i = 0; i < gd.size(); ++i)
          if (cur.letters[off + i] != gd.letters[i]) ok = false;
        if (ok) options.emplace_back(off, name);
      }
    }
    if (options.empty()) break;
    std::uniform_int_distribution<std::size_t> opt(0, options.size() - 1);
    auto [off, name] = options[opt(rng)];
    auto [gd, gc] = p.morphism_type(name);
    Word left{std::vector<std::string>(cur.letters.begin(), cur.letters.begin() + off)};
    Word right{std::vector<std::string>(cur.letters.begin() + off + gd.size(), cur.letters.end())};
    CTerm layer = p.gen(name);
    if (!left.empty()) layer = CTerm::tensor(CTerm::id(left), layer);
    if (!right.empty()) layer = CTerm::tensor(layer, CTerm::id(right));
    t = CTerm::compose(layer, t);
  }
  return t;
}

}  // namespace

TEST_CASE("identity terms slice to empty diagrams") {
  CTerm t = CTerm::id(Word::of("x") * Word::of("y"));
  CDiagram d = canonical_cdiagram(t);
  REQUIRE(d.empty());
  REQUIRE(d.dom() == std::vector<std::string>{"x", "y"});
  REQUIRE(d.cod() == d.dom());
}

TEST_CASE("interchange-equivalent terms give identical diagrams") {
  Presentation p = rich_base();
  CTerm f = p.gen("f"), h = p.gen("h");
  // (f (x) id);(id (x) h) vs (id (x) h);(f (x) id) vs f (x) h
  CTerm a = CTerm::compose(CTerm::tensor(CTerm::id(Word::of("y")), h),
                           CTerm::tensor(f, CTerm::id(Word::of("y"))));
  CTerm b = CTerm::compose(CTerm::tensor(f, CTerm::id(Word::of("y"))),
                           CTerm::tensor(CTerm::id(Word::of("x")), h));
  CTerm c = CTerm::tensor(f, h);
  REQUIRE(canonical_cdiagram(a) == canonical_cdiagram(c));
  REQUIRE(canonical_cdiagram(b) == canonical_cdiagram(c));
}

TEST_CASE("canonicalization is idempotent and shuffle-invariant") {
  Presentation p = rich_base();
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    CTerm t = random_cterm(p, rng);
    CDiagram d = canonical_cdiagram(t);
    REQUIRE(d.canonical() == d);
    // scramble within the interchange class by random valid transpositions
    CDiagram s = d;
    std::uniform_int_distribution<std::size_t> pos(0, s.size() == 0 ? 0 : s.size() - 1);
    for (int k = 0; k < 20 && s.size() > 1; ++k) s.transpose_adjacent(pos(rng) % (s.size() - 1));
    REQUIRE(s.canonical() == d);
  }
}

TEST_CASE("boundaries chain through slices") {
  Presentation p = rich_base();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    CTerm t = random_cterm(p, rng);
    CDiagram d = canonical_cdiagram(t);
    REQUIRE(boundary_word(d.dom()) == t.dom());
    REQUIRE(boundary_word(d.cod()) == t.cod());
    // re-pushing every slice on the stated boundaries must succeed
    CDiagram rebuilt(d.dom());
    for (const auto& s : d.slices()) REQUIRE_NOTHROW(rebuilt.push(s.offset, s.box));
    REQUIRE(rebuilt.cod() == d.cod());
  }
}

TEST_CASE("diagram to term and back") {
  Presentation p = rich_base();
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    CTerm t = random_cterm(p, rng);
    CDiagram d = canonical_cdiagram(t);
    CTerm back = diagram_to_cterm(d);
    REQUIRE(infer_type(p, back) == infer_type(p, t));
    REQUIRE(canonical_cdiagram(back) == d);
  }
}

TEST_CASE("split_beside recovers side-by-side tensors") {
  Presentation p = rich_base();
  CDiagram fh = canonical_cdiagram(CTerm::tensor(p.gen("f"), p.gen("h")));
  auto parts = split_beside(fh, 1);
  REQUIRE(parts.has_value());
  REQUIRE(parts->first == canonical_cdiagram(p.gen("f")));
  REQUIRE(parts->second == canonical_cdiagram(p.gen("h")));
  // a box straddling the seam prevents the split
  CDiagram md = canonical_cdiagram(p.gen("m"));
  REQUIRE_FALSE(split_beside(md, 1).has_value());
}

TEST_CASE("relation matching finds embedded occurrences across skips") {
  Presentation p = rich_base();
  // host: (g;f at offset 0) interleaved with h on a distant wire
  CDiagram host(std::vector<std::string>{"x", "y"});
  host.push(0, CBox{"f", Word::of("x"), Word::of("y")});
  host.push(1, CBox{"h", Word::of("y"), Word::of("y")});
  host.push(0, CBox{"g", Word::of("y"), Word::of("x")});
  host.canonicalize();
  CDiagram pat = canonical_cdiagram(CTerm::compose(p.gen("g"), p.gen("f")));
  auto ms = find_matches(host, pat);
  REQUIRE_FALSE(ms.empty());
  CDiagram rhs = canonical_cdiagram(CTerm::id(Word::of("x")));
  CDiagram result = apply_match(host, pat, rhs, ms.front());
  CDiagram expect(std::vector<std::string>{"x", "y"});
  expect.push(1, CBox{"h", Word::of("y"), Word::of("y")});
  expect.canonicalize();
  REQUIRE(result == expect);
}
