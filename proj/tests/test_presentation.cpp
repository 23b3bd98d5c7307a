#include "laxcat/parse.hpp"
#include "laxcat/presentation.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace laxcat;

namespace {

Presentation two_object_base() {
  return parse_presentation("objects: x, y; morphisms: f: x -> y, g: y -> x;");
}

Presentation random_presentation(std::mt19937_64& rng) {
  Presentation p;
  static const std::vector<std::string> obj_pool = {"a", "b", "c", "d"};
  std::uniform_int_distribution<std::size_t> nobj(0, obj_pool.size());
  std::size_t no = nobj(rng);
  for (std::size_t i = 0; i < no; ++i) p.add_object(obj_pool[i]);
  if (no == 0) return p;
  std::uniform_int_distribution<std::size_t> nmor(0, 4);
  std::uniform_int_distribution<std::size_t> wl(0, 3);
  std::uniform_int_distribution<std::size_t> pick(0, no - 1);
  std::size_t nm = nmor(rng);
  for (std::size_t i = 0; i < nm; ++i) {
    Word dom, cod;
    std::size_t dn = wl(rng), cn = wl(rng);
    for (std::size_t k = 0; k < dn; ++k) dom.letters.push_back(obj_pool[pick(rng)]);
    for (std::size_t k = 0; k < cn; ++k) cod.letters.push_back(obj_pool[pick(rng)]);
    p.add_morphism("m" + std::to_string(i), dom, cod);
  }
  return p;
}

}  // namespace

TEST_CASE("empty presentation parses") {
  Presentation p = parse_presentation("objects:; morphisms:;");
  REQUIRE(p.objects().empty());
  REQUIRE(p.morphism_names().empty());
}

TEST_CASE("one object, one endo-generator") {
  Presentation p = parse_presentation("objects: x; morphisms: f: x -> x;");
  REQUIRE(p.objects() == std::vector<std::string>{"x"});
  auto [dom, cod] = p.morphism_type("f");
  REQUIRE(dom == Word::of("x"));
  REQUIRE(cod == Word::of("x"));
}

TEST_CASE("relation sides type-check to dom x, cod x") {
  Presentation p =
      parse_presentation("objects: x, y; morphisms: f: x -> y, g: y -> x; relations: g;f = id(x);");
  REQUIRE(p.relations().size() == 1);
  const Relation& r = p.relations()[0];
  REQUIRE(r.lhs.dom() == Word::of("x"));
  REQUIRE(r.lhs.cod() == Word::of("x"));
  REQUIRE(r.rhs.dom() == Word::of("x"));
  REQUIRE(r.rhs.cod() == Word::of("x"));
}

TEST_CASE("parser reports position on syntax errors") {
  try {
    parse_presentation("objects: x;\nmorphisms: f: x => x;");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.line == 2);
  }
}

TEST_CASE("undeclared names and boundary mismatches are rejected") {
  REQUIRE_THROWS_AS(parse_presentation("objects: x; morphisms: f: x -> w;"), ParseError);
  REQUIRE_THROWS_AS(
      parse_presentation("objects: x, y; morphisms: f: x -> y; relations: f = id(x);"),
      ParseError);
  REQUIRE_THROWS_AS(parse_presentation("objects: x, x;"), ParseError);
  REQUIRE_THROWS_AS(parse_presentation("objects: id;"), ParseError);
}

TEST_CASE("parse/print roundtrip on random presentations") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Presentation p = random_presentation(rng);
    Presentation q = parse_presentation(p.str());
    REQUIRE(p == q);
  }
}

TEST_CASE("roundtrip keeps relations") {
  Presentation p =
      parse_presentation("objects: x, y; morphisms: f: x -> y, g: y -> x;"
                         " relations: g;f = id(x), f;g = id(y), (f*g);(g*f) = id(x.y)*(g;f);");
  Presentation q = parse_presentation(p.str());
  REQUIRE(p == q);
}

TEST_CASE("infer_type on identities, tensors, composites") {
  Presentation p = parse_presentation(
      "objects: x, y, z, w; morphisms: f: x -> y, g: y -> z, h: z -> w;");
  SECTION("identity") {
    CTerm t = CTerm::id(Word::of("x") * Word::of("y"));
    auto [d, c] = infer_type(p, t);
    REQUIRE(d == Word::of("x") * Word::of("y"));
    REQUIRE(c == d);
  }
  SECTION("tensor of generators") {
    CTerm t = CTerm::tensor(p.gen("f"), p.gen("h"));
    auto [d, c] = infer_type(p, t);
    REQUIRE(d == Word::of("x") * Word::of("z"));
    REQUIRE(c == Word::of("y") * Word::of("w"));
  }
  SECTION("composite") {
    CTerm t = CTerm::compose(p.gen("g"), p.gen("f"));
    auto [d, c] = infer_type(p, t);
    REQUIRE(d == Word::of("x"));
    REQUIRE(c == Word::of("z"));
  }
  SECTION("boundary mismatch reports the offending path") {
    REQUIRE_THROWS_AS(CTerm::compose(p.gen("f"), p.gen("g")), TypeError);
    try {
      infer_type(p, CTerm::tensor(p.gen("f"), CTerm::gen("bad", Word::of("x"), Word::of("x"))));
      FAIL("expected NameError");
    } catch (const NameError&) {
    }
  }
}

TEST_CASE("infer_type is stable under re-association") {
  Presentation p = parse_presentation(
      "objects: x; morphisms: a: x -> x, b: x -> x, c: x -> x;");
  CTerm l = CTerm::compose(CTerm::compose(p.gen("a"), p.gen("b")), p.gen("c"));
  CTerm r = CTerm::compose(p.gen("a"), CTerm::compose(p.gen("b"), p.gen("c")));
  auto [dl, cl] = infer_type(p, l);
  auto [dr, cr] = infer_type(p, r);
  REQUIRE(dl == dr);
  REQUIRE(cl == cr);
  CTerm tl = CTerm::tensor(CTerm::tensor(p.gen("a"), p.gen("b")), p.gen("c"));
  CTerm tr = CTerm::tensor(p.gen("a"), CTerm::tensor(p.gen("b"), p.gen("c")));
  REQUIRE(infer_type(p, tl) == infer_type(p, tr));
}

TEST_CASE("cterm printing parses back") {
  Presentation p = two_object_base();
  CTerm t = CTerm::compose(p.gen("g"), CTerm::compose(p.gen("f"),
                                                      CTerm::compose(p.gen("g"), p.gen("f"))));
  CTerm u = CTerm::tensor(t, CTerm::id(Word::of("y")));
  REQUIRE(parse_cterm(u.str(), p) == u);
}
