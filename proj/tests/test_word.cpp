#include "laxcat/word.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace laxcat;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t max_len = 5) {
  static const std::vector<std::string> alphabet = {"x", "y", "z"};
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  Word w;
  std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) w.letters.push_back(alphabet[pick(rng)]);
  return w;
}

}  // namespace

TEST_CASE("word concatenation is associative with unit 1") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Word a = random_word(rng), b = random_word(rng), c = random_word(rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * Word::one() == a);
    REQUIRE(Word::one() * a == a);
  }
}

TEST_CASE("word printing") {
  REQUIRE(Word::one().str() == "1");
  REQUIRE(Word::of("x").str() == "x");
  REQUIRE((Word::of("x") * Word::of("y")).str() == "x.y");
}
