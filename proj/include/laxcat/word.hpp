#pragma once

// Words over the object generators of a presentation: the object monoid is
// free, so objects are exactly lists of generator names. The empty word is
// the monoidal unit and prints as "1".

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace laxcat {

struct Word {
  std::vector<std::string> letters;

  Word() = default;
  explicit Word(std::vector<std::string> ls) : letters(std::move(ls)) {}
  static Word one() { return Word{}; }
  static Word of(std::string letter) { return Word{{std::move(letter)}}; }

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  friend Word operator*(const Word& a, const Word& b) {
    Word r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.letters <=> b.letters;
  }

  std::string str() const {
    if (letters.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (i) s += ".";
      s += letters[i];
    }
    return s;
  }
};

}  // namespace laxcat
