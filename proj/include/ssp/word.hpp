// Unnormalized words in the polycyclic generators: input to collection.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ssp/exponent_vector.hpp"
#include "ssp/zp.hpp"

namespace ssp {

// One syllable g^e.  Exponents may be arbitrary integers on input; the
// collector reduces them mod p.
struct Letter {
  int gen;  // 1-based generator index
  int exp;
};

// A word as a sequence of syllables, not necessarily in normal form.
struct GroupWord {
  std::vector<Letter> letters;

  GroupWord() = default;
  GroupWord(std::initializer_list<Letter> init) : letters(init) {}

  void push(int gen, int exp) {
    if (exp != 0) letters.push_back({gen, exp});
  }

  // Append a normal form left to right.
  void push_vector(const ExponentVector& v) {
    for (int g = 1; g <= static_cast<int>(v.size()); ++g)
      if (v.exp_of(g) != 0) letters.push_back({g, v.exp_of(g)});
  }

  // Append the inverse of a normal form: reversed syllables, negated exps.
  void push_vector_inverse(const ExponentVector& v) {
    for (int g = static_cast<int>(v.size()); g >= 1; --g)
      if (v.exp_of(g) != 0) letters.push_back({g, -v.exp_of(g)});
  }

  void validate(std::size_t n) const {
    for (const Letter& l : letters)
      if (l.gen < 1 || l.gen > static_cast<int>(n))
        throw validation_error("word references generator " +
                               std::to_string(l.gen) + " outside 1.." +
                               std::to_string(n));
  }
};

}  // namespace ssp
