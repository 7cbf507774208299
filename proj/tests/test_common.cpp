#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "senlog/common.hpp"

using namespace senlog;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-1, -3) == Rational(1, 3));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(1, 3).str() == "1/3");
  CHECK(Rational(3).str() == "3");
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("string helpers") {
  CHECK(to_lower("Newcastle City Centre") == "newcastle city centre");
  CHECK(split_tokens("The cat, eats the mouse!") ==
        std::vector<std::string>{"The", "cat", "eats", "the", "mouse"});
  CHECK(join({"a", "b", "c"}, ", ") == "a, b, c");
}

TEST_CASE("levenshtein and similarity") {
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("abc", "abc") == 0);
  CHECK(edit_similarity("abc", "abc") == doctest::Approx(1.0));
  CHECK(edit_similarity("", "") == doctest::Approx(1.0));
  CHECK(edit_similarity("abcd", "abce") == doctest::Approx(0.75));
}
