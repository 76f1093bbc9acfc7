#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "revprime/boundcheck.hpp"
#include "revprime/digits.hpp"

using namespace revprime;

namespace {

// independent oracle: repeated division, collecting digits into a vector
std::vector<int> digits_oracle(std::int64_t n, std::int64_t g) {
  std::vector<int> d;
  while (n > 0) {
    d.push_back(static_cast<int>(n % g));
    n /= g;
  }
  return d;
}

std::int64_t reverse_oracle(std::int64_t n, std::int64_t g) {
  auto d = digits_oracle(n, g);
  std::int64_t v = 0;
  for (int x : d) v = v * g + x;  // reading least-significant first reverses
  return v;
}

}  // namespace

TEST_CASE("to_digits matches hand values and the division oracle") {
  CHECK(to_digits(101, 10).digits == std::vector<int>{1, 0, 1});
  CHECK(to_digits(5, 2).digits == std::vector<int>{1, 0, 1});
  CHECK(to_digits(31699, 10).digits == digits_oracle(31699, 10));
  CHECK(to_digits(31699, 10).digits == std::vector<int>{9, 9, 6, 1, 3});

  CHECK_THROWS_AS(to_digits(0, 10), std::domain_error);
  CHECK_THROWS_AS(to_digits(5, 1), std::domain_error);
}

TEST_CASE("digit_reverse on decimal and binary values") {
  CHECK(digit_reverse(123, 10) == 321);
  CHECK(digit_reverse(101, 10) == 101);  // palindrome
  CHECK(digit_reverse(1300, 10) == 31);  // trailing zeros are dropped
  CHECK(digit_reverse(1300, 10) == reverse_oracle(1300, 10));
  CHECK_THROWS_AS(digit_reverse(0, 10), std::domain_error);
}

TEST_CASE("codec round trip on random values per base") {
  Rng rng(42);
  for (std::int64_t g : {2, 3, 10, 16}) {
    for (int i = 0; i < 100000; ++i) {
      std::int64_t n = rng.uniform_int(1, 1'000'000'000);
      CHECK(from_digits(to_digits(n, g)) == n);
    }
  }
}

TEST_CASE("window membership, size, and enumeration") {
  CHECK(members(Window(2, 2)) == std::vector<std::int64_t>{3});
  CHECK(members(Window(3, 1)) == std::vector<std::int64_t>{1, 2});

  auto w10 = Window(10, 2);
  auto m = members(w10);
  CHECK(m.size() == 81);  // (10-1)^2
  CHECK(w10.size() == 81);
  CHECK(std::is_sorted(m.begin(), m.end()));
  for (std::int64_t n : m) CHECK(n % 10 != 0);

  CHECK(Window(10, 4).size() == 81 * 100);
}

TEST_CASE("window enumeration refuses sizes beyond the cap") {
  std::int64_t old_cap = enum_cap();
  set_enum_cap(1000);
  CHECK_THROWS_AS(members(Window(10, 4)), std::length_error);
  set_enum_cap(old_cap);
}

TEST_CASE("reverse_mod agrees with reversal and rejects bad moduli") {
  CHECK(reverse_mod(13, Window(10, 2), 99) == 31);
  CHECK(reverse_mod(123, Window(10, 3), 9) == 6);
  CHECK(reverse_mod(7, Window(2, 3), 3) == 1);
  CHECK_THROWS_AS(reverse_mod(13, Window(10, 2), 7), std::domain_error);
}

TEST_CASE("reversal is an involution and a bijection on each window") {
  for (std::int64_t g : {2, 3, 10, 16}) {
    for (int n = 1; n <= 4; ++n) {
      Window w(g, n);
      std::vector<std::int64_t> image;
      for_each_member(w, [&](std::int64_t v) {
        std::int64_t r = digit_reverse(v, g);
        CHECK(digit_reverse(r, g) == v);
        CHECK(w.contains(r));
        image.push_back(r);
      });
      std::sort(image.begin(), image.end());
      CHECK(std::adjacent_find(image.begin(), image.end()) == image.end());
      CHECK(static_cast<std::int64_t>(image.size()) == w.size());
    }
  }
}

TEST_CASE("reversal congruence mod divisors of g^2 - 1") {
  for (std::int64_t g : {2, 3, 10, 16}) {
    std::int64_t m = g * g - 1;
    for (int n = 1; n <= 4; ++n) {
      Window w(g, n);
      for_each_member(w, [&](std::int64_t v) {
        CHECK(digit_reverse(v, g) % m == reverse_mod(v, w, m));
      });
    }
  }
}
