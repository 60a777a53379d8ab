#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "wedge/wedge.hpp"

using namespace wedge;

namespace {

// Independent sign oracle: concatenate the ascending variable lists of a and
// b, then bubble-sort the concatenation while counting transpositions of
// adjacent distinct entries.  The exterior sign is (-1)^swaps.
int brute_force_sign(Mono a, Mono b) {
  std::vector<int> seq = mono_vars(a);
  for (int v : mono_vars(b)) seq.push_back(v);
  int swaps = 0;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = 0; j + 1 < seq.size() - i; ++j)
      if (seq[j] > seq[j + 1]) {
        std::swap(seq[j], seq[j + 1]);
        ++swaps;
      }
  return swaps % 2 == 0 ? 1 : -1;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("degree is the popcount") {
  CHECK(mono_degree(0) == 0);
  CHECK(mono_degree(0b1) == 1);
  CHECK(mono_degree(0b1011) == 3);
  CHECK(mono_degree(~Mono(0)) == 64);
}

TEST_CASE("product sign matches a brute-force transposition count") {
  // Every pair of masks on 6 variables exhaustively, plus random pairs on
  // 10 variables.
  int checked = 0;
  for (Mono a = 0; a < 64; ++a)
    for (Mono b = 0; b < 64; ++b) {
      if (a & b) {
        CHECK_FALSE(mono_mul(a, b, RingMode::Exterior).has_value());
        continue;
      }
      auto p = mono_mul(a, b, RingMode::Exterior);
      REQUIRE(p.has_value());
      CHECK(p->mono == (a | b));
      CHECK(p->sign == brute_force_sign(a, b));
      ++checked;
    }
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 4000; ++trial) {
    Mono a = rng() & 0x3FF, b = rng() & 0x3FF;
    if (a & b) {
      CHECK_FALSE(mono_mul(a, b, RingMode::Exterior).has_value());
      continue;
    }
    auto p = mono_mul(a, b, RingMode::Exterior);
    REQUIRE(p.has_value());
    CHECK(p->mono == (a | b));
    CHECK(p->sign == brute_force_sign(a, b));
    ++checked;
  }
  CHECK(checked > 900);  // 729 exhaustive disjoint pairs + ~5.6% of the trials
}

TEST_CASE("square-zero commutative products carry no sign") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    Mono a = rng() & 0xFF, b = rng() & 0xFF;
    auto p = mono_mul(a, b, RingMode::SquareZeroCommutative);
    if (a & b) {
      CHECK_FALSE(p.has_value());
    } else {
      REQUIRE(p.has_value());
      CHECK(p->sign == 1);
      CHECK(p->mono == (a | b));
    }
  }
}

TEST_CASE("shared variables kill the product in both modes") {
  CHECK_FALSE(mono_mul(0b1, 0b1, RingMode::Exterior).has_value());
  CHECK_FALSE(mono_mul(0b110, 0b010, RingMode::SquareZeroCommutative).has_value());
}

TEST_CASE("anticommutativity of the sign on disjoint monomials") {
  // sign(a,b) * sign(b,a) = (-1)^(deg a * deg b) for disjoint a, b.
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 2000; ++trial) {
    Mono a = rng() & 0xFFF, b = rng() & 0xFFF;
    if (a & b) continue;
    auto ab = mono_mul(a, b, RingMode::Exterior);
    auto ba = mono_mul(b, a, RingMode::Exterior);
    REQUIRE(ab.has_value());
    REQUIRE(ba.has_value());
    int expect = (mono_degree(a) * mono_degree(b)) % 2 == 0 ? 1 : -1;
    CHECK(ab->sign * ba->sign == expect);
  }
}

TEST_CASE("basis monomials enumerate each degree once, ascending") {
  for (int n : {0, 1, 2, 5, 8}) {
    long long total = 0;
    for (int d = 0; d <= n; ++d) {
      std::vector<Mono> ms = basis_monomials(n, d);
      CHECK(static_cast<long long>(ms.size()) == binomial(n, d));
      CHECK(std::is_sorted(ms.begin(), ms.end()));
      std::set<Mono> uniq(ms.begin(), ms.end());
      CHECK(uniq.size() == ms.size());
      for (Mono m : ms) {
        CHECK(mono_degree(m) == d);
        CHECK((n >= 64 || (m >> n) == 0));
      }
      total += static_cast<long long>(ms.size());
    }
    CHECK(total == (1LL << n));
  }
  CHECK(basis_monomials(4, 5).empty());
  CHECK(basis_monomials(4, -1).empty());
}

TEST_CASE("monomial rendering uses declaration names") {
  std::vector<std::string> names{"e1", "e2", "f1", "f2"};
  CHECK(mono_to_string(0, names) == "1");
  CHECK(mono_to_string(0b0001, names) == "e1");
  CHECK(mono_to_string(0b1001, names) == "e1*f2");
  CHECK(mono_to_string(0b1111, names) == "e1*e2*f1*f2");
}

TEST_CASE("mono_vars lists indices ascending") {
  CHECK(mono_vars(0).empty());
  CHECK(mono_vars(0b101001) == std::vector<int>{0, 3, 5});
}
