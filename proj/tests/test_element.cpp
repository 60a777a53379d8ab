#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "wedge/wedge.hpp"

using namespace wedge;

namespace {

// Random element supported in degrees [0, dmax] with small integer
// coefficients; the raw mt19937_64 stream keeps this reproducible.
template <class K>
Element<K> random_element(const Ring<K>& r, std::mt19937_64& rng, int dmax,
                          int nterms) {
  std::vector<typename Element<K>::Term> t;
  Mono limit = (Mono(1) << r.n()) - 1;
  for (int i = 0; i < nterms; ++i) {
    Mono m = rng() & limit;
    if (mono_degree(m) > dmax) continue;
    long c = static_cast<long>(rng() % 7) - 3;
    t.emplace_back(m, r.field().from_int(c));
  }
  return Element<K>::from_terms(r, std::move(t));
}

template <class K>
Element<K> random_homogeneous(const Ring<K>& r, std::mt19937_64& rng, int d,
                              int nterms) {
  std::vector<typename Element<K>::Term> t;
  std::vector<Mono> basis = basis_monomials(r.n(), d);
  if (basis.empty()) return ring_zero(r);
  for (int i = 0; i < nterms; ++i) {
    Mono m = basis[rng() % basis.size()];
    long c = static_cast<long>(rng() % 7) - 3;
    t.emplace_back(m, r.field().from_int(c));
  }
  return Element<K>::from_terms(r, std::move(t));
}

}  // namespace

TEST_CASE("like terms combine and zeros drop") {
  Ring<Rationals> r(RingMode::Exterior, {"a", "b", "c"}, Rationals{});
  Element<Rationals> x = ring_var(r, 0), y = ring_var(r, 1);
  CHECK((x + y) - x == y);
  CHECK((x - x).is_zero());
  CHECK(x + x == scale(r.field().from_int(2), x));
  CHECK((x * x).is_zero());
}

TEST_CASE("exterior multiplication is associative and distributive") {
  Ring<Rationals> r(RingMode::Exterior,
                    {"v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"},
                    Rationals{});
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_element(r, rng, 3, 4);
    auto b = random_element(r, rng, 3, 4);
    auto c = random_element(r, rng, 3, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("homogeneous elements anticommute by degree parity") {
  Ring<Rationals> r(RingMode::Exterior,
                    {"v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"},
                    Rationals{});
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 400; ++trial) {
    int da = 1 + static_cast<int>(rng() % 3);
    int db = 1 + static_cast<int>(rng() % 3);
    auto a = random_homogeneous(r, rng, da, 3);
    auto b = random_homogeneous(r, rng, db, 3);
    auto ab = a * b;
    auto ba = b * a;
    if ((da * db) % 2 == 0)
      CHECK(ab == ba);
    else
      CHECK(ab == -ba);
  }
}

TEST_CASE("square-zero commutative multiplication is commutative") {
  Ring<Rationals> r(RingMode::SquareZeroCommutative,
                    {"x", "y", "z", "t", "u", "w"}, Rationals{});
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_element(r, rng, 3, 4);
    auto b = random_element(r, rng, 3, 4);
    CHECK(a * b == b * a);
    auto x = ring_var(r, static_cast<int>(rng() % 6));
    CHECK((x * x).is_zero());
  }
}

TEST_CASE("every variable squares to zero in both modes") {
  for (RingMode mode :
       {RingMode::Exterior, RingMode::SquareZeroCommutative}) {
    Ring<PrimeField> r(mode, {"x", "y", "z"}, PrimeField(5));
    for (int i = 0; i < 3; ++i) {
      auto v = ring_var(r, i);
      CHECK((v * v).is_zero());
    }
  }
}

TEST_CASE("degree and homogeneity bookkeeping") {
  Ring<Rationals> r(RingMode::Exterior, {"a", "b", "c", "d"}, Rationals{});
  auto a = ring_var(r, 0), b = ring_var(r, 1), c = ring_var(r, 2);
  CHECK((a * b).degree() == 2);
  CHECK((a * b).is_homogeneous());
  CHECK_FALSE((a + a * b).is_homogeneous());
  CHECK((a * b + b * c).is_homogeneous());
  CHECK(ring_one(r).degree() == 0);
}

TEST_CASE("rendering produces parser-compatible strings") {
  Ring<Rationals> r(RingMode::Exterior, {"e1", "e2", "f1"}, Rationals{});
  auto e1 = ring_var(r, 0), e2 = ring_var(r, 1), f1 = ring_var(r, 2);
  CHECK((e1 * e2).to_string() == "e1*e2");
  CHECK((e1 * e2 - e2 * f1).to_string() == "e1*e2 - e2*f1");
  CHECK((scale(r.field().from_int(-3), e1)).to_string() == "-3*e1");
  auto half = r.field().div(r.field().one(), r.field().from_int(2));
  CHECK(scale(half, e1 * f1).to_string() == "1/2*e1*f1");
  CHECK(ring_one(r).to_string() == "1");
}

TEST_CASE("substitution by a coordinate change is a ring map") {
  Ring<PrimeField> r(RingMode::Exterior, {"v1", "v2", "v3", "v4", "v5"},
                     PrimeField(7));
  const PrimeField& f = r.field();
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 40; ++trial) {
    // random invertible matrix by rejection
    Matrix<PrimeField> u(5, 5, f);
    do {
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) u.at(i, j) = rng() % 7;
    } while (!mat_inverse(u, f));
    CoordinateChange<PrimeField> ch(r, u);
    auto a = random_element(r, rng, 2, 4);
    auto b = random_element(r, rng, 2, 4);
    CHECK(substitute(a * b, ch) == substitute(a, ch) * substitute(b, ch));
    CHECK(substitute(a + b, ch) == substitute(a, ch) + substitute(b, ch));
    // inverse change undoes it
    CHECK(substitute(substitute(a, ch), ch.inverse()) == a);
  }
}

TEST_CASE("coordinate changes must be square and invertible") {
  Ring<Rationals> r(RingMode::Exterior, {"a", "b"}, Rationals{});
  Matrix<Rationals> singular(2, 2, r.field());  // all zeros
  CHECK_THROWS_AS(CoordinateChange<Rationals>(r, singular),
                  std::invalid_argument);
}

TEST_CASE("ring rejects bad declarations") {
  CHECK_THROWS_AS(
      Ring<Rationals>(RingMode::Exterior, {"a", "a"}, Rationals{}),
      std::invalid_argument);
  CHECK_THROWS_AS(Ring<Rationals>(RingMode::Exterior, {}, Rationals{}),
                  std::invalid_argument);
  Ring<Rationals> r(RingMode::Exterior, {"a", "b"}, Rationals{});
  CHECK(r.var_index("b") == 1);
  CHECK(r.var_index("zz") == -1);
  CHECK_THROWS_AS(ring_var(r, 2), std::out_of_range);
}
