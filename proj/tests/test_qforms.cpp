#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "wedge/wedge.hpp"

using namespace wedge;

namespace {

std::vector<std::string> vars(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

template <class K>
Element<K> random_quadric(const Ring<K>& r, std::mt19937_64& rng) {
  std::vector<typename Element<K>::Term> t;
  for (int i = 0; i < r.n(); ++i)
    for (int j = i + 1; j < r.n(); ++j) {
      long c = static_cast<long>(rng() % r.field().characteristic());
      if (c)
        t.emplace_back((Mono(1) << i) | (Mono(1) << j),
                       r.field().from_int(c));
    }
  return Element<K>::from_terms(r, std::move(t));
}

template <class K>
Matrix<K> random_invertible(const Ring<K>& r, std::mt19937_64& rng) {
  const K& f = r.field();
  Matrix<K> u(r.n(), r.n(), f);
  do {
    for (int i = 0; i < r.n(); ++i)
      for (int j = 0; j < r.n(); ++j)
        u.at(i, j) = f.from_int(static_cast<long>(
            rng() % f.characteristic()));
  } while (!mat_inverse(u, f));
  return u;
}

}  // namespace

TEST_CASE("alternating matrix of a quadric is skew with zero diagonal") {
  Ring<Rationals> r(RingMode::Exterior, vars(4), Rationals{});
  auto h = ring_var(r, 0) * ring_var(r, 2) +
           scale(r.field().from_int(3), ring_var(r, 1) * ring_var(r, 3));
  Matrix<Rationals> a = qform_to_matrix(h);
  for (int i = 0; i < 4; ++i) {
    CHECK(a.at(i, i) == 0);
    for (int j = 0; j < 4; ++j) CHECK(a.at(i, j) == -a.at(j, i));
  }
  CHECK(a.at(0, 2) == 1);
  CHECK(a.at(1, 3) == 3);
}

TEST_CASE("rank of hand forms") {
  Ring<Rationals> r(RingMode::Exterior, vars(6), Rationals{});
  const Rationals& q = r.field();
  auto v = [&](int i) { return ring_var(r, i); };
  CHECK(rank_alternating(qform_to_matrix(ring_zero(r)), q) == 0);
  CHECK(rank_alternating(qform_to_matrix(v(0) * v(1)), q) == 2);
  CHECK(rank_alternating(qform_to_matrix(v(0) * v(1) + v(2) * v(3)), q) == 4);
  CHECK(rank_alternating(
            qform_to_matrix(v(0) * v(1) + v(2) * v(3) + v(4) * v(5)), q) ==
        6);
  // (v1+v3)(v2+v4) has rank 2 despite four variables appearing
  auto prod = (v(0) + v(2)) * (v(1) + v(3));
  CHECK(rank_alternating(qform_to_matrix(prod), q) == 2);
}

TEST_CASE("symplectic normal form round-trips on random F5 quadrics") {
  PrimeField f5(5);
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);  // 2..6
    Ring<PrimeField> r(RingMode::Exterior, vars(n), f5);
    Element<PrimeField> h = random_quadric(r, rng);
    SymplecticNF<PrimeField> s = symplectic_normal_form(h);
    CHECK(s.rank == rank_alternating(qform_to_matrix(h), f5));
    CHECK(s.rank % 2 == 0);
    CHECK(substitute(h, s.change) == s.normal_form);
    // the normal form is v1v2 + v3v4 + ... with rank/2 terms
    Element<PrimeField> expect = ring_zero(r);
    for (int k = 0; 2 * k + 1 < n && k < s.rank / 2; ++k)
      expect = expect + ring_var(r, 2 * k) * ring_var(r, 2 * k + 1);
    CHECK(s.normal_form == expect);
  }
}

TEST_CASE("rank is invariant under invertible coordinate changes") {
  PrimeField f7(7);
  std::mt19937_64 rng(56);
  Ring<PrimeField> r(RingMode::Exterior, vars(5), f7);
  for (int trial = 0; trial < 30; ++trial) {
    Element<PrimeField> h = random_quadric(r, rng);
    int rank = rank_alternating(qform_to_matrix(h), f7);
    CoordinateChange<PrimeField> ch(r, random_invertible(r, rng));
    Element<PrimeField> h2 = substitute(h, ch);
    CHECK(rank_alternating(qform_to_matrix(h2), f7) == rank);
  }
}

TEST_CASE("factorization finds the two linear factors when rank <= 2") {
  PrimeField f5(5);
  std::mt19937_64 rng(57);
  Ring<PrimeField> r(RingMode::Exterior, vars(5), f5);
  auto random_linear = [&]() {
    std::vector<Element<PrimeField>::Term> t;
    for (int i = 0; i < 5; ++i) {
      long c = static_cast<long>(rng() % 5);
      if (c) t.emplace_back(Mono(1) << i, f5.from_int(c));
    }
    return Element<PrimeField>::from_terms(r, std::move(t));
  };
  int products = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Element<PrimeField> a = random_linear(), b = random_linear();
    Element<PrimeField> h = a * b;
    FactorResult<PrimeField> fr = factor_reducible(h);
    if (h.is_zero()) {
      CHECK(fr.kind == FactorResult<PrimeField>::Kind::Zero);
      continue;
    }
    REQUIRE(fr.kind == FactorResult<PrimeField>::Kind::Product);
    REQUIRE(fr.factors.has_value());
    CHECK(fr.factors->first * fr.factors->second == h);
    ++products;
  }
  CHECK(products > 30);
}

TEST_CASE("rank four and above is irreducible") {
  Ring<Rationals> r(RingMode::Exterior, vars(6), Rationals{});
  auto v = [&](int i) { return ring_var(r, i); };
  for (auto h : {v(0) * v(1) + v(2) * v(3),
                 v(0) * v(1) + v(2) * v(3) + v(4) * v(5),
                 v(0) * v(3) + v(1) * v(4) - v(2) * v(5)}) {
    CHECK(factor_reducible(h).kind ==
          FactorResult<Rationals>::Kind::Irreducible);
    CHECK_FALSE(is_reducible(h));
  }
  CHECK(is_reducible(v(0) * v(1)));
  CHECK(is_reducible(ring_zero(r)));
}

TEST_CASE("reducibility agrees with exhaustive factor search over F2") {
  // Every quadric on 4 variables over F2: compare is_reducible against a
  // brute-force search through all pairs of linear forms.
  PrimeField f2(2);
  Ring<PrimeField> r(RingMode::Exterior, vars(4), f2);
  std::vector<Element<PrimeField>> linears;
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<Element<PrimeField>::Term> t;
    for (int i = 0; i < 4; ++i)
      if (mask & (1u << i)) t.emplace_back(Mono(1) << i, f2.one());
    linears.push_back(Element<PrimeField>::from_terms(r, std::move(t)));
  }
  int mismatches = 0;
  for (unsigned cm = 0; cm < 64; ++cm) {  // 6 pair-coefficients over F2
    std::vector<Element<PrimeField>::Term> t;
    int bit = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j, ++bit)
        if (cm & (1u << bit))
          t.emplace_back((Mono(1) << i) | (Mono(1) << j), f2.one());
    Element<PrimeField> h =
        Element<PrimeField>::from_terms(r, std::move(t));
    bool brute = false;
    for (const auto& a : linears)
      for (const auto& b : linears)
        if (a * b == h) brute = true;
    if (h.is_zero()) brute = true;  // 0 = 0 * 0
    if (is_reducible(h) != brute) ++mismatches;
    CHECK(is_reducible(h) == (rank_alternating(qform_to_matrix(h), f2) <= 2));
  }
  CHECK(mismatches == 0);
}

TEST_CASE("quadric validation rejects non-quadrics") {
  Ring<Rationals> r(RingMode::Exterior, vars(3), Rationals{});
  auto v = [&](int i) { return ring_var(r, i); };
  CHECK_THROWS_AS(symplectic_normal_form(v(0)), std::invalid_argument);
  CHECK_THROWS_AS(qform_to_matrix(v(0) + v(0) * v(1)),
                  std::invalid_argument);
}
