#include <catch2/catch_amalgamated.hpp>

#include <string>
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
Quotient<K> quotient_of(const Ring<K>& r, std::vector<Element<K>> gens) {
  return Quotient<K>(buchberger(Ideal<K>(r, std::move(gens)),
                                TermOrder(OrderKind::DegRevLex, r.n())));
}

Element<Rationals> hyperbolic_form(const Ring<Rationals>& r, int pairs) {
  Element<Rationals> h = ring_zero(r);
  for (int i = 0; i < pairs; ++i)
    h = h + ring_var(r, 2 * i) * ring_var(r, 2 * i + 1);
  return h;
}

}  // namespace

TEST_CASE("monomial quadric: certified Koszul with a verified filtration") {
  Ring<Rationals> r(RingMode::Exterior, vars(2), Rationals{});
  Quotient<Rationals> a =
      quotient_of(r, {ring_var(r, 0) * ring_var(r, 1)});
  KoszulVerdict<Rationals> v = koszul_check(a, {});
  CHECK(v.status == KoszulStatus::CertifiedKoszul);
  REQUIRE(v.filtration.has_value());
  VerifyReport rep = verify_filtration(a, *v.filtration);
  CHECK(rep.ok);
}

TEST_CASE("hyperbolic quadric on four variables: obstruction at index six") {
  Ring<Rationals> r(RingMode::Exterior, vars(4), Rationals{});
  Quotient<Rationals> a = quotient_of(r, {hyperbolic_form(r, 2)});
  KoszulVerdict<Rationals> v = koszul_check(a, {});
  CHECK(v.status == KoszulStatus::CertifiedNonKoszul);
  CHECK(v.witness == NonKoszulWitness::FrobergNegative);
  CHECK(v.froberg_index == 6);
}

TEST_CASE("rank six on six variables: nonlinear syzygy at (3, 5)") {
  // Here the series obstruction stays silent through depth 12 and no
  // variable filtration exists, so the verdict must come from the
  // resolution window.
  Ring<Rationals> r(RingMode::Exterior, vars(6), Rationals{});
  Quotient<Rationals> a = quotient_of(r, {hyperbolic_form(r, 3)});
  TruncSeries h = hilbert_series(a);
  CHECK(froberg_obstruction(h, 12) == std::nullopt);
  KoszulVerdict<Rationals> v = koszul_check(a, {});
  CHECK(v.status == KoszulStatus::CertifiedNonKoszul);
  CHECK(v.witness == NonKoszulWitness::NonlinearBetti);
  CHECK(v.nonlinear_i == 3);
  CHECK(v.nonlinear_j == 5);
}

TEST_CASE("whole exterior algebra is certified Koszul") {
  Ring<Rationals> r(RingMode::Exterior, vars(3), Rationals{});
  Quotient<Rationals> a = Quotient<Rationals>::whole_ring(r);
  KoszulVerdict<Rationals> v = koszul_check(a, {});
  CHECK(v.status == KoszulStatus::CertifiedKoszul);
  REQUIRE(v.filtration.has_value());
  CHECK(verify_filtration(a, *v.filtration).ok);
}

TEST_CASE("filtration search succeeds on variable pools for monomials") {
  for (int n : {2, 3, 4}) {
    Ring<Rationals> r(RingMode::Exterior, vars(n), Rationals{});
    Quotient<Rationals> a =
        quotient_of(r, {ring_var(r, 0) * ring_var(r, 1)});
    FiltrationSearch<Rationals> s = find_koszul_filtration(a, {}, 5000);
    REQUIRE(s.filtration.has_value());
    CHECK_FALSE(s.budget_exceeded);
    CHECK(verify_filtration(a, *s.filtration).ok);
    // zero and maximal members present by construction
    const Filtration<Rationals>& f = *s.filtration;
    CHECK(f.ideals[static_cast<size_t>(f.zero_at)].gens.empty());
    CHECK(f.ideals[static_cast<size_t>(f.max_at)].gens.size() ==
          static_cast<size_t>(n));
  }
}

TEST_CASE("filtration search needs combined forms on the binomial pair") {
  Ring<Rationals> r(RingMode::Exterior, {"e1", "e2", "f1", "f2"},
                    Rationals{});
  auto e1 = ring_var(r, 0), e2 = ring_var(r, 1), f1 = ring_var(r, 2),
       f2 = ring_var(r, 3);
  Quotient<Rationals> a =
      quotient_of(r, {e1 * e2 - f1 * f2, e1 * f1 - e2 * f2});
  // variables alone do not witness this quotient
  FiltrationSearch<Rationals> bare = find_koszul_filtration(a, {}, 5000);
  CHECK_FALSE(bare.filtration.has_value());
  // an extended pool does
  std::vector<Element<Rationals>> pool{e1,      e2,      f1,      f2,
                                       e1 + f2, e1 - f2, e2 + f1, e2 - f1};
  FiltrationSearch<Rationals> s = find_koszul_filtration(a, pool, 5000);
  REQUIRE(s.filtration.has_value());
  CHECK(verify_filtration(a, *s.filtration).ok);
}

TEST_CASE("verification rejects tampered certificates") {
  Ring<Rationals> r(RingMode::Exterior, vars(2), Rationals{});
  Quotient<Rationals> a =
      quotient_of(r, {ring_var(r, 0) * ring_var(r, 1)});
  FiltrationSearch<Rationals> s = find_koszul_filtration(a, {}, 5000);
  REQUIRE(s.filtration.has_value());

  SECTION("dropping the zero ideal") {
    Filtration<Rationals> f = *s.filtration;
    f.ideals.erase(f.ideals.begin() + f.zero_at);
    // indices now dangle or point at the wrong members
    CHECK_FALSE(verify_filtration(a, f).ok);
  }
  SECTION("wrong colon pointer") {
    Filtration<Rationals> f = *s.filtration;
    for (auto& fi : f.ideals)
      if (fi.parent >= 0) fi.colon = fi.parent;  // parent is never colon here
    CHECK_FALSE(verify_filtration(a, f).ok);
  }
  SECTION("nonlinear witness form") {
    Filtration<Rationals> f = *s.filtration;
    bool tampered = false;
    for (auto& fi : f.ideals)
      if (fi.parent >= 0 && !tampered) {
        fi.x = fi.x * fi.x;  // zero, not linear
        tampered = true;
      }
    REQUIRE(tampered);
    CHECK_FALSE(verify_filtration(a, f).ok);
  }
  SECTION("missing maximal ideal") {
    Filtration<Rationals> f = *s.filtration;
    f.max_at = f.zero_at;
    CHECK_FALSE(verify_filtration(a, f).ok);
  }
}

TEST_CASE("search budget is respected and reported") {
  Ring<Rationals> r(RingMode::Exterior, vars(4), Rationals{});
  Quotient<Rationals> a =
      quotient_of(r, {ring_var(r, 0) * ring_var(r, 1)});
  FiltrationSearch<Rationals> s = find_koszul_filtration(a, {}, 2);
  CHECK(s.budget_exceeded);
  CHECK_FALSE(s.filtration.has_value());
}

TEST_CASE("hypersurface classification matches the rank rule") {
  Ring<Rationals> r(RingMode::Exterior, vars(6), Rationals{});
  auto v = [&](int i) { return ring_var(r, i); };
  CHECK(classify_hypersurface(ring_zero(r)));
  CHECK(classify_hypersurface(v(0) * v(1)));
  CHECK(classify_hypersurface((v(0) + v(2)) * (v(1) + v(5))));
  CHECK_FALSE(classify_hypersurface(v(0) * v(1) + v(2) * v(3)));
  CHECK_FALSE(
      classify_hypersurface(v(0) * v(1) + v(2) * v(3) + v(4) * v(5)));
}

TEST_CASE("cross validation agrees on every normal form up to six variables") {
  PrimeField f5(5);
  for (int n = 2; n <= 6; ++n) {
    Ring<PrimeField> r(RingMode::Exterior, vars(n), f5);
    for (int rank2 = 0; 2 * rank2 <= n; ++rank2) {
      Element<PrimeField> h = ring_zero(r);
      for (int k = 0; k < rank2; ++k)
        h = h + ring_var(r, 2 * k) * ring_var(r, 2 * k + 1);
      CrossReport<PrimeField> rep = cross_validate(h, 6, 12);
      CHECK(rep.rank == 2 * rank2);
      CHECK(rep.predicted_koszul == (2 * rank2 <= 2));
      CHECK(rep.agree);
    }
  }
}

TEST_CASE("koszul_check and the search validate their inputs") {
  Ring<Rationals> r(RingMode::Exterior, vars(2), Rationals{});
  Quotient<Rationals> a =
      quotient_of(r, {ring_var(r, 0) * ring_var(r, 1)});
  KoszulOptions<Rationals> bad;
  bad.i_max = 0;
  CHECK_THROWS_AS(koszul_check(a, bad), std::invalid_argument);
  // pool entries must be linear
  std::vector<Element<Rationals>> pool{ring_var(r, 0) * ring_var(r, 1)};
  CHECK_THROWS_AS(find_koszul_filtration(a, pool, 100),
                  std::invalid_argument);
  // at most 16 forms
  std::vector<Element<Rationals>> big(
      17, ring_var(r, 0));
  CHECK_THROWS_AS(find_koszul_filtration(a, big, 100),
                  std::invalid_argument);
}
