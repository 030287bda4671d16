#include <doctest.h>
#include <gmpxx.h>

#include <edsf/eds.hpp>
#include <edsf/errors.hpp>
#include <edsf/fermat.hpp>

#include <string>

using namespace edsf;

namespace {

Curve base_curve() { return make_curve(0, 1, 0, -4, 0); }
RationalPoint base_point() { return RationalPoint(mpq_class(-2), mpq_class(2)); }

}  // namespace

TEST_CASE("fermat: base-3 terms of the base example") {
  EdsEvaluator ev(base_curve(), base_point());
  CHECK(fermat_term(ev, 3, 0).value == 1);
  CHECK(fermat_term(ev, 3, 1).value == 3);
  CHECK(fermat_term(ev, 3, 2).value == 3531);
  mpz_class f3 = fermat_term(ev, 3, 3).value;
  CHECK(f3 == mpz_class("450972361881803450728079559362163"));
  CHECK(f3.get_str().size() == 33);
  mpz_class f4 = fermat_term(ev, 3, 4).value;
  std::string s4 = f4.get_str();
  CHECK(s4.size() == 294);
  CHECK(s4.substr(0, 4) == "1378");
  CHECK(s4.substr(s4.size() - 4) == "4011");
}

TEST_CASE("fermat: base-2 terms on the degree-3 target curve") {
  Curve c = make_curve(0, 0, 0, -189, -999);
  RationalPoint p(mpq_class(-8), mpq_class(1));
  EdsEvaluator ev(c, p);
  CHECK(fermat_term(ev, 2, 0).value == 1);
  CHECK(fermat_term(ev, 2, 1).value == 2);
  CHECK(fermat_term(ev, 2, 2).value == 646);
  CHECK(fermat_term(ev, 2, 3).value == mpz_class("2161307043646"));
  CHECK(fermat_term(ev, 2, 4).value.get_str().size() == 49);
  CHECK(fermat_term(ev, 2, 5).value.get_str().size() == 195);
}

TEST_CASE("fermat: base-3 terms on the degree-3 source curve") {
  Curve c = make_curve(0, 0, 0, -9, 9);
  RationalPoint p(mpq_class(1), mpq_class(1));
  EdsEvaluator ev(c, p);
  CHECK(fermat_term(ev, 3, 1).value == 3);
  CHECK(fermat_term(ev, 3, 2).value == 1428945);
  CHECK(fermat_term(ev, 3, 3).value.get_str().size() == 55);
}

TEST_CASE("fermat: telescoping product recovers the denominator") {
  EdsEvaluator ev(base_curve(), base_point());
  mpz_class prod = 1;
  for (unsigned k = 0; k <= 3; ++k) prod *= fermat_term(ev, 3, k).value;
  CHECK(prod == ev.d_term(27));

  Curve c = make_curve(0, 0, 0, -189, -999);
  RationalPoint p(mpq_class(-8), mpq_class(1));
  EdsEvaluator ev2(c, p);
  mpz_class prod2 = 1;
  for (unsigned k = 0; k <= 4; ++k) prod2 *= fermat_term(ev2, 2, k).value;
  CHECK(prod2 == ev2.d_term(16));
}

TEST_CASE("fermat: base 1 collapses to all ones") {
  EdsEvaluator ev(base_curve(), base_point());
  for (unsigned k = 0; k <= 5; ++k) CHECK(fermat_term(ev, 1, k).value == 1);
}

TEST_CASE("fermat: term preconditions") {
  EdsEvaluator ev(base_curve(), base_point());
  CHECK_THROWS_AS(fermat_term(ev, 0, 1), PreconditionFailed);
  FermatTerm t = fermat_term(base_curve(), base_point(), 3, 2);
  CHECK(t.value == 3531);
  CHECK(t.m == 3);
  CHECK(t.k == 2);
}

TEST_CASE("fermat: pairwise gcds divide the base") {
  GcdMatrix g = gcd_matrix(base_curve(), base_point(), 3, 4);
  CHECK(g.all_ok);
  REQUIRE(g.entries.size() == 10);  // pairs over k < l <= 4
  for (const auto& e : g.entries) {
    CAPTURE(e.k);
    CAPTURE(e.l);
    CHECK(e.divides_m);
    if (e.k == 0)
      CHECK(e.value == 1);
    else
      CHECK(e.value == 3);  // consecutive terms share exactly the base here
  }
}

TEST_CASE("fermat: prime-power base forces gcds into {1, m}") {
  EdsEvaluator ev(base_curve(), base_point());
  GcdMatrix g = gcd_matrix(ev, 9, 3);
  CHECK(g.all_ok);
  for (const auto& e : g.entries) {
    CAPTURE(e.k);
    CAPTURE(e.l);
    CHECK((e.value == 1 || e.value == 9));
    if (e.k >= 1) CHECK(e.value == 9);
  }
}

TEST_CASE("fermat: even bases are rejected by the verifiers") {
  EdsEvaluator ev(base_curve(), base_point());
  CHECK_THROWS_AS(gcd_matrix(ev, 4, 3), ParityUnsupported);
  CHECK_THROWS_AS(gcd_matrix(ev, 2, 3), ParityUnsupported);
  CHECK_THROWS_AS(verify_ord_proposition(ev, 2, 7, 2), ParityUnsupported);
  CHECK_THROWS_AS(gcd_matrix(ev, 0, 3), PreconditionFailed);
}

TEST_CASE("fermat: raise mode stays quiet on a conforming sequence") {
  EdsEvaluator ev(base_curve(), base_point());
  GcdMatrix g = gcd_matrix(ev, 3, 3, OnViolation::raise);
  CHECK(g.all_ok);
}

TEST_CASE("fermat: entry points of small primes") {
  EdsEvaluator ev(base_curve(), base_point());
  auto t3 = entry_point(ev, 3, 3, 5);
  REQUIRE(t3.has_value());
  CHECK(*t3 == 2);
  auto t11 = entry_point(ev, 3, 11, 5);
  REQUIRE(t11.has_value());
  CHECK(*t11 == 3);
  auto t107 = entry_point(ev, 3, 107, 5);
  REQUIRE(t107.has_value());
  CHECK(*t107 == 3);
  CHECK_FALSE(entry_point(ev, 3, 5, 4).has_value());
}

TEST_CASE("fermat: valuation at the entry point matches the base") {
  Curve c = base_curve();
  RationalPoint p = base_point();
  // 3 | D_3, so ord_3(F_2) = ord_3(3) = 1
  CHECK(verify_ord_proposition(c, p, 3, 3, 2));
  // 11 | D_9, so ord_11(F_3) = ord_11(3) = 0
  CHECK(verify_ord_proposition(c, p, 3, 11, 3));
  // base 9: 3 | D_9 gives ord_3(F_2) = ord_3(9) = 2
  CHECK(verify_ord_proposition(c, p, 9, 3, 2));
  // precondition: 5 never divides this sequence at 3-power indices
  CHECK_THROWS_AS(verify_ord_proposition(c, p, 3, 5, 2), PreconditionFailed);
}

TEST_CASE("fermat: magnified source terms divide the target terms") {
  Curve cs = make_curve(0, 0, 0, -9, 9);
  RationalPoint ps(mpq_class(1), mpq_class(1));
  Curve ct = make_curve(0, 0, 0, -189, -999);
  RationalPoint pt(mpq_class(-8), mpq_class(1));
  MagnifiedReport r = magnified_divisibility(cs, ps, ct, pt, 2, 4);
  CHECK(r.all_divide);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[0].k == 1);
  CHECK(r.rows[1].f_source == 17);
  CHECK(r.rows[1].f_target == 646);
  CHECK(r.rows[1].divides);
  CHECK(r.rows[3].f_source == mpz_class("23828388739654393"));
}

TEST_CASE("fermat: growth ratio approaches the height prediction") {
  GrowthRatio g = growth_ratio(base_curve(), base_point(), 3, 5);
  CHECK(g.ratio == doctest::Approx(0.1028923714882511).epsilon(1e-9));
  CHECK(g.limit_prediction / g.hhat == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(std::abs(g.ratio - g.limit_prediction) / g.hhat < 5e-4);

  Curve c = make_curve(0, 0, 0, -189, -999);
  RationalPoint p(mpq_class(-8), mpq_class(1));
  GrowthRatio h = growth_ratio(c, p, 2, 5);
  CHECK(h.ratio == doctest::Approx(0.43649849485558373).epsilon(1e-9));
  CHECK(h.limit_prediction / h.hhat == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
  CHECK(std::abs(h.ratio - h.limit_prediction) / h.hhat < 5e-3);
}

TEST_CASE("fermat: growth ratio preconditions") {
  CHECK_THROWS_AS(growth_ratio(base_curve(), base_point(), 1, 3),
                  PreconditionFailed);
  CHECK_THROWS_AS(growth_ratio(base_curve(), base_point(), 3, 0),
                  PreconditionFailed);
}
