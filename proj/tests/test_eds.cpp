#include <doctest.h>
#include <gmpxx.h>

#include <edsf/eds.hpp>
#include <edsf/errors.hpp>

#include <string>
#include <vector>

using namespace edsf;

namespace {

Curve base_curve() { return make_curve(0, 1, 0, -4, 0); }
RationalPoint base_point() { return RationalPoint(mpq_class(-2), mpq_class(2)); }

// D_1..D_30 for P = (-2,2) on y^2 = x^3 + x^2 - 4x, computed independently
// by rational-point arithmetic over the exact group law.
const char* const kDseq[] = {
    "1", "1", "3", "4", "19", "39", "257", "40", "10593", "69559",
    "1288211", "10866804", "327262787", "4125146321", "179821847649",
    "358822268080", "305467298345249", "13128546056335281",
    "1504317663657853507", "80201700409123200404",
    "15330778416257757717651", "1183033951759840536784919",
    "342571016647096925416476193", "6565773229413192764134272120",
    "23977893337102388418121860200257", "6724637967584998371136954885281479",
    "4777150229413943953562546772323392659",
    "1608056506921316425427077979155146200804",
    "1953311602640511372592645408107773596453123",
    "919575363885597138109791677260248860333342241"};

}  // namespace

TEST_CASE("eds: first thirty denominator terms of the base example") {
  EdsEvaluator ev(base_curve(), base_point());
  for (int n = 1; n <= 30; ++n) {
    CAPTURE(n);
    CHECK(ev.d_term(n) == mpz_class(kDseq[n - 1]));
  }
}

TEST_CASE("eds: evaluator agrees with the one-shot entry points") {
  Curve c = base_curve();
  RationalPoint p = base_point();
  EdsEvaluator ev(c, p);
  CHECK(eds_decompose(c, p, 9).d == ev.d_term(9));
  CHECK(eds_decompose(c, p, 9).a == -213293858);
  CHECK(eds_decompose(c, p, 9).b == mpz_class("2478721052834"));

  std::vector<mpz_class> idx = {1, 3, 9, 27};
  std::vector<mpz_class> d = eds_terms(c, p, idx);
  REQUIRE(d.size() == 4);
  CHECK(d[0] == 1);
  CHECK(d[1] == 3);
  CHECK(d[2] == 10593);
  CHECK(d[3] == mpz_class("4777150229413943953562546772323392659"));
}

TEST_CASE("eds: decompose splits coordinates as (a/d^2, b/d^3)") {
  EdsEvaluator ev(base_curve(), base_point());
  EdsDecomposition d9 = ev.decompose(9);
  CHECK(d9.a == -213293858);
  CHECK(d9.b == mpz_class("2478721052834"));
  CHECK(d9.d == 10593);
  RationalPoint p9 = ev.multiple(9);
  CHECK(p9.x() == mpq_class(d9.a) / mpq_class(d9.d * d9.d));
  CHECK(p9.y() == mpq_class(d9.b) / mpq_class(d9.d * d9.d * d9.d));

  EdsDecomposition d1 = ev.decompose(1);
  CHECK(d1.d == 1);  // normalized point
}

TEST_CASE("eds: divisibility law m | n implies D_m | D_n") {
  CHECK(verify_divisibility_law(base_curve(), base_point(), 20));
  Curve e1p = make_curve(0, 0, 0, -9, 9);
  RationalPoint p1p(mpq_class(1), mpq_class(1));
  CHECK(verify_divisibility_law(e1p, p1p, 16));
}

TEST_CASE("eds: composite modulus 1177 enters at D_9") {
  EdsEvaluator ev(base_curve(), base_point());
  mpz_class n1177 = 1177;  // 11 * 107
  CHECK(ev.d_term(9) % n1177 == 0);
  CHECK(ev.d_term(3) % n1177 != 0);
}

TEST_CASE("eds: valuation identity spot checks") {
  Curve c = base_curve();
  RationalPoint p = base_point();
  SsValuation v = verify_ss_valuation(c, p, 3, 3, 3);  // ord_3(D_9) vs ord_3(3 D_3)
  CHECK(v.lhs == 2);
  CHECK(v.rhs == 2);
  CHECK(v.equal);

  SsValuation w = verify_ss_valuation(c, p, 11, 9, 3);  // ord_11(D_27)
  CHECK(w.lhs == 1);
  CHECK(w.rhs == 1);
  CHECK(w.equal);
}

TEST_CASE("eds: non-integral points are rejected as non-normalized") {
  // (1/4, -1/8) lies on y^2 = x^3 + 4x^2 - x but has D_1 = 2
  Curve c = make_curve(0, 4, 0, -1, 0);
  RationalPoint p(mpq_class(1, 4), mpq_class(-1, 8));
  REQUIRE(is_on_curve(c, p));
  CHECK_THROWS_AS(EdsEvaluator(c, p), NonNormalized);
  CHECK_THROWS_AS(eds_decompose(c, p, 2), NonNormalized);
}

TEST_CASE("eds: torsion multiples have no denominator term") {
  Curve c = make_curve(0, 0, 0, -1, 0);
  RationalPoint t(mpq_class(0), mpq_class(0));  // order 2
  EdsEvaluator ev(c, t);
  CHECK(ev.d_term(1) == 1);
  CHECK_THROWS_AS(ev.d_term(2), TorsionOrIdentity);
  CHECK_THROWS_AS(eds_decompose(c, t, 4), TorsionOrIdentity);
}

TEST_CASE("eds: decompose_coords guards hand-built coordinates") {
  // x-denominator 3 is not a perfect square
  RationalPoint bad(mpq_class(1, 3), mpq_class(1, 27));
  CHECK_THROWS_AS(decompose_coords(bad, 5), NonSquareDenominator);
  // square x-denominator whose y-denominator is not the matching cube
  RationalPoint bad2(mpq_class(1, 9), mpq_class(1, 9));
  CHECK_THROWS_AS(decompose_coords(bad2, 5), NonSquareDenominator);
  CHECK_THROWS_AS(decompose_coords(RationalPoint::identity(), 2),
                  TorsionOrIdentity);

  EdsDecomposition ok = decompose_coords(
      RationalPoint(mpq_class(-2, 9), mpq_class(26, 27)), 3);
  CHECK(ok.a == -2);
  CHECK(ok.b == 26);
  CHECK(ok.d == 3);
  CHECK(ok.n == 3);
}

TEST_CASE("eds: d_term demands n >= 1") {
  EdsEvaluator ev(base_curve(), base_point());
  CHECK_THROWS_AS(ev.d_term(0), PreconditionFailed);
  CHECK(ev.multiple(0).is_identity());
}
