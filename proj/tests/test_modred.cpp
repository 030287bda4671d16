#include <doctest.h>
#include <gmpxx.h>

#include <edsf/ec.hpp>
#include <edsf/eds.hpp>
#include <edsf/errors.hpp>
#include <edsf/modred.hpp>

#include <numeric>
#include <vector>

using namespace edsf;

namespace {

Curve base_curve() { return make_curve(0, 1, 0, -4, 0); }
RationalPoint base_point() { return RationalPoint(mpq_class(-2), mpq_class(2)); }

}  // namespace

TEST_CASE("modred: coordinate reduction") {
  Curve c = base_curve();
  ModPoint a = reduce_point(c, base_point(), 7);
  CHECK_FALSE(a.identity);
  CHECK(a.x == 5);
  CHECK(a.y == 2);

  RationalPoint p3(mpq_class(-2, 9), mpq_class(26, 27));
  ModPoint b = reduce_point(c, p3, 11);
  CHECK(b.x == 1);
  CHECK(b.y == 3);

  ModPoint o = reduce_point(c, RationalPoint::identity(), 7);
  CHECK(o.identity);
}

TEST_CASE("modred: non-invertible denominators carry their witness") {
  Curve c = base_curve();
  RationalPoint p3(mpq_class(-2, 9), mpq_class(26, 27));
  try {
    reduce_point(c, p3, 3);
    FAIL("expected NonInvertibleDenominator");
  } catch (const NonInvertibleDenominator& e) {
    CHECK(e.witness == 3);
  }
  // composite modulus sharing only one factor with the denominator
  try {
    reduce_point(c, p3, 33);
    FAIL("expected NonInvertibleDenominator");
  } catch (const NonInvertibleDenominator& e) {
    CHECK(e.witness == 3);
  }
}

TEST_CASE("modred: bad reduction is refused") {
  Curve c = base_curve();  // disc = 2^8 * 17
  CHECK_THROWS_AS(reduce_point(c, base_point(), 17), BadReduction);
  CHECK_THROWS_AS(reduce_point(c, base_point(), 2), BadReduction);
  CHECK_THROWS_AS(reduce_point(c, base_point(), 3), BadReduction);  // 3 | 6
  CHECK_THROWS_AS(point_order_bruteforce(c, base_point(), 17), BadReduction);
}

TEST_CASE("modred: group law mod a prime matches brute force orders") {
  Curve c = base_curve();
  RationalPoint p = base_point();
  struct Row {
    unsigned long q, order;
  };
  const Row rows[] = {{5, 8}, {7, 10}, {11, 9}, {13, 6},
                      {23, 18}, {107, 9}, {449, 18}, {593, 148}};
  for (const auto& r : rows) {
    CAPTURE(r.q);
    CHECK(point_order_bruteforce(c, p, r.q) == r.order);
    ModPoint a = reduce_point(c, p, r.q);
    CHECK(mod_scalar_mul(c, r.order, a).identity);
    CHECK_FALSE(mod_scalar_mul(c, r.order / 2, a).identity);
  }
}

TEST_CASE("modred: scalar ladder against repeated addition") {
  Curve c = make_curve(1, -1, 0, -389, -2859);
  RationalPoint p(mpq_class(26), mpq_class(51));
  ModPoint a = reduce_point(c, p, 101);
  ModPoint acc = mod_scalar_mul(c, 0, a);
  CHECK(acc.identity);
  for (int n = 1; n <= 30; ++n) {
    acc = mod_add(c, acc, a);
    ModPoint lad = mod_scalar_mul(c, n, a);
    CAPTURE(n);
    REQUIRE(acc.identity == lad.identity);
    if (!acc.identity) {
      CHECK(acc.x == lad.x);
      CHECK(acc.y == lad.y);
    }
  }
  ModPoint neg = mod_scalar_mul(c, -3, a);
  ModPoint pos = mod_scalar_mul(c, 3, a);
  CHECK(neg.x == mod_negate(c, pos).x);
  CHECK(neg.y == mod_negate(c, pos).y);
  CHECK(mod_add(c, pos, neg).identity);
}

TEST_CASE("modred: moduli must match") {
  Curve c = base_curve();
  ModPoint a = reduce_point(c, base_point(), 7);
  ModPoint b = reduce_point(c, base_point(), 11);
  CHECK_THROWS_AS(mod_add(c, a, b), PreconditionFailed);
}

TEST_CASE("modred: brute force oracle stays in its lane") {
  Curve c = base_curve();
  CHECK_THROWS_AS(point_order_bruteforce(c, base_point(), 1000003),
                  OracleScaleExceeded);
  CHECK_THROWS_AS(point_order_bruteforce(c, base_point(), 91),
                  PreconditionFailed);  // 7 * 13
}

TEST_CASE("modred: order equals the first denominator index it divides") {
  Curve c = base_curve();
  RationalPoint p = base_point();
  EdsEvaluator ev(c, p);
  for (unsigned long q : {5ul, 7ul, 11ul, 13ul, 19ul, 23ul, 107ul, 257ul, 593ul}) {
    CAPTURE(q);
    unsigned long ord = point_order_bruteforce(c, p, q);
    mpz_class dq = ev.d_term(ord);
    CHECK(dq % q == 0);
    // minimality: no proper divisor index works
    for (unsigned long r = 2; r * r <= ord; ++r) {
      if (ord % r) continue;
      CHECK(ev.d_term(ord / r) % q != 0);
      CHECK(ev.d_term(r) % q != 0);
    }
  }
}

TEST_CASE("modred: exact prime-power order test") {
  Curve c = base_curve();
  RationalPoint p = base_point();
  CHECK(has_order_exactly(c, p, 3, 2, 11));        // order 9 mod 11
  CHECK_FALSE(has_order_exactly(c, p, 3, 1, 11));
  CHECK_FALSE(has_order_exactly(c, p, 3, 3, 11));
  CHECK_FALSE(has_order_exactly(c, p, 3, 0, 11));
  CHECK(has_order_exactly(c, p, 3, 2, 107));       // order 9 mod 107
  CHECK(has_order_exactly(c, p, 3, 2, 1177));      // 11 * 107, lcm(9, 9)
  CHECK_FALSE(has_order_exactly(c, p, 3, 2, 593)); // order 148
}

TEST_CASE("modred: composite moduli expose factors through slopes") {
  Curve c = base_curve();
  RationalPoint p = base_point();
  // orders mod 5 and mod 7 are 8 and 10; the ladder to [8]P forces a
  // two-torsion doubling on the mod-5 component
  ModPoint a = reduce_point(c, p, 35);
  try {
    mod_scalar_mul(c, 8, a);
    FAIL("expected NonInvertibleSlope");
  } catch (const NonInvertibleSlope& e) {
    CHECK((e.witness == 5 || e.witness == 7));
    CHECK(35 % e.witness.get_ui() == 0);
  }
}

TEST_CASE("modred: mismatched component orders cannot be walked past") {
  Curve c = base_curve();
  RationalPoint p = base_point();
  // N = 11 * 13: component orders 9 and 6. [18]P is the identity on both
  // sides, but any route to it passes through a state that is the identity
  // modulo one factor only, so the law must surface a witness instead.
  unsigned long o11 = point_order_bruteforce(c, p, 11);
  unsigned long o13 = point_order_bruteforce(c, p, 13);
  CHECK(o11 == 9);
  CHECK(o13 == 6);
  CHECK(std::lcm(o11, o13) == 18);
  ModPoint a = reduce_point(c, p, 143);
  try {
    mod_scalar_mul(c, 18, a);
    FAIL("expected NonInvertibleSlope");
  } catch (const NonInvertibleSlope& e) {
    CHECK((e.witness == 11 || e.witness == 13));
  }
  // orders that agree on both components still work
  CHECK_FALSE(mod_scalar_mul(c, 5, a).identity);
}

TEST_CASE("modred: order universality rows on the base example") {
  Curve c = base_curve();
  RationalPoint p = base_point();
  std::vector<OrderUniversalityRow> rows;
  CHECK(verify_order_universality(c, p, 3, 11, 3, &rows));
  REQUIRE(rows.size() == 4);
  CHECK_FALSE(rows[0].order_holds);
  CHECK_FALSE(rows[1].order_holds);
  CHECK(rows[2].order_holds);
  CHECK(rows[2].divisor_holds);
  CHECK_FALSE(rows[3].order_holds);

  CHECK(verify_order_universality(c, p, 3, 1177, 3));
  CHECK(verify_order_universality(c, p, 3, 593, 3));
  CHECK(verify_order_universality(c, p, 3, 5, 3));
}

TEST_CASE("modred: order universality with base two") {
  Curve c = make_curve(0, 0, 0, -189, -999);
  RationalPoint p(mpq_class(-8), mpq_class(1));
  std::vector<OrderUniversalityRow> rows;
  CHECK(verify_order_universality(c, p, 2, 17, 3, &rows));
  REQUIRE(rows.size() == 4);
  CHECK(rows[2].order_holds);  // 17 | F_2 = 646, order 4
  CHECK(rows[2].divisor_holds);
}

TEST_CASE("modred: only odd bases and two are certified") {
  Curve c = base_curve();
  CHECK_THROWS_AS(verify_order_universality(c, base_point(), 4, 11, 2),
                  ParityUnsupported);
  CHECK_THROWS_AS(verify_order_universality(c, base_point(), 6, 11, 2),
                  ParityUnsupported);
}
