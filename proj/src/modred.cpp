#include "edsf/modred.hpp"

#include <cstdint>

#include "edsf/eds.hpp"
#include "edsf/errors.hpp"

namespace edsf {

namespace {

mpz_class mod(const mpz_class& v, const mpz_class& n) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  return r;
}

mpz_class invert_or_throw(const mpz_class& v, const mpz_class& n) {
  mpz_class r;
  if (!mpz_invert(r.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t()))
    throw NonInvertibleDenominator("denominator not invertible mod N", gcd(mod(v, n), n));
  return r;
}

void require_good_reduction(const Curve& c, const mpz_class& N) {
  if (N < 2) throw PreconditionFailed("modulus must be >= 2");
  if (gcd(N, mpz_class(6 * c.disc)) != 1)
    throw BadReduction("gcd(N, 6 disc) != 1");
}

bool on_mod_curve(const Curve& c, const ModPoint& a) {
  if (a.identity) return true;
  const mpz_class& n = a.modulus;
  mpz_class lhs = a.y * a.y + c.a1 * a.x * a.y + c.a3 * a.y;
  mpz_class rhs = ((a.x + c.a2) * a.x + c.a4) * a.x + c.a6;
  return mod(lhs - rhs, n) == 0;
}

// Internal law; callers validated the operands.
ModPoint add_impl(const Curve& c, const ModPoint& a, const ModPoint& b) {
  if (a.identity) return b;
  if (b.identity) return a;
  const mpz_class& n = a.modulus;
  ModPoint r;
  r.modulus = n;
  mpz_class lam;
  if (a.x != b.x) {
    mpz_class dx = mod(b.x - a.x, n);
    mpz_class g = gcd(dx, n);
    if (g != 1) throw NonInvertibleSlope("slope denominator shares a factor with N", g);
    lam = mod((b.y - a.y) * invert_or_throw(dx, n), n);
  } else {
    // same x: either negatives of one another or a doubling
    mpz_class s = mod(a.y + b.y + c.a1 * a.x + c.a3, n);
    if (s == 0) return r;  // identity
    if (a.y != b.y) throw NonInvertibleSlope("points agree in x but are neither equal nor negatives",
                               gcd(mod(b.y - a.y, n), n));
    mpz_class t = mod(2 * a.y + c.a1 * a.x + c.a3, n);
    mpz_class g = gcd(t, n);
    if (g != 1) throw NonInvertibleSlope("slope denominator shares a factor with N", g);
    mpz_class num = mod((3 * a.x + 2 * c.a2) * a.x + c.a4 - c.a1 * a.y, n);
    lam = mod(num * invert_or_throw(t, n), n);
  }
  mpz_class nu = mod(a.y - lam * a.x, n);
  r.identity = false;
  r.x = mod(lam * lam + c.a1 * lam - c.a2 - a.x - b.x, n);
  r.y = mod(-(lam + c.a1) * r.x - nu - c.a3, n);
  return r;
}

struct Pt64 {
  bool id = true;
  uint64_t x = 0, y = 0;
};

uint64_t inv_mod_u64(uint64_t a, uint64_t q) {
  // extended Euclid; a < q, gcd(a, q) = 1
  int64_t t = 0, new_t = 1;
  int64_t r = (int64_t)q, new_r = (int64_t)a;
  while (new_r != 0) {
    int64_t quo = r / new_r;
    int64_t tmp = t - quo * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quo * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += (int64_t)q;
  return (uint64_t)t;
}

// Self-contained word-size group law so the brute-force oracle does not
// share code with mod_add. q <= 10^6 keeps every product below 2^63.
Pt64 add64(uint64_t a1, uint64_t a2, uint64_t a3, uint64_t a4, const Pt64& p,
           const Pt64& s, uint64_t q) {
  if (p.id) return s;
  if (s.id) return p;
  uint64_t lam;
  if (p.x != s.x) {
    uint64_t dx = (s.x + q - p.x) % q;
    uint64_t dy = (s.y + q - p.y) % q;
    lam = dy * inv_mod_u64(dx, q) % q;
  } else {
    uint64_t neg = (p.y + s.y + a1 * p.x + a3) % q;
    if (neg == 0) return Pt64{};
    uint64_t t = (2 * p.y + a1 * p.x + a3) % q;
    uint64_t num = (3 * p.x % q * p.x + 2 * a2 * p.x + a4 + q * q - a1 * p.y) % q;
    lam = num * inv_mod_u64(t, q) % q;
  }
  uint64_t x3 = (lam * lam + a1 * lam + 5 * q * q - a2 - p.x - s.x) % q;
  uint64_t nu = (p.y + q * q - lam * p.x % q) % q;
  uint64_t y3 = (q * q * 2 - (lam + a1) * x3 % q - nu - a3) % q;
  Pt64 r;
  r.id = false;
  r.x = x3;
  r.y = y3;
  return r;
}

}  // namespace

ModPoint reduce_point(const Curve& c, const RationalPoint& p,
                      const mpz_class& N) {
  if (N < 2) throw PreconditionFailed("modulus must be >= 2");
  ModPoint r;
  r.modulus = N;
  if (p.is_identity()) {
    require_good_reduction(c, N);
    return r;
  }
  const mpq_class& x = p.x();
  const mpq_class& y = p.y();
  // denominators first: the expected failure on N | D_n inputs
  mpz_class gx = gcd(mpz_class(x.get_den() % N), N);
  if (gx != 1)
    throw NonInvertibleDenominator("x-denominator shares a factor with N", gx);
  mpz_class gy = gcd(mpz_class(y.get_den() % N), N);
  if (gy != 1)
    throw NonInvertibleDenominator("y-denominator shares a factor with N", gy);
  require_good_reduction(c, N);
  r.identity = false;
  r.x = mod(x.get_num() * invert_or_throw(x.get_den(), N), N);
  r.y = mod(y.get_num() * invert_or_throw(y.get_den(), N), N);
  return r;
}

ModPoint mod_add(const Curve& c, const ModPoint& a, const ModPoint& b) {
  if (!a.identity && !b.identity && a.modulus != b.modulus)
    throw PreconditionFailed("mismatched moduli");
  if (!on_mod_curve(c, a) || !on_mod_curve(c, b))
    throw PointNotOnCurve("mod_add operand not on the reduced curve");
  return add_impl(c, a, b);
}

ModPoint mod_negate(const Curve& c, const ModPoint& a) {
  if (a.identity) return a;
  ModPoint r = a;
  r.y = mod(-a.y - c.a1 * a.x - c.a3, a.modulus);
  return r;
}

ModPoint mod_scalar_mul(const Curve& c, const mpz_class& n, const ModPoint& a) {
  if (!on_mod_curve(c, a))
    throw PointNotOnCurve("mod_scalar_mul operand not on the reduced curve");
  mpz_class e = n;
  ModPoint base = a;
  if (e < 0) {
    e = -e;
    base = mod_negate(c, base);
  }
  ModPoint acc;
  acc.modulus = a.modulus;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return acc;
  for (size_t i = bits; i-- > 0;) {
    acc = add_impl(c, acc, acc);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = add_impl(c, acc, base);
  }
  return acc;
}

unsigned long point_order_bruteforce(const Curve& c, const RationalPoint& p,
                                     const mpz_class& q) {
  if (q > 1000000) throw OracleScaleExceeded("brute-force order needs q <= 10^6");
  require_good_reduction(c, q);
  uint64_t qq = q.get_ui();
  for (uint64_t f = 2; f * f <= qq; ++f)
    if (qq % f == 0) throw PreconditionFailed("q must be prime");
  ModPoint m = reduce_point(c, p, q);
  if (m.identity) return 1;
  auto coeff = [&](const mpz_class& a) { return mod(a, q).get_ui(); };
  uint64_t a1 = coeff(c.a1), a2 = coeff(c.a2), a3 = coeff(c.a3),
           a4 = coeff(c.a4);
  Pt64 base;
  base.id = false;
  base.x = m.x.get_ui();
  base.y = m.y.get_ui();
  Pt64 acc = base;
  unsigned long ord = 1;
  while (!acc.id) {
    acc = add64(a1, a2, a3, a4, acc, base, qq);
    ++ord;
  }
  return ord;
}

bool has_order_exactly(const Curve& c, const RationalPoint& p,
                       const mpz_class& m, unsigned k, const mpz_class& N) {
  require_good_reduction(c, N);
  if (m < 1) throw PreconditionFailed("has_order_exactly requires m >= 1");
  ModPoint q;
  if (p.is_identity()) {
    q.modulus = N;
  } else {
    EdsDecomposition dec = decompose_coords(p, 1);
    if (mpz_divisible_p(dec.d.get_mpz_t(), N.get_mpz_t())) {
      q.modulus = N;  // P itself reduces to the identity
    } else {
      q = reduce_point(c, p, N);
    }
  }
  if (k == 0) return q.identity;
  mpz_class mk;
  mpz_pow_ui(mk.get_mpz_t(), m.get_mpz_t(), k);
  if (!mod_scalar_mul(c, mk, q).identity) return false;
  mpz_class mk1;
  mpz_pow_ui(mk1.get_mpz_t(), m.get_mpz_t(), k - 1);
  return !mod_scalar_mul(c, mk1, q).identity;
}

bool verify_order_universality(const Curve& c, const RationalPoint& p,
                               const mpz_class& m, const mpz_class& N,
                               unsigned K,
                               std::vector<OrderUniversalityRow>* rows) {
  if (m < 1) throw PreconditionFailed("verify_order_universality requires m >= 1");
  if (mpz_even_p(m.get_mpz_t()) && m != 2)
    throw ParityUnsupported("verify_order_universality requires odd m or m = 2");
  require_good_reduction(c, N);
  EdsEvaluator ev(c, p);
  bool all = true;
  mpz_class mk = 1;
  mpz_class d_prev = 1;
  for (unsigned k = 0; k <= K; ++k) {
    OrderUniversalityRow row;
    row.k = k;
    mpz_class d_k = ev.d_term(mk);  // D_{m^k} = F_0 F_1 ... F_k
    bool div_now = mpz_divisible_p(d_k.get_mpz_t(), N.get_mpz_t()) != 0;
    bool div_prev =
        k >= 1 && mpz_divisible_p(d_prev.get_mpz_t(), N.get_mpz_t()) != 0;
    row.divisor_holds = div_now && !div_prev;
    row.order_holds = has_order_exactly(c, p, m, k, N);
    if (row.order_holds != row.divisor_holds) all = false;
    if (rows) rows->push_back(row);
    d_prev = d_k;
    mk *= m;
  }
  return all;
}

}  // namespace edsf
