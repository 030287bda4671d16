#pragma once

#include <gmpxx.h>

#include <vector>

#include "edsf/ec.hpp"

namespace edsf {

// A point of E(Z/NZ): the identity, or affine residues in [0, N).
struct ModPoint {
  mpz_class modulus;
  bool identity = true;
  mpz_class x, y;
};

// Coordinate-wise reduction of an affine rational point. Throws
// NonInvertibleDenominator (with the offending gcd) if a denominator shares
// a factor with N, which is exactly the N | D_n situation; BadReduction if
// gcd(N, 6 disc) != 1.
ModPoint reduce_point(const Curve& c, const RationalPoint& p,
                      const mpz_class& N);

// Chord-tangent law over Z/NZ. For composite N a slope denominator can be
// non-invertible even between valid points (the component orders differ);
// NonInvertibleSlope then carries gcd(N, denominator), a factor witness.
ModPoint mod_add(const Curve& c, const ModPoint& a, const ModPoint& b);

ModPoint mod_negate(const Curve& c, const ModPoint& a);

// [n]·a for any integer n (negative n through negation).
ModPoint mod_scalar_mul(const Curve& c, const mpz_class& n, const ModPoint& a);

// Exact order of P mod q by repeated addition, independent of the group law
// above (separate word-size arithmetic). q prime, q <= 10^6
// (OracleScaleExceeded), q coprime to 6 disc (BadReduction).
unsigned long point_order_bruteforce(const Curve& c, const RationalPoint& p,
                                     const mpz_class& q);

// True iff P has order exactly m^k in E(Z/NZ): [m^k]P = O and, for k >= 1,
// [m^{k-1}]P != O. Logarithmic in m^k. Requires gcd(N, 6 disc) = 1.
bool has_order_exactly(const Curve& c, const RationalPoint& p,
                       const mpz_class& m, unsigned k, const mpz_class& N);

struct OrderUniversalityRow {
  unsigned k = 0;
  bool order_holds = false;    // order of P mod N is exactly m^k
  bool divisor_holds = false;  // N | D_{m^k} and (k >= 1) N does not divide D_{m^{k-1}}
};

// Checks the equivalence order_holds <=> divisor_holds for k = 0..K.
// The divisor side uses the telescoping identity F_0···F_k = D_{m^k}.
// m odd or m = 2; gcd(N, 6 disc) = 1.
bool verify_order_universality(const Curve& c, const RationalPoint& p,
                               const mpz_class& m, const mpz_class& N,
                               unsigned K,
                               std::vector<OrderUniversalityRow>* rows = nullptr);

}  // namespace edsf
