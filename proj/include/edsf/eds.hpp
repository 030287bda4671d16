#pragma once

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <vector>

#include "edsf/ec.hpp"

namespace edsf {

// [n]P = (a/d^2, b/d^3) in lowest terms, d >= 1. D_n is the d here.
struct EdsDecomposition {
  mpz_class n;
  mpz_class a, b, d;
};

// Splits an affine point into (a/d^2, b/d^3) form. NonSquareDenominator if
// the x-denominator is not a perfect square or the y-denominator is not its
// cube (never happens for multiples of an integral point on an integral
// model; this guards caller-supplied coordinates).
EdsDecomposition decompose_coords(const RationalPoint& q, const mpz_class& n);

// Per-(curve, point) evaluator with a cache of binary-chain multiples and
// denominator terms, shared by the batch and theorem-level operations.
// Construction validates: point on curve, affine, nontorsion not required,
// but integral (D_1 = 1) since every statement downstream assumes a
// normalized sequence.
class EdsEvaluator {
 public:
  EdsEvaluator(Curve c, RationalPoint p);

  const Curve& curve() const { return c_; }
  const RationalPoint& point() const { return p_; }

  // [n]P, n >= 0, assembled from the cached chain [2^j]P.
  RationalPoint multiple(const mpz_class& n);
  // D_n; TorsionOrIdentity if [n]P is the identity.
  mpz_class d_term(const mpz_class& n);
  EdsDecomposition decompose(const mpz_class& n);

 private:
  RationalPoint multiple_locked(const mpz_class& n);

  Curve c_;
  RationalPoint p_;
  std::vector<RationalPoint> pow2_;  // pow2_[j] = [2^j]P
  std::map<mpz_class, RationalPoint> mult_cache_;
  std::map<mpz_class, mpz_class> d_cache_;
  std::mutex mu_;
};

// D_n for one index. p must be on the curve, affine and integral
// (NonNormalized otherwise); [n]P = O raises TorsionOrIdentity.
EdsDecomposition eds_decompose(const Curve& c, const RationalPoint& p,
                               const mpz_class& n);

// Batch D_n over arbitrary indices, one shared binary chain.
std::vector<mpz_class> eds_terms(const Curve& c, const RationalPoint& p,
                                 const std::vector<mpz_class>& indices);

// Checks D_m | D_n for every divisor pair m | n <= n_max.
bool verify_divisibility_law(const Curve& c, const RationalPoint& p,
                             unsigned n_max);

struct SsValuation {
  unsigned long lhs;  // ord_q(D_{m n})
  unsigned long rhs;  // ord_q(m) + ord_q(D_n)
  bool equal;
};

// Valuation comparison at a prime q | D_n. Equality is guaranteed for odd m
// on a reduced model; for even m only lhs >= rhs holds in general.
SsValuation verify_ss_valuation(const Curve& c, const RationalPoint& p,
                                const mpz_class& q, const mpz_class& n,
                                const mpz_class& m);

}  // namespace edsf
