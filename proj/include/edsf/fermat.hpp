#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "edsf/ec.hpp"
#include "edsf/eds.hpp"

namespace edsf {

// F_k = D_{m^k} / D_{m^{k-1}} for k >= 1, F_0 = 1. The quotient is exact by
// the divisibility law; an inexact division raises NonExactQuotient.
struct FermatTerm {
  mpz_class m;
  unsigned k = 0;
  mpz_class value;
};

// Requires m >= 1, a reduced-form curve and an integral nontorsion point.
FermatTerm fermat_term(EdsEvaluator& ev, const mpz_class& m, unsigned k);
FermatTerm fermat_term(const Curve& c, const RationalPoint& p,
                       const mpz_class& m, unsigned k);

enum class OnViolation { report, raise };

struct GcdEntry {
  unsigned k = 0, l = 0;
  mpz_class value;      // gcd(F_k, F_l)
  bool divides_m = true;
};

struct GcdMatrix {
  mpz_class m;
  std::vector<mpz_class> terms;   // F_0 .. F_K
  std::vector<GcdEntry> entries;  // all pairs 0 <= k < l <= K
  bool all_ok = true;             // every entry divides m
};

// Pairwise gcds of F_0..F_K for odd m. Each gcd must divide m; a violation
// either marks the entry (report) or raises TheoremViolation (raise).
GcdMatrix gcd_matrix(const Curve& c, const RationalPoint& p, const mpz_class& m,
                     unsigned K, OnViolation mode = OnViolation::report);
GcdMatrix gcd_matrix(EdsEvaluator& ev, const mpz_class& m, unsigned K,
                     OnViolation mode = OnViolation::report);

// Smallest t in [1, K] with q | D_{m^{t-1}}, or nullopt. Odd m only.
std::optional<unsigned> entry_point(const Curve& c, const RationalPoint& p,
                                    const mpz_class& m, const mpz_class& q,
                                    unsigned K);
std::optional<unsigned> entry_point(EdsEvaluator& ev, const mpz_class& m,
                                    const mpz_class& q, unsigned K);

// Given q | D_{m^{s-1}} (PreconditionFailed otherwise), checks
// ord_q(F_s) == ord_q(m). Odd m only.
bool verify_ord_proposition(const Curve& c, const RationalPoint& p,
                            const mpz_class& m, const mpz_class& q, unsigned s);
bool verify_ord_proposition(EdsEvaluator& ev, const mpz_class& m,
                            const mpz_class& q, unsigned s);

struct MagnifiedRow {
  unsigned k = 0;
  mpz_class f_source, f_target;
  bool divides = true;
};

struct MagnifiedReport {
  std::vector<MagnifiedRow> rows;  // k = k0 .. K
  bool all_divide = true;
};

// Checks F_k(source) | F_k(target) for k0 <= k <= K. The caller asserts the
// pair really is magnified with gcd(m, degree) = 1; this only reports.
MagnifiedReport magnified_divisibility(const Curve& c_source,
                                       const RationalPoint& p_source,
                                       const Curve& c_target,
                                       const RationalPoint& p_target,
                                       const mpz_class& m, unsigned K,
                                       unsigned k0 = 1);

struct GrowthRatio {
  double ratio = 0.0;             // log(F_k) / m^{2k}
  double limit_prediction = 0.0;  // (1/2 - 1/(2m^2)) * hhat
  double hhat = 0.0;              // doubling estimate backing the prediction
};

// Requires m >= 2, k >= 1, p nontorsion.
GrowthRatio growth_ratio(const Curve& c, const RationalPoint& p,
                         const mpz_class& m, unsigned k);
GrowthRatio growth_ratio(EdsEvaluator& ev, const mpz_class& m, unsigned k);

}  // namespace edsf
