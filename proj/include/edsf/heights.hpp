#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "edsf/ec.hpp"

namespace edsf {

// Natural log of |v|. Exact to ~52 bits regardless of the size of v.
double log_mpz(const mpz_class& v);

// log max(|A|, D^2) for x(P) = A/D^2 in lowest terms. The identity has no
// height; throws IdentityHasNoHeight.
double naive_height(const Curve& c, const RationalPoint& p);

struct HeightEstimate {
  double value = 0.0;
  // (level k, approximant) in increasing k; value is the last approximant.
  std::vector<std::pair<unsigned, double>> approximants;
  double error_bound = 0.0;  // |last - previous|, 0 if only one approximant
};

// Canonical height as lim h([2^k]P)/4^k. Stops early once successive
// approximants differ by less than tol. Throws TorsionPoint if a doubling
// reaches the identity.
HeightEstimate canonical_height_doubling(const Curve& c, const RationalPoint& p,
                                         unsigned k_max = 8, double tol = 1e-4);

// Same limit through the denominator sequence: log(D_{m^k}^2)/m^{2k}.
// Requires m >= 2 and an integral (normalized) point.
HeightEstimate canonical_height_eds(const Curve& c, const RationalPoint& p,
                                    const mpz_class& m, unsigned k_max);

// Ratio of canonical heights, target over source. For a magnified pair this
// approximates the isogeny degree.
double degree_ratio(const Curve& c_source, const RationalPoint& p_source,
                    const Curve& c_target, const RationalPoint& p_target,
                    unsigned k_max = 8);

}  // namespace edsf
