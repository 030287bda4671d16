#include "edsf/heights.hpp"

#include <cmath>
#include <cstdlib>

#include "edsf/eds.hpp"
#include "edsf/errors.hpp"

namespace edsf {

double log_mpz(const mpz_class& v) {
  if (v == 0) throw PreconditionFailed("log of zero");
  signed long exp;
  double d = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(std::fabs(d)) + static_cast<double>(exp) * M_LN2;
}

double naive_height(const Curve&, const RationalPoint& p) {
  if (p.is_identity()) throw IdentityHasNoHeight("the identity has no height");
  const mpq_class& x = p.x();
  mpz_class num = abs(mpz_class(x.get_num()));
  const mpz_class& den = x.get_den();
  const mpz_class& top = num > den ? num : den;
  return log_mpz(top);
}

HeightEstimate canonical_height_doubling(const Curve& c, const RationalPoint& p,
                                         unsigned k_max, double tol) {
  if (p.is_identity()) throw TorsionPoint("[2^k]P reached the identity");
  HeightEstimate est;
  RationalPoint q = p;
  double scale = 1.0;  // 4^k
  for (unsigned k = 0; k <= k_max; ++k) {
    if (q.is_identity()) throw TorsionPoint("[2^k]P reached the identity");
    est.approximants.emplace_back(k, naive_height(c, q) / scale);
    if (k >= 1) {
      double diff = std::fabs(est.approximants[k].second -
                              est.approximants[k - 1].second);
      est.error_bound = diff;
      // small points can open with a run of zero approximants (log 1 = 0);
      // that plateau is not convergence, the limit of a nontorsion point is
      // positive
      if (diff < tol && est.approximants[k].second > tol) break;
    }
    if (k < k_max) {
      q = add(c, q, q);
      scale *= 4.0;
    }
  }
  est.value = est.approximants.back().second;
  return est;
}

HeightEstimate canonical_height_eds(const Curve& c, const RationalPoint& p,
                                    const mpz_class& m, unsigned k_max) {
  if (m < 2) throw PreconditionFailed("canonical_height_eds requires m >= 2");
  EdsEvaluator ev(c, p);
  HeightEstimate est;
  mpz_class idx = 1;
  double scale = 1.0;  // m^{2k}
  double m2 = mpz_get_d(m.get_mpz_t());
  m2 *= m2;
  for (unsigned k = 0; k <= k_max; ++k) {
    mpz_class d = ev.d_term(idx);
    est.approximants.emplace_back(k, 2.0 * log_mpz(d) / scale);
    idx *= m;
    scale *= m2;
  }
  size_t n = est.approximants.size();
  est.value = est.approximants.back().second;
  if (n >= 2)
    est.error_bound = std::fabs(est.approximants[n - 1].second -
                                est.approximants[n - 2].second);
  return est;
}

double degree_ratio(const Curve& c_source, const RationalPoint& p_source,
                    const Curve& c_target, const RationalPoint& p_target,
                    unsigned k_max) {
  HeightEstimate hs = canonical_height_doubling(c_source, p_source, k_max);
  HeightEstimate ht = canonical_height_doubling(c_target, p_target, k_max);
  if (hs.value <= 0.0)
    throw PreconditionFailed("source height estimate is not positive");
  return ht.value / hs.value;
}

}  // namespace edsf
