#include "edsf/eds.hpp"

namespace edsf {

EdsDecomposition decompose_coords(const RationalPoint& q, const mpz_class& n) {
  if (q.is_identity())
    throw TorsionOrIdentity("[" + n.get_str() + "]P is the identity");
  EdsDecomposition out;
  out.n = n;
  const mpz_class& xd = q.x().get_den();
  mpz_class d;
  if (mpz_perfect_square_p(xd.get_mpz_t()) == 0)
    throw NonSquareDenominator("x-denominator of [" + n.get_str() +
                               "]P is not a perfect square");
  mpz_sqrt(d.get_mpz_t(), xd.get_mpz_t());
  if (q.y().get_den() != d * d * d)
    throw NonSquareDenominator("y-denominator of [" + n.get_str() +
                               "]P is not the cube of sqrt(x-denominator)");
  out.a = q.x().get_num();
  out.b = q.y().get_num();
  out.d = d;
  return out;
}

EdsEvaluator::EdsEvaluator(Curve c, RationalPoint p)
    : c_(std::move(c)), p_(std::move(p)) {
  if (p_.is_identity())
    throw TorsionOrIdentity("base point is the identity");
  if (!is_on_curve(c_, p_))
    throw PointNotOnCurve("base point not on " + to_string(c_));
  if (p_.x().get_den() != 1 || p_.y().get_den() != 1) {
    if (mpz_perfect_square_p(p_.x().get_den().get_mpz_t()) == 0)
      throw NonSquareDenominator("base point x-denominator is not a square");
    throw NonNormalized("base point must be integral (D_1 = 1), got " +
                        to_string(p_));
  }
  pow2_.push_back(p_);
}

RationalPoint EdsEvaluator::multiple_locked(const mpz_class& n) {
  if (n == 0) return RationalPoint::identity();
  size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (mpz_popcount(n.get_mpz_t()) != 1) {
    auto it = mult_cache_.find(n);
    if (it != mult_cache_.end()) return it->second;
  }
  while (pow2_.size() < bits)
    pow2_.push_back(add_unchecked(c_, pow2_.back(), pow2_.back()));
  if (mpz_popcount(n.get_mpz_t()) == 1) return pow2_[bits - 1];
  RationalPoint r;
  for (size_t j = 0; j < bits; ++j)
    if (mpz_tstbit(n.get_mpz_t(), j)) r = add_unchecked(c_, r, pow2_[j]);
  return mult_cache_.emplace(n, std::move(r)).first->second;
}

RationalPoint EdsEvaluator::multiple(const mpz_class& n) {
  if (n < 0) throw PreconditionFailed("multiple requires n >= 0");
  std::lock_guard<std::mutex> lock(mu_);
  return multiple_locked(n);
}

mpz_class EdsEvaluator::d_term(const mpz_class& n) {
  if (n < 1) throw PreconditionFailed("d_term requires n >= 1");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = d_cache_.find(n);
  if (it != d_cache_.end()) return it->second;
  RationalPoint q = multiple_locked(n);
  if (q.is_identity())
    throw TorsionOrIdentity("[" + n.get_str() + "]P is the identity");
  mpz_class d = decompose_coords(q, n).d;
  return d_cache_.emplace(n, std::move(d)).first->second;
}

EdsDecomposition EdsEvaluator::decompose(const mpz_class& n) {
  if (n < 1) throw PreconditionFailed("decompose requires n >= 1");
  std::lock_guard<std::mutex> lock(mu_);
  RationalPoint q = multiple_locked(n);
  if (q.is_identity())
    throw TorsionOrIdentity("[" + n.get_str() + "]P is the identity");
  return decompose_coords(q, n);
}

EdsDecomposition eds_decompose(const Curve& c, const RationalPoint& p,
                               const mpz_class& n) {
  EdsEvaluator ev(c, p);
  return ev.decompose(n);
}

std::vector<mpz_class> eds_terms(const Curve& c, const RationalPoint& p,
                                 const std::vector<mpz_class>& indices) {
  EdsEvaluator ev(c, p);
  std::vector<mpz_class> out;
  out.reserve(indices.size());
  for (const mpz_class& n : indices) out.push_back(ev.d_term(n));
  return out;
}

bool verify_divisibility_law(const Curve& c, const RationalPoint& p,
                             unsigned n_max) {
  EdsEvaluator ev(c, p);
  std::vector<mpz_class> d(n_max + 1);
  for (unsigned n = 1; n <= n_max; ++n) d[n] = ev.d_term(n);
  for (unsigned n = 2; n <= n_max; ++n)
    for (unsigned m = 1; m < n; ++m)
      if (n % m == 0 && !mpz_divisible_p(d[n].get_mpz_t(), d[m].get_mpz_t()))
        return false;
  return true;
}

SsValuation verify_ss_valuation(const Curve& c, const RationalPoint& p,
                                const mpz_class& q, const mpz_class& n,
                                const mpz_class& m) {
  if (m < 1) throw PreconditionFailed("ss valuation requires m >= 1");
  if (n < 1) throw PreconditionFailed("ss valuation requires n >= 1");
  if (q < 2) throw PreconditionFailed("q must be a prime");
  if (!is_reduced_form(c))
    throw PreconditionFailed("ss valuation requires a reduced model");
  EdsEvaluator ev(c, p);
  mpz_class dn = ev.d_term(n);
  if (!mpz_divisible_p(dn.get_mpz_t(), q.get_mpz_t()))
    throw PreconditionFailed(q.get_str() + " does not divide D_" +
                             n.get_str());
  mpz_class dmn = ev.d_term(m * n);
  mpz_class tmp;
  SsValuation v;
  v.lhs = mpz_remove(tmp.get_mpz_t(), dmn.get_mpz_t(), q.get_mpz_t());
  v.rhs = mpz_remove(tmp.get_mpz_t(), dn.get_mpz_t(), q.get_mpz_t()) +
          mpz_remove(tmp.get_mpz_t(), m.get_mpz_t(), q.get_mpz_t());
  v.equal = v.lhs == v.rhs;
  return v;
}

}  // namespace edsf
