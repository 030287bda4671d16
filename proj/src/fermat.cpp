#include "edsf/fermat.hpp"

#include <sstream>

#include "edsf/errors.hpp"
#include "edsf/heights.hpp"

namespace edsf {

namespace {

void require_reduced(const Curve& c) {
  if (!is_reduced_form(c))
    throw PreconditionFailed("curve is not in reduced form");
}

void require_odd(const mpz_class& m, const char* what) {
  if (m < 1) throw PreconditionFailed(std::string(what) + " requires m >= 1");
  if (mpz_even_p(m.get_mpz_t()))
    throw ParityUnsupported(std::string(what) + " requires odd m");
}

mpz_class pow_mpz(const mpz_class& m, unsigned k) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), m.get_mpz_t(), k);
  return r;
}

}  // namespace

FermatTerm fermat_term(EdsEvaluator& ev, const mpz_class& m, unsigned k) {
  require_reduced(ev.curve());
  if (m < 1) throw PreconditionFailed("fermat_term requires m >= 1");
  FermatTerm t;
  t.m = m;
  t.k = k;
  if (k == 0) {
    t.value = 1;
    return t;
  }
  mpz_class hi = ev.d_term(pow_mpz(m, k));
  mpz_class lo = ev.d_term(pow_mpz(m, k - 1));
  if (!mpz_divisible_p(hi.get_mpz_t(), lo.get_mpz_t()))
    throw NonExactQuotient("D_{m^k} not divisible by D_{m^{k-1}}");
  mpz_divexact(t.value.get_mpz_t(), hi.get_mpz_t(), lo.get_mpz_t());
  return t;
}

FermatTerm fermat_term(const Curve& c, const RationalPoint& p,
                       const mpz_class& m, unsigned k) {
  EdsEvaluator ev(c, p);
  return fermat_term(ev, m, k);
}

GcdMatrix gcd_matrix(EdsEvaluator& ev, const mpz_class& m, unsigned K,
                     OnViolation mode) {
  require_odd(m, "gcd_matrix");
  GcdMatrix out;
  out.m = m;
  for (unsigned k = 0; k <= K; ++k)
    out.terms.push_back(fermat_term(ev, m, k).value);
  for (unsigned k = 0; k <= K; ++k) {
    for (unsigned l = k + 1; l <= K; ++l) {
      GcdEntry e;
      e.k = k;
      e.l = l;
      e.value = gcd(out.terms[k], out.terms[l]);
      e.divides_m = mpz_divisible_p(m.get_mpz_t(), e.value.get_mpz_t());
      if (!e.divides_m) {
        out.all_ok = false;
        if (mode == OnViolation::raise) {
          std::ostringstream os;
          os << "gcd(F_" << k << ", F_" << l << ") = " << e.value
             << " does not divide m = " << m;
          throw TheoremViolation(os.str());
        }
      }
      out.entries.push_back(std::move(e));
    }
  }
  return out;
}

GcdMatrix gcd_matrix(const Curve& c, const RationalPoint& p, const mpz_class& m,
                     unsigned K, OnViolation mode) {
  EdsEvaluator ev(c, p);
  return gcd_matrix(ev, m, K, mode);
}

std::optional<unsigned> entry_point(EdsEvaluator& ev, const mpz_class& m,
                                    const mpz_class& q, unsigned K) {
  require_odd(m, "entry_point");
  if (q < 2) throw PreconditionFailed("entry_point requires prime q");
  for (unsigned t = 1; t <= K; ++t) {
    mpz_class d = ev.d_term(pow_mpz(m, t - 1));
    if (mpz_divisible_p(d.get_mpz_t(), q.get_mpz_t())) return t;
  }
  return std::nullopt;
}

std::optional<unsigned> entry_point(const Curve& c, const RationalPoint& p,
                                    const mpz_class& m, const mpz_class& q,
                                    unsigned K) {
  EdsEvaluator ev(c, p);
  return entry_point(ev, m, q, K);
}

bool verify_ord_proposition(EdsEvaluator& ev, const mpz_class& m,
                            const mpz_class& q, unsigned s) {
  require_odd(m, "verify_ord_proposition");
  if (s < 1) throw PreconditionFailed("verify_ord_proposition requires s >= 1");
  mpz_class d_prev = ev.d_term(pow_mpz(m, s - 1));
  if (!mpz_divisible_p(d_prev.get_mpz_t(), q.get_mpz_t()))
    throw PreconditionFailed("q does not divide D_{m^{s-1}}");
  mpz_class f = fermat_term(ev, m, s).value;
  mpz_class tmp, mm = m;
  unsigned long ord_f =
      mpz_remove(tmp.get_mpz_t(), f.get_mpz_t(), q.get_mpz_t());
  unsigned long ord_m =
      mpz_remove(tmp.get_mpz_t(), mm.get_mpz_t(), q.get_mpz_t());
  return ord_f == ord_m;
}

bool verify_ord_proposition(const Curve& c, const RationalPoint& p,
                            const mpz_class& m, const mpz_class& q,
                            unsigned s) {
  EdsEvaluator ev(c, p);
  return verify_ord_proposition(ev, m, q, s);
}

MagnifiedReport magnified_divisibility(const Curve& c_source,
                                       const RationalPoint& p_source,
                                       const Curve& c_target,
                                       const RationalPoint& p_target,
                                       const mpz_class& m, unsigned K,
                                       unsigned k0) {
  if (m < 1) throw PreconditionFailed("magnified_divisibility requires m >= 1");
  EdsEvaluator evs(c_source, p_source);
  EdsEvaluator evt(c_target, p_target);
  MagnifiedReport rep;
  for (unsigned k = k0; k <= K; ++k) {
    MagnifiedRow row;
    row.k = k;
    row.f_source = fermat_term(evs, m, k).value;
    row.f_target = fermat_term(evt, m, k).value;
    row.divides = mpz_divisible_p(row.f_target.get_mpz_t(),
                                  row.f_source.get_mpz_t()) != 0;
    if (!row.divides) rep.all_divide = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

GrowthRatio growth_ratio(EdsEvaluator& ev, const mpz_class& m, unsigned k) {
  if (m < 2) throw PreconditionFailed("growth_ratio requires m >= 2");
  if (k < 1) throw PreconditionFailed("growth_ratio requires k >= 1");
  GrowthRatio g;
  mpz_class f = fermat_term(ev, m, k).value;
  mpz_class scale = pow_mpz(m, 2 * k);
  g.ratio = log_mpz(f) / mpz_get_d(scale.get_mpz_t());
  HeightEstimate h = canonical_height_doubling(ev.curve(), ev.point());
  g.hhat = h.value;
  double md = mpz_get_d(m.get_mpz_t());
  g.limit_prediction = (0.5 - 0.5 / (md * md)) * g.hhat;
  return g;
}

GrowthRatio growth_ratio(const Curve& c, const RationalPoint& p,
                         const mpz_class& m, unsigned k) {
  EdsEvaluator ev(c, p);
  return growth_ratio(ev, m, k);
}

}  // namespace edsf
