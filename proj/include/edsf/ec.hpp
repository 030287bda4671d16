#pragma once

#include <gmpxx.h>

#include <string>

#include "edsf/errors.hpp"

namespace edsf {

// Integral Weierstrass model  y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6
// with the usual b-invariants and discriminant.
struct Curve {
  mpz_class a1, a2, a3, a4, a6;
  mpz_class b2, b4, b6, b8;
  mpz_class disc;

  friend bool operator==(const Curve& lhs, const Curve& rhs) {
    return lhs.a1 == rhs.a1 && lhs.a2 == rhs.a2 && lhs.a3 == rhs.a3 &&
           lhs.a4 == rhs.a4 && lhs.a6 == rhs.a6;
  }
};

Curve make_curve(const mpz_class& a1, const mpz_class& a2, const mpz_class& a3,
                 const mpz_class& a4, const mpz_class& a6);

// a1, a3 in {0,1} and a2 in {-1,0,1}.
bool is_reduced_form(const Curve& c);

// A rational point: either the identity or an affine pair of canonical
// rationals (lowest terms, positive denominator).
class RationalPoint {
 public:
  RationalPoint() = default;  // identity
  RationalPoint(mpq_class x, mpq_class y);

  static RationalPoint identity() { return RationalPoint(); }

  bool is_identity() const { return identity_; }
  const mpq_class& x() const;
  const mpq_class& y() const;

  friend bool operator==(const RationalPoint& lhs, const RationalPoint& rhs) {
    if (lhs.identity_ != rhs.identity_) return false;
    if (lhs.identity_) return true;
    return lhs.x_ == rhs.x_ && lhs.y_ == rhs.y_;
  }

 private:
  struct canonical_t {};
  RationalPoint(canonical_t, mpq_class x, mpq_class y);

  bool identity_ = true;
  mpq_class x_, y_;

  friend RationalPoint add_unchecked(const Curve&, const RationalPoint&,
                                     const RationalPoint&);
  friend RationalPoint negate(const Curve&, const RationalPoint&);
};

bool is_on_curve(const Curve& c, const RationalPoint& p);

RationalPoint negate(const Curve& c, const RationalPoint& p);

// Chord-and-tangent sum; both inputs are checked against the curve equation.
RationalPoint add(const Curve& c, const RationalPoint& p,
                  const RationalPoint& q);

// Same, minus the on-curve checks. For internal chains whose inputs are
// already known good (scalar ladders, batch evaluators).
RationalPoint add_unchecked(const Curve& c, const RationalPoint& p,
                            const RationalPoint& q);

// [n]p by left-to-right double-and-add, n >= 0.
RationalPoint scalar_mul(const Curve& c, const mpz_class& n,
                         const RationalPoint& p);

// "a1,a2,a3,a4,a6"
std::string to_string(const Curve& c);
// "x,y" with each coordinate "num" or "num/den"; identity is "O".
std::string to_string(const RationalPoint& p);

Curve parse_curve(const std::string& s);
RationalPoint parse_point(const std::string& s);
mpz_class parse_mpz(const std::string& s);

}  // namespace edsf
