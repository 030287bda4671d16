#include "edsf/ec.hpp"

#include <sstream>
#include <vector>

namespace edsf {

Curve make_curve(const mpz_class& a1, const mpz_class& a2, const mpz_class& a3,
                 const mpz_class& a4, const mpz_class& a6) {
  Curve c;
  c.a1 = a1;
  c.a2 = a2;
  c.a3 = a3;
  c.a4 = a4;
  c.a6 = a6;
  c.b2 = a1 * a1 + 4 * a2;
  c.b4 = 2 * a4 + a1 * a3;
  c.b6 = a3 * a3 + 4 * a6;
  c.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  c.disc = -c.b2 * c.b2 * c.b8 - 8 * c.b4 * c.b4 * c.b4 - 27 * c.b6 * c.b6 +
           9 * c.b2 * c.b4 * c.b6;
  if (c.disc == 0)
    throw SingularCurve("curve " + to_string(c) + " has zero discriminant");
  return c;
}

bool is_reduced_form(const Curve& c) {
  return (c.a1 == 0 || c.a1 == 1) && (c.a3 == 0 || c.a3 == 1) &&
         (c.a2 >= -1 && c.a2 <= 1);
}

RationalPoint::RationalPoint(mpq_class x, mpq_class y)
    : identity_(false), x_(std::move(x)), y_(std::move(y)) {
  if (x_.get_den() == 0 || y_.get_den() == 0)
    throw Error("point coordinate with zero denominator");
  x_.canonicalize();
  y_.canonicalize();
}

RationalPoint::RationalPoint(canonical_t, mpq_class x, mpq_class y)
    : identity_(false), x_(std::move(x)), y_(std::move(y)) {}

const mpq_class& RationalPoint::x() const {
  if (identity_) throw Error("identity point has no affine coordinates");
  return x_;
}

const mpq_class& RationalPoint::y() const {
  if (identity_) throw Error("identity point has no affine coordinates");
  return y_;
}

bool is_on_curve(const Curve& c, const RationalPoint& p) {
  if (p.is_identity()) return true;
  // Clear denominators: with x = a/b, y = v/e the equation times b^3*e^2 is
  //   v^2 b^3 + a1 a v b^2 e + a3 v b^3 e = a^3 e^2 + a2 a^2 b e^2 + a4 a b^2 e^2 + a6 b^3 e^2
  const mpz_class& a = p.x().get_num();
  const mpz_class& b = p.x().get_den();
  const mpz_class& v = p.y().get_num();
  const mpz_class& e = p.y().get_den();
  mpz_class b2 = b * b, b3 = b2 * b, e2 = e * e;
  mpz_class lhs = v * v * b3 + c.a1 * a * v * b2 * e + c.a3 * v * b3 * e;
  mpz_class rhs = a * a * a * e2 + c.a2 * a * a * b * e2 +
                  c.a4 * a * b2 * e2 + c.a6 * b3 * e2;
  return lhs == rhs;
}

RationalPoint negate(const Curve& c, const RationalPoint& p) {
  if (p.is_identity()) return p;
  if (c.a1 == 0 && c.a3 == 0)
    return RationalPoint(RationalPoint::canonical_t{}, p.x(), -p.y());
  // -(x, y) = (x, -y - a1 x - a3)
  const mpz_class& a = p.x().get_num();
  const mpz_class& b = p.x().get_den();
  const mpz_class& v = p.y().get_num();
  const mpz_class& e = p.y().get_den();
  mpq_class ny(-(v * b) - c.a1 * a * e - c.a3 * b * e, b * e);
  ny.canonicalize();
  return RationalPoint(RationalPoint::canonical_t{}, p.x(), std::move(ny));
}

RationalPoint add_unchecked(const Curve& c, const RationalPoint& p,
                            const RationalPoint& q) {
  if (p.is_identity()) return q;
  if (q.is_identity()) return p;
  const mpz_class& a = p.x().get_num();
  const mpz_class& b = p.x().get_den();
  const mpz_class& v = p.y().get_num();
  const mpz_class& e = p.y().get_den();
  const mpz_class& f = q.x().get_num();
  const mpz_class& g = q.x().get_den();
  const mpz_class& h = q.y().get_num();
  const mpz_class& i = q.y().get_den();

  // The slope is kept as an unreduced fraction L/M; all later expressions are
  // evaluated over explicit integer common denominators so that exactly one
  // gcd is paid per output coordinate.
  mpz_class L, M;
  if (p.x() != q.x()) {
    L = (h * e - v * i) * g * b;
    M = (f * b - a * g) * i * e;
  } else {
    // q == -p, i.e. y2 = -y1 - a1 x1 - a3, scaled by b*e*i:
    if (h * b * e + v * b * i + c.a1 * a * e * i + c.a3 * b * e * i == 0)
      return RationalPoint::identity();
    // On-curve points sharing x and not opposite are equal: tangent case.
    mpz_class t = 2 * v * b + c.a1 * a * e + c.a3 * b * e;
    if (t == 0) return RationalPoint::identity();  // 2-torsion
    L = (3 * a * a + 2 * c.a2 * a * b + c.a4 * b * b) * e - c.a1 * v * b * b;
    M = b * t;
  }

  // x3 = L^2/M^2 + a1 L/M - a2 - x1 - x2 over common denominator M^2*b*g.
  mpz_class m2 = M * M;
  mpz_class x3n = (L * L + c.a1 * L * M - c.a2 * m2) * b * g -
                  (a * g + f * b) * m2;
  mpq_class x3(std::move(x3n), m2 * b * g);
  x3.canonicalize();

  // y3 = L/M (x1 - x3) - y1 - a1 x3 - a3 over common denominator M*b*pd*e,
  // where x3 = pn/pd is already canonical.
  const mpz_class& pn = x3.get_num();
  const mpz_class& pd = x3.get_den();
  mpz_class y3n = L * (a * pd - pn * b) * e - v * M * b * pd -
                  c.a1 * pn * M * b * e - c.a3 * M * b * pd * e;
  mpq_class y3(std::move(y3n), M * b * pd * e);
  y3.canonicalize();

  return RationalPoint(RationalPoint::canonical_t{}, std::move(x3),
                       std::move(y3));
}

RationalPoint add(const Curve& c, const RationalPoint& p,
                  const RationalPoint& q) {
  if (!is_on_curve(c, p))
    throw PointNotOnCurve("left summand not on " + to_string(c));
  if (!is_on_curve(c, q))
    throw PointNotOnCurve("right summand not on " + to_string(c));
  return add_unchecked(c, p, q);
}

RationalPoint scalar_mul(const Curve& c, const mpz_class& n,
                         const RationalPoint& p) {
  if (n < 0) throw PreconditionFailed("scalar_mul requires n >= 0");
  if (!is_on_curve(c, p))
    throw PointNotOnCurve("scalar_mul point not on " + to_string(c));
  if (n == 0 || p.is_identity()) return RationalPoint::identity();
  RationalPoint r = p;
  for (long bit = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 2;
       bit >= 0; --bit) {
    r = add_unchecked(c, r, r);
    if (mpz_tstbit(n.get_mpz_t(), bit)) r = add_unchecked(c, r, p);
  }
  return r;
}

std::string to_string(const Curve& c) {
  std::ostringstream os;
  os << c.a1 << ',' << c.a2 << ',' << c.a3 << ',' << c.a4 << ',' << c.a6;
  return os.str();
}

std::string to_string(const RationalPoint& p) {
  if (p.is_identity()) return "O";
  std::ostringstream os;
  os << p.x().get_num();
  if (p.x().get_den() != 1) os << '/' << p.x().get_den();
  os << ',' << p.y().get_num();
  if (p.y().get_den() != 1) os << '/' << p.y().get_den();
  return os.str();
}

namespace {

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

mpq_class parse_mpq(const std::string& s) {
  std::string t = strip(s);
  if (t.empty()) throw ParseError("empty rational");
  mpq_class q;
  if (q.set_str(t, 10) != 0)
    throw ParseError("bad rational '" + t + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + t + "'");
  q.canonicalize();
  return q;
}

}  // namespace

mpz_class parse_mpz(const std::string& s) {
  std::string t = strip(s);
  mpz_class z;
  if (t.empty() || z.set_str(t, 10) != 0)
    throw ParseError("bad integer '" + t + "'");
  return z;
}

Curve parse_curve(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 5)
    throw ParseError("curve needs 5 coefficients, got " +
                     std::to_string(parts.size()));
  return make_curve(parse_mpz(parts[0]), parse_mpz(parts[1]),
                    parse_mpz(parts[2]), parse_mpz(parts[3]),
                    parse_mpz(parts[4]));
}

RationalPoint parse_point(const std::string& s) {
  std::string t = strip(s);
  if (t == "O" || t == "o") return RationalPoint::identity();
  auto parts = split(t, ',');
  if (parts.size() != 2)
    throw ParseError("point needs 2 coordinates or 'O', got '" + t + "'");
  return RationalPoint(parse_mpq(parts[0]), parse_mpq(parts[1]));
}

}  // namespace edsf
