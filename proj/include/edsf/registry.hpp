#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

#include "edsf/ec.hpp"

namespace edsf {

struct CurveRecord {
  std::string id;
  Curve curve;
  RationalPoint point;
  std::vector<std::string> tags;
};

// Isogeny metadata for a magnified pair of records. The map itself is out of
// scope; degree is what the height ratio and divisibility checks consume.
// coprime_bases lists the small m (from 2,3,5,7,9) coprime to the degree.
struct MagnifiedPair {
  std::string source_id;
  std::string target_id;
  mpz_class degree;
  std::vector<mpz_class> coprime_bases;
};

struct Registry {
  std::vector<CurveRecord> records;
  std::vector<MagnifiedPair> pairs;

  const CurveRecord* find(const std::string& id) const;
  const MagnifiedPair* find_pair(const std::string& source_id,
                                 const std::string& target_id) const;
};

// Line-oriented format, two sections:
//   [curves]
//   id | a1,a2,a3,a4,a6 | x,y | tag,tag,...
//   [pairs]
//   source -> target | degree
// '#' starts a comment; blank lines ignored; the tags field may be empty or
// omitted. Throws ParseError (with line number) on malformed input and
// ValidationError when a point is off its curve or an id does not resolve.
Registry load_registry(std::istream& in);
Registry load_registry_file(const std::string& path);
std::string serialize_registry(const Registry& r);

// The shipped records: both degree-3 curves, both degree-7 curves, the base
// example with P = (-2,2), the degree-2 target with P = (0,4), and the
// degree-2 source (same curve and point as the base example, separate id).
const Registry& builtin_registry();

}  // namespace edsf
