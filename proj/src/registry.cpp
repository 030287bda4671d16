#include "edsf/registry.hpp"

#include <fstream>
#include <sstream>

#include "edsf/errors.hpp"

namespace edsf {

namespace {

const char* kBuiltin = R"(# shipped curve registry
[curves]
E1p | 0,0,0,-9,9 | 1,1 | degree3,source
E1  | 0,0,0,-189,-999 | -8,1 | degree3,target
E2p | 1,-1,0,1,1 | 0,1 | degree7,source
E2  | 1,-1,0,-389,-2859 | 26,51 | degree7,target
ex3 | 0,1,0,-4,0 | -2,2 | base-example
ex32src | 0,1,0,-4,0 | -2,2 | degree2,source
ex32 | 0,1,0,16,16 | 0,4 | degree2,target

[pairs]
E1p -> E1 | 3
E2p -> E2 | 7
ex32src -> ex32 | 2
)";

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(strip(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::vector<mpz_class> bases_coprime_to(const mpz_class& degree) {
  std::vector<mpz_class> out;
  for (int m : {2, 3, 5, 7, 9})
    if (gcd(mpz_class(m), degree) == 1) out.push_back(m);
  return out;
}

void validate(const Registry& r) {
  for (size_t i = 0; i < r.records.size(); ++i) {
    const CurveRecord& rec = r.records[i];
    if (!is_on_curve(rec.curve, rec.point))
      throw ValidationError("record " + rec.id + ": point is not on the curve");
    for (size_t j = 0; j < i; ++j)
      if (r.records[j].id == rec.id)
        throw ValidationError("duplicate record id " + rec.id);
  }
  for (const MagnifiedPair& pr : r.pairs) {
    if (!r.find(pr.source_id))
      throw ValidationError("pair source id " + pr.source_id + " not found");
    if (!r.find(pr.target_id))
      throw ValidationError("pair target id " + pr.target_id + " not found");
    if (pr.degree < 2) throw ValidationError("pair degree must be >= 2");
  }
}

}  // namespace

const CurveRecord* Registry::find(const std::string& id) const {
  for (const CurveRecord& r : records)
    if (r.id == id) return &r;
  return nullptr;
}

const MagnifiedPair* Registry::find_pair(const std::string& source_id,
                                         const std::string& target_id) const {
  for (const MagnifiedPair& p : pairs)
    if (p.source_id == source_id && p.target_id == target_id) return &p;
  return nullptr;
}

Registry load_registry(std::istream& in) {
  Registry reg;
  std::string line;
  int line_no = 0;
  enum { none, curves, pairs } section = none;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line == "[curves]") {
      section = curves;
      continue;
    }
    if (line == "[pairs]") {
      section = pairs;
      continue;
    }
    if (line.front() == '[')
      throw ParseError("unknown section " + line, line_no);
    if (section == none)
      throw ParseError("content before a section header", line_no);
    std::vector<std::string> fields = split(line, '|');
    if (section == curves) {
      if (fields.size() < 3 || fields.size() > 4)
        throw ParseError("expected id | a1,a2,a3,a4,a6 | x,y | tags", line_no);
      CurveRecord rec;
      rec.id = fields[0];
      if (rec.id.empty()) throw ParseError("empty record id", line_no);
      try {
        rec.curve = parse_curve(fields[1]);
        rec.point = parse_point(fields[2]);
      } catch (const Error& e) {
        throw ParseError(e.what(), line_no);
      }
      if (fields.size() == 4 && !fields[3].empty())
        for (const std::string& t : split(fields[3], ','))
          if (!t.empty()) rec.tags.push_back(t);
      reg.records.push_back(std::move(rec));
    } else {
      if (fields.size() != 2)
        throw ParseError("expected source -> target | degree", line_no);
      size_t arrow = fields[0].find("->");
      if (arrow == std::string::npos)
        throw ParseError("expected source -> target | degree", line_no);
      MagnifiedPair pr;
      pr.source_id = strip(fields[0].substr(0, arrow));
      pr.target_id = strip(fields[0].substr(arrow + 2));
      if (pr.source_id.empty() || pr.target_id.empty())
        throw ParseError("empty pair id", line_no);
      try {
        pr.degree = parse_mpz(fields[1]);
      } catch (const Error& e) {
        throw ParseError(e.what(), line_no);
      }
      pr.coprime_bases = bases_coprime_to(pr.degree);
      reg.pairs.push_back(std::move(pr));
    }
  }
  validate(reg);
  return reg;
}

Registry load_registry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open registry file " + path);
  return load_registry(in);
}

std::string serialize_registry(const Registry& r) {
  std::ostringstream os;
  os << "[curves]\n";
  for (const CurveRecord& rec : r.records) {
    os << rec.id << " | " << to_string(rec.curve) << " | "
       << to_string(rec.point) << " | ";
    for (size_t i = 0; i < rec.tags.size(); ++i) {
      if (i) os << ',';
      os << rec.tags[i];
    }
    os << '\n';
  }
  os << "[pairs]\n";
  for (const MagnifiedPair& pr : r.pairs)
    os << pr.source_id << " -> " << pr.target_id << " | " << pr.degree << '\n';
  return os.str();
}

const Registry& builtin_registry() {
  static const Registry reg = [] {
    std::istringstream is(kBuiltin);
    return load_registry(is);
  }();
  return reg;
}

}  // namespace edsf
