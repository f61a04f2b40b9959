#include "dkplab/numeric.hpp"

#include <sstream>

#include "dkplab/error.hpp"

namespace dkplab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDependentColumns: return "DependentColumns";
    case ErrorKind::kDimensionCap: return "DimensionCap";
    case ErrorKind::kRankDeficient: return "RankDeficient";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kUnboundedWidth: return "UnboundedWidth";
    case ErrorKind::kUnboundedDirection: return "UnboundedDirection";
    case ErrorKind::kAssumptionViolated: return "AssumptionViolated";
    case ErrorKind::kEmptyInterval: return "EmptyInterval";
    case ErrorKind::kInvalidK: return "InvalidK";
    case ErrorKind::kBadDimension: return "BadDimension";
    case ErrorKind::kParallelVectors: return "ParallelVectors";
    case ErrorKind::kDivisionByZero: return "DivisionByZero";
    case ErrorKind::kGcdNotOne: return "GcdNotOne";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kNotCertified: return "NotCertified";
    case ErrorKind::kBadRho: return "BadRho";
    case ErrorKind::kUnsupported: return "Unsupported";
    case ErrorKind::kParse: return "Parse";
    case ErrorKind::kGeneratorViolation: return "GeneratorViolation";
  }
  return "Unknown";
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer round_half_up(const Rational& q) {
  Rational shifted = q + Rational(1, 2);
  return floor_of(shifted);
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

Integer dot(const IntVec& a, const IntVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IntVec& a, const RatVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

RatVec to_rational(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

Integer gcd_of(const IntVec& v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  return g;
}

Integer norm_squared(const IntVec& v) { return dot(v, v); }

Extended Extended::operator+(const Rational& r) const {
  if (!finite()) return *this;
  return Extended(Rational(value_ + r));
}

bool Extended::operator<(const Extended& o) const {
  if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_);
  if (kind_ == Kind::kFinite) return value_ < o.value_;
  return false;
}

bool Extended::operator==(const Extended& o) const {
  if (kind_ != o.kind_) return false;
  return kind_ != Kind::kFinite || value_ == o.value_;
}

std::string Extended::str() const {
  switch (kind_) {
    case Kind::kNegInf: return "-inf";
    case Kind::kPosInf: return "inf";
    case Kind::kFinite: break;
  }
  return to_string(value_);
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

std::string join(const IntVec& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].get_str();
  }
  return out;
}

std::string join(const RatVec& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].get_str();
  }
  return out;
}

namespace {

bool valid_integer_token(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Integer parse_integer(const std::string& s) {
  if (!valid_integer_token(s)) throw Error(ErrorKind::kParse, "bad integer '" + s + "'");
  std::string t = (s[0] == '+') ? s.substr(1) : s;
  return Integer(t, 10);
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  std::string den_s = s.substr(slash + 1);
  if (!den_s.empty() && den_s[0] == '-') {
    throw Error(ErrorKind::kParse, "negative denominator in '" + s + "'");
  }
  Integer den = parse_integer(den_s);
  if (den == 0) throw Error(ErrorKind::kParse, "zero denominator in '" + s + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

IntVec make_intvec(std::initializer_list<long> xs) {
  IntVec v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace dkplab
