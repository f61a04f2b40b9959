#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace dkplab {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

// A rational bound where nullopt stands for an infinite side.
using OptRational = std::optional<Rational>;

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
// Nearest integer; exact halves go toward +infinity.
Integer round_half_up(const Rational& q);
bool is_integral(const Rational& q);

Integer dot(const IntVec& a, const IntVec& b);
Rational dot(const RatVec& a, const RatVec& b);
Rational dot(const IntVec& a, const RatVec& b);
RatVec to_rational(const IntVec& v);
Integer gcd_of(const IntVec& v);
Integer norm_squared(const IntVec& v);

// Value on the extended real line, used for LP optima and knapsack extremes.
class Extended {
 public:
  enum class Kind { kNegInf, kFinite, kPosInf };

  Extended() : kind_(Kind::kFinite) {}
  Extended(const Rational& v) : kind_(Kind::kFinite), value_(v) {}  // NOLINT
  static Extended neg_inf() { return Extended(Kind::kNegInf); }
  static Extended pos_inf() { return Extended(Kind::kPosInf); }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::kFinite; }
  // Only meaningful when finite().
  const Rational& value() const { return value_; }

  Extended operator+(const Rational& r) const;
  bool operator<(const Extended& o) const;
  bool operator==(const Extended& o) const;
  bool operator<=(const Extended& o) const { return *this < o || *this == o; }
  bool operator>(const Extended& o) const { return o < *this; }
  bool operator>=(const Extended& o) const { return o <= *this; }

  std::string str() const;

 private:
  explicit Extended(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);
std::string join(const IntVec& v, const std::string& sep = " ");
std::string join(const RatVec& v, const std::string& sep = " ");

// Throws Error(kParse) on malformed input. Rationals accept "p/q".
Integer parse_integer(const std::string& s);
Rational parse_rational(const std::string& s);

IntVec make_intvec(std::initializer_list<long> xs);

}  // namespace dkplab
