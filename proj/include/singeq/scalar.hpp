#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "singeq/errors.hpp"

namespace singeq {

struct FieldSpec {
  enum class Kind { Prime, Rational };
  Kind kind = Kind::Prime;
  std::uint32_t p = 32003;

  static FieldSpec prime(std::uint32_t p);
  static FieldSpec rational() { return {Kind::Rational, 0}; }

  bool operator==(const FieldSpec&) const = default;
  std::string describe() const;
};

bool is_prime(std::uint32_t p);

// Element of Z/p with the modulus carried along. A value with modulus 0 is an
// integer literal that has not met a field element yet (Eigen builds those
// from Scalar(0) and Scalar(1)); it adopts the modulus of whatever it meets.
class Fp {
 public:
  constexpr Fp() = default;
  constexpr Fp(int v) : v_(v), p_(0) {}
  Fp(std::int64_t v, std::uint32_t p);

  std::int64_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const;
  Fp inverse() const;

  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  Fp operator-() const;
  friend bool operator==(const Fp& a, const Fp& b);
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

 private:
  static std::uint32_t join(std::uint32_t a, std::uint32_t b);
  std::int64_t reduced(std::uint32_t p) const;

  std::int64_t v_ = 0;
  std::uint32_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Fp& x);

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Fp> {
  static constexpr FieldSpec::Kind kind = FieldSpec::Kind::Prime;
  static Fp from_int(const FieldSpec& f, long long v) { return Fp(v, f.p); }
  static bool is_zero(const Fp& x) { return x.is_zero(); }
  static std::string str(const Fp& x);
  static Fp parse(const FieldSpec& f, std::string_view text);
  static Fp random(const FieldSpec& f, std::mt19937_64& rng) {
    return Fp(static_cast<std::int64_t>(rng() % f.p), f.p);
  }
  // the characteristic, 0 in characteristic zero
  static std::uint32_t characteristic(const FieldSpec& f) { return f.p; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr FieldSpec::Kind kind = FieldSpec::Kind::Rational;
  static Rational from_int(const FieldSpec&, long long v) { return Rational(v); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static std::string str(const Rational& x) { return x.str(); }
  static Rational parse(const FieldSpec& f, std::string_view text);
  static Rational random(const FieldSpec&, std::mt19937_64& rng) {
    return Rational(static_cast<long long>(rng() % 41) - 20);
  }
  static std::uint32_t characteristic(const FieldSpec&) { return 0; }
};

template <class S>
bool is_zero(const S& x) {
  return ScalarTraits<S>::is_zero(x);
}

template <class S>
void check_field(const FieldSpec& f) {
  if (f.kind != ScalarTraits<S>::kind) throw FieldMismatch("scalar type does not match field " + f.describe());
}

}  // namespace singeq

namespace Eigen {

template <>
struct NumTraits<singeq::Fp> : GenericNumTraits<singeq::Fp> {
  using Real = singeq::Fp;
  using NonInteger = singeq::Fp;
  using Nested = singeq::Fp;
  using Literal = singeq::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static Real highest() { return Real(0); }
  static Real lowest() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
