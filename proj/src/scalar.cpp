#include "singeq/scalar.hpp"

#include <charconv>
#include <ostream>

namespace singeq {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p) || p >= (1u << 31)) throw ValidationError("not a usable prime: " + std::to_string(p));
  return {Kind::Prime, p};
}

std::string FieldSpec::describe() const {
  return kind == Kind::Rational ? "rational" : "prime " + std::to_string(p);
}

Fp::Fp(std::int64_t v, std::uint32_t p) : p_(p) {
  if (p == 0) {
    v_ = v;
    return;
  }
  v_ = v % static_cast<std::int64_t>(p);
  if (v_ < 0) v_ += p;
}

std::uint32_t Fp::join(std::uint32_t a, std::uint32_t b) {
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  throw FieldMismatch("mixing F_" + std::to_string(a) + " and F_" + std::to_string(b));
}

std::int64_t Fp::reduced(std::uint32_t p) const {
  if (p_ == p || p == 0) return v_;
  std::int64_t r = v_ % static_cast<std::int64_t>(p);
  return r < 0 ? r + p : r;
}

bool Fp::is_zero() const { return v_ == 0; }

Fp Fp::inverse() const {
  if (v_ == 0) throw std::domain_error("inverse of zero");
  if (p_ == 0) {
    if (v_ == 1 || v_ == -1) return *this;
    throw FieldMismatch("inverse of an unbound integer");
  }
  // extended Euclid
  std::int64_t a = v_, m = p_, x0 = 1, x1 = 0;
  while (m != 0) {
    std::int64_t q = a / m;
    std::int64_t t = a - q * m;
    a = m;
    m = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return Fp(x0, p_);
}

Fp& Fp::operator+=(const Fp& o) {
  std::uint32_t p = join(p_, o.p_);
  *this = Fp(reduced(p) + o.reduced(p), p);
  return *this;
}

Fp& Fp::operator-=(const Fp& o) {
  std::uint32_t p = join(p_, o.p_);
  *this = Fp(reduced(p) - o.reduced(p), p);
  return *this;
}

Fp& Fp::operator*=(const Fp& o) {
  std::uint32_t p = join(p_, o.p_);
  *this = Fp(reduced(p) * o.reduced(p), p);
  return *this;
}

Fp Fp::operator-() const { return Fp(-v_, p_); }

bool operator==(const Fp& a, const Fp& b) {
  std::uint32_t p = Fp::join(a.p_, b.p_);
  return a.reduced(p) == b.reduced(p);
}

std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.value(); }

std::string ScalarTraits<Fp>::str(const Fp& x) { return std::to_string(x.value()); }

Fp ScalarTraits<Fp>::parse(const FieldSpec& f, std::string_view text) {
  auto slash = text.find('/');
  auto parse_int = [&](std::string_view s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ValidationError("bad scalar '" + std::string(text) + "'");
    return v;
  };
  if (slash == std::string_view::npos) return Fp(parse_int(text), f.p);
  Fp den(parse_int(text.substr(slash + 1)), f.p);
  if (den.is_zero()) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  return Fp(parse_int(text.substr(0, slash)), f.p) / den;
}

Rational ScalarTraits<Rational>::parse(const FieldSpec&, std::string_view text) {
  try {
    Rational r{std::string(text)};
    return r;
  } catch (const std::exception&) {
    throw ValidationError("bad scalar '" + std::string(text) + "'");
  }
}

}  // namespace singeq
