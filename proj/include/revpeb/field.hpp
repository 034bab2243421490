#pragma once

// Exact coefficient fields: prime fields GF(p) and the rationals.

#include <cctype>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "revpeb/error.hpp"

namespace revpeb {

struct FieldSpec {
  enum class Kind { Prime, Rationals };
  Kind kind = Kind::Rationals;
  std::uint64_t prime = 0;

  static FieldSpec prime_field(std::uint64_t p) { return {Kind::Prime, p}; }
  static FieldSpec rationals() { return {Kind::Rationals, 0}; }

  // "2", "3", "F5", "GF(7)", "q", "Q", "rationals"
  static FieldSpec parse(std::string_view text) {
    std::string s(text);
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (s == "q" || s == "rationals" || s == "rational") return rationals();
    if (s.rfind("gf(", 0) == 0 && s.back() == ')') s = s.substr(3, s.size() - 4);
    else if (!s.empty() && s[0] == 'f') s = s.substr(1);
    try {
      std::size_t used = 0;
      unsigned long long p = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return prime_field(p);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "unrecognised field '" + std::string(text) + "'");
    }
  }

  std::string name() const { return kind == Kind::Rationals ? "Q" : "F" + std::to_string(prime); }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Splits "a", "-a", "a/b" into numerator and denominator strings.
inline std::pair<std::string, std::string> split_fraction(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return {std::string(text), "1"};
  return {std::string(text.substr(0, slash)), std::string(text.substr(slash + 1))};
}

inline mpz_class parse_integer(const std::string& s, std::string_view whole) {
  mpz_class z;
  std::string t = (!s.empty() && s[0] == '+') ? s.substr(1) : s;
  if (t.empty() || z.set_str(t, 10) != 0)
    throw Error(ErrorKind::ParseError, "bad coefficient '" + std::string(whole) + "'");
  return z;
}

}  // namespace detail

class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!detail::is_prime(p)) throw Error(ErrorKind::ParamOutOfRange, std::to_string(p) + " is not prime");
  }

  std::uint64_t characteristic() const noexcept { return p_; }
  FieldSpec spec() const { return FieldSpec::prime_field(p_); }

  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return 1 % p_; }
  value_type from_int(long long x) const {
    long long m = x % static_cast<long long>(p_);
    return static_cast<value_type>(m < 0 ? m + static_cast<long long>(p_) : m);
  }
  value_type add(value_type a, value_type b) const noexcept {
    return static_cast<value_type>((static_cast<unsigned __int128>(a) + b) % p_);
  }
  value_type sub(value_type a, value_type b) const noexcept { return add(a, neg(b)); }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw Error(ErrorKind::ParseError, "division by zero in F" + std::to_string(p_));
    value_type result = 1, base = a, e = p_ - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  bool is_zero(value_type a) const noexcept { return a == 0; }
  bool equal(value_type a, value_type b) const noexcept { return a == b; }

  value_type parse(std::string_view text) const {
    auto [num, den] = detail::split_fraction(text);
    mpz_class n = detail::parse_integer(num, text), d = detail::parse_integer(den, text);
    mpz_class pz(std::to_string(p_));
    mpz_class nr = ((n % pz) + pz) % pz, dr = ((d % pz) + pz) % pz;
    return mul(static_cast<value_type>(std::stoull(nr.get_str())), inv(static_cast<value_type>(std::stoull(dr.get_str()))));
  }
  std::string format(value_type a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

class RationalField {
 public:
  using value_type = mpq_class;

  FieldSpec spec() const { return FieldSpec::rationals(); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long x) const { return mpq_class(mpz_class(std::to_string(x))); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw Error(ErrorKind::ParseError, "division by zero in Q");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  value_type parse(std::string_view text) const {
    auto [num, den] = detail::split_fraction(text);
    mpz_class n = detail::parse_integer(num, text), d = detail::parse_integer(den, text);
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
  }
  std::string format(const value_type& a) const { return a.get_str(); }

  friend bool operator==(const RationalField&, const RationalField&) noexcept { return true; }
};

template <typename F>
concept Field = std::equality_comparable<F> && requires(const F f, const typename F::value_type a, std::string_view s) {
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { f.from_int(1LL) } -> std::convertible_to<typename F::value_type>;
  { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.neg(a) } -> std::convertible_to<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.parse(s) } -> std::convertible_to<typename F::value_type>;
  { f.format(a) } -> std::convertible_to<std::string>;
  { f.spec() } -> std::convertible_to<FieldSpec>;
};

// Calls fn(PrimeField) or fn(RationalField) according to `spec`.
template <typename Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::Prime) return fn(PrimeField(spec.prime));
  return fn(RationalField{});
}

}  // namespace revpeb
