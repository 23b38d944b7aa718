#ifndef DAOLAB_FIELD_HPP
#define DAOLAB_FIELD_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace daolab {

/// Deterministic bounded draw. std::uniform_int_distribution is not portable
/// across standard libraries, and reports must be byte-stable per seed.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Integers modulo an odd prime p < 2^31.
class PrimeField {
 public:
  using Element = std::uint32_t;

  static constexpr std::uint32_t kDefaultModulus = 32003;

  explicit PrimeField(std::uint64_t p = kDefaultModulus) : p_(static_cast<std::uint32_t>(p)) {
    if (p < 3 || p >= (1ULL << 31) || !is_prime(p))
      throw std::invalid_argument("prime field modulus must be a prime in [3, 2^31): " + std::to_string(p));
  }

  std::uint32_t modulus() const { return p_; }
  std::string name() const { return "F" + std::to_string(p_); }
  bool exact_rationals() const { return false; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(const Element& a) const { return a == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }
  Element from_mpz(const mpz_class& v) const {
    mpz_class r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Element>(r.get_ui());
  }
  /// num/den; throws when den vanishes mod p.
  Element from_fraction(const mpz_class& num, const mpz_class& den) const {
    Element d = from_mpz(den);
    if (d == 0) throw std::domain_error("denominator divisible by the field characteristic");
    return mul(from_mpz(num), inv(d));
  }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Element>(t);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element random(std::mt19937_64& rng) const { return static_cast<Element>(draw_below(rng, p_)); }

  /// Balanced representative, so that p-1 prints as -1.
  std::string to_string(Element a) const {
    if (a > p_ / 2) return "-" + std::to_string(p_ - a);
    return std::to_string(a);
  }
  bool is_negative(Element a) const { return a > p_ / 2; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// The rationals with GMP arbitrary-precision integers.
class RationalField {
 public:
  using Element = mpq_class;

  /// Random coefficients are drawn from [-kRandomBound, kRandomBound].
  static constexpr long kRandomBound = 100;

  std::string name() const { return "Q"; }
  bool exact_rationals() const { return true; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element from_int(long long v) const { return Element(mpz_class(std::to_string(v))); }
  Element from_mpz(const mpz_class& v) const { return Element(v); }
  Element from_fraction(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw std::domain_error("zero denominator");
    Element q(num, den);
    q.canonicalize();
    return q;
  }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return a / b; }

  Element random(std::mt19937_64& rng) const {
    auto span = static_cast<std::uint64_t>(2 * kRandomBound + 1);
    return Element(static_cast<long>(draw_below(rng, span)) - kRandomBound);
  }

  std::string to_string(const Element& a) const { return a.get_str(); }
  bool is_negative(const Element& a) const { return sgn(a) < 0; }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

}  // namespace daolab

#endif  // DAOLAB_FIELD_HPP
