#ifndef DAOLAB_MONOMIAL_HPP
#define DAOLAB_MONOMIAL_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace daolab {

/// Upper bound on ring variables. Rees presentations of the largest graded
/// inputs need 2n+1 variables plus one auxiliary elimination variable.
inline constexpr std::size_t kMaxVars = 24;

/// Dense exponent vector with an optional free-module component.
/// Component 0 is the only component of a plain polynomial.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;

  explicit Monomial(const std::vector<int>& exps, int comp = 0) : comp_(comp) {
    if (exps.size() > kMaxVars) throw std::length_error("too many variables");
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] < 0 || exps[i] > 0xFFFF) throw std::out_of_range("exponent out of range");
      exp_[i] = static_cast<Exponent>(exps[i]);
    }
    refresh();
  }

  static Monomial variable(std::size_t i, int power = 1) {
    Monomial m;
    m.exp_.at(i) = static_cast<Exponent>(power);
    m.refresh();
    return m;
  }

  Exponent operator[](std::size_t i) const { return exp_[i]; }
  int degree() const { return static_cast<int>(degree_); }
  int component() const { return comp_; }
  std::uint32_t mask() const { return mask_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t i, int e) {
    exp_.at(i) = static_cast<Exponent>(e);
    refresh();
  }
  Monomial with_component(int c) const {
    Monomial m = *this;
    m.comp_ = c;
    return m;
  }

  /// Product; the component of `*this` wins when multiplying a module
  /// monomial by a ring monomial.
  Monomial operator*(const Monomial& o) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned s = static_cast<unsigned>(exp_[i]) + o.exp_[i];
      if (s > 0xFFFF) throw std::overflow_error("exponent overflow");
      m.exp_[i] = static_cast<Exponent>(s);
    }
    m.comp_ = comp_ != 0 ? comp_ : o.comp_;
    m.degree_ = degree_ + o.degree_;
    m.mask_ = mask_ | o.mask_;
    return m;
  }

  /// Divisibility ignores nothing: components must agree.
  bool divides(const Monomial& o) const {
    if (comp_ != o.comp_ || degree_ > o.degree_ || (mask_ & ~o.mask_) != 0) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp_[i] > o.exp_[i]) return false;
    return true;
  }

  /// o / *this as a ring monomial (component 0); requires divides(o).
  Monomial quotient_of(const Monomial& o) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp_[i] = static_cast<Exponent>(o.exp_[i] - exp_[i]);
    m.refresh();
    return m;
  }

  Monomial lcm(const Monomial& o) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp_[i] = std::max(exp_[i], o.exp_[i]);
    m.comp_ = comp_;
    m.refresh();
    return m;
  }

  Monomial gcd(const Monomial& o) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp_[i] = std::min(exp_[i], o.exp_[i]);
    m.refresh();
    return m;
  }

  bool coprime(const Monomial& o) const {
    if ((mask_ & o.mask_) == 0) return true;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp_[i] != 0 && o.exp_[i] != 0) return false;
    return true;
  }

  /// Sum of exponents over variables [first, last).
  int partial_degree(std::size_t first, std::size_t last) const {
    int d = 0;
    for (std::size_t i = first; i < last; ++i) d += exp_[i];
    return d;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(comp_) * 0x9E3779B97F4A7C15ULL;
    for (std::size_t i = 0; i < kMaxVars; ++i) h = (h ^ exp_[i]) * 0x100000001B3ULL;
    return h;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.comp_ == b.comp_ && a.degree_ == b.degree_ && a.exp_ == b.exp_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  const std::array<Exponent, kMaxVars>& exponents() const { return exp_; }

  std::string to_string(const std::vector<std::string>& names) const {
    std::string s;
    for (std::size_t i = 0; i < names.size() && i < kMaxVars; ++i) {
      if (exp_[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += names[i];
      if (exp_[i] > 1) s += "^" + std::to_string(exp_[i]);
    }
    return s.empty() ? "1" : s;
  }

 private:
  void refresh() {
    degree_ = 0;
    mask_ = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      degree_ += exp_[i];
      if (exp_[i] != 0) mask_ |= 1u << (i % 32);
    }
  }

  std::array<Exponent, kMaxVars> exp_{};
  std::uint32_t degree_ = 0;
  std::uint32_t mask_ = 0;
  int comp_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// All monomials of total degree d in the first n variables, lexicographic.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  std::vector<int> e(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  rec(0, d);
  return out;
}

}  // namespace daolab

#endif  // DAOLAB_MONOMIAL_HPP
