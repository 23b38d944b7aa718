#ifndef DAOLAB_HILBERT_HPP
#define DAOLAB_HILBERT_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "groebner.hpp"
#include "monomial.hpp"

namespace daolab {

/// Integer polynomial in one variable t, coefficient k at index k.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> c) : c_(std::move(c)) { trim(); }
  static IntPoly constant(long v) { return IntPoly({mpz_class(v)}); }
  /// 1 - t^d
  static IntPoly one_minus_power(int d) {
    std::vector<mpz_class> c(static_cast<std::size_t>(d) + 1, 0);
    c[0] += 1;
    c[static_cast<std::size_t>(d)] -= 1;
    return IntPoly(std::move(c));
  }

  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  mpz_class operator[](std::size_t k) const { return k < c_.size() ? c_[k] : mpz_class(0); }

  IntPoly operator+(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
  }
  IntPoly operator-(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPoly(std::move(r));
  }
  IntPoly operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
  }
  /// Multiply by t^k.
  IntPoly shifted(int k) const {
    if (is_zero()) return {};
    if (k < 0) throw std::invalid_argument("negative shift of a Hilbert numerator");
    std::vector<mpz_class> r(static_cast<std::size_t>(k), 0);
    r.insert(r.end(), c_.begin(), c_.end());
    return IntPoly(std::move(r));
  }
  mpz_class at_one() const {
    mpz_class s = 0;
    for (const auto& v : c_) s += v;
    return s;
  }
  /// Exact division by (1 - t); nullopt when (1 - t) does not divide.
  std::optional<IntPoly> divide_one_minus_t() const {
    if (is_zero()) return IntPoly();
    if (at_one() != 0) return std::nullopt;
    // p = (1 - t) q  =>  q_k = sum_{i <= k} p_i
    std::vector<mpz_class> q(c_.size() - 1, 0);
    mpz_class acc = 0;
    for (std::size_t k = 0; k + 1 < c_.size(); ++k) {
      acc += c_[k];
      q[k] = acc;
    }
    return IntPoly(std::move(q));
  }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      mpz_class a = abs(c_[k]);
      if (s.empty()) {
        if (c_[k] < 0) s += "-";
      } else {
        s += c_[k] < 0 ? " - " : " + ";
      }
      if (k == 0 || a != 1) s += a.get_str();
      if (k > 0) s += (a != 1 ? "*t" : "t") + (k > 1 ? "^" + std::to_string(k) : std::string());
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<mpz_class> c_;
};

namespace detail {

inline void minimalize_monomials(std::vector<Monomial>& ms) {
  std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<Monomial> out;
  for (const auto& m : ms) {
    bool redundant = false;
    for (const auto& o : out)
      if (o.divides(m)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(m);
  }
  ms = std::move(out);
}

inline IntPoly numerator_rec(std::vector<Monomial> ms, std::size_t n) {
  minimalize_monomials(ms);
  IntPoly factor = IntPoly::constant(1);
  // Split off generators coprime to all others.
  std::vector<Monomial> rest;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    bool coprime = true;
    for (std::size_t j = 0; j < ms.size() && coprime; ++j)
      if (i != j && !ms[i].coprime(ms[j])) coprime = false;
    if (coprime) factor = factor * IntPoly::one_minus_power(ms[i].degree());
    else rest.push_back(ms[i]);
  }
  if (rest.empty()) return factor;
  // Pivot on the variable occurring in the most generators.
  std::vector<int> count(n, 0);
  for (const auto& m : rest)
    for (std::size_t v = 0; v < n; ++v)
      if (m[v] > 0) ++count[v];
  std::size_t var = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
  std::vector<int> exps;
  for (const auto& m : rest)
    if (m[var] > 0) exps.push_back(m[var]);
  std::sort(exps.begin(), exps.end());
  int e = exps[exps.size() / 2];
  if (e == exps.back() && exps.size() > 1) e = exps.front();
  Monomial p = Monomial::variable(var, e);

  std::vector<Monomial> sum;
  for (const auto& m : rest)
    if (!p.divides(m)) sum.push_back(m);
  sum.push_back(p);
  std::vector<Monomial> colon;
  for (const auto& m : rest) {
    Monomial q = m;
    q.set(var, std::max(0, static_cast<int>(m[var]) - e));
    colon.push_back(q);
  }
  return factor * (numerator_rec(std::move(sum), n) + numerator_rec(std::move(colon), n).shifted(e));
}

}  // namespace detail

/// K-polynomial N(t) of S/M for a monomial ideal M in n variables, so that
/// the Hilbert series of S/M is N(t) / (1-t)^n.
inline IntPoly hilbert_numerator(std::vector<Monomial> gens, std::size_t n) {
  for (auto& g : gens) g = g.with_component(0);
  for (const auto& g : gens)
    if (g.is_one()) return {};
  return detail::numerator_rec(std::move(gens), n);
}

/// Numerator of the Hilbert series of F/U, where F is the ambient free
/// module of the basis ring (shifts included) and U the submodule with
/// Groebner basis G. Only leading monomials are used.
template <class Field>
IntPoly hilbert_numerator(const GroebnerBasis<Field>& G) {
  const auto& ring = *G.ring();
  const auto& ord = ring.order();
  std::size_t rank = ring.rank();
  std::vector<std::vector<Monomial>> per(rank);
  for (const auto& m : G.leading_monomials()) per.at(static_cast<std::size_t>(m.component())).push_back(m);
  IntPoly total;
  for (std::size_t c = 0; c < rank; ++c) {
    IntPoly part = hilbert_numerator(per[c], ring.nvars());
    int s = ord.shift(static_cast<int>(c));
    if (s < 0) throw std::invalid_argument("negative generator degree in Hilbert series");
    total = total + part.shifted(s);
  }
  return total;
}

/// Hilbert series N(t)/(1-t)^n written in lowest terms h(t)/(1-t)^d.
struct ReducedHilbert {
  IntPoly h;
  int dim = 0;
};

inline ReducedHilbert reduce_hilbert(const IntPoly& numerator, std::size_t n) {
  ReducedHilbert r{numerator, static_cast<int>(n)};
  if (numerator.is_zero()) {
    r.dim = -1;
    return r;
  }
  while (r.dim > 0) {
    auto q = r.h.divide_one_minus_t();
    if (!q) break;
    r.h = *q;
    --r.dim;
  }
  return r;
}

inline mpz_class binomial(long n, long k) {
  if (k < 0 || n < k) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// Coefficient of t^d in N(t)/(1-t)^n.
inline mpz_class hilbert_function(const IntPoly& numerator, std::size_t n, int d) {
  mpz_class s = 0;
  for (int k = 0; k <= numerator.degree() && k <= d; ++k) {
    if (n == 0) {
      if (k == d) s += numerator[static_cast<std::size_t>(k)];
      continue;
    }
    s += numerator[static_cast<std::size_t>(k)] * binomial(d - k + static_cast<long>(n) - 1, static_cast<long>(n) - 1);
  }
  return s;
}

/// Sum of all coefficients of (N_small - N_big)/(1-t)^n, which is the
/// K-length of B/A for ideals A subset B with finite-length quotient when
/// N_small = N(S/A) and N_big = N(S/B). Throws if the quotient is infinite.
inline mpz_class finite_length_difference(const IntPoly& n_small, const IntPoly& n_big, std::size_t n) {
  IntPoly diff = n_small - n_big;
  for (std::size_t i = 0; i < n; ++i) {
    auto q = diff.divide_one_minus_t();
    if (!q) throw std::domain_error("quotient does not have finite length");
    diff = *q;
  }
  return diff.at_one();
}

/// dim_K (S/(G))_d for a homogeneous Groebner basis G.
template <class Field>
long kdim_component(const GroebnerBasis<Field>& G, int d) {
  if (d < 0) return 0;
  return hilbert_function(hilbert_numerator(G), G.ring()->nvars(), d).get_si();
}

/// Monomials of degree < bound outside the monomial ideal generated by leads.
inline long count_standard_below(const std::vector<Monomial>& leads, std::size_t n, int bound) {
  IntPoly N = hilbert_numerator(leads, n);
  long s = 0;
  for (int d = 0; d < bound; ++d) s += hilbert_function(N, n, d).get_si();
  return s;
}

/// Standard monomials of a zero-dimensional monomial ideal, sorted by degree.
/// Throws when the quotient is infinite.
inline std::vector<Monomial> standard_monomials(const std::vector<Monomial>& leads, std::size_t n) {
  std::vector<int> bound(n, -1);
  for (const auto& m : leads) {
    if (m.component() != 0) continue;
    std::size_t support = 0, var = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (m[v] > 0) {
        ++support;
        var = v;
      }
    if (support == 1 && (bound[var] < 0 || m[var] < bound[var])) bound[var] = m[var];
    if (support == 0) return {};
  }
  for (std::size_t v = 0; v < n; ++v)
    if (bound[v] < 0) throw std::domain_error("quotient is not finite dimensional");
  std::vector<Monomial> out;
  auto blocked = [&](const Monomial& m) {
    for (const auto& l : leads)
      if (l.divides(m)) return true;
    return false;
  };
  // Depth-first over exponent vectors; a monomial divisible by a lead has no
  // standard multiples, so the search is pruned there.
  std::vector<Monomial> frontier{Monomial()};
  while (!frontier.empty()) {
    Monomial m = frontier.back();
    frontier.pop_back();
    if (blocked(m)) continue;
    out.push_back(m);
    // Extend only in variables >= the last nonzero one to enumerate each once.
    std::size_t last = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (m[v] > 0) last = v;
    for (std::size_t v = last; v < n; ++v) {
      if (m[v] + 1 >= bound[v]) continue;
      frontier.push_back(m * Monomial::variable(v));
    }
  }
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.exponents() < b.exponents();
  });
  return out;
}

}  // namespace daolab

#endif  // DAOLAB_HILBERT_HPP
