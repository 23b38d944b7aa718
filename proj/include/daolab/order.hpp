#ifndef DAOLAB_ORDER_HPP
#define DAOLAB_ORDER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "monomial.hpp"

namespace daolab {

enum class OrderKind { DegRevLex, Lex, Elimination, HomogenizedLocal };

/// A global monomial order, optionally extended to a free module.
///
/// Elimination orders compare the first `block` variables first (degree,
/// then reverse lexicographic inside the block) and break ties with
/// degrevlex on the remaining variables. Module monomials carry degree
/// shifts per component; by default the order is term-over-position on
/// the shifted degree.
///
/// HomogenizedLocal treats the last variable as a homogenizing variable h:
/// total degree first, then the larger power of h, then reverse
/// lexicographic on the rest. Dehomogenized leading terms of a Groebner
/// basis in this order are the lowest-degree terms of a local standard
/// basis (Lazard's method).
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(OrderKind kind, std::size_t nvars, std::size_t block = 0)
      : kind_(kind), nvars_(nvars), block_(block) {}

  static MonomialOrder degrevlex(std::size_t n) { return {OrderKind::DegRevLex, n}; }
  static MonomialOrder lex(std::size_t n) { return {OrderKind::Lex, n}; }
  static MonomialOrder elimination(std::size_t n, std::size_t block) { return {OrderKind::Elimination, n, block}; }
  static MonomialOrder homogenized_local(std::size_t n) { return {OrderKind::HomogenizedLocal, n}; }

  MonomialOrder with_shifts(std::vector<int> shifts, bool position_first = false) const {
    MonomialOrder o = *this;
    o.shifts_ = std::move(shifts);
    o.position_first_ = position_first;
    return o;
  }

  OrderKind kind() const { return kind_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t block() const { return block_; }
  std::size_t rank() const { return shifts_.empty() ? 1 : shifts_.size(); }
  const std::vector<int>& shifts() const { return shifts_; }
  bool position_first() const { return position_first_; }

  int shift(int comp) const {
    return shifts_.empty() ? 0 : shifts_.at(static_cast<std::size_t>(comp));
  }
  /// Degree of a module monomial including its component shift.
  int shifted_degree(const Monomial& m) const { return m.degree() + shift(m.component()); }

  /// Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const {
    if (position_first_ && a.component() != b.component()) return a.component() < b.component() ? 1 : -1;
    int c = compare_terms(a, b);
    if (c != 0) return c;
    if (a.component() != b.component()) return a.component() < b.component() ? 1 : -1;
    return 0;
  }
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string name() const {
    switch (kind_) {
      case OrderKind::DegRevLex: return "degrevlex";
      case OrderKind::Lex: return "lex";
      case OrderKind::Elimination: return "elim" + std::to_string(block_);
      case OrderKind::HomogenizedLocal: return "hlocal";
    }
    return "?";
  }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.nvars_ == b.nvars_ && a.block_ == b.block_ && a.shifts_ == b.shifts_ &&
           a.position_first_ == b.position_first_;
  }

 private:
  static int revlex(const Monomial& a, const Monomial& b, std::size_t first, std::size_t last) {
    for (std::size_t i = last; i-- > first;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  int compare_terms(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case OrderKind::DegRevLex: {
        int da = shifted_degree(a), db = shifted_degree(b);
        if (da != db) return da < db ? -1 : 1;
        return revlex(a, b, 0, nvars_);
      }
      case OrderKind::Lex: {
        for (std::size_t i = 0; i < nvars_; ++i)
          if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
      }
      case OrderKind::Elimination: {
        int da = a.partial_degree(0, block_), db = b.partial_degree(0, block_);
        if (da != db) return da < db ? -1 : 1;
        int c = revlex(a, b, 0, block_);
        if (c != 0) return c;
        da = a.partial_degree(block_, nvars_) + shift(a.component());
        db = b.partial_degree(block_, nvars_) + shift(b.component());
        if (da != db) return da < db ? -1 : 1;
        return revlex(a, b, block_, nvars_);
      }
      case OrderKind::HomogenizedLocal: {
        int da = shifted_degree(a), db = shifted_degree(b);
        if (da != db) return da < db ? -1 : 1;
        std::size_t h = nvars_ - 1;
        if (a[h] != b[h]) return a[h] > b[h] ? 1 : -1;
        return revlex(a, b, 0, h);
      }
    }
    return 0;
  }

  OrderKind kind_ = OrderKind::DegRevLex;
  std::size_t nvars_ = 0;
  std::size_t block_ = 0;
  std::vector<int> shifts_;
  bool position_first_ = false;
};

}  // namespace daolab

#endif  // DAOLAB_ORDER_HPP
