#ifndef DAOLAB_LINALG_HPP
#define DAOLAB_LINALG_HPP

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace daolab {

/// Sparse vector: strictly increasing indices, nonzero entries.
template <class Field>
using SparseVector = std::vector<std::pair<std::size_t, typename Field::Element>>;

/// a - c*b
template <class Field>
SparseVector<Field> sparse_axpy(const Field& F, const SparseVector<Field>& a, const typename Field::Element& c,
                                const SparseVector<Field>& b) {
  SparseVector<Field> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back({b[j].first, F.neg(F.mul(c, b[j].second))});
      ++j;
    } else {
      auto v = F.sub(a[i].second, F.mul(c, b[j].second));
      if (!F.is_zero(v)) out.push_back({a[i].first, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

/// Incremental row echelon form. Each added vector is reduced against the
/// stored pivots; if it becomes zero, the recorded combination of earlier
/// inputs is a kernel vector of the map "input k -> vector k".
template <class Field>
class IncrementalEchelon {
 public:
  using Vec = SparseVector<Field>;

  explicit IncrementalEchelon(Field field) : F_(std::move(field)) {}

  /// Returns the kernel relation if v depends on the earlier inputs.
  std::optional<Vec> add(Vec v) {
    std::size_t id = inputs_++;
    Vec comb{{id, F_.one()}};
    while (!v.empty()) {
      auto it = pivot_of_.find(v.front().first);
      if (it == pivot_of_.end()) break;
      const Row& r = rows_[it->second];
      auto c = F_.div(v.front().second, r.vec.front().second);
      v = sparse_axpy(F_, v, c, r.vec);
      comb = sparse_axpy(F_, comb, c, r.comb);
    }
    if (v.empty()) return comb;
    pivot_of_[v.front().first] = rows_.size();
    rows_.push_back({std::move(v), std::move(comb)});
    return std::nullopt;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    Vec vec;
    Vec comb;
  };
  Field F_;
  std::vector<Row> rows_;
  std::unordered_map<std::size_t, std::size_t> pivot_of_;
  std::size_t inputs_ = 0;
};

}  // namespace daolab

#endif  // DAOLAB_LINALG_HPP
