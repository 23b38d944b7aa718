#ifndef DAOLAB_GROEBNER_HPP
#define DAOLAB_GROEBNER_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace daolab {

/// A reduced Groebner basis: monic, interreduced, sorted by increasing
/// leading monomial. Also used for submodules of free modules.
template <class Field>
class GroebnerBasis {
 public:
  using Poly = Polynomial<Field>;

  GroebnerBasis() = default;
  GroebnerBasis(RingPtr<Field> ring, std::vector<Poly> basis) : ring_(std::move(ring)), basis_(std::move(basis)) {}

  const RingPtr<Field>& ring() const { return ring_; }
  const std::vector<Poly>& elements() const { return basis_; }
  std::size_t size() const { return basis_.size(); }
  bool is_reduced() const { return true; }
  bool is_unit() const { return basis_.size() == 1 && basis_[0].is_constant() && ring_->rank() == 1; }
  bool is_zero_ideal() const { return basis_.empty(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    out.reserve(basis_.size());
    for (const auto& g : basis_) out.push_back(g.lead_monomial());
    return out;
  }

  /// Fully reduced remainder of p.
  Poly normal_form(const Poly& p) const;
  bool contains(const Poly& p) const { return normal_form(p).is_zero(); }
  bool contains_all(const std::vector<Poly>& ps) const {
    return std::all_of(ps.begin(), ps.end(), [&](const Poly& p) { return contains(p); });
  }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) { return a.basis_ == b.basis_; }

 private:
  RingPtr<Field> ring_;
  std::vector<Poly> basis_;
};

namespace detail {

/// Reduction workspace: a polynomial being reduced plus its optional trace.
template <class Field>
struct Reducer {
  using Poly = Polynomial<Field>;
  struct Reductor {
    const Poly* poly;
    const Poly* trace;
    int sugar = 0;
  };

  /// Finds an element whose leading monomial divides m.
  static std::optional<std::size_t> find_divisor(const std::vector<Reductor>& rs, const Monomial& m) {
    for (std::size_t i = 0; i < rs.size(); ++i)
      if (rs[i].poly->lead_monomial().divides(m)) return i;
    return std::nullopt;
  }

  /// Reduce p (and its trace) by the monic reductors. With `full`, tail terms
  /// are reduced too; otherwise stop at the first irreducible leading term.
  static Poly reduce(Poly p, Poly* trace, const std::vector<Reductor>& rs, bool full, int* sugar = nullptr) {
    const auto& F = p.field();
    std::vector<Term<Field>> done;
    while (!p.is_zero()) {
      const auto& lt = p.lead();
      auto d = find_divisor(rs, lt.mono);
      if (!d) {
        if (!full) break;
        done.push_back(lt);
        auto& raw = p.raw_terms();
        raw.erase(raw.begin());
        continue;
      }
      const auto& g = *rs[*d].poly;
      Monomial q = g.lead_monomial().quotient_of(lt.mono);
      auto c = F.div(lt.coeff, g.lead_coeff());
      if (trace != nullptr && rs[*d].trace != nullptr) *trace = sub_multiple(*trace, c, q, *rs[*d].trace);
      if (sugar != nullptr) *sugar = std::max(*sugar, q.degree() + rs[*d].sugar);
      p = sub_multiple(p, c, q, g);
    }
    if (done.empty()) return p;
    for (auto& t : p.raw_terms()) done.push_back(std::move(t));
    return Poly::from_sorted(p.ring(), std::move(done));
  }

  static int sugar_of(const Poly& p) {
    int s = 0;
    const auto& ord = p.ring()->order();
    for (const auto& t : p.terms()) s = std::max(s, ord.shifted_degree(t.mono));
    return s;
  }
};

}  // namespace detail

template <class Field>
typename GroebnerBasis<Field>::Poly GroebnerBasis<Field>::normal_form(const Poly& p) const {
  if (p.is_zero() || basis_.empty()) return p;
  if (!p.ring()->same_signature(*ring_)) throw SignatureMismatch("normal form across rings");
  std::vector<typename detail::Reducer<Field>::Reductor> rs;
  rs.reserve(basis_.size());
  for (const auto& g : basis_) rs.push_back({&g, nullptr});
  return detail::Reducer<Field>::reduce(p, nullptr, rs, true);
}

/// Buchberger's algorithm with the Gebauer-Moeller pair criteria and sugar
/// selection. Supports incremental use (extend a known basis by new
/// generators) and tracking of each basis element as a combination of the
/// inputs, which is what the syzygy computation needs.
template <class Field>
class GroebnerEngine {
 public:
  using Poly = Polynomial<Field>;

  /// When `trace_ring` is set, the k-th call to add_generator gets trace e_k;
  /// the trace ring must have rank equal to the number of generators added.
  explicit GroebnerEngine(RingPtr<Field> ring, RingPtr<Field> trace_ring = nullptr)
      : ring_(std::move(ring)), trace_ring_(std::move(trace_ring)) {}

  /// Queue an input generator.
  void add_generator(const Poly& p) {
    check_ring(p);
    Poly tr;
    if (trace_ring_) {
      int k = static_cast<int>(inputs_);
      tr = Poly::monomial(trace_ring_, Monomial().with_component(k), ring_->field().one());
    }
    ++inputs_;
    if (p.is_zero()) return;
    pending_.push_back({p, tr, detail::Reducer<Field>::sugar_of(p)});
    pending_sorted_ = false;
  }

  /// Insert elements that are already a Groebner basis among themselves;
  /// no pairs are formed between them.
  void add_known_basis(const std::vector<Poly>& basis) {
    for (const auto& g : basis) {
      check_ring(g);
      if (g.is_zero()) continue;
      entries_.push_back({g.monic(), Poly(), detail::Reducer<Field>::sugar_of(g), true});
    }
  }

  void run() {
    for (;;) {
      if (!pending_sorted_) sort_pending();
      bool take_input = !pending_.empty() && (pairs_.empty() || pending_.back().sugar <= pairs_.back().sugar);
      if (take_input) {
        auto in = std::move(pending_.back());
        pending_.pop_back();
        process(std::move(in.poly), trace_ring_ ? std::optional<Poly>(std::move(in.trace)) : std::nullopt,
                in.sugar);
        continue;
      }
      if (pairs_.empty()) break;
      Pair pr = pairs_.back();
      pairs_.pop_back();
      auto [s, st] = spoly(pr.i, pr.j);
      process(std::move(s), std::move(st), pr.sugar);
    }
  }

  /// Active elements form a minimal Groebner basis after run().
  std::vector<Poly> reduced_basis() {
    interreduce();
    std::vector<Poly> out;
    for (const auto& e : entries_)
      if (e.active) out.push_back(e.poly);
    return out;
  }
  /// Traces of reduced_basis(), same order.
  std::vector<Poly> reduced_traces() {
    interreduce();
    std::vector<Poly> out;
    for (const auto& e : entries_)
      if (e.active) out.push_back(e.trace);
    return out;
  }

  GroebnerBasis<Field> basis() { return GroebnerBasis<Field>(ring_, reduced_basis()); }

  Poly normal_form(const Poly& p) const {
    auto rs = reductors(false);
    return detail::Reducer<Field>::reduce(p, nullptr, rs, true);
  }

  /// Syzygies of the inputs (requires trace tracking): Schreyer's lifted
  /// S-pair syzygies of the basis plus the relations expressing each input
  /// through the basis. Pairs made redundant by the chain criterion are skipped.
  std::vector<Poly> syzygies(const std::vector<Poly>& inputs) {
    if (!trace_ring_) throw std::logic_error("syzygies need trace tracking");
    interreduce();
    std::vector<std::size_t> act;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].active) act.push_back(i);
    auto rs = reductors(true);
    std::vector<Poly> out;
    const auto& F = ring_->field();
    auto lm = [&](std::size_t a) -> const Monomial& { return entries_[act[a]].poly.lead_monomial(); };
    for (std::size_t a = 0; a < act.size(); ++a) {
      for (std::size_t b = a + 1; b < act.size(); ++b) {
        if (lm(a).component() != lm(b).component()) continue;
        Monomial l = lm(a).lcm(lm(b));
        bool redundant = false;
        for (std::size_t k = 0; k < act.size() && !redundant; ++k) {
          if (k == a || k == b || !lm(k).divides(l)) continue;
          if (lm(a).lcm(lm(k)) != l && lm(b).lcm(lm(k)) != l) redundant = true;
        }
        if (redundant) continue;
        const auto& ea = entries_[act[a]];
        const auto& eb = entries_[act[b]];
        if (ring_->rank() == 1 && lm(a).coprime(lm(b))) {
          out.push_back(ea.trace * eb.poly - eb.trace * ea.poly);
          continue;
        }
        Monomial qa = lm(a).quotient_of(l), qb = lm(b).quotient_of(l);
        Poly s = sub_multiple(ea.poly.times_term(qa, F.one()), F.one(), qb, eb.poly);
        Poly st = sub_multiple(ea.trace.times_term(qa, F.one()), F.one(), qb, eb.trace);
        Poly rem = detail::Reducer<Field>::reduce(std::move(s), &st, rs, false);
        if (!rem.is_zero()) throw std::logic_error("S-pair of a Groebner basis did not reduce to zero");
        if (!st.is_zero()) out.push_back(std::move(st));
      }
    }
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      if (inputs[k].is_zero()) {
        out.push_back(Poly::monomial(trace_ring_, Monomial().with_component(static_cast<int>(k)), F.one()));
        continue;
      }
      Poly st = Poly::monomial(trace_ring_, Monomial().with_component(static_cast<int>(k)), F.one());
      Poly rem = detail::Reducer<Field>::reduce(inputs[k], &st, rs, false);
      if (!rem.is_zero()) throw std::logic_error("input not in its own ideal");
      if (!st.is_zero()) out.push_back(std::move(st));
    }
    return out;
  }

 private:
  struct Entry {
    Poly poly;
    Poly trace;
    int sugar;
    bool active;
  };
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int sugar;
  };
  struct Input {
    Poly poly;
    Poly trace;
    int sugar;
  };

  void check_ring(const Poly& p) const {
    if (!p.ring()->same_signature(*ring_)) throw SignatureMismatch("generator from a different ring");
  }

  std::vector<typename detail::Reducer<Field>::Reductor> reductors(bool with_trace) const {
    std::vector<typename detail::Reducer<Field>::Reductor> rs;
    for (const auto& e : entries_)
      if (e.active) rs.push_back({&e.poly, with_trace ? &e.trace : nullptr, e.sugar});
    return rs;
  }

  // Pairs and inputs are kept sorted so that the cheapest is at the back.
  bool pair_before(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar > b.sugar;
    int c = ring_->order().compare(a.lcm, b.lcm);
    if (c != 0) return c > 0;
    return std::tie(a.j, a.i) > std::tie(b.j, b.i);
  }
  void sort_pending() {
    pending_sorted_ = true;
    std::stable_sort(pending_.begin(), pending_.end(), [&](const Input& a, const Input& b) {
      if (a.sugar != b.sugar) return a.sugar > b.sugar;
      return ring_->order().compare(a.poly.lead_monomial(), b.poly.lead_monomial()) > 0;
    });
  }

  std::pair<Poly, std::optional<Poly>> spoly(std::size_t i, std::size_t j) const {
    const auto& F = ring_->field();
    const auto& a = entries_[i];
    const auto& b = entries_[j];
    Monomial l = a.poly.lead_monomial().lcm(b.poly.lead_monomial());
    Monomial qa = a.poly.lead_monomial().quotient_of(l), qb = b.poly.lead_monomial().quotient_of(l);
    Poly s = sub_multiple(a.poly.times_term(qa, F.one()), F.one(), qb, b.poly);
    std::optional<Poly> st;
    if (trace_ring_) st = sub_multiple(a.trace.times_term(qa, F.one()), F.one(), qb, b.trace);
    return {std::move(s), std::move(st)};
  }

  void process(Poly p, std::optional<Poly> trace, int sugar) {
    auto rs = reductors(trace.has_value());
    Poly* tp = trace ? &*trace : nullptr;
    Poly h = detail::Reducer<Field>::reduce(std::move(p), tp, rs, true, &sugar);
    if (h.is_zero()) return;
    const auto& F = ring_->field();
    auto inv = F.inv(h.lead_coeff());
    h = h.scaled(inv);
    Poly tr = trace ? trace->scaled(inv) : Poly();
    update(Entry{std::move(h), std::move(tr), sugar, true});
  }

  /// Gebauer-Moeller installation of a new element.
  void update(Entry e) {
    const auto& ord = ring_->order();
    const Monomial hm = e.poly.lead_monomial();
    const bool ideal = ring_->rank() == 1;
    std::size_t hidx = entries_.size();
    entries_.push_back(std::move(e));
    const int hsugar = entries_[hidx].sugar;

    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
      bool keep;
    };
    std::vector<Cand> cands;
    for (std::size_t g = 0; g < hidx; ++g) {
      if (!entries_[g].active) continue;
      const Monomial& gm = entries_[g].poly.lead_monomial();
      if (gm.component() != hm.component()) continue;
      cands.push_back({g, hm.lcm(gm), ideal && hm.coprime(gm), true});
    }
    // Criterion M: drop (h,g) whose lcm is a proper multiple of another pair's lcm.
    for (std::size_t a = 0; a < cands.size(); ++a) {
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || !cands[b].keep) continue;
        if (cands[b].lcm.divides(cands[a].lcm) && cands[b].lcm != cands[a].lcm) {
          cands[a].keep = false;
          break;
        }
      }
    }
    // Criterion F: among equal lcms keep one, preferring a coprime witness.
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (!cands[a].keep) continue;
      for (std::size_t b = a + 1; b < cands.size(); ++b) {
        if (!cands[b].keep || cands[b].lcm != cands[a].lcm) continue;
        if (cands[b].coprime) cands[a].coprime = true;
        cands[b].keep = false;
      }
    }
    // Criterion B on the old pairs.
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (auto& p : pairs_) {
      if (p.lcm.component() == hm.component() && hm.divides(p.lcm)) {
        Monomial li = entries_[p.i].poly.lead_monomial().lcm(hm);
        Monomial lj = entries_[p.j].poly.lead_monomial().lcm(hm);
        if (li != p.lcm && lj != p.lcm) continue;
      }
      kept.push_back(std::move(p));
    }
    pairs_ = std::move(kept);
    std::vector<Pair> fresh;
    for (const auto& c : cands) {
      if (!c.keep || c.coprime) continue;
      const auto& g = entries_[c.g];
      int sg = g.sugar + c.lcm.degree() - g.poly.lead_monomial().degree();
      int sh = hsugar + c.lcm.degree() - hm.degree();
      fresh.push_back({c.g, hidx, c.lcm, std::max(sg, sh)});
    }
    for (auto& f : fresh) pairs_.push_back(std::move(f));
    std::stable_sort(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) { return pair_before(a, b); });
    for (std::size_t g = 0; g < hidx; ++g)
      if (entries_[g].active && hm.divides(entries_[g].poly.lead_monomial())) entries_[g].active = false;
    (void)ord;
  }

  void interreduce() {
    if (interreduced_ && entries_.size() == interreduced_size_) return;
    std::vector<std::size_t> act;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].active) act.push_back(i);
    const auto& ord = ring_->order();
    std::sort(act.begin(), act.end(), [&](std::size_t a, std::size_t b) {
      return ord.less(entries_[a].poly.lead_monomial(), entries_[b].poly.lead_monomial());
    });
    // Reduce the tail of each element by all smaller ones (already reduced).
    for (std::size_t k = 0; k < act.size(); ++k) {
      auto& e = entries_[act[k]];
      std::vector<typename detail::Reducer<Field>::Reductor> rs;
      for (std::size_t m = 0; m < act.size(); ++m)
        if (m != k) rs.push_back({&entries_[act[m]].poly, trace_ring_ ? &entries_[act[m]].trace : nullptr});
      auto lead = e.poly.lead();
      Poly tail = Poly::from_sorted(ring_, std::vector<Term<Field>>(e.poly.terms().begin() + 1, e.poly.terms().end()));
      Poly tr = e.trace;
      Poly red = detail::Reducer<Field>::reduce(std::move(tail), trace_ring_ ? &tr : nullptr, rs, true);
      std::vector<Term<Field>> terms;
      terms.reserve(red.size() + 1);
      terms.push_back(lead);
      for (auto& t : red.raw_terms()) terms.push_back(std::move(t));
      e.poly = Poly::from_sorted(ring_, std::move(terms));
      e.trace = std::move(tr);
    }
    // Store actives in increasing order of leading monomial.
    std::vector<Entry> sorted;
    std::vector<std::size_t> remap(entries_.size(), static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < act.size(); ++k) {
      remap[act[k]] = sorted.size();
      sorted.push_back(std::move(entries_[act[k]]));
    }
    entries_ = std::move(sorted);
    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      if (remap[p.i] == static_cast<std::size_t>(-1) || remap[p.j] == static_cast<std::size_t>(-1)) continue;
      kept.push_back({remap[p.i], remap[p.j], p.lcm, p.sugar});
    }
    pairs_ = std::move(kept);
    interreduced_ = true;
    interreduced_size_ = entries_.size();
  }

  RingPtr<Field> ring_;
  RingPtr<Field> trace_ring_;
  std::vector<Entry> entries_;
  std::vector<Pair> pairs_;
  std::vector<Input> pending_;
  std::size_t inputs_ = 0;
  bool pending_sorted_ = true;
  bool interreduced_ = false;
  std::size_t interreduced_size_ = 0;
};

namespace detail {

template <class Field>
std::string cache_key(const RingPtr<Field>& ring, const std::vector<Polynomial<Field>>& gens) {
  std::string key = ring->field().name() + "|" + ring->order().name() + "|";
  for (const auto& n : ring->names()) key += n + ",";
  std::vector<std::string> gs;
  gs.reserve(gens.size());
  for (const auto& g : gens)
    if (!g.is_zero()) gs.push_back(g.monic().to_string());
  std::sort(gs.begin(), gs.end());
  gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
  for (const auto& g : gs) key += "|" + g;
  return key;
}

template <class Field>
struct GroebnerCache {
  std::mutex mutex;
  std::map<std::string, std::vector<Polynomial<Field>>> entries;
  bool enabled = true;
  std::size_t hits = 0;

  static GroebnerCache& instance() {
    static GroebnerCache cache;
    return cache;
  }
};

}  // namespace detail

/// Session-level cache switch; results are identical with or without it.
template <class Field>
void set_groebner_cache(bool enabled) {
  auto& c = detail::GroebnerCache<Field>::instance();
  std::lock_guard<std::mutex> lock(c.mutex);
  c.enabled = enabled;
  if (!enabled) c.entries.clear();
}

template <class Field>
std::size_t groebner_cache_hits() {
  auto& c = detail::GroebnerCache<Field>::instance();
  std::lock_guard<std::mutex> lock(c.mutex);
  return c.hits;
}

/// Reduced Groebner basis of the ideal (or submodule) generated by gens.
template <class Field>
GroebnerBasis<Field> buchberger(const RingPtr<Field>& ring, const std::vector<Polynomial<Field>>& gens) {
  const bool cacheable = ring->rank() == 1;
  std::string key;
  auto& cache = detail::GroebnerCache<Field>::instance();
  if (cacheable) {
    key = detail::cache_key(ring, gens);
    std::lock_guard<std::mutex> lock(cache.mutex);
    if (cache.enabled) {
      auto it = cache.entries.find(key);
      if (it != cache.entries.end()) {
        ++cache.hits;
        std::vector<Polynomial<Field>> basis;
        for (const auto& g : it->second) basis.push_back(g.in_ring(ring));
        return GroebnerBasis<Field>(ring, std::move(basis));
      }
    }
  }
  GroebnerEngine<Field> engine(ring);
  for (const auto& g : gens) engine.add_generator(g);
  engine.run();
  auto basis = engine.reduced_basis();
  if (cacheable) {
    std::lock_guard<std::mutex> lock(cache.mutex);
    if (cache.enabled) cache.entries[key] = basis;
  }
  return GroebnerBasis<Field>(ring, std::move(basis));
}

/// Groebner basis of (known basis) + (extra generators).
template <class Field>
GroebnerBasis<Field> extend_basis(const GroebnerBasis<Field>& known, const std::vector<Polynomial<Field>>& extra) {
  GroebnerEngine<Field> engine(known.ring());
  engine.add_known_basis(known.elements());
  bool any = false;
  for (const auto& g : extra) {
    auto r = known.normal_form(g);
    if (r.is_zero()) continue;
    engine.add_generator(r);
    any = true;
  }
  if (!any) return known;
  engine.run();
  return GroebnerBasis<Field>(known.ring(), engine.reduced_basis());
}

template <class Field>
Polynomial<Field> normal_form(const Polynomial<Field>& p, const GroebnerBasis<Field>& g) {
  return g.normal_form(p);
}

}  // namespace daolab

#endif  // DAOLAB_GROEBNER_HPP
