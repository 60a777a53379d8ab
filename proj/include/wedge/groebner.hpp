#pragma once

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wedge/element.hpp"
#include "wedge/linalg.hpp"
#include "wedge/monomial.hpp"
#include "wedge/ring.hpp"

namespace wedge {

enum class OrderKind { DegLex, DegRevLex };

/// Degree-compatible monomial order with an explicit variable priority:
/// prio[0] is the largest variable. Comparison happens on masks remapped
/// into priority space, so permuted orders cost one remap per comparison.
class TermOrder {
 public:
  TermOrder(OrderKind kind, int n) : kind_(kind), prio_(static_cast<size_t>(n)) {
    std::iota(prio_.begin(), prio_.end(), 0);
    identity_ = true;
  }

  TermOrder(OrderKind kind, std::vector<int> prio)
      : kind_(kind), prio_(std::move(prio)) {
    std::vector<int> sorted = prio_;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != static_cast<int>(i))
        throw std::invalid_argument("variable priority is not a permutation");
    identity_ = std::is_sorted(prio_.begin(), prio_.end());
  }

  OrderKind kind() const { return kind_; }
  int n() const { return static_cast<int>(prio_.size()); }
  const std::vector<int>& priority() const { return prio_; }

  Mono remap(Mono m) const {
    if (identity_) return m;
    Mono r = 0;
    for (size_t k = 0; k < prio_.size(); ++k)
      if ((m >> prio_[k]) & 1) r |= Mono(1) << k;
    return r;
  }

  /// Three-way comparison; degree decides first.
  int cmp(Mono a, Mono b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db ? -1 : 1;
    Mono ra = remap(a), rb = remap(b);
    if (ra == rb) return 0;
    Mono diff = ra ^ rb;
    if (kind_ == OrderKind::DegLex) {
      // whoever holds the highest-priority differing variable wins
      int k = std::countr_zero(diff);
      return ((ra >> k) & 1) ? 1 : -1;
    }
    // degrevlex: whoever holds the lowest-priority differing variable loses
    int k = 63 - std::countl_zero(diff);
    return ((ra >> k) & 1) ? -1 : 1;
  }

  bool less(Mono a, Mono b) const { return cmp(a, b) < 0; }
  bool greater(Mono a, Mono b) const { return cmp(a, b) > 0; }

  std::string name() const {
    return kind_ == OrderKind::DegLex ? "deglex" : "degrevlex";
  }
  bool operator==(const TermOrder& o) const {
    return kind_ == o.kind_ && prio_ == o.prio_;
  }

 private:
  OrderKind kind_;
  std::vector<int> prio_;
  bool identity_;
};

/// Leading term of a nonzero element under the given order.
template <class K>
std::pair<Mono, typename K::Elem> leading_term(const Element<K>& e,
                                               const TermOrder& ord) {
  if (e.is_zero()) throw std::invalid_argument("leading term of zero");
  const auto& ts = e.terms();
  size_t best = 0;
  for (size_t i = 1; i < ts.size(); ++i)
    if (ord.greater(ts[i].first, ts[best].first)) best = i;
  return ts[best];
}

/// Finitely generated homogeneous ideal, held as its generator list.
template <class K>
struct Ideal {
  const Ring<K>* ring;
  std::vector<Element<K>> gens;

  Ideal(const Ring<K>& r, std::vector<Element<K>> g)
      : ring(&r), gens(std::move(g)) {
    for (const auto& e : gens) {
      if (e.ring() != ring)
        throw std::invalid_argument("ideal generator from a different ring");
      if (e.is_zero())
        throw std::invalid_argument("ideal generator is zero");
      if (!e.is_homogeneous())
        throw std::invalid_argument("ideal generator is not homogeneous");
    }
  }
};

/// Fully reduce f against a generator list: repeatedly take the order
/// largest monomial of the remainder that some lm(g) divides (first such g
/// in list order) and eliminate it. Deterministic.
template <class K>
Element<K> normal_form(Element<K> f, const std::vector<Element<K>>& gens,
                       const TermOrder& ord) {
  if (gens.empty() || f.is_zero()) return f;
  const Ring<K>& r = *gens.front().ring();
  const K& fld = r.field();
  std::vector<Mono> lms;
  lms.reserve(gens.size());
  for (const auto& g : gens) lms.push_back(leading_term(g, ord).first);

  while (!f.is_zero()) {
    bool have = false;
    Mono bm = 0;
    typename K::Elem bc = fld.zero();
    int bg = -1;
    for (const auto& [m, c] : f.terms()) {
      if (have && !ord.greater(m, bm)) continue;
      for (size_t k = 0; k < gens.size(); ++k) {
        if ((m & lms[k]) == lms[k]) {
          have = true;
          bm = m;
          bc = c;
          bg = static_cast<int>(k);
          break;
        }
      }
    }
    if (!have) break;
    Mono q = bm ^ lms[static_cast<size_t>(bg)];
    Element<K> prod =
        Element<K>(r, q, fld.one()) * gens[static_cast<size_t>(bg)];
    // prod's bm-coefficient is (merge sign) * lc(g); divide it out exactly
    f = f - scale(fld.div(bc, prod.coeff(bm)), prod);
  }
  return f;
}

/// Reduced Groebner basis: monic, inter-reduced, sorted by increasing
/// leading monomial. Unique per (ideal, order), so equality of reduced
/// bases is equality of ideals.
template <class K>
class GroebnerBasis {
 public:
  GroebnerBasis(const Ring<K>& r, TermOrder ord, std::vector<Element<K>> gens)
      : ring_(&r), order_(std::move(ord)), gens_(std::move(gens)) {
    lms_.reserve(gens_.size());
    for (const auto& g : gens_) lms_.push_back(leading_term(g, order_).first);
  }

  const Ring<K>& ring() const { return *ring_; }
  const TermOrder& order() const { return order_; }
  const std::vector<Element<K>>& gens() const { return gens_; }
  const std::vector<Mono>& leading_monomials() const { return lms_; }
  int size() const { return static_cast<int>(gens_.size()); }
  bool is_zero_ideal() const { return gens_.empty(); }

  /// True when no leading monomial divides m.
  bool is_standard(Mono m) const {
    for (Mono l : lms_)
      if ((m & l) == l) return false;
    return true;
  }

  bool operator==(const GroebnerBasis& o) const {
    if (ring_ != o.ring_ || !(order_ == o.order_)) return false;
    if (gens_.size() != o.gens_.size()) return false;
    for (size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i] != o.gens_[i]) return false;
    return true;
  }

 private:
  const Ring<K>* ring_;
  TermOrder order_;
  std::vector<Element<K>> gens_;
  std::vector<Mono> lms_;
};

/// Buchberger completion adapted to square-zero ambient rings: besides the
/// usual S-pairs (lcm of squarefree masks = union), every product v*g for a
/// variable v dividing lm(g) must reduce to zero, and the classical coprime
/// criterion is never applied. Pair selection is by lowest lcm degree, then
/// creation order.
template <class K>
GroebnerBasis<K> buchberger(const Ideal<K>& ideal, TermOrder ord) {
  const Ring<K>& r = *ideal.ring;
  const K& fld = r.field();
  if (ord.n() != r.n()) throw std::invalid_argument("order arity mismatch");

  struct Task {
    int deg;
    long seq;
    int i, j;  // j < 0: variable task with variable index var
    int var;
  };
  auto later = [](const Task& a, const Task& b) {
    return std::tie(a.deg, a.seq) > std::tie(b.deg, b.seq);
  };
  std::priority_queue<Task, std::vector<Task>, decltype(later)> queue(later);
  long seq = 0;

  std::vector<Element<K>> basis;
  std::vector<Mono> lms;

  auto add = [&](Element<K> g) {
    g = normal_form(std::move(g), basis, ord);
    if (g.is_zero()) return;
    auto [lm, lc] = leading_term(g, ord);
    g = scale(fld.inv(lc), g);
    int idx = static_cast<int>(basis.size());
    for (int k = 0; k < idx; ++k)
      queue.push(Task{mono_degree(lms[static_cast<size_t>(k)] | lm), seq++, k,
                      idx, -1});
    for (int v : mono_vars(lm))
      queue.push(Task{mono_degree(lm) + 1, seq++, idx, -1, v});
    basis.push_back(std::move(g));
    lms.push_back(lm);
  };

  for (const auto& g : ideal.gens) add(g);

  while (!queue.empty()) {
    Task t = queue.top();
    queue.pop();
    if (t.j >= 0) {
      Mono u = lms[static_cast<size_t>(t.i)] | lms[static_cast<size_t>(t.j)];
      Mono a = u & ~lms[static_cast<size_t>(t.i)];
      Mono b = u & ~lms[static_cast<size_t>(t.j)];
      Element<K> pa =
          Element<K>(r, a, fld.one()) * basis[static_cast<size_t>(t.i)];
      Element<K> pb =
          Element<K>(r, b, fld.one()) * basis[static_cast<size_t>(t.j)];
      // scale so both u-coefficients are 1, then cancel
      add(scale(fld.inv(pa.coeff(u)), pa) - scale(fld.inv(pb.coeff(u)), pb));
    } else {
      add(ring_var(r, t.var) * basis[static_cast<size_t>(t.i)]);
    }
  }

  // minimalize: keep only elements whose lm no other kept lm divides
  std::vector<int> idx(basis.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int x, int y) {
    int c = ord.cmp(lms[static_cast<size_t>(x)], lms[static_cast<size_t>(y)]);
    return c != 0 ? c < 0 : x < y;
  });
  std::vector<Element<K>> kept;
  std::vector<Mono> kept_lms;
  for (int i : idx) {
    Mono lm = lms[static_cast<size_t>(i)];
    bool redundant = false;
    for (Mono l : kept_lms)
      if ((lm & l) == l) {
        redundant = true;
        break;
      }
    if (!redundant) {
      kept.push_back(basis[static_cast<size_t>(i)]);
      kept_lms.push_back(lm);
    }
  }

  // tail-reduce to the unique reduced basis
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < kept.size(); ++i) {
      std::vector<Element<K>> others;
      others.reserve(kept.size() - 1);
      for (size_t k = 0; k < kept.size(); ++k)
        if (k != i) others.push_back(kept[k]);
      Element<K> red = normal_form(kept[i], others, ord);
      if (red != kept[i]) {
        kept[i] = std::move(red);
        changed = true;
      }
    }
  }
  return GroebnerBasis<K>(r, std::move(ord), std::move(kept));
}

/// Monomials of degree d no leading monomial divides; these represent a
/// basis of the quotient in degree d. Increasing bitmask order.
template <class K>
std::vector<Mono> standard_monomials(const GroebnerBasis<K>& gb, int d) {
  std::vector<Mono> out;
  for (Mono m : basis_monomials(gb.ring().n(), d))
    if (gb.is_standard(m)) out.push_back(m);
  return out;
}

template <class K>
Element<K> normal_form(const Element<K>& f, const GroebnerBasis<K>& gb) {
  return normal_form(f, gb.gens(), gb.order());
}

template <class K>
bool ideal_membership(const Element<K>& f, const GroebnerBasis<K>& gb) {
  return normal_form(f, gb).is_zero();
}

template <class K>
int max_gb_degree(const GroebnerBasis<K>& gb) {
  int d = 0;
  for (const auto& g : gb.gens()) d = std::max(d, g.degree());
  return d;
}

/// Dimension of degree-d piece of Ring/I by plain linear algebra on the
/// products (monomial x generator), with no Groebner machinery. Intended as
/// an independent cross-check of the standard-monomial count.
template <class K>
long long dim_oracle(const Ideal<K>& ideal, int d) {
  const Ring<K>& r = *ideal.ring;
  const K& fld = r.field();
  if (d < 0 || d > r.n()) return 0;
  std::vector<Mono> rows = basis_monomials(r.n(), d);
  auto row_of = [&](Mono m) {
    return static_cast<int>(
        std::lower_bound(rows.begin(), rows.end(), m) - rows.begin());
  };
  EchelonBasis<K> span(fld, static_cast<int>(rows.size()));
  std::vector<typename K::Elem> v;
  for (const auto& g : ideal.gens) {
    int dg = g.degree();
    if (dg > d) continue;
    for (Mono m : basis_monomials(r.n(), d - dg)) {
      Element<K> p = Element<K>(r, m, fld.one()) * g;
      if (p.is_zero()) continue;
      v.assign(rows.size(), fld.zero());
      for (const auto& [mm, c] : p.terms()) v[static_cast<size_t>(row_of(mm))] = c;
      span.insert(v);
    }
  }
  return static_cast<long long>(rows.size()) - span.rank();
}

/// The colon ideal (J : x) = { f : f x in J } for a linear form x, found
/// degree by degree with exhaustive linear algebra over the ambient ring,
/// then pruned to a minimal generating list.
template <class K>
Ideal<K> colon_by_linear(const Ideal<K>& ideal, const Element<K>& x) {
  const Ring<K>& r = *ideal.ring;
  const K& fld = r.field();
  if (x.ring() != &r) throw std::invalid_argument("ring mismatch");
  if (x.is_zero() || !x.is_homogeneous() || x.degree() != 1)
    throw std::invalid_argument("colon divisor must be a linear form");

  TermOrder ord(OrderKind::DegRevLex, r.n());
  GroebnerBasis<K> gb = buchberger(ideal, ord);

  std::vector<Element<K>> cand = ideal.gens;
  std::vector<Element<K>> cur = ideal.gens;  // generators of J + found so far
  GroebnerBasis<K> cur_gb = gb;

  for (int d = 0; d <= r.n(); ++d) {
    // matrix of f |-> NF(f * x) on the full degree-d piece of the ambient
    std::vector<Mono> dom = basis_monomials(r.n(), d);
    std::vector<Mono> img = standard_monomials(gb, d + 1);
    if (dom.empty()) continue;
    Matrix<K> m(static_cast<int>(img.size()), static_cast<int>(dom.size()),
                fld);
    auto img_row = [&](Mono mm) {
      return static_cast<int>(
          std::lower_bound(img.begin(), img.end(), mm) - img.begin());
    };
    for (size_t j = 0; j < dom.size(); ++j) {
      Element<K> p = normal_form(
          Element<K>(r, dom[j], fld.one()) * x, gb);
      for (const auto& [mm, c] : p.terms())
        m.at(img_row(mm), static_cast<int>(j)) = c;
    }
    for (const auto& ker : kernel_basis(m, fld)) {
      std::vector<typename Element<K>::Term> terms;
      for (size_t j = 0; j < dom.size(); ++j)
        if (!fld.is_zero(ker[j])) terms.emplace_back(dom[j], ker[j]);
      Element<K> f = Element<K>::from_terms(r, std::move(terms));
      Element<K> nf = normal_form(f, cur_gb);
      if (nf.is_zero()) continue;
      nf = scale(fld.inv(leading_term(nf, ord).second), nf);
      cand.push_back(nf);
      cur.push_back(nf);
      cur_gb = buchberger(Ideal<K>(r, cur), ord);
    }
  }

  // minimal generating list: greedy by increasing degree, discovery order
  std::stable_sort(cand.begin(), cand.end(),
                   [](const Element<K>& a, const Element<K>& b) {
                     return a.degree() < b.degree();
                   });
  std::vector<Element<K>> kept;
  for (const auto& g : cand) {
    if (kept.empty()) {
      kept.push_back(g);
      continue;
    }
    GroebnerBasis<K> kgb = buchberger(Ideal<K>(r, kept), ord);
    if (!ideal_membership(g, kgb)) kept.push_back(g);
  }
  return Ideal<K>(r, std::move(kept));
}

}  // namespace wedge
