#pragma once

#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wedge/groebner.hpp"
#include "wedge/series.hpp"

namespace wedge {

/// A graded quotient of the ambient ring by a homogeneous ideal, realized
/// through a reduced Groebner basis: each graded piece carries the standard
/// monomials as an ordered basis, and normal forms of arbitrary ambient
/// monomials are memoized as sparse coordinate vectors.
template <class K>
class Quotient {
 public:
  using Scalar = typename K::Elem;
  using SparseVec = std::vector<std::pair<int, Scalar>>;

  explicit Quotient(GroebnerBasis<K> gb)
      : ring_(&gb.ring()), gb_(std::move(gb)) {
    int n = ring_->n();
    basis_.resize(static_cast<size_t>(n) + 1);
    for (int d = 0; d <= n; ++d) {
      basis_[static_cast<size_t>(d)] = standard_monomials(gb_, d);
      const auto& bd = basis_[static_cast<size_t>(d)];
      for (size_t k = 0; k < bd.size(); ++k)
        pos_[bd[k]] = static_cast<int>(k);
      if (!bd.empty()) top_ = d;
    }
  }

  static Quotient whole_ring(const Ring<K>& r) {
    return Quotient(GroebnerBasis<K>(
        r, TermOrder(OrderKind::DegRevLex, r.n()), {}));
  }

  const Ring<K>& ring() const { return *ring_; }
  const K& field() const { return ring_->field(); }
  const GroebnerBasis<K>& gb() const { return gb_; }
  int n() const { return ring_->n(); }

  int dim(int d) const {
    if (d < 0 || d > ring_->n()) return 0;
    return static_cast<int>(basis_[static_cast<size_t>(d)].size());
  }
  const std::vector<Mono>& basis(int d) const {
    return basis_[static_cast<size_t>(d)];
  }
  /// Largest degree with a nonzero piece; -1 for the zero ring.
  int top_degree() const { return top_; }

  std::vector<long long> dims() const {
    std::vector<long long> out;
    for (int d = 0; d <= ring_->n(); ++d) out.push_back(dim(d));
    return out;
  }

  /// Position of a standard monomial within its degree, or -1.
  int index_of(Mono m) const {
    auto it = pos_.find(m);
    return it == pos_.end() ? -1 : it->second;
  }

  Element<K> nf(const Element<K>& e) const { return normal_form(e, gb_); }

  /// Normal form of an ambient monomial as coordinates over the standard
  /// basis of its degree. Memoized; standard monomials are their own form.
  const SparseVec& nf_mono(Mono m) const {
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
    SparseVec v;
    int idx = index_of(m);
    if (idx >= 0) {
      v.emplace_back(idx, field().one());
    } else {
      Element<K> e = nf(Element<K>(*ring_, m, field().one()));
      for (const auto& [mm, c] : e.terms()) v.emplace_back(index_of(mm), c);
    }
    return memo_.emplace(m, std::move(v)).first->second;
  }

  /// out += scale * coords(m * h), where m is a degree-dm monomial, h a
  /// normal form, and out runs over the standard basis in degree dm+deg h.
  /// The block written starts at out[offset].
  void add_mono_elem(Mono m, const Element<K>& h, const Scalar& sc,
                     std::vector<Scalar>& out, int offset) const {
    const K& f = field();
    for (const auto& [mh, c] : h.terms()) {
      auto p = mono_mul(m, mh, ring_->mode());
      if (!p) continue;
      Scalar cc = f.mul(sc, c);
      if (p->sign < 0) cc = f.neg(cc);
      for (const auto& [idx, x] : nf_mono(p->mono))
        out[static_cast<size_t>(offset + idx)] =
            f.add(out[static_cast<size_t>(offset + idx)], f.mul(cc, x));
    }
  }

  /// Element (assumed a normal form, homogeneous of degree d) expanded over
  /// the standard basis of degree d, written at out[offset..].
  void add_element(const Element<K>& e, const Scalar& sc,
                   std::vector<Scalar>& out, int offset) const {
    const K& f = field();
    for (const auto& [m, c] : e.terms()) {
      int idx = index_of(m);
      if (idx < 0) throw std::invalid_argument("element is not a normal form");
      out[static_cast<size_t>(offset + idx)] =
          f.add(out[static_cast<size_t>(offset + idx)], f.mul(sc, c));
    }
  }

  /// Rebuild an element from coordinates over the degree-d standard basis.
  Element<K> element_from(const std::vector<Scalar>& v, int d, int offset) const {
    std::vector<typename Element<K>::Term> t;
    const auto& bd = basis(d);
    for (size_t k = 0; k < bd.size(); ++k) {
      const Scalar& c = v[static_cast<size_t>(offset) + k];
      if (!field().is_zero(c)) t.emplace_back(bd[k], c);
    }
    return Element<K>::from_terms(*ring_, std::move(t));
  }

  /// Quotient-ring product: normal form of the ambient product.
  Element<K> mul(const Element<K>& a, const Element<K>& b) const {
    return nf(a * b);
  }

 private:
  const Ring<K>* ring_;
  GroebnerBasis<K> gb_;
  std::vector<std::vector<Mono>> basis_;
  std::unordered_map<Mono, int> pos_;
  mutable std::unordered_map<Mono, SparseVec> memo_;
  int top_ = -1;
};

template <class K>
TruncSeries hilbert_series(const Quotient<K>& q) {
  std::vector<mpq_class> c;
  for (long long d : q.dims()) c.emplace_back(static_cast<long>(d));
  return TruncSeries(std::move(c));
}

template <class K>
TruncSeries hilbert_series(const GroebnerBasis<K>& gb) {
  return hilbert_series(Quotient<K>(gb));
}

}  // namespace wedge
