#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wedge/linalg.hpp"
#include "wedge/monomial.hpp"
#include "wedge/ring.hpp"

namespace wedge {

/// A ring element: sorted term list (increasing bitmask) with nonzero
/// scalar coefficients. Value semantics; all arithmetic checks that the
/// operands live in the same ring object.
template <class K>
class Element {
 public:
  using Scalar = typename K::Elem;
  using Term = std::pair<Mono, Scalar>;

  Element() = default;
  explicit Element(const Ring<K>& r) : ring_(&r) {}
  Element(const Ring<K>& r, Mono m, Scalar c) : ring_(&r) {
    if (!r.field().is_zero(c)) terms_.emplace_back(m, std::move(c));
  }

  static Element from_terms(const Ring<K>& r, std::vector<Term> terms) {
    const K& f = r.field();
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    Element out(r);
    for (auto& [m, c] : terms) {
      if (!out.terms_.empty() && out.terms_.back().first == m)
        out.terms_.back().second = f.add(out.terms_.back().second, c);
      else
        out.terms_.emplace_back(m, std::move(c));
      if (!out.terms_.empty() && f.is_zero(out.terms_.back().second))
        out.terms_.pop_back();
    }
    return out;
  }

  const Ring<K>* ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  Scalar coeff(Mono m) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), m,
        [](const Term& t, Mono mm) { return t.first < mm; });
    if (it != terms_.end() && it->first == m) return it->second;
    return ring_->field().zero();
  }

  /// Degree of the highest term; -1 for the zero element.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = mono_degree(terms_.front().first);
    for (const auto& [m, c] : terms_)
      if (mono_degree(m) != d) return false;
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    const K& f = ring_->field();
    std::string s;
    for (const auto& [m, c] : terms_) {
      std::string cs = f.to_string(c);
      bool neg = !cs.empty() && cs[0] == '-';
      if (s.empty()) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      if (neg) cs = cs.substr(1);
      if (m == 0) {
        s += cs;
      } else {
        if (cs != "1") s += cs + "*";
        s += mono_to_string(m, ring_->names());
      }
    }
    return s;
  }

  bool operator==(const Element& o) const {
    if (ring_ != o.ring_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    const K& f = ring_->field();
    for (size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].first != o.terms_[i].first) return false;
      if (!f.eq(terms_[i].second, o.terms_[i].second)) return false;
    }
    return true;
  }
  bool operator!=(const Element& o) const { return !(*this == o); }

 private:
  const Ring<K>* ring_ = nullptr;
  std::vector<Term> terms_;
};

template <class K>
inline void check_same_ring(const Element<K>& a, const Element<K>& b) {
  if (a.ring() == nullptr || a.ring() != b.ring())
    throw std::invalid_argument("elements belong to different rings");
}

template <class K>
Element<K> ring_zero(const Ring<K>& r) {
  return Element<K>(r);
}

template <class K>
Element<K> ring_one(const Ring<K>& r) {
  return Element<K>(r, Mono(0), r.field().one());
}

template <class K>
Element<K> ring_var(const Ring<K>& r, int i) {
  if (i < 0 || i >= r.n()) throw std::out_of_range("variable index");
  return Element<K>(r, Mono(1) << i, r.field().one());
}

template <class K>
Element<K> operator+(const Element<K>& a, const Element<K>& b) {
  check_same_ring(a, b);
  std::vector<typename Element<K>::Term> t;
  t.reserve(a.terms().size() + b.terms().size());
  t.insert(t.end(), a.terms().begin(), a.terms().end());
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return Element<K>::from_terms(*a.ring(), std::move(t));
}

template <class K>
Element<K> operator-(const Element<K>& a) {
  if (a.ring() == nullptr) return a;
  const K& f = a.ring()->field();
  std::vector<typename Element<K>::Term> t;
  t.reserve(a.terms().size());
  for (const auto& [m, c] : a.terms()) t.emplace_back(m, f.neg(c));
  return Element<K>::from_terms(*a.ring(), std::move(t));
}

template <class K>
Element<K> operator-(const Element<K>& a, const Element<K>& b) {
  return a + (-b);
}

/// c * a for a scalar c.
template <class K>
Element<K> scale(const typename K::Elem& c, const Element<K>& a) {
  if (a.ring() == nullptr) return a;
  const K& f = a.ring()->field();
  std::vector<typename Element<K>::Term> t;
  if (!f.is_zero(c)) {
    t.reserve(a.terms().size());
    for (const auto& [m, x] : a.terms()) t.emplace_back(m, f.mul(c, x));
  }
  return Element<K>::from_terms(*a.ring(), std::move(t));
}

/// Ring product. Term pairs sharing a variable vanish; in the exterior mode
/// each surviving pair picks up the merge sign.
template <class K>
Element<K> operator*(const Element<K>& a, const Element<K>& b) {
  check_same_ring(a, b);
  const Ring<K>& r = *a.ring();
  const K& f = r.field();
  std::map<Mono, typename K::Elem> acc;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto p = mono_mul(ma, mb, r.mode());
      if (!p) continue;
      auto c = f.mul(ca, cb);
      if (p->sign < 0) c = f.neg(c);
      auto [it, fresh] = acc.emplace(p->mono, c);
      if (!fresh) it->second = f.add(it->second, c);
    }
  }
  std::vector<typename Element<K>::Term> t;
  t.reserve(acc.size());
  for (auto& [m, c] : acc) t.emplace_back(m, std::move(c));
  return Element<K>::from_terms(r, std::move(t));
}

/// Invertible linear change of variables v_i |-> sum_j U(j,i) v_j. The
/// inverse is computed once at construction, so both directions of the
/// substitution are available.
template <class K>
class CoordinateChange {
 public:
  CoordinateChange(const Ring<K>& r, Matrix<K> u)
      : ring_(&r), u_(std::move(u)) {
    if (u_.rows != r.n() || u_.cols != r.n())
      throw std::invalid_argument("coordinate change must be n x n");
    auto inv = mat_inverse(u_, r.field());
    if (!inv) throw std::invalid_argument("coordinate change is singular");
    uinv_ = std::move(*inv);
  }

  static CoordinateChange identity(const Ring<K>& r) {
    return CoordinateChange(r, Matrix<K>::identity(r.n(), r.field()));
  }

  const Ring<K>& ring() const { return *ring_; }
  const Matrix<K>& matrix() const { return u_; }
  const Matrix<K>& inverse_matrix() const { return uinv_; }

  CoordinateChange inverse() const {
    CoordinateChange out(*this);
    std::swap(out.u_, out.uinv_);
    return out;
  }

  /// The image of variable i as a linear form.
  Element<K> image_of_var(int i) const {
    std::vector<typename Element<K>::Term> t;
    for (int j = 0; j < ring_->n(); ++j)
      t.emplace_back(Mono(1) << j, u_.at(j, i));
    return Element<K>::from_terms(*ring_, std::move(t));
  }

  /// Composition: applying `this` after `o` (matrix product).
  CoordinateChange compose(const CoordinateChange& o) const {
    if (ring_ != o.ring_) throw std::invalid_argument("ring mismatch");
    return CoordinateChange(*ring_, mat_mul(u_, o.u_, ring_->field()));
  }

 private:
  const Ring<K>* ring_;
  Matrix<K> u_, uinv_;
};

/// Apply a change of variables to an element. Monomials are expanded as
/// products of variable images in increasing variable order, so exterior
/// signs come out of the ordinary product.
template <class K>
Element<K> substitute(const Element<K>& e, const CoordinateChange<K>& u) {
  if (e.ring() == nullptr) throw std::invalid_argument("invalid element");
  if (e.ring() != &u.ring()) throw std::invalid_argument("ring mismatch");
  const Ring<K>& r = *e.ring();
  Element<K> out(r);
  for (const auto& [m, c] : e.terms()) {
    Element<K> prod = Element<K>(r, Mono(0), c);
    for (int i : mono_vars(m)) prod = prod * u.image_of_var(i);
    out = out + prod;
  }
  return out;
}

}  // namespace wedge
