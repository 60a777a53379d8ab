#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wedge/element.hpp"
#include "wedge/linalg.hpp"

namespace wedge {

template <class K>
void require_quadric(const Element<K>& h) {
  if (h.ring() == nullptr) throw std::invalid_argument("invalid element");
  if (h.ring()->mode() != RingMode::Exterior)
    throw std::invalid_argument("quadric classification needs the exterior mode");
  if (!h.is_zero() && (!h.is_homogeneous() || h.degree() != 2))
    throw std::invalid_argument("expected a homogeneous quadric or zero");
}

/// The alternating matrix of a quadric h = sum_{i<j} c_ij v_i v_j:
/// A[i][j] = c_ij, A[j][i] = -c_ij, zero diagonal.
template <class K>
Matrix<K> qform_to_matrix(const Element<K>& h) {
  require_quadric(h);
  const Ring<K>& r = *h.ring();
  const K& f = r.field();
  Matrix<K> a(r.n(), r.n(), f);
  for (const auto& [m, c] : h.terms()) {
    auto vars = mono_vars(m);
    a.at(vars[0], vars[1]) = c;
    a.at(vars[1], vars[0]) = f.neg(c);
  }
  return a;
}

template <class K>
bool is_alternating(const Matrix<K>& a, const K& f) {
  if (a.rows != a.cols) return false;
  for (int i = 0; i < a.rows; ++i) {
    if (!f.is_zero(a.at(i, i))) return false;
    for (int j = i + 1; j < a.cols; ++j)
      if (!f.eq(a.at(i, j), f.neg(a.at(j, i)))) return false;
  }
  return true;
}

template <class K>
Element<K> matrix_to_qform(const Matrix<K>& a, const Ring<K>& r) {
  if (r.mode() != RingMode::Exterior)
    throw std::invalid_argument("quadrics live in the exterior mode");
  if (a.rows != r.n() || !is_alternating(a, r.field()))
    throw std::invalid_argument("matrix is not alternating of size n");
  std::vector<typename Element<K>::Term> t;
  for (int i = 0; i < a.rows; ++i)
    for (int j = i + 1; j < a.cols; ++j)
      t.emplace_back((Mono(1) << i) | (Mono(1) << j), a.at(i, j));
  return Element<K>::from_terms(r, std::move(t));
}

/// Rank of an alternating matrix (always even).
template <class K>
int rank_alternating(const Matrix<K>& a, const K& f) {
  if (!is_alternating(a, f))
    throw std::invalid_argument("matrix is not alternating");
  int r = mat_rank(a, f);
  if (r % 2 != 0) throw std::logic_error("alternating matrix of odd rank");
  return r;
}

template <class K>
struct SymplecticNF {
  int rank = 0;
  Element<K> normal_form;      // v_1 v_2 + v_3 v_4 + ... (rank/2 pairs)
  CoordinateChange<K> change;  // substitute(h, change) == normal_form
};

/// Bring a quadric to the symplectic normal form by pairwise clearing: pick
/// the lexicographically first basis pair (u, v) with B(u, v) != 0, rescale
/// v so B(u, v) = 1, clear every other basis vector w by
/// w -> w - B(w,v) u + B(w,u) v, and recurse on the rest. The paired
/// vectors, then the untouched ones, form the columns of C with
/// C^T A C in block form; the returned change is U = C^T.
template <class K>
SymplecticNF<K> symplectic_normal_form(const Element<K>& h) {
  require_quadric(h);
  const Ring<K>& r = *h.ring();
  const K& f = r.field();
  int n = r.n();
  Matrix<K> a = qform_to_matrix(h);

  // current basis vectors in original coordinates, as columns
  std::vector<std::vector<typename K::Elem>> basis(
      static_cast<size_t>(n),
      std::vector<typename K::Elem>(static_cast<size_t>(n), f.zero()));
  for (int i = 0; i < n; ++i) basis[static_cast<size_t>(i)][static_cast<size_t>(i)] = f.one();

  auto bform = [&](const std::vector<typename K::Elem>& x,
                   const std::vector<typename K::Elem>& y) {
    typename K::Elem s = f.zero();
    for (int i = 0; i < n; ++i) {
      if (f.is_zero(x[static_cast<size_t>(i)])) continue;
      typename K::Elem row = f.zero();
      for (int j = 0; j < n; ++j)
        row = f.add(row, f.mul(a.at(i, j), y[static_cast<size_t>(j)]));
      s = f.add(s, f.mul(x[static_cast<size_t>(i)], row));
    }
    return s;
  };

  std::vector<bool> alive(static_cast<size_t>(n), true);
  std::vector<int> paired;
  while (true) {
    int pi = -1, pj = -1;
    for (int i = 0; i < n && pi < 0; ++i) {
      if (!alive[static_cast<size_t>(i)]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!alive[static_cast<size_t>(j)]) continue;
        if (!f.is_zero(bform(basis[static_cast<size_t>(i)],
                             basis[static_cast<size_t>(j)]))) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi < 0) break;
    auto& u = basis[static_cast<size_t>(pi)];
    auto& v = basis[static_cast<size_t>(pj)];
    auto buv = bform(u, v);
    auto s = f.inv(buv);
    for (auto& x : v) x = f.mul(s, x);
    for (int k = 0; k < n; ++k) {
      if (!alive[static_cast<size_t>(k)] || k == pi || k == pj) continue;
      auto& w = basis[static_cast<size_t>(k)];
      auto bwv = bform(w, v);
      auto bwu = bform(w, u);
      for (int t = 0; t < n; ++t) {
        f.submul(w[static_cast<size_t>(t)], bwv, u[static_cast<size_t>(t)]);
        w[static_cast<size_t>(t)] = f.add(
            w[static_cast<size_t>(t)], f.mul(bwu, v[static_cast<size_t>(t)]));
      }
    }
    paired.push_back(pi);
    paired.push_back(pj);
    alive[static_cast<size_t>(pi)] = alive[static_cast<size_t>(pj)] = false;
  }

  // columns of C: hyperbolic pairs first, then the radical
  std::vector<int> order = paired;
  for (int i = 0; i < n; ++i)
    if (alive[static_cast<size_t>(i)]) order.push_back(i);
  Matrix<K> cmat(n, n, f);
  for (int c = 0; c < n; ++c)
    for (int rrow = 0; rrow < n; ++rrow)
      cmat.at(rrow, c) =
          basis[static_cast<size_t>(order[static_cast<size_t>(c)])]
               [static_cast<size_t>(rrow)];

  int rank = static_cast<int>(paired.size());
  std::vector<typename Element<K>::Term> t;
  for (int k = 0; k + 1 < rank; k += 2)
    t.emplace_back((Mono(1) << k) | (Mono(1) << (k + 1)), f.one());
  Element<K> nf = Element<K>::from_terms(r, std::move(t));

  SymplecticNF<K> out{rank, std::move(nf),
                      CoordinateChange<K>(r, mat_transpose(cmat, f))};
  return out;
}

/// A quadric is a product of two linear forms exactly when its alternating
/// matrix has rank at most 2 (rank 0 meaning h = 0).
template <class K>
bool is_reducible(const Element<K>& h) {
  return rank_alternating(qform_to_matrix(h), h.ring()->field()) <= 2;
}

template <class K>
struct FactorResult {
  enum class Kind { Zero, Product, Irreducible };
  Kind kind = Kind::Zero;
  std::optional<std::pair<Element<K>, Element<K>>> factors;
};

/// Split a rank-2 quadric into two linear forms (exactly: l1 * l2 == h).
template <class K>
FactorResult<K> factor_reducible(const Element<K>& h) {
  SymplecticNF<K> s = symplectic_normal_form(h);
  FactorResult<K> out;
  if (s.rank == 0) {
    out.kind = FactorResult<K>::Kind::Zero;
    return out;
  }
  if (s.rank > 2) {
    out.kind = FactorResult<K>::Kind::Irreducible;
    return out;
  }
  CoordinateChange<K> back = s.change.inverse();
  Element<K> l1 = substitute(ring_var(*h.ring(), 0), back);
  Element<K> l2 = substitute(ring_var(*h.ring(), 1), back);
  if (l1 * l2 != h) throw std::logic_error("factorization failed to verify");
  out.kind = FactorResult<K>::Kind::Product;
  out.factors = {std::move(l1), std::move(l2)};
  return out;
}

}  // namespace wedge
