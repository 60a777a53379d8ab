#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wedge/betti.hpp"
#include "wedge/quotient.hpp"

namespace wedge {

struct GradedFreeModule {
  std::vector<int> degs;  // generator degrees, nondecreasing by construction

  int rank() const { return static_cast<int>(degs.size()); }
  int max_degree() const {
    int m = -1;
    for (int d : degs) m = std::max(m, d);
    return m;
  }
};

/// Homogeneous map of graded free modules over a quotient, column-sparse:
/// cols[c] lists (target row, entry), entries homogeneous normal forms of
/// degree source(c) - target(row).
template <class K>
struct GradedMatrix {
  GradedFreeModule target, source;
  std::vector<std::vector<std::pair<int, Element<K>>>> cols;
};

/// Basis bookkeeping for the degree-j piece of a free module over A: one
/// block of standard monomials per generator with a nonzero piece.
struct DegreeLayout {
  std::vector<int> gen, offset, piece;
  int total = 0;

  /// Block containing the given position (blocks are offset-sorted).
  int block_of(int pos) const {
    int b = static_cast<int>(
        std::upper_bound(offset.begin(), offset.end(), pos) - offset.begin());
    return b - 1;
  }
};

template <class K>
DegreeLayout layout_of(const GradedFreeModule& fm, int j,
                       const Quotient<K>& a) {
  DegreeLayout l;
  for (int g = 0; g < fm.rank(); ++g) {
    int d = j - fm.degs[static_cast<size_t>(g)];
    int dim = a.dim(d);
    if (dim == 0) continue;
    l.gen.push_back(g);
    l.offset.push_back(l.total);
    l.piece.push_back(d);
    l.total += dim;
  }
  return l;
}

template <class K>
struct FreeResolution {
  const Quotient<K>* over = nullptr;
  std::vector<GradedFreeModule> modules;  // F_0 .. F_i
  std::vector<GradedMatrix<K>> maps;      // maps[i]: F_{i+1} -> F_i
  BettiTable betti;
};

/// Builds a minimal graded free resolution over A one homological step at a
/// time, keeping every computation inside degrees <= j_max. Step i+1 finds
/// the minimal generators of ker d_i degree by degree: the kernel of the
/// degree-j matrix of d_i, minus what multiplication by variables already
/// reaches from degree j-1. A column is flagged incomplete when j_max was
/// too small to see every potential generator.
template <class K>
class ResolutionBuilder {
 public:
  using Scalar = typename K::Elem;

  ResolutionBuilder(const Quotient<K>& a, GradedMatrix<K> presentation,
                    int j_max)
      : a_(&a), j_max_(j_max) {
    if (j_max < 0) throw std::invalid_argument("j_max must be nonnegative");
    pres_ = normalize(std::move(presentation));
    modules_.push_back(pres_.target);
    complete_.push_back(true);
    for (int d : pres_.target.degs) {
      if (d < 0 || d > j_max_)
        throw std::invalid_argument("target generator outside degree window");
      bump(0, d);
    }
  }

  const Quotient<K>& over() const { return *a_; }
  int steps_done() const { return static_cast<int>(maps_.size()); }
  const std::vector<GradedFreeModule>& modules() const { return modules_; }
  const std::vector<GradedMatrix<K>>& maps() const { return maps_; }
  int j_max() const { return j_max_; }

  /// Window view of the Betti numbers found so far. Valid for
  /// i_max <= steps_done().
  BettiTable betti(int i_max) const {
    if (i_max > steps_done())
      throw std::invalid_argument("betti window past computed steps");
    BettiTable b(i_max, j_max_);
    for (const auto& [ij, v] : entries_)
      if (ij.first <= i_max) b.set(ij.first, ij.second, v);
    for (int i = 0; i <= i_max; ++i)
      if (!complete_[static_cast<size_t>(i)]) b.mark_incomplete(i);
    return b;
  }

  /// Extend by one homological degree; returns the index of the new module.
  int step() {
    int i = steps_done();  // building F_{i+1} and d_{i+1}
    const GradedFreeModule& fi = modules_.back();

    int bound;  // degrees past this cannot carry new generators
    if (i == 0) {
      bound = -1;
      for (int d : pres_.source.degs) bound = std::max(bound, d);
    } else {
      bound = (fi.rank() == 0 || a_->top_degree() < 0)
                  ? -1
                  : fi.max_degree() + a_->top_degree();
    }

    GradedFreeModule fnext;
    GradedMatrix<K> dmap;
    dmap.target = fi;

    // rows spanning the previous degree's piece of the tracked submodule
    std::vector<std::vector<std::pair<int, Scalar>>> prev_rows;
    DegreeLayout prev_lay;

    for (int j = 0; j <= std::min(j_max_, bound); ++j) {
      DegreeLayout lay = layout_of(fi, j, *a_);
      if (lay.total == 0) {
        prev_rows.clear();
        prev_lay = lay;
        continue;
      }

      std::vector<std::vector<Scalar>> cands;
      if (i == 0) {
        for (size_t c = 0; c < pres_.cols.size(); ++c) {
          if (pres_.source.degs[c] != j) continue;
          std::vector<Scalar> v(static_cast<size_t>(lay.total),
                                a_->field().zero());
          expand_column(pres_.cols[c], lay, v);
          cands.push_back(std::move(v));
        }
      } else {
        cands = kernel_candidates(i, j, lay);
      }

      EchelonBasis<K> span(a_->field(), lay.total);
      // the span already reached from one degree down
      bool full = false;
      size_t zdim = (i == 0) ? static_cast<size_t>(-1) : cands.size();
      std::vector<Scalar> w;
      for (const auto& row : prev_rows) {
        if (static_cast<size_t>(span.rank()) == zdim) {
          full = true;
          break;
        }
        for (int v = 0; v < a_->n(); ++v) {
          w.assign(static_cast<size_t>(lay.total), a_->field().zero());
          var_mult(row, prev_lay, v, lay, w);
          span.insert(w);
          if (static_cast<size_t>(span.rank()) == zdim) {
            full = true;
            break;
          }
        }
        if (full) break;
      }

      for (const auto& cand : cands) {
        if (static_cast<size_t>(span.rank()) == zdim) break;
        std::vector<Scalar> w = cand;
        if (!span.insert(w)) continue;
        // new minimal generator
        fnext.degs.push_back(j);
        dmap.cols.push_back(column_from(cand, lay));
        bump(i + 1, j);
      }

      prev_rows = span.rows();
      prev_lay = lay;
    }

    complete_.push_back(complete_.back() && bound <= j_max_);
    dmap.source = fnext;
    modules_.push_back(std::move(fnext));
    maps_.push_back(std::move(dmap));
    return i + 1;
  }

 private:
  void bump(int i, int j) { entries_[{i, j}] += 1; }

  GradedMatrix<K> normalize(GradedMatrix<K> p) const {
    if (p.cols.size() != p.source.degs.size())
      throw std::invalid_argument("presentation shape mismatch");
    for (size_t c = 0; c < p.cols.size(); ++c) {
      int sd = p.source.degs[c];
      std::vector<std::pair<int, Element<K>>> col;
      for (auto& [r, h] : p.cols[c]) {
        if (r < 0 || r >= p.target.rank())
          throw std::invalid_argument("presentation row out of range");
        Element<K> e = a_->nf(h);
        if (e.is_zero()) continue;
        int want = sd - p.target.degs[static_cast<size_t>(r)];
        if (!e.is_homogeneous() || e.degree() != want)
          throw std::invalid_argument("presentation entry of wrong degree");
        if (want < 1)
          throw std::invalid_argument("presentation entry must be nonunit");
        col.emplace_back(r, std::move(e));
      }
      p.cols[c] = std::move(col);
    }
    return p;
  }

  void expand_column(const std::vector<std::pair<int, Element<K>>>& col,
                     const DegreeLayout& lay, std::vector<Scalar>& out) const {
    std::vector<int> block_of_gen(
        static_cast<size_t>(modules_.back().rank()) + 1, -1);
    for (size_t b = 0; b < lay.gen.size(); ++b)
      block_of_gen[static_cast<size_t>(lay.gen[b])] = static_cast<int>(b);
    for (const auto& [r, h] : col) {
      int b = block_of_gen[static_cast<size_t>(r)];
      if (b < 0) throw std::logic_error("entry lands in an empty block");
      a_->add_element(h, a_->field().one(), out, lay.offset[static_cast<size_t>(b)]);
    }
  }

  /// Kernel of the degree-j matrix of d_i, as dense vectors over lay.
  std::vector<std::vector<Scalar>> kernel_candidates(
      int i, int j, const DegreeLayout& lay) const {
    const GradedMatrix<K>& d = maps_[static_cast<size_t>(i - 1)];
    DegreeLayout tgt = layout_of(d.target, j, *a_);
    std::vector<int> tgt_block(static_cast<size_t>(d.target.rank()), -1);
    for (size_t b = 0; b < tgt.gen.size(); ++b)
      tgt_block[static_cast<size_t>(tgt.gen[b])] = static_cast<int>(b);

    Matrix<K> m(tgt.total, lay.total, a_->field());
    std::vector<Scalar> colv(static_cast<size_t>(tgt.total), a_->field().zero());
    for (size_t b = 0; b < lay.gen.size(); ++b) {
      int c = lay.gen[b];
      int piece = lay.piece[b];
      const auto& basis = a_->basis(piece);
      for (size_t k = 0; k < basis.size(); ++k) {
        for (auto& x : colv) x = a_->field().zero();
        for (const auto& [r, h] : d.cols[static_cast<size_t>(c)]) {
          int tb = tgt_block[static_cast<size_t>(r)];
          if (tb < 0) continue;  // target piece is zero in this degree
          a_->add_mono_elem(basis[k], h, a_->field().one(), colv,
                            tgt.offset[static_cast<size_t>(tb)]);
        }
        int colidx = lay.offset[b] + static_cast<int>(k);
        for (int rr = 0; rr < tgt.total; ++rr)
          m.at(rr, colidx) = colv[static_cast<size_t>(rr)];
      }
    }
    return kernel_basis(m, a_->field());
  }

  /// out += (variable v) * row, lifting a sparse degree-(j-1) row into
  /// degree j coordinates.
  void var_mult(const std::vector<std::pair<int, Scalar>>& row,
                const DegreeLayout& from, int v, const DegreeLayout& to,
                std::vector<Scalar>& out) const {
    std::vector<int> to_block(static_cast<size_t>(modules_.back().rank()), -1);
    for (size_t b = 0; b < to.gen.size(); ++b)
      to_block[static_cast<size_t>(to.gen[b])] = static_cast<int>(b);
    const K& f = a_->field();
    Mono vm = Mono(1) << v;
    for (const auto& [pos, c] : row) {
      int b = from.block_of(pos);
      int g = from.gen[static_cast<size_t>(b)];
      int piece = from.piece[static_cast<size_t>(b)];
      Mono mono = a_->basis(piece)[static_cast<size_t>(
          pos - from.offset[static_cast<size_t>(b)])];
      auto p = mono_mul(vm, mono, a_->ring().mode());
      if (!p) continue;
      int tb = to_block[static_cast<size_t>(g)];
      if (tb < 0) continue;
      Scalar cc = (p->sign < 0) ? f.neg(c) : c;
      for (const auto& [idx, x] : a_->nf_mono(p->mono))
        out[static_cast<size_t>(to.offset[static_cast<size_t>(tb)] + idx)] =
            f.add(out[static_cast<size_t>(to.offset[static_cast<size_t>(tb)] +
                                          idx)],
                  f.mul(cc, x));
    }
  }

  std::vector<std::pair<int, Element<K>>> column_from(
      const std::vector<Scalar>& v, const DegreeLayout& lay) const {
    std::vector<std::pair<int, Element<K>>> col;
    for (size_t b = 0; b < lay.gen.size(); ++b) {
      Element<K> e =
          a_->element_from(v, lay.piece[b], lay.offset[b]);
      if (!e.is_zero()) col.emplace_back(lay.gen[b], std::move(e));
    }
    return col;
  }

  const Quotient<K>* a_;
  int j_max_;
  GradedMatrix<K> pres_;
  std::vector<GradedFreeModule> modules_;
  std::vector<GradedMatrix<K>> maps_;
  std::map<std::pair<int, int>, long long> entries_;
  std::vector<char> complete_;
};

template <class K>
FreeResolution<K> minimal_free_resolution(const Quotient<K>& a,
                                          GradedMatrix<K> presentation,
                                          int i_max, int j_max) {
  if (i_max < 0) throw std::invalid_argument("i_max must be nonnegative");
  ResolutionBuilder<K> b(a, std::move(presentation), j_max);
  for (int i = 0; i < i_max; ++i) b.step();
  FreeResolution<K> out{&a, b.modules(), b.maps(), b.betti(i_max)};
  return out;
}

/// Presentation of the residue field k = A/m: one degree-0 generator,
/// relations the images of the variables.
template <class K>
GradedMatrix<K> k_presentation(const Quotient<K>& a) {
  GradedMatrix<K> p;
  p.target.degs = {0};
  for (int v = 0; v < a.n(); ++v) {
    p.source.degs.push_back(1);
    Element<K> e = a.nf(ring_var(a.ring(), v));
    std::vector<std::pair<int, Element<K>>> col;
    if (!e.is_zero()) col.emplace_back(0, std::move(e));
    p.cols.push_back(std::move(col));
  }
  return p;
}

/// Presentation of the cyclic module A/(gens): one degree-0 generator,
/// one relation column per generator.
template <class K>
GradedMatrix<K> cyclic_presentation(const Quotient<K>& a,
                                    const std::vector<Element<K>>& gens) {
  GradedMatrix<K> p;
  p.target.degs = {0};
  for (const auto& g : gens) {
    if (g.is_zero() || !g.is_homogeneous())
      throw std::invalid_argument("cyclic relations must be homogeneous");
    p.source.degs.push_back(g.degree());
    Element<K> e = a.nf(g);
    std::vector<std::pair<int, Element<K>>> col;
    if (!e.is_zero()) col.emplace_back(0, std::move(e));
    p.cols.push_back(std::move(col));
  }
  return p;
}

template <class K>
FreeResolution<K> resolution_of_k(const Quotient<K>& a, int i_max,
                                  int j_max) {
  return minimal_free_resolution(a, k_presentation(a), i_max, j_max);
}

template <class K>
BettiTable betti_of_k(const Quotient<K>& a, int i_max, int j_max) {
  return resolution_of_k(a, i_max, j_max).betti;
}

/// d_i . d_{i+1} = 0, checked entrywise with exact arithmetic.
template <class K>
bool composes_to_zero(const Quotient<K>& a, const GradedMatrix<K>& outer,
                      const GradedMatrix<K>& inner) {
  for (const auto& col : inner.cols) {
    std::map<int, Element<K>> acc;
    for (const auto& [r, h] : col) {
      for (const auto& [s, g] : outer.cols[static_cast<size_t>(r)]) {
        Element<K> prod = a.mul(h, g);
        auto it = acc.find(s);
        if (it == acc.end())
          acc.emplace(s, std::move(prod));
        else
          it->second = it->second + prod;
      }
    }
    for (const auto& [s, e] : acc)
      if (!e.is_zero()) return false;
  }
  return true;
}

template <class K>
bool resolution_composes_to_zero(const FreeResolution<K>& r) {
  for (size_t i = 1; i < r.maps.size(); ++i)
    if (!composes_to_zero(*r.over, r.maps[i - 1], r.maps[i])) return false;
  return true;
}

/// Minimality: every differential entry has positive degree.
template <class K>
bool resolution_is_minimal(const FreeResolution<K>& r) {
  for (const auto& m : r.maps)
    for (const auto& col : m.cols)
      for (const auto& [row, e] : col)
        if (e.degree() < 1) return false;
  return true;
}

}  // namespace wedge
