#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wedge/betti.hpp"

namespace wedge {

/// Power series truncated at a fixed order, with exact rational
/// coefficients. A series of order N stores coefficients 0..N.
class TruncSeries {
 public:
  explicit TruncSeries(std::vector<mpq_class> coeffs)
      : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("series needs a coefficient");
  }

  static TruncSeries constant(const mpq_class& v, int order) {
    std::vector<mpq_class> c(static_cast<size_t>(order) + 1, mpq_class(0));
    c[0] = v;
    return TruncSeries(std::move(c));
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const mpq_class& coeff(int i) const {
    if (i < 0 || i > order()) throw std::out_of_range("series coefficient");
    return c_[static_cast<size_t>(i)];
  }
  /// Coefficient with the exact-polynomial convention: zero past the order.
  mpq_class coeff_or_zero(int i) const {
    return (i >= 0 && i <= order()) ? c_[static_cast<size_t>(i)] : mpq_class(0);
  }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  /// Substitute t -> -t.
  TruncSeries at_neg() const {
    std::vector<mpq_class> c = c_;
    for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return TruncSeries(std::move(c));
  }

  bool operator==(const TruncSeries& o) const { return c_ == o.c_; }

  std::string to_string() const {
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      std::string cs = c_[i].get_str();
      bool neg = cs[0] == '-';
      if (neg) cs = cs.substr(1);
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      if (i == 0)
        s += cs;
      else {
        if (cs != "1") s += cs + "*";
        s += "t";
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  std::vector<mpq_class> c_;
};

inline TruncSeries series_add(const TruncSeries& a, const TruncSeries& b,
                              int order) {
  std::vector<mpq_class> c(static_cast<size_t>(order) + 1);
  for (int i = 0; i <= order; ++i)
    c[static_cast<size_t>(i)] = a.coeff_or_zero(i) + b.coeff_or_zero(i);
  return TruncSeries(std::move(c));
}

inline TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b,
                              int order) {
  std::vector<mpq_class> c(static_cast<size_t>(order) + 1, mpq_class(0));
  for (int i = 0; i <= order; ++i)
    for (int k = 0; k <= i; ++k)
      c[static_cast<size_t>(i)] += a.coeff_or_zero(k) * b.coeff_or_zero(i - k);
  return TruncSeries(std::move(c));
}

/// Multiplicative inverse through the requested order. The input is read as
/// an exact polynomial (coefficients past its order are zero). Requires a
/// unit constant term.
inline TruncSeries series_invert(const TruncSeries& h, int order) {
  if (order < 0) throw std::invalid_argument("negative order");
  mpq_class a0 = h.coeff_or_zero(0);
  if (sgn(a0) == 0)
    throw std::invalid_argument("series with zero constant term");
  std::vector<mpq_class> b(static_cast<size_t>(order) + 1, mpq_class(0));
  b[0] = 1 / a0;
  for (int k = 1; k <= order; ++k) {
    mpq_class s(0);
    for (int i = 1; i <= k; ++i)
      s += h.coeff_or_zero(i) * b[static_cast<size_t>(k - i)];
    b[static_cast<size_t>(k)] = -s / a0;
  }
  return TruncSeries(std::move(b));
}

/// Smallest index i <= depth where 1/H(-t) has a negative coefficient, if
/// any. A hit certifies the ring with Hilbert series H is not Koszul, since
/// that expansion would otherwise be its Poincare series.
inline std::optional<int> froberg_obstruction(const TruncSeries& hilbert,
                                              int depth) {
  TruncSeries inv = series_invert(hilbert.at_neg(), depth);
  for (int i = 0; i <= depth; ++i)
    if (sgn(inv.coeff(i)) < 0) return i;
  return std::nullopt;
}

/// Column totals of a Betti table as a series in the homological degree.
inline TruncSeries poincare_truncation(const BettiTable& b) {
  std::vector<mpq_class> c(static_cast<size_t>(b.i_max()) + 1);
  for (int i = 0; i <= b.i_max(); ++i)
    c[static_cast<size_t>(i)] = mpq_class(static_cast<long>(b.total(i)));
  return TruncSeries(std::move(c));
}

/// Check sum_{i,j} (-1)^i beta_{i,j} t^j * H(t) = 1 through degree d_max.
/// Needs the window to determine all entries with j <= d_max.
inline bool euler_consistency(const BettiTable& b, const TruncSeries& hilbert,
                              int d_max) {
  if (d_max > b.j_max() || d_max > b.i_max())
    throw std::invalid_argument("euler check needs d_max within the window");
  for (int i = 0; i <= d_max; ++i)
    if (!b.is_complete(i))
      throw std::invalid_argument("euler check on incomplete column");
  std::vector<mpq_class> num(static_cast<size_t>(d_max) + 1, mpq_class(0));
  for (const auto& [ij, v] : b.entries()) {
    if (ij.second > d_max) continue;
    mpq_class term(static_cast<long>(v));
    num[static_cast<size_t>(ij.second)] += (ij.first % 2 == 0) ? term : -term;
  }
  TruncSeries prod =
      series_mul(TruncSeries(std::move(num)), hilbert, d_max);
  for (int i = 0; i <= d_max; ++i)
    if (prod.coeff(i) != (i == 0 ? 1 : 0)) return false;
  return true;
}

}  // namespace wedge
