#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wedge {

/// Squarefree monomial on up to 64 variables: bit i set means variable i
/// occurs. Variables are indexed by declaration order.
using Mono = std::uint64_t;

enum class RingMode { Exterior, SquareZeroCommutative };

inline int mono_degree(Mono m) { return std::popcount(m); }

/// Variables above position j, i.e. the bits of m strictly greater than j.
inline Mono bits_above(Mono m, int j) {
  return j >= 63 ? 0 : (m & (~Mono(0) << (j + 1)));
}

/// Number of crossings (mod 2) when the sorted variable list of b is merged
/// into the sorted variable list of a: each variable of b must pass every
/// larger variable of a.
inline int merge_swaps(Mono a, Mono b) {
  int s = 0;
  while (b) {
    int j = std::countr_zero(b);
    b &= b - 1;
    s += std::popcount(bits_above(a, j));
  }
  return s;
}

struct MonoProd {
  int sign;  // +1 or -1
  Mono mono;
};

/// Product of squarefree monomials. Returns nullopt when a shared variable
/// kills the product (x^2 = 0 in both ring modes). In the exterior mode the
/// sign is the parity of merging b past a; in the square-zero commutative
/// mode it is always +1.
inline std::optional<MonoProd> mono_mul(Mono a, Mono b, RingMode mode) {
  if (a & b) return std::nullopt;
  int sign = 1;
  if (mode == RingMode::Exterior && (merge_swaps(a, b) & 1)) sign = -1;
  return MonoProd{sign, a | b};
}

/// All degree-d squarefree monomials on n variables in increasing bitmask
/// order (Gosper's hack). d outside [0, n] yields the empty list.
inline std::vector<Mono> basis_monomials(int n, int d) {
  std::vector<Mono> out;
  if (d < 0 || d > n) return out;
  if (d == 0) {
    out.push_back(0);
    return out;
  }
  Mono limit = (n >= 64) ? ~Mono(0) : ((Mono(1) << n) - 1);
  Mono m = (d >= 64) ? ~Mono(0) : ((Mono(1) << d) - 1);
  while (true) {
    out.push_back(m);
    // next combination with the same popcount; stop past n bits
    Mono c = m & (~m + 1);
    Mono r = m + c;
    if (r > limit || r == 0) break;
    m = (((r ^ m) >> 2) / c) | r;
    if (m > limit) break;
  }
  return out;
}

/// Variable indices of m in increasing order.
inline std::vector<int> mono_vars(Mono m) {
  std::vector<int> v;
  while (m) {
    v.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return v;
}

inline std::string mono_to_string(Mono m,
                                  const std::vector<std::string>& names) {
  if (m == 0) return "1";
  std::string s;
  for (int i : mono_vars(m)) {
    if (!s.empty()) s += "*";
    s += names[static_cast<size_t>(i)];
  }
  return s;
}

}  // namespace wedge
