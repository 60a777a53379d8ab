#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wedge/monomial.hpp"

namespace wedge {

/// An ambient algebra k<v_0,...,v_{n-1}> with all squares zero: either the
/// exterior algebra (anticommuting variables) or its commutative analogue
/// k[v]/(v_i^2). The ring owns the variable names and the scalar field.
template <class K>
class Ring {
 public:
  Ring(RingMode mode, std::vector<std::string> names, K field)
      : mode_(mode), names_(std::move(names)), field_(std::move(field)) {
    if (names_.empty() || names_.size() > 64)
      throw std::invalid_argument("ring needs between 1 and 64 variables");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size())
      throw std::invalid_argument("duplicate variable name");
  }

  RingMode mode() const { return mode_; }
  int n() const { return static_cast<int>(names_.size()); }
  const K& field() const { return field_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }

  /// Declaration index of a variable name, or -1.
  int var_index(std::string_view s) const {
    for (size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == s) return static_cast<int>(i);
    return -1;
  }

  /// Mask covering all variables.
  Mono full_mask() const {
    return n() >= 64 ? ~Mono(0) : ((Mono(1) << n()) - 1);
  }

  std::string mode_name() const {
    return mode_ == RingMode::Exterior ? "exterior" : "squarezero";
  }

 private:
  RingMode mode_;
  std::vector<std::string> names_;
  K field_;
};

}  // namespace wedge
