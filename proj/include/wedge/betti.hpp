#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wedge {

/// Graded Betti numbers inside a window i <= i_max, j <= j_max. A column i
/// can be marked incomplete when the window was too small to certify that
/// all of its generators were seen; stored entries are exact regardless.
class BettiTable {
 public:
  BettiTable(int i_max, int j_max)
      : i_max_(i_max), j_max_(j_max),
        complete_(static_cast<size_t>(i_max) + 1, true) {
    if (i_max < 0 || j_max < 0)
      throw std::invalid_argument("betti window must be nonnegative");
  }

  int i_max() const { return i_max_; }
  int j_max() const { return j_max_; }

  void set(int i, int j, long long v) {
    check_window(i, j);
    if (v < 0) throw std::invalid_argument("negative betti number");
    if (v == 0)
      e_.erase({i, j});
    else
      e_[{i, j}] = v;
  }

  void add(int i, int j, long long v) { set(i, j, get(i, j) + v); }

  long long get(int i, int j) const {
    check_window(i, j);
    auto it = e_.find({i, j});
    return it == e_.end() ? 0 : it->second;
  }

  const std::map<std::pair<int, int>, long long>& entries() const {
    return e_;
  }

  void mark_incomplete(int i) {
    complete_[static_cast<size_t>(i)] = false;
  }
  bool is_complete(int i) const {
    return complete_[static_cast<size_t>(i)] != 0;
  }

  /// Column sum of the stored entries.
  long long total(int i) const {
    long long t = 0;
    for (const auto& [ij, v] : e_)
      if (ij.first == i) t += v;
    return t;
  }

  /// Largest j with beta_{i,j} != 0; -1 for an empty column. Demands a
  /// complete column, since otherwise the maximum could lie past the window.
  int t_degree(int i) const {
    if (i < 0 || i > i_max_) throw std::out_of_range("column outside window");
    if (!is_complete(i))
      throw std::runtime_error("t_degree on incomplete column " +
                               std::to_string(i));
    int best = -1;
    for (const auto& [ij, v] : e_)
      if (ij.first == i && v != 0) best = std::max(best, ij.second);
    return best;
  }

  /// True when beta_{i,j} = 0 for every j != i with i <= through. Columns
  /// 0..through must be complete for the answer to be trustworthy.
  bool is_linear_through(int through) const {
    if (through < 0 || through > i_max_)
      throw std::out_of_range("column outside window");
    for (int i = 0; i <= through; ++i)
      if (!is_complete(i))
        throw std::runtime_error("linearity query on incomplete column " +
                                 std::to_string(i));
    for (const auto& [ij, v] : e_)
      if (ij.first <= through && ij.second != ij.first && v != 0) return false;
    return true;
  }

  /// First (i, j) in the window with j > i and beta_{i,j} != 0, scanning
  /// columns left to right and degrees upward. Entries in the window are
  /// exact even in incomplete columns, so a hit is always a certificate.
  std::optional<std::pair<int, int>> first_nonlinear() const {
    for (const auto& [ij, v] : e_)  // map order: i, then j
      if (ij.second > ij.first && v != 0) return ij;
    return std::nullopt;
  }

 private:
  void check_window(int i, int j) const {
    if (i < 0 || i > i_max_ || j < 0 || j > j_max_)
      throw std::out_of_range("betti entry outside window");
  }

  int i_max_, j_max_;
  std::map<std::pair<int, int>, long long> e_;
  std::vector<char> complete_;
};

/// Render in the classical Macaulay2 layout: one column per homological
/// degree, rows indexed by j - i, dots for zeros, a "total:" line, entries
/// right-aligned per column with single-space separators.
inline std::string format_betti_m2(const BettiTable& b) {
  int cols = b.i_max() + 1;
  int maxrow = 0;
  for (const auto& [ij, v] : b.entries())
    if (v != 0) maxrow = std::max(maxrow, ij.second - ij.first);

  // cell text: header, total, then rows 0..maxrow
  auto cell = [&](int row, int col) -> std::string {
    if (row == 0) return std::to_string(col);
    if (row == 1) {
      long long t = b.total(col);
      return t == 0 ? "." : std::to_string(t);
    }
    int i = col, j = row - 2 + col;
    long long v = (j <= b.j_max() && j >= 0) ? b.get(i, j) : 0;
    return v == 0 ? "." : std::to_string(v);
  };

  std::vector<size_t> width(static_cast<size_t>(cols), 1);
  for (int c = 0; c < cols; ++c)
    for (int row = 0; row < maxrow + 3; ++row)
      width[static_cast<size_t>(c)] =
          std::max(width[static_cast<size_t>(c)], cell(row, c).size());

  const size_t label_w = 6;  // len("total:")
  auto label = [&](int row) -> std::string {
    if (row == 0) return std::string(label_w, ' ');
    std::string s = row == 1 ? "total:" : std::to_string(row - 2) + ":";
    return std::string(label_w - s.size(), ' ') + s;
  };

  std::string out;
  for (int row = 0; row < maxrow + 3; ++row) {
    out += label(row);
    for (int c = 0; c < cols; ++c) {
      std::string s = cell(row, c);
      out += ' ';
      out += std::string(width[static_cast<size_t>(c)] - s.size(), ' ');
      out += s;
    }
    out += '\n';
  }
  return out;
}

}  // namespace wedge
