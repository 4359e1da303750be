#pragma once

// Dense storage for the second-order coefficient arrays T^k_{ij}.
//
// SymCube keeps one slot per unordered pair {i, j}; Cube keeps all m^2.
// Element accessors are 0-based. canonical_offset and the JSON forms use
// 1-based indices.

#include <cstddef>
#include <span>
#include <vector>

namespace jetforge {

/// Offset of the unordered pair {i, j} (1-based, 1 <= i, j <= m) in
/// row-major upper-triangular order. Throws DomainError when out of range.
std::size_t canonical_offset(int i, int j, int m);

/// Number of unordered pairs, m(m+1)/2.
constexpr std::size_t pair_count(int m) {
  return static_cast<std::size_t>(m) * static_cast<std::size_t>(m + 1) / 2;
}

/// 0-based, unchecked.
constexpr std::size_t pair_offset(int i, int j, int m) {
  if (i > j) {
    const int tmp = i;
    i = j;
    j = tmp;
  }
  return static_cast<std::size_t>(i * m - i * (i - 1) / 2 + (j - i));
}

/// Unordered multi-index over {1..m}, kept sorted.
class MultiIndex {
 public:
  MultiIndex(int m, std::vector<int> entries);

  int dim() const noexcept { return m_; }
  std::size_t order() const noexcept { return entries_.size(); }
  const std::vector<int>& entries() const noexcept { return entries_; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  int m_;
  std::vector<int> entries_;
};

class Cube;

/// n blocks (one per upper index k) of m(m+1)/2 symmetric entries.
class SymCube {
 public:
  SymCube() = default;
  /// Zero-filled.
  SymCube(int m, int n);
  /// Takes ownership of data laid out in canonical order.
  SymCube(int m, int n, std::vector<double> data);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }

  double operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }
  double& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  /// Full storage with both (i, j) and (j, i) filled.
  Cube to_cube() const;

  double max_abs() const noexcept;

  SymCube& operator+=(const SymCube& other);
  SymCube& operator-=(const SymCube& other);
  SymCube& operator*=(double s);

  friend bool operator==(const SymCube&, const SymCube&) = default;

 private:
  std::size_t index(int k, int i, int j) const noexcept {
    return static_cast<std::size_t>(k) * pair_count(m_) + pair_offset(i, j, m_);
  }

  int m_ = 0;
  int n_ = 0;
  std::vector<double> data_;
};

/// n blocks of m x m entries, row-major in (i, j); no symmetry assumed.
class Cube {
 public:
  Cube() = default;
  Cube(int m, int n);
  Cube(int m, int n, std::vector<double> data);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }

  double operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }
  double& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  /// max |c(k,i,j) - c(k,j,i)|
  double asymmetry() const noexcept;
  double max_abs() const noexcept;

  Cube& operator+=(const Cube& other);
  Cube& operator-=(const Cube& other);
  Cube& operator*=(double s);

  friend bool operator==(const Cube&, const Cube&) = default;

 private:
  std::size_t index(int k, int i, int j) const noexcept {
    return (static_cast<std::size_t>(k) * m_ + i) * m_ + j;
  }

  int m_ = 0;
  int n_ = 0;
  std::vector<double> data_;
};

/// output(k,i,j) = (c(k,i,j) + c(k,j,i)) / 2
SymCube symmetrize(const Cube& c);

SymCube operator+(SymCube a, const SymCube& b);
SymCube operator-(SymCube a, const SymCube& b);
Cube operator+(Cube a, const Cube& b);
Cube operator-(Cube a, const Cube& b);

/// max componentwise |a - b|; dimensions must agree.
double max_abs_diff(const SymCube& a, const SymCube& b);
double max_abs_diff(const Cube& a, const Cube& b);

}  // namespace jetforge
