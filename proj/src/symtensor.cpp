#include "jetforge/symtensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jetforge/errors.hpp"

namespace jetforge {

std::size_t canonical_offset(int i, int j, int m) {
  if (m < 1 || i < 1 || j < 1 || i > m || j > m) {
    throw DomainError("canonical_offset: index (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") out of range for m = " + std::to_string(m));
  }
  return pair_offset(i - 1, j - 1, m);
}

MultiIndex::MultiIndex(int m, std::vector<int> entries) : m_(m), entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 1 || e > m_) throw DomainError("MultiIndex: entry out of range");
  }
  std::sort(entries_.begin(), entries_.end());
}

namespace {

void check_dims(int m, int n) {
  if (m < 0 || n < 0) throw DomainError("negative tensor dimension");
}

template <class T>
void check_same(const T& a, const T& b, const char* what) {
  if (a.m() != b.m() || a.n() != b.n()) throw DomainError(std::string(what) + ": dimension mismatch");
}

double span_max_abs(std::span<const double> d) {
  double r = 0.0;
  for (double v : d) r = std::max(r, std::abs(v));
  return r;
}

double span_max_diff(std::span<const double> a, std::span<const double> b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

}  // namespace

SymCube::SymCube(int m, int n) : m_(m), n_(n) {
  check_dims(m, n);
  data_.assign(static_cast<std::size_t>(n) * pair_count(m), 0.0);
}

SymCube::SymCube(int m, int n, std::vector<double> data) : m_(m), n_(n), data_(std::move(data)) {
  check_dims(m, n);
  if (data_.size() != static_cast<std::size_t>(n) * pair_count(m)) {
    throw DomainError("SymCube: data length " + std::to_string(data_.size()) + " != n*m(m+1)/2");
  }
}

Cube SymCube::to_cube() const {
  Cube c(m_, n_);
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) c(k, i, j) = (*this)(k, i, j);
  return c;
}

double SymCube::max_abs() const noexcept { return span_max_abs(data_); }

SymCube& SymCube::operator+=(const SymCube& other) {
  check_same(*this, other, "SymCube +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

SymCube& SymCube::operator-=(const SymCube& other) {
  check_same(*this, other, "SymCube -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

SymCube& SymCube::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Cube::Cube(int m, int n) : m_(m), n_(n) {
  check_dims(m, n);
  data_.assign(static_cast<std::size_t>(n) * m * m, 0.0);
}

Cube::Cube(int m, int n, std::vector<double> data) : m_(m), n_(n), data_(std::move(data)) {
  check_dims(m, n);
  if (data_.size() != static_cast<std::size_t>(n) * m * m) {
    throw DomainError("Cube: data length " + std::to_string(data_.size()) + " != n*m^2");
  }
}

double Cube::asymmetry() const noexcept {
  double r = 0.0;
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < m_; ++i)
      for (int j = i + 1; j < m_; ++j) r = std::max(r, std::abs((*this)(k, i, j) - (*this)(k, j, i)));
  return r;
}

double Cube::max_abs() const noexcept { return span_max_abs(data_); }

Cube& Cube::operator+=(const Cube& other) {
  check_same(*this, other, "Cube +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Cube& Cube::operator-=(const Cube& other) {
  check_same(*this, other, "Cube -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Cube& Cube::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

SymCube symmetrize(const Cube& c) {
  SymCube out(c.m(), c.n());
  for (int k = 0; k < c.n(); ++k)
    for (int i = 0; i < c.m(); ++i)
      for (int j = i; j < c.m(); ++j) out(k, i, j) = 0.5 * (c(k, i, j) + c(k, j, i));
  return out;
}

SymCube operator+(SymCube a, const SymCube& b) { return a += b; }
SymCube operator-(SymCube a, const SymCube& b) { return a -= b; }
Cube operator+(Cube a, const Cube& b) { return a += b; }
Cube operator-(Cube a, const Cube& b) { return a -= b; }

double max_abs_diff(const SymCube& a, const SymCube& b) {
  check_same(a, b, "max_abs_diff");
  return span_max_diff(a.data(), b.data());
}

double max_abs_diff(const Cube& a, const Cube& b) {
  check_same(a, b, "max_abs_diff");
  return span_max_diff(a.data(), b.data());
}

}  // namespace jetforge
