#include "pff/fem/band_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pff {

BandMatrix::BandMatrix(int n, int bandwidth)
    : n_(n), bw_(bandwidth), a_(std::size_t(n) * (bandwidth + 1), 0.0) {}

void BandMatrix::clear() {
  std::fill(a_.begin(), a_.end(), 0.0);
  factorized_ = false;
}

void BandMatrix::add(int i, int j, double v) {
  if (i < j) std::swap(i, j);
  if (i - j > bw_) throw std::out_of_range("BandMatrix::add outside bandwidth");
  ref(i, j) += v;
  factorized_ = false;
}

double BandMatrix::at(int i, int j) const {
  if (i < j) std::swap(i, j);
  if (i - j > bw_) return 0.0;
  return get(i, j);
}

void BandMatrix::set_identity_row(int i) {
  for (int j = std::max(0, i - bw_); j <= std::min(n_ - 1, i + bw_); ++j) {
    if (j == i) continue;
    if (j < i)
      ref(i, j) = 0.0;
    else
      ref(j, i) = 0.0;
  }
  ref(i, i) = 1.0;
  factorized_ = false;
}

bool BandMatrix::factorize() {
  f_ = a_;
  auto F = [&](int i, int j) -> double& {
    return f_[std::size_t(j) * (bw_ + 1) + (i - j)];
  };
  for (int j = 0; j < n_; ++j) {
    double d = F(j, j);
    const int k0 = std::max(0, j - bw_);
    for (int k = k0; k < j; ++k) {
      const double l = F(j, k);
      d -= l * l * F(k, k);
    }
    if (!(d > 0.0)) {
      factorized_ = false;
      return false;
    }
    F(j, j) = d;
    const int imax = std::min(n_ - 1, j + bw_);
    for (int i = j + 1; i <= imax; ++i) {
      double s = F(i, j);
      const int kk0 = std::max({0, i - bw_, j - bw_});
      for (int k = kk0; k < j; ++k) s -= F(i, k) * F(j, k) * F(k, k);
      F(i, j) = s / d;
    }
  }
  factorized_ = true;
  return true;
}

void BandMatrix::solve(std::vector<double>& rhs) const {
  if (!factorized_) throw std::logic_error("BandMatrix::solve before factorize");
  auto F = [&](int i, int j) -> double {
    return f_[std::size_t(j) * (bw_ + 1) + (i - j)];
  };
  // forward substitution with unit lower factor
  for (int i = 0; i < n_; ++i) {
    double s = rhs[i];
    const int k0 = std::max(0, i - bw_);
    for (int k = k0; k < i; ++k) s -= F(i, k) * rhs[k];
    rhs[i] = s;
  }
  for (int i = 0; i < n_; ++i) rhs[i] /= F(i, i);
  // backward substitution
  for (int i = n_ - 1; i >= 0; --i) {
    double s = rhs[i];
    const int kmax = std::min(n_ - 1, i + bw_);
    for (int k = i + 1; k <= kmax; ++k) s -= F(k, i) * rhs[k];
    rhs[i] = s;
  }
}

}  // namespace pff
