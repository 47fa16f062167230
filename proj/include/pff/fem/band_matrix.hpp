#pragma once

#include <vector>

namespace pff {

/// Symmetric banded matrix with in-place LDLt factorization.
///
/// Structured meshes numbered along the short grid direction keep the
/// bandwidth small, so a direct band factorization covers the problem sizes
/// here without a general sparse solver.
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(int n, int bandwidth);

  int size() const { return n_; }
  int bandwidth() const { return bw_; }

  void clear();

  /// Accumulates into entry (i, j); only the lower triangle is stored.
  void add(int i, int j, double v);

  double at(int i, int j) const;

  /// Zeroes row/column i and places 1 on the diagonal.
  void set_identity_row(int i);

  /// LDLt factorization (no pivoting). Returns false on a non-positive
  /// pivot, i.e. the matrix is not positive definite.
  bool factorize();

  bool factorized() const { return factorized_; }

  /// Solves A x = rhs in place using the factorization.
  void solve(std::vector<double>& rhs) const;

 private:
  int n_ = 0;
  int bw_ = 0;
  std::vector<double> a_;  ///< assembled entries, band storage
  std::vector<double> f_;  ///< factorized copy
  bool factorized_ = false;

  double& ref(int i, int j) { return a_[std::size_t(j) * (bw_ + 1) + (i - j)]; }
  double get(int i, int j) const { return a_[std::size_t(j) * (bw_ + 1) + (i - j)]; }
};

}  // namespace pff
