#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace ddinet {

/// Dense row-major matrix of doubles. Vectors are 1xN or Nx1 matrices.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> d;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), d(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) {
    assert(i < rows && j < cols);
    return d[i * cols + j];
  }
  double at(std::size_t i, std::size_t j) const {
    assert(i < rows && j < cols);
    return d[i * cols + j];
  }
  double* row(std::size_t i) { return d.data() + i * cols; }
  const double* row(std::size_t i) const { return d.data() + i * cols; }

  std::size_t size() const { return d.size(); }
  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }

  bool finite() const {
    for (double v : d)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

/// Compressed sparse row matrix with values; used for graph aggregation
/// operators (mean over neighbours, symmetric GCN normalisation).
struct Csr {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> indptr;   // rows+1
  std::vector<std::size_t> indices;  // column per entry
  std::vector<double> values;

  Csr() = default;
  explicit Csr(std::size_t r, std::size_t c) : rows(r), cols(c), indptr(r + 1, 0) {}

  std::size_t nnz() const { return indices.size(); }

  /// Transpose (needed for the backward pass of Y = S X).
  Csr transposed() const;

  /// Build from an unsorted triplet list; duplicates are summed.
  static Csr from_triplets(std::size_t r, std::size_t c,
                           std::vector<std::tuple<std::size_t, std::size_t, double>> trip);
};

}  // namespace ddinet
