#include "ddinet/kernels.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ddinet::kern {

namespace {

inline double dot(const double* a, const double* b, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += a[i] * b[i];
  return s;
}

inline void softmax_row(const double* logits, const unsigned char* mask, std::size_t m,
                        double* out) {
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j)
    if (mask[j] && logits[j] > mx) mx = logits[j];
  if (!std::isfinite(mx)) {  // empty row: all outputs stay zero
    for (std::size_t j = 0; j < m; ++j) out[j] = 0.0;
    return;
  }
  double z = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    out[j] = mask[j] ? std::exp(logits[j] - mx) : 0.0;
    z += out[j];
  }
  for (std::size_t j = 0; j < m; ++j) out[j] /= z;
}

}  // namespace

namespace serial {

void matmul_nt(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) c[i * m + j] = dot(a + i * k, b + j * k, k);
}

void matmul_nn(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < k; ++t) s += a[i * k + t] * b[t * m + j];
      c[i * m + j] = s;
    }
  }
}

void matmul_tn_acc(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
                   double* c) {
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < n; ++t) s += a[t * k + i] * b[t * m + j];
      c[i * m + j] += s;
    }
  }
}

void csr_mm(const Csr& s, const double* x, std::size_t d, double* y) {
  for (std::size_t i = 0; i < s.rows; ++i) {
    double* out = y + i * d;
    for (std::size_t j = 0; j < d; ++j) out[j] = 0.0;
    for (std::size_t e = s.indptr[i]; e < s.indptr[i + 1]; ++e) {
      const double v = s.values[e];
      const double* xr = x + s.indices[e] * d;
      for (std::size_t j = 0; j < d; ++j) out[j] += v * xr[j];
    }
  }
}

void softmax_rows_masked(const double* logits, const unsigned char* mask, std::size_t n,
                         std::size_t m, double* out) {
  for (std::size_t i = 0; i < n; ++i)
    softmax_row(logits + i * m, mask + i * m, m, out + i * m);
}

}  // namespace serial

namespace par {

// Each output element (or row) is produced by exactly the same scalar loop as
// in the serial kernels, so results match the serial path bit for bit.

void matmul_nt(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    for (std::size_t j = 0; j < m; ++j) c[i * m + j] = dot(a + i * k, b + j * k, k);
}

void matmul_nn(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < k; ++t) s += a[i * k + t] * b[t * m + j];
      c[i * m + j] = s;
    }
  }
}

void matmul_tn_acc(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
                   double* c) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(k); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < n; ++t) s += a[t * k + i] * b[t * m + j];
      c[i * m + j] += s;
    }
  }
}

void csr_mm(const Csr& s, const double* x, std::size_t d, double* y) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(s.rows); ++i) {
    double* out = y + i * d;
    for (std::size_t j = 0; j < d; ++j) out[j] = 0.0;
    for (std::size_t e = s.indptr[i]; e < s.indptr[i + 1]; ++e) {
      const double v = s.values[e];
      const double* xr = x + s.indices[e] * d;
      for (std::size_t j = 0; j < d; ++j) out[j] += v * xr[j];
    }
  }
}

void softmax_rows_masked(const double* logits, const unsigned char* mask, std::size_t n,
                         std::size_t m, double* out) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    softmax_row(logits + i * m, mask + i * m, m, out + i * m);
}

}  // namespace par

namespace {
bool g_parallel = true;
}

bool parallel_enabled() { return g_parallel; }
void set_parallel(bool on) { g_parallel = on; }

void matmul_nt(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c) {
  g_parallel ? par::matmul_nt(a, n, k, b, m, c) : serial::matmul_nt(a, n, k, b, m, c);
}
void matmul_nn(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c) {
  g_parallel ? par::matmul_nn(a, n, k, b, m, c) : serial::matmul_nn(a, n, k, b, m, c);
}
void matmul_tn_acc(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
                   double* c) {
  g_parallel ? par::matmul_tn_acc(a, n, k, b, m, c) : serial::matmul_tn_acc(a, n, k, b, m, c);
}
void csr_mm(const Csr& s, const double* x, std::size_t d, double* y) {
  g_parallel ? par::csr_mm(s, x, d, y) : serial::csr_mm(s, x, d, y);
}
void softmax_rows_masked(const double* logits, const unsigned char* mask, std::size_t n,
                         std::size_t m, double* out) {
  g_parallel ? par::softmax_rows_masked(logits, mask, n, m, out)
             : serial::softmax_rows_masked(logits, mask, n, m, out);
}

}  // namespace ddinet::kern
