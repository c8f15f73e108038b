#pragma once

#include <cstddef>

#include "ddinet/mat.hpp"

// Dense/sparse kernels behind the autodiff ops. Each kernel exists twice:
// a serial reference in kern::serial and an OpenMP variant in kern::par.
// Both compute every output element with the same per-element operation
// order, so the parallel results are bitwise identical to the serial ones;
// tests assert that and benchmarks/kernel_bench compares their speed.

namespace ddinet::kern {

namespace serial {

// C[n x m] = A[n x k] * B[m x k]^T
void matmul_nt(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c);
// C[n x m] = A[n x k] * B[k x m]
void matmul_nn(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c);
// C[k x m] += A[n x k]^T * B[n x m]
void matmul_tn_acc(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
                   double* c);
// Y[rows(S) x d] = S * X
void csr_mm(const Csr& s, const double* x, std::size_t d, double* y);
// Row-wise softmax restricted to mask[i*n+j] entries; unmasked outputs are 0.
void softmax_rows_masked(const double* logits, const unsigned char* mask, std::size_t n,
                         std::size_t m, double* out);

}  // namespace serial

namespace par {

void matmul_nt(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c);
void matmul_nn(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c);
void matmul_tn_acc(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
                   double* c);
void csr_mm(const Csr& s, const double* x, std::size_t d, double* y);
void softmax_rows_masked(const double* logits, const unsigned char* mask, std::size_t n,
                         std::size_t m, double* out);

}  // namespace par

/// Global switch; defaults to parallel when OpenMP has more than one thread.
bool parallel_enabled();
void set_parallel(bool on);

// Dispatching entry points used by the rest of the library.
void matmul_nt(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c);
void matmul_nn(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
               double* c);
void matmul_tn_acc(const double* a, std::size_t n, std::size_t k, const double* b, std::size_t m,
                   double* c);
void csr_mm(const Csr& s, const double* x, std::size_t d, double* y);
void softmax_rows_masked(const double* logits, const unsigned char* mask, std::size_t n,
                         std::size_t m, double* out);

}  // namespace ddinet::kern
