#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ddinet/common.hpp"
#include "ddinet/kernels.hpp"

using namespace ddinet;

namespace {

Mat random_mat(std::size_t r, std::size_t c, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat m(r, c);
  for (double& v : m.d) v = u(rng);
  return m;
}

Csr random_csr(std::size_t r, std::size_t c, double density, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::tuple<std::size_t, std::size_t, double>> trip;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) < density) trip.emplace_back(i, j, u(rng));
  return Csr::from_triplets(r, c, std::move(trip));
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference bitwise") {
  Rng rng = make_rng(7, "kernels");
  for (int iter = 0; iter < 20; ++iter) {
    std::uniform_int_distribution<std::size_t> dim(1, 40);
    const std::size_t n = dim(rng), k = dim(rng), m = dim(rng);
    Mat a = random_mat(n, k, rng);
    Mat bt = random_mat(m, k, rng);
    Mat b = random_mat(k, m, rng);

    Mat c1(n, m), c2(n, m);
    kern::serial::matmul_nt(a.d.data(), n, k, bt.d.data(), m, c1.d.data());
    kern::par::matmul_nt(a.d.data(), n, k, bt.d.data(), m, c2.d.data());
    CHECK(c1.d == c2.d);

    kern::serial::matmul_nn(a.d.data(), n, k, b.d.data(), m, c1.d.data());
    kern::par::matmul_nn(a.d.data(), n, k, b.d.data(), m, c2.d.data());
    CHECK(c1.d == c2.d);

    Mat acc1(k, m, 0.5), acc2(k, m, 0.5);
    Mat g = random_mat(n, m, rng);
    kern::serial::matmul_tn_acc(a.d.data(), n, k, g.d.data(), m, acc1.d.data());
    kern::par::matmul_tn_acc(a.d.data(), n, k, g.d.data(), m, acc2.d.data());
    CHECK(acc1.d == acc2.d);

    Csr s = random_csr(n, k, 0.3, rng);
    Mat x = random_mat(k, m, rng);
    Mat y1(n, m), y2(n, m);
    kern::serial::csr_mm(s, x.d.data(), m, y1.d.data());
    kern::par::csr_mm(s, x.d.data(), m, y2.d.data());
    CHECK(y1.d == y2.d);

    Mat logits = random_mat(n, m, rng);
    std::vector<unsigned char> mask(n * m);
    std::uniform_int_distribution<int> bit(0, 1);
    for (auto& v : mask) v = static_cast<unsigned char>(bit(rng));
    Mat p1(n, m), p2(n, m);
    kern::serial::softmax_rows_masked(logits.d.data(), mask.data(), n, m, p1.d.data());
    kern::par::softmax_rows_masked(logits.d.data(), mask.data(), n, m, p2.d.data());
    CHECK(p1.d == p2.d);
  }
}

TEST_CASE("masked softmax rows sum to one on non-empty masks") {
  Rng rng = make_rng(11, "kernels-softmax");
  const std::size_t n = 30, m = 17;
  Mat logits = random_mat(n, m, rng);
  std::vector<unsigned char> mask(n * m, 0);
  std::uniform_int_distribution<int> bit(0, 1);
  for (auto& v : mask) v = static_cast<unsigned char>(bit(rng));
  for (std::size_t i = 0; i < n; ++i) mask[i * m + (i % m)] = 1;  // no empty rows
  Mat p(n, m);
  kern::softmax_rows_masked(logits.d.data(), mask.data(), n, m, p.d.data());
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      s += p.at(i, j);
      if (!mask[i * m + j]) CHECK(p.at(i, j) == 0.0);
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("csr transpose round trip") {
  Rng rng = make_rng(3, "kernels-csr");
  Csr s = random_csr(13, 9, 0.4, rng);
  Csr tt = s.transposed().transposed();
  CHECK(tt.indptr == s.indptr);
  CHECK(tt.indices == s.indices);
  CHECK(tt.values == s.values);
}
