#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "ddinet/autodiff.hpp"
#include "ddinet/common.hpp"

using namespace ddinet;
using ad::Tape;

namespace {

Mat random_mat(std::size_t r, std::size_t c, Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Mat m(r, c);
  for (double& v : m.d) v = u(rng);
  return m;
}

// Central finite differences of a scalar function of several leaf matrices
// against the tape gradient. Rebuilds the whole graph per probe.
void check_grads(const std::vector<Mat>& inputs,
                 const std::function<Tape::Var(Tape&, const std::vector<const Mat*>&)>& f,
                 double tol = 1e-7) {
  std::vector<Mat> work = inputs;
  std::vector<const Mat*> ptrs;
  for (auto& m : work) ptrs.push_back(&m);

  Tape tape;
  std::vector<Tape::Var> leaves;
  // f() is expected to call tape.leaf on every input in order; we re-create
  // the leaves here so gradients are addressable.
  Tape::Var loss = f(tape, ptrs);
  tape.backward(loss);

  const double h = 1e-6;
  for (std::size_t mi = 0; mi < work.size(); ++mi) {
    for (std::size_t e = 0; e < work[mi].size(); ++e) {
      const double keep = work[mi].d[e];
      work[mi].d[e] = keep + h;
      Tape tp;
      const double fp = tp.val(f(tp, ptrs)).d[0];
      work[mi].d[e] = keep - h;
      Tape tm;
      const double fm = tm.val(f(tm, ptrs)).d[0];
      work[mi].d[e] = keep;
      const double fd = (fp - fm) / (2.0 * h);
      // leaf vars are created first, in input order, by convention of f
      const double an = tape.grad(Tape::Var{static_cast<int>(mi)}).d[e];
      const double denom = std::max({std::fabs(fd), std::fabs(an), 1e-4});
      CHECK(std::fabs(fd - an) / denom < tol);
    }
  }
}

}  // namespace

TEST_CASE("gradients of dense ops match finite differences") {
  Rng rng = make_rng(17, "ad");
  Mat a = random_mat(3, 4, rng);
  Mat w = random_mat(5, 4, rng);
  Mat b = random_mat(3, 5, rng);

  check_grads({a, w, b}, [](Tape& t, const std::vector<const Mat*>& in) {
    auto va = t.leaf(in[0]);
    auto vw = t.leaf(in[1]);
    auto vb = t.leaf(in[2]);
    auto y = t.linear(va, vw);       // 3x5
    auto z = t.hadamard(y, vb);
    auto r = t.relu(t.sub(z, vb));
    return t.sumsq(t.add(r, z));
  });
}

TEST_CASE("gradients of activations and normalisation") {
  Rng rng = make_rng(19, "ad2");
  Mat x = random_mat(4, 6, rng);

  check_grads({x}, [](Tape& t, const std::vector<const Mat*>& in) {
    auto v = t.leaf(in[0]);
    auto g = t.gelu(v);
    auto l = t.leaky_relu(g, 0.2);
    auto n = t.layer_norm_rows(l);
    // mix with the raw input so the loss is not the (nearly constant)
    // squared norm of a normalised row
    return t.sumsq(t.hadamard(n, v));
  }, 1e-5);
}

TEST_CASE("gradients of masked softmax, gather, concat") {
  Rng rng = make_rng(23, "ad3");
  Mat logits = random_mat(4, 4, rng);
  Mat vals = random_mat(4, 3, rng);
  std::vector<unsigned char> mask = {1, 1, 0, 1,  0, 1, 1, 0,  1, 0, 1, 1,  1, 1, 1, 1};

  check_grads({logits, vals}, [mask](Tape& t, const std::vector<const Mat*>& in) {
    auto l = t.leaf(in[0]);
    auto v = t.leaf(in[1]);
    auto p = t.masked_softmax_rows(l, mask);
    auto y = t.matmul(p, v);
    auto g = t.gather_rows(y, {0, 2, 2});
    auto c = t.concat_cols({g, g});
    return t.sumsq(c);
  });
}

TEST_CASE("gradients of softmax/log-softmax vectors and pick") {
  Rng rng = make_rng(29, "ad4");
  Mat x = random_mat(1, 7, rng);
  Mat y = random_mat(1, 7, rng);

  check_grads({x, y}, [](Tape& t, const std::vector<const Mat*>& in) {
    auto vx = t.leaf(in[0]);
    auto vy = t.leaf(in[1]);
    auto p = t.softmax_vec(vx);
    auto lq = t.log_softmax_vec(vy);
    auto ce = t.scale(t.dot(p, lq), -1.0);   // cross-entropy H_q(p)
    auto picked = t.pick(lq, 0, 3);
    return t.add(ce, t.sumsq(picked));
  });
}

TEST_CASE("gradients of spmm, outer_add, colsum") {
  Rng rng = make_rng(31, "ad5");
  Mat x = random_mat(5, 3, rng);
  Mat u = random_mat(5, 1, rng);
  Mat v = random_mat(5, 1, rng);
  std::vector<std::tuple<std::size_t, std::size_t, double>> trip = {
      {0, 1, 0.5}, {1, 0, -1.0}, {2, 4, 2.0}, {4, 4, 1.0}, {3, 2, -0.25}};
  ad::SpOp sp(Csr::from_triplets(5, 5, trip));

  check_grads({x, u, v}, [&sp](Tape& t, const std::vector<const Mat*>& in) {
    auto vx = t.leaf(in[0]);
    auto vu = t.leaf(in[1]);
    auto vv = t.leaf(in[2]);
    auto y = t.spmm(&sp, vx);
    auto m = t.outer_add(vu, vv);    // 5x5
    auto z = t.matmul(m, y);
    auto cs = t.colsum(z);
    return t.sum_all(t.hadamard(cs, cs));
  });
}

TEST_CASE("softmax shift invariance") {
  Rng rng = make_rng(37, "ad6");
  Mat x = random_mat(1, 9, rng);
  Tape t1, t2;
  Mat shifted = x;
  for (double& v : shifted.d) v += 123.456;
  auto p1 = t1.softmax_vec(t1.leaf(&x));
  auto p2 = t2.softmax_vec(t2.leaf(&shifted));
  for (std::size_t j = 0; j < 9; ++j)
    CHECK(t1.val(p1).d[j] == doctest::Approx(t2.val(p2).d[j]).epsilon(1e-12));
}
