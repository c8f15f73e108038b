#include "ddinet/autodiff.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "ddinet/kernels.hpp"

namespace ddinet::ad {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
}  // namespace

Tape::Var Tape::push(Mat value, std::function<void()> back) {
  Node n;
  n.value = std::move(value);
  n.grad = Mat(n.value.rows, n.value.cols);
  n.back = std::move(back);
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Tape::Var Tape::constant(Mat v) { return push(std::move(v), nullptr); }

Tape::Var Tape::leaf(const Mat* v) {
  Node n;
  n.external = v;
  n.grad = Mat(v->rows, v->cols);
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

void Tape::clear() { nodes_.clear(); }

void Tape::backward(Var loss) {
  Mat& lg = g(loss);
  assert(lg.rows == 1 && lg.cols == 1);
  lg.d[0] = 1.0;
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (nodes_[i].back) nodes_[i].back();
  }
}

void Tape::backward_from(Var out, const Mat& out_grad) {
  Mat& og = g(out);
  assert(og.same_shape(out_grad));
  og = out_grad;
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (nodes_[i].back) nodes_[i].back();
  }
}

Tape::Var Tape::linear(Var x, Var w) {
  const Mat& xv = val(x);
  const Mat& wv = val(w);
  assert(xv.cols == wv.cols);
  Mat y(xv.rows, wv.rows);
  kern::matmul_nt(xv.d.data(), xv.rows, xv.cols, wv.d.data(), wv.rows, y.d.data());
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, w, out]() {
    const Mat& dy = g(out);
    const Mat& xv = val(x);
    const Mat& wv = val(w);
    Mat dx(xv.rows, xv.cols);
    kern::matmul_nn(dy.d.data(), dy.rows, dy.cols, wv.d.data(), wv.cols, dx.d.data());
    Mat& gx = g(x);
    for (std::size_t i = 0; i < gx.size(); ++i) gx.d[i] += dx.d[i];
    kern::matmul_tn_acc(dy.d.data(), dy.rows, dy.cols, xv.d.data(), xv.cols, g(w).d.data());
  };
  return out;
}

Tape::Var Tape::matmul(Var a, Var b) {
  const Mat& av = val(a);
  const Mat& bv = val(b);
  assert(av.cols == bv.rows);
  Mat y(av.rows, bv.cols);
  kern::matmul_nn(av.d.data(), av.rows, av.cols, bv.d.data(), bv.cols, y.d.data());
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, a, b, out]() {
    const Mat& dy = g(out);
    const Mat& av = val(a);
    const Mat& bv = val(b);
    Mat da(av.rows, av.cols);
    kern::matmul_nt(dy.d.data(), dy.rows, dy.cols, bv.d.data(), bv.rows, da.d.data());
    Mat& ga = g(a);
    for (std::size_t i = 0; i < ga.size(); ++i) ga.d[i] += da.d[i];
    kern::matmul_tn_acc(av.d.data(), av.rows, av.cols, dy.d.data(), dy.cols, g(b).d.data());
  };
  return out;
}

Tape::Var Tape::add(Var a, Var b) {
  const Mat& av = val(a);
  const Mat& bv = val(b);
  assert(av.same_shape(bv));
  Mat y = av;
  for (std::size_t i = 0; i < y.size(); ++i) y.d[i] += bv.d[i];
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, a, b, out]() {
    const Mat& dy = g(out);
    Mat& ga = g(a);
    Mat& gb = g(b);
    for (std::size_t i = 0; i < dy.size(); ++i) {
      ga.d[i] += dy.d[i];
      gb.d[i] += dy.d[i];
    }
  };
  return out;
}

Tape::Var Tape::sub(Var a, Var b) {
  const Mat& av = val(a);
  const Mat& bv = val(b);
  assert(av.same_shape(bv));
  Mat y = av;
  for (std::size_t i = 0; i < y.size(); ++i) y.d[i] -= bv.d[i];
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, a, b, out]() {
    const Mat& dy = g(out);
    Mat& ga = g(a);
    Mat& gb = g(b);
    for (std::size_t i = 0; i < dy.size(); ++i) {
      ga.d[i] += dy.d[i];
      gb.d[i] -= dy.d[i];
    }
  };
  return out;
}

Tape::Var Tape::hadamard(Var a, Var b) {
  const Mat& av = val(a);
  const Mat& bv = val(b);
  assert(av.same_shape(bv));
  Mat y = av;
  for (std::size_t i = 0; i < y.size(); ++i) y.d[i] *= bv.d[i];
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, a, b, out]() {
    const Mat& dy = g(out);
    const Mat& av = val(a);
    const Mat& bv = val(b);
    Mat& ga = g(a);
    Mat& gb = g(b);
    for (std::size_t i = 0; i < dy.size(); ++i) {
      ga.d[i] += dy.d[i] * bv.d[i];
      gb.d[i] += dy.d[i] * av.d[i];
    }
  };
  return out;
}

Tape::Var Tape::scale(Var a, double c) {
  Mat y = val(a);
  for (double& v : y.d) v *= c;
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, a, c, out]() {
    const Mat& dy = g(out);
    Mat& ga = g(a);
    for (std::size_t i = 0; i < dy.size(); ++i) ga.d[i] += c * dy.d[i];
  };
  return out;
}

Tape::Var Tape::concat_cols(const std::vector<Var>& xs) {
  assert(!xs.empty());
  std::size_t rows = val(xs[0]).rows;
  std::size_t cols = 0;
  for (Var x : xs) {
    assert(val(x).rows == rows);
    cols += val(x).cols;
  }
  Mat y(rows, cols);
  std::size_t off = 0;
  for (Var x : xs) {
    const Mat& xv = val(x);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < xv.cols; ++j) y.at(i, off + j) = xv.at(i, j);
    off += xv.cols;
  }
  std::vector<Var> parts = xs;
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, parts, out]() {
    const Mat& dy = g(out);
    std::size_t off = 0;
    for (Var x : parts) {
      Mat& gx = g(x);
      for (std::size_t i = 0; i < gx.rows; ++i)
        for (std::size_t j = 0; j < gx.cols; ++j) gx.at(i, j) += dy.at(i, off + j);
      off += gx.cols;
    }
  };
  return out;
}

Tape::Var Tape::gather_rows(Var x, std::vector<std::size_t> idx) {
  const Mat& xv = val(x);
  Mat y(idx.size(), xv.cols);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < xv.cols; ++j) y.at(i, j) = xv.at(idx[i], j);
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, idx = std::move(idx), out]() {
    const Mat& dy = g(out);
    Mat& gx = g(x);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < dy.cols; ++j) gx.at(idx[i], j) += dy.at(i, j);
  };
  return out;
}

Tape::Var Tape::row(Var x, std::size_t i) { return gather_rows(x, {i}); }

Tape::Var Tape::outer_add(Var u, Var v) {
  const Mat& uv = val(u);
  const Mat& vv = val(v);
  assert(uv.cols == 1 && vv.cols == 1);
  Mat y(uv.rows, vv.rows);
  for (std::size_t i = 0; i < uv.rows; ++i)
    for (std::size_t j = 0; j < vv.rows; ++j) y.at(i, j) = uv.d[i] + vv.d[j];
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, u, v, out]() {
    const Mat& dy = g(out);
    Mat& gu = g(u);
    Mat& gv = g(v);
    for (std::size_t i = 0; i < dy.rows; ++i)
      for (std::size_t j = 0; j < dy.cols; ++j) {
        gu.d[i] += dy.at(i, j);
        gv.d[j] += dy.at(i, j);
      }
  };
  return out;
}

Tape::Var Tape::relu(Var x) {
  Mat y = val(x);
  for (double& v : y.d) v = v > 0.0 ? v : 0.0;
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, out]() {
    const Mat& dy = g(out);
    const Mat& xv = val(x);
    Mat& gx = g(x);
    for (std::size_t i = 0; i < dy.size(); ++i)
      if (xv.d[i] > 0.0) gx.d[i] += dy.d[i];
  };
  return out;
}

Tape::Var Tape::leaky_relu(Var x, double slope) {
  Mat y = val(x);
  for (double& v : y.d) v = v > 0.0 ? v : slope * v;
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, slope, out]() {
    const Mat& dy = g(out);
    const Mat& xv = val(x);
    Mat& gx = g(x);
    for (std::size_t i = 0; i < dy.size(); ++i)
      gx.d[i] += dy.d[i] * (xv.d[i] > 0.0 ? 1.0 : slope);
  };
  return out;
}

Tape::Var Tape::gelu(Var x) {
  // Exact erf formulation: g(x) = x * Phi(x).
  Mat y = val(x);
  for (double& v : y.d) v = v * 0.5 * (1.0 + std::erf(v * kInvSqrt2));
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, out]() {
    const Mat& dy = g(out);
    const Mat& xv = val(x);
    Mat& gx = g(x);
    for (std::size_t i = 0; i < dy.size(); ++i) {
      const double v = xv.d[i];
      const double phi = 0.5 * (1.0 + std::erf(v * kInvSqrt2));
      const double pdf = kInvSqrt2Pi * std::exp(-0.5 * v * v);
      gx.d[i] += dy.d[i] * (phi + v * pdf);
    }
  };
  return out;
}

Tape::Var Tape::masked_softmax_rows(Var logits, std::vector<unsigned char> mask) {
  const Mat& lv = val(logits);
  assert(mask.size() == lv.size());
  Mat y(lv.rows, lv.cols);
  kern::softmax_rows_masked(lv.d.data(), mask.data(), lv.rows, lv.cols, y.d.data());
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, logits, mask = std::move(mask), out]() {
    const Mat& p = val(out);
    const Mat& dp = g(out);
    Mat& gl = g(logits);
    for (std::size_t i = 0; i < p.rows; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < p.cols; ++j) s += dp.at(i, j) * p.at(i, j);
      for (std::size_t j = 0; j < p.cols; ++j) {
        if (mask[i * p.cols + j])
          gl.at(i, j) += p.at(i, j) * (dp.at(i, j) - s);
      }
    }
  };
  return out;
}

Tape::Var Tape::softmax_vec(Var x) {
  const Mat& xv = val(x);
  assert(xv.rows == 1);
  std::vector<unsigned char> mask(xv.cols, 1);
  return masked_softmax_rows(x, std::move(mask));
}

Tape::Var Tape::log_softmax_vec(Var x) {
  const Mat& xv = val(x);
  assert(xv.rows == 1);
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : xv.d) mx = std::max(mx, v);
  double z = 0.0;
  for (double v : xv.d) z += std::exp(v - mx);
  const double lse = mx + std::log(z);
  Mat y(1, xv.cols);
  for (std::size_t j = 0; j < xv.cols; ++j) y.d[j] = xv.d[j] - lse;
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, out]() {
    const Mat& dy = g(out);
    const Mat& ly = val(out);
    Mat& gx = g(x);
    double s = 0.0;
    for (double v : dy.d) s += v;
    for (std::size_t j = 0; j < dy.size(); ++j) gx.d[j] += dy.d[j] - std::exp(ly.d[j]) * s;
  };
  return out;
}

Tape::Var Tape::layer_norm_rows(Var x, double eps) {
  const Mat& xv = val(x);
  Mat y(xv.rows, xv.cols);
  Mat inv_sd(xv.rows, 1);
  const double n = static_cast<double>(xv.cols);
  for (std::size_t i = 0; i < xv.rows; ++i) {
    double mu = 0.0;
    for (std::size_t j = 0; j < xv.cols; ++j) mu += xv.at(i, j);
    mu /= n;
    double var = 0.0;
    for (std::size_t j = 0; j < xv.cols; ++j) {
      const double c = xv.at(i, j) - mu;
      var += c * c;
    }
    var /= n;
    const double is = 1.0 / std::sqrt(var + eps);
    inv_sd.d[i] = is;
    for (std::size_t j = 0; j < xv.cols; ++j) y.at(i, j) = (xv.at(i, j) - mu) * is;
  }
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, out, inv_sd = std::move(inv_sd)]() {
    const Mat& dy = g(out);
    const Mat& yv = val(out);
    Mat& gx = g(x);
    const double n = static_cast<double>(dy.cols);
    for (std::size_t i = 0; i < dy.rows; ++i) {
      double mdy = 0.0, mdyy = 0.0;
      for (std::size_t j = 0; j < dy.cols; ++j) {
        mdy += dy.at(i, j);
        mdyy += dy.at(i, j) * yv.at(i, j);
      }
      mdy /= n;
      mdyy /= n;
      const double is = inv_sd.d[i];
      for (std::size_t j = 0; j < dy.cols; ++j)
        gx.at(i, j) += is * (dy.at(i, j) - mdy - yv.at(i, j) * mdyy);
    }
  };
  return out;
}

Tape::Var Tape::spmm(const SpOp* s, Var x) {
  const Mat& xv = val(x);
  assert(s->s.cols == xv.rows);
  Mat y(s->s.rows, xv.cols);
  kern::csr_mm(s->s, xv.d.data(), xv.cols, y.d.data());
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, s, x, out]() {
    const Mat& dy = g(out);
    Mat dx(val(x).rows, dy.cols);
    kern::csr_mm(s->st, dy.d.data(), dy.cols, dx.d.data());
    Mat& gx = g(x);
    for (std::size_t i = 0; i < gx.size(); ++i) gx.d[i] += dx.d[i];
  };
  return out;
}

Tape::Var Tape::sum_all(Var x) {
  const Mat& xv = val(x);
  double s = 0.0;
  for (double v : xv.d) s += v;
  Mat y(1, 1);
  y.d[0] = s;
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, out]() {
    const double dy = g(out).d[0];
    Mat& gx = g(x);
    for (double& v : gx.d) v += dy;
  };
  return out;
}

Tape::Var Tape::sumsq(Var x) {
  const Mat& xv = val(x);
  double s = 0.0;
  for (double v : xv.d) s += v * v;
  Mat y(1, 1);
  y.d[0] = s;
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, out]() {
    const double dy = g(out).d[0];
    const Mat& xv = val(x);
    Mat& gx = g(x);
    for (std::size_t i = 0; i < xv.size(); ++i) gx.d[i] += 2.0 * xv.d[i] * dy;
  };
  return out;
}

Tape::Var Tape::colsum(Var x) {
  const Mat& xv = val(x);
  Mat y(1, xv.cols);
  for (std::size_t i = 0; i < xv.rows; ++i)
    for (std::size_t j = 0; j < xv.cols; ++j) y.d[j] += xv.at(i, j);
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, out]() {
    const Mat& dy = g(out);
    Mat& gx = g(x);
    for (std::size_t i = 0; i < gx.rows; ++i)
      for (std::size_t j = 0; j < gx.cols; ++j) gx.at(i, j) += dy.d[j];
  };
  return out;
}

Tape::Var Tape::transpose(Var x) {
  const Mat& xv = val(x);
  Mat y(xv.cols, xv.rows);
  for (std::size_t i = 0; i < xv.rows; ++i)
    for (std::size_t j = 0; j < xv.cols; ++j) y.at(j, i) = xv.at(i, j);
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, out]() {
    const Mat& dy = g(out);
    Mat& gx = g(x);
    for (std::size_t i = 0; i < gx.rows; ++i)
      for (std::size_t j = 0; j < gx.cols; ++j) gx.at(i, j) += dy.at(j, i);
  };
  return out;
}

Tape::Var Tape::slice_cols(Var x, std::size_t start, std::size_t len) {
  const Mat& xv = val(x);
  assert(start + len <= xv.cols);
  Mat y(xv.rows, len);
  for (std::size_t i = 0; i < xv.rows; ++i)
    for (std::size_t j = 0; j < len; ++j) y.at(i, j) = xv.at(i, start + j);
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, start, len, out]() {
    const Mat& dy = g(out);
    Mat& gx = g(x);
    for (std::size_t i = 0; i < gx.rows; ++i)
      for (std::size_t j = 0; j < len; ++j) gx.at(i, start + j) += dy.at(i, j);
  };
  return out;
}

Tape::Var Tape::dot(Var a, Var b) { return sum_all(hadamard(a, b)); }

Tape::Var Tape::pick(Var x, std::size_t i, std::size_t j) {
  Mat y(1, 1);
  y.d[0] = val(x).at(i, j);
  Var out = push(std::move(y), nullptr);
  nodes_[static_cast<std::size_t>(out.id)].back = [this, x, i, j, out]() {
    g(x).at(i, j) += g(out).d[0];
  };
  return out;
}

}  // namespace ddinet::ad
