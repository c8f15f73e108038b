#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ddinet/mat.hpp"

namespace ddinet::ad {

/// Sparse operator bundled with its transpose so the backward pass of
/// Y = S X does not rebuild it per step.
struct SpOp {
  Csr s;
  Csr st;
  explicit SpOp(Csr m) : s(std::move(m)), st(s.transposed()) {}
  SpOp() = default;
};

/// Reverse-mode tape over dense double matrices. One tape per training
/// sample; tapes are independent objects so batch members can be processed
/// on different threads.
class Tape {
 public:
  struct Var {
    int id = -1;
    bool valid() const { return id >= 0; }
  };

  // -- inputs -------------------------------------------------------------
  Var constant(Mat v);
  /// External matrix with gradient tracking; `v` must outlive the tape pass.
  Var leaf(const Mat* v);

  const Mat& val(Var x) const {
    const Node& n = nodes_[static_cast<std::size_t>(x.id)];
    return n.external ? *n.external : n.value;
  }
  const Mat& grad(Var x) const { return nodes_[static_cast<std::size_t>(x.id)].grad; }

  // -- ops ----------------------------------------------------------------
  Var linear(Var x, Var w);  // X(n,in) * W(out,in)^T -> (n,out)
  Var matmul(Var a, Var b);  // A(n,k) * B(k,m) -> (n,m)
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var hadamard(Var a, Var b);
  Var scale(Var a, double c);
  Var concat_cols(const std::vector<Var>& xs);
  Var gather_rows(Var x, std::vector<std::size_t> idx);
  Var row(Var x, std::size_t i);
  Var outer_add(Var u, Var v);  // u(n,1), v(m,1) -> M(n,m), M_ij = u_i + v_j
  Var relu(Var x);
  Var leaky_relu(Var x, double slope);
  Var gelu(Var x);
  Var masked_softmax_rows(Var logits, std::vector<unsigned char> mask);
  Var softmax_vec(Var x);      // x is (1,d)
  Var log_softmax_vec(Var x);  // x is (1,d)
  Var layer_norm_rows(Var x, double eps = 1e-6);
  Var spmm(const SpOp* s, Var x);
  Var sum_all(Var x);   // (1,1)
  Var sumsq(Var x);     // (1,1)
  Var colsum(Var x);    // (n,m) -> (1,m)
  Var transpose(Var x);
  Var slice_cols(Var x, std::size_t start, std::size_t len);
  Var dot(Var a, Var b);  // sum(a .* b) -> (1,1)
  Var pick(Var x, std::size_t i, std::size_t j);  // element as (1,1)

  /// Seeds d(loss)=1 and runs the recorded closures in reverse order.
  void backward(Var loss);
  /// Seeds an arbitrary output gradient and backpropagates.
  void backward_from(Var out, const Mat& out_grad);

  void clear();
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Mat value;                    // owned storage for op outputs
    const Mat* external = nullptr;  // set for leaves only
    Mat grad;
    std::function<void()> back;
  };

  Var push(Mat value, std::function<void()> back);
  Mat& g(Var x) { return nodes_[static_cast<std::size_t>(x.id)].grad; }

  std::vector<Node> nodes_;
};

using Var = Tape::Var;

}  // namespace ddinet::ad
