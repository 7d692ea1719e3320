// src/nn/ops.cc

// Copyright 2026  The wcnslu Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "wcnslu/nn/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wcnslu/error.h"

namespace wcnslu::nn {

namespace {

void Expect(bool ok, const char* op, const Tensor& a, const Tensor& b) {
  if (!ok) {
    throw ShapeError(std::string(op) + ": incompatible shapes " + a.ShapeString() + " and " +
                     b.ShapeString());
  }
}

Tensor Matrix(size_t rows, size_t cols) { return Tensor(rows, cols); }

}  // namespace

double LogSumExp(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : x) s += std::exp(v - m);
  return m + std::log(s);
}

std::vector<double> Softmax(std::span<const double> x) {
  double lse = LogSumExp(x);
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = std::exp(x[i] - lse);
  return out;
}

CrossEntropy SoftmaxCrossEntropy(std::span<const double> logits, int target) {
  if (target < 0 || static_cast<size_t>(target) >= logits.size()) {
    throw ShapeError("cross-entropy target " + std::to_string(target) + " outside [0, " +
                     std::to_string(logits.size()) + ")");
  }
  CrossEntropy ce;
  double lse = LogSumExp(logits);
  ce.loss = lse - logits[target];
  ce.grad.resize(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) ce.grad[i] = std::exp(logits[i] - lse);
  ce.grad[target] -= 1.0;
  return ce;
}

Var MatMul(Graph& g, Var a, Var b) {
  const Tensor& A = g.value(a);
  const Tensor& B = g.value(b);
  Expect(A.cols() == B.rows(), "MatMul", A, B);
  const size_t m = A.rows(), k = A.cols(), n = B.cols();
  Tensor C = Matrix(m, n);
  for (size_t i = 0; i < m; ++i) {
    for (size_t p = 0; p < k; ++p) {
      const double av = A(i, p);
      for (size_t j = 0; j < n; ++j) C(i, j) += av * B(p, j);
    }
  }
  return g.Node(std::move(C), {a, b}, [a, b, m, k, n](Graph& g, const Tensor& dC) {
    const Tensor& A = g.value(a);
    const Tensor& B = g.value(b);
    if (g.needs_grad(a)) {
      Tensor& dA = g.grad(a);
      for (size_t i = 0; i < m; ++i) {
        for (size_t p = 0; p < k; ++p) {
          double s = 0.0;
          for (size_t j = 0; j < n; ++j) s += dC(i, j) * B(p, j);
          dA(i, p) += s;
        }
      }
    }
    if (g.needs_grad(b)) {
      Tensor& dB = g.grad(b);
      for (size_t i = 0; i < m; ++i) {
        for (size_t p = 0; p < k; ++p) {
          const double av = A(i, p);
          for (size_t j = 0; j < n; ++j) dB(p, j) += av * dC(i, j);
        }
      }
    }
  });
}

Var MatMulNT(Graph& g, Var a, Var b) {
  const Tensor& A = g.value(a);
  const Tensor& B = g.value(b);
  Expect(A.cols() == B.cols(), "MatMulNT", A, B);
  const size_t m = A.rows(), k = A.cols(), n = B.rows();
  Tensor C = Matrix(m, n);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (size_t p = 0; p < k; ++p) s += A(i, p) * B(j, p);
      C(i, j) = s;
    }
  }
  return g.Node(std::move(C), {a, b}, [a, b, m, k, n](Graph& g, const Tensor& dC) {
    const Tensor& A = g.value(a);
    const Tensor& B = g.value(b);
    if (g.needs_grad(a)) {
      Tensor& dA = g.grad(a);
      for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) {
          const double d = dC(i, j);
          for (size_t p = 0; p < k; ++p) dA(i, p) += d * B(j, p);
        }
      }
    }
    if (g.needs_grad(b)) {
      Tensor& dB = g.grad(b);
      for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) {
          const double d = dC(i, j);
          for (size_t p = 0; p < k; ++p) dB(j, p) += d * A(i, p);
        }
      }
    }
  });
}

Var Linear(Graph& g, Var x, Var w, Var b) {
  const Tensor& X = g.value(x);
  const Tensor& W = g.value(w);
  Expect(X.cols() == W.cols() && W.rank() == 2, "Linear", X, W);
  const size_t m = X.rows(), in = X.cols(), out = W.rows();
  if (b.valid()) Expect(g.value(b).size() == out, "Linear(bias)", W, g.value(b));
  Tensor Y = Matrix(m, out);
  for (size_t i = 0; i < m; ++i) {
    const double* xr = &X.values()[i * in];
    for (size_t o = 0; o < out; ++o) {
      const double* wr = &W.values()[o * in];
      double s = b.valid() ? g.value(b)[o] : 0.0;
      for (size_t p = 0; p < in; ++p) s += xr[p] * wr[p];
      Y(i, o) = s;
    }
  }
  return g.Node(std::move(Y), {x, w, b}, [x, w, b, m, in, out](Graph& g, const Tensor& dY) {
    const Tensor& X = g.value(x);
    const Tensor& W = g.value(w);
    if (g.needs_grad(x)) {
      Tensor& dX = g.grad(x);
      for (size_t i = 0; i < m; ++i) {
        double* dxr = &dX.values()[i * in];
        for (size_t o = 0; o < out; ++o) {
          const double d = dY(i, o);
          if (d == 0.0) continue;
          const double* wr = &W.values()[o * in];
          for (size_t p = 0; p < in; ++p) dxr[p] += d * wr[p];
        }
      }
    }
    if (g.needs_grad(w)) {
      Tensor& dW = g.grad(w);
      for (size_t i = 0; i < m; ++i) {
        const double* xr = &X.values()[i * in];
        for (size_t o = 0; o < out; ++o) {
          const double d = dY(i, o);
          if (d == 0.0) continue;
          double* dwr = &dW.values()[o * in];
          for (size_t p = 0; p < in; ++p) dwr[p] += d * xr[p];
        }
      }
    }
    if (b.valid() && g.needs_grad(b)) {
      Tensor& dB = g.grad(b);
      for (size_t i = 0; i < m; ++i) {
        for (size_t o = 0; o < out; ++o) dB[o] += dY(i, o);
      }
    }
  });
}

Var Add(Graph& g, Var a, Var b) {
  const Tensor& A = g.value(a);
  const Tensor& B = g.value(b);
  Expect(A.size() == B.size() && A.cols() == B.cols(), "Add", A, B);
  Tensor C = A;
  C.Accumulate(B);
  return g.Node(std::move(C), {a, b}, [a, b](Graph& g, const Tensor& dC) {
    if (g.needs_grad(a)) g.grad(a).Accumulate(dC);
    if (g.needs_grad(b)) g.grad(b).Accumulate(dC);
  });
}

Var AddRow(Graph& g, Var a, Var row) {
  const Tensor& A = g.value(a);
  const Tensor& R = g.value(row);
  Expect(R.size() == A.cols(), "AddRow", A, R);
  Tensor C = A;
  const size_t m = A.rows(), n = A.cols();
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) C(i, j) += R[j];
  }
  return g.Node(std::move(C), {a, row}, [a, row, m, n](Graph& g, const Tensor& dC) {
    if (g.needs_grad(a)) g.grad(a).Accumulate(dC);
    if (g.needs_grad(row)) {
      Tensor& dR = g.grad(row);
      for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) dR[j] += dC(i, j);
      }
    }
  });
}

Var Mul(Graph& g, Var a, Var b) {
  const Tensor& A = g.value(a);
  const Tensor& B = g.value(b);
  Expect(A.size() == B.size(), "Mul", A, B);
  Tensor C = A;
  for (size_t i = 0; i < C.size(); ++i) C[i] *= B[i];
  return g.Node(std::move(C), {a, b}, [a, b](Graph& g, const Tensor& dC) {
    const Tensor& A = g.value(a);
    const Tensor& B = g.value(b);
    if (g.needs_grad(a)) {
      Tensor& dA = g.grad(a);
      for (size_t i = 0; i < dC.size(); ++i) dA[i] += dC[i] * B[i];
    }
    if (g.needs_grad(b)) {
      Tensor& dB = g.grad(b);
      for (size_t i = 0; i < dC.size(); ++i) dB[i] += dC[i] * A[i];
    }
  });
}

Var Scale(Graph& g, Var a, double factor) {
  Tensor C = g.value(a);
  for (double& v : C.values()) v *= factor;
  return g.Node(std::move(C), {a}, [a, factor](Graph& g, const Tensor& dC) {
    Tensor& dA = g.grad(a);
    for (size_t i = 0; i < dC.size(); ++i) dA[i] += factor * dC[i];
  });
}

Var Sigmoid(Graph& g, Var a) {
  Tensor Y = g.value(a);
  for (double& v : Y.values()) v = 1.0 / (1.0 + std::exp(-v));
  Tensor saved = Y;
  return g.Node(std::move(Y), {a}, [a, saved = std::move(saved)](Graph& g, const Tensor& dY) {
    Tensor& dA = g.grad(a);
    for (size_t i = 0; i < dY.size(); ++i) dA[i] += dY[i] * saved[i] * (1.0 - saved[i]);
  });
}

Var Tanh(Graph& g, Var a) {
  Tensor Y = g.value(a);
  for (double& v : Y.values()) v = std::tanh(v);
  Tensor saved = Y;
  return g.Node(std::move(Y), {a}, [a, saved = std::move(saved)](Graph& g, const Tensor& dY) {
    Tensor& dA = g.grad(a);
    for (size_t i = 0; i < dY.size(); ++i) dA[i] += dY[i] * (1.0 - saved[i] * saved[i]);
  });
}

Var Relu(Graph& g, Var a) {
  Tensor Y = g.value(a);
  for (double& v : Y.values()) v = v > 0.0 ? v : 0.0;
  return g.Node(std::move(Y), {a}, [a](Graph& g, const Tensor& dY) {
    const Tensor& A = g.value(a);
    Tensor& dA = g.grad(a);
    for (size_t i = 0; i < dY.size(); ++i) {
      if (A[i] > 0.0) dA[i] += dY[i];
    }
  });
}

Var SliceCols(Graph& g, Var a, size_t start, size_t count) {
  const Tensor& A = g.value(a);
  if (start + count > A.cols()) {
    throw ShapeError("SliceCols [" + std::to_string(start) + ", +" + std::to_string(count) +
                     ") of " + A.ShapeString());
  }
  const size_t m = A.rows();
  Tensor C = Matrix(m, count);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < count; ++j) C(i, j) = A(i, start + j);
  }
  return g.Node(std::move(C), {a}, [a, start, count, m](Graph& g, const Tensor& dC) {
    Tensor& dA = g.grad(a);
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < count; ++j) dA(i, start + j) += dC(i, j);
    }
  });
}

Var SliceRows(Graph& g, Var a, size_t start, size_t count) {
  const Tensor& A = g.value(a);
  if (start + count > A.rows()) {
    throw ShapeError("SliceRows [" + std::to_string(start) + ", +" + std::to_string(count) +
                     ") of " + A.ShapeString());
  }
  const size_t n = A.cols();
  std::vector<double> vals(A.values().begin() + start * n,
                           A.values().begin() + (start + count) * n);
  Tensor C({count, n}, std::move(vals));
  return g.Node(std::move(C), {a}, [a, start, n](Graph& g, const Tensor& dC) {
    Tensor& dA = g.grad(a);
    for (size_t i = 0; i < dC.size(); ++i) dA[start * n + i] += dC[i];
  });
}

Var ConcatCols(Graph& g, const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeError("ConcatCols of nothing");
  const size_t m = g.value(parts[0]).rows();
  std::vector<size_t> offsets;
  size_t total = 0;
  for (Var p : parts) {
    Expect(g.value(p).rows() == m, "ConcatCols", g.value(parts[0]), g.value(p));
    offsets.push_back(total);
    total += g.value(p).cols();
  }
  Tensor C = Matrix(m, total);
  for (size_t k = 0; k < parts.size(); ++k) {
    const Tensor& P = g.value(parts[k]);
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < P.cols(); ++j) C(i, offsets[k] + j) = P(i, j);
    }
  }
  return g.Node(std::move(C), parts, [parts, offsets, m](Graph& g, const Tensor& dC) {
    for (size_t k = 0; k < parts.size(); ++k) {
      if (!g.needs_grad(parts[k])) continue;
      Tensor& dP = g.grad(parts[k]);
      const size_t n = dP.cols();
      for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) dP(i, j) += dC(i, offsets[k] + j);
      }
    }
  });
}

Var ConcatRows(Graph& g, const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeError("ConcatRows of nothing");
  const size_t n = g.value(parts[0]).cols();
  std::vector<double> vals;
  std::vector<size_t> offsets;
  for (Var p : parts) {
    const Tensor& P = g.value(p);
    Expect(P.cols() == n, "ConcatRows", g.value(parts[0]), P);
    offsets.push_back(vals.size());
    vals.insert(vals.end(), P.values().begin(), P.values().end());
  }
  const size_t rows = vals.size() / n;
  return g.Node(Tensor({rows, n}, std::move(vals)), parts,
                [parts, offsets](Graph& g, const Tensor& dC) {
                  for (size_t k = 0; k < parts.size(); ++k) {
                    if (!g.needs_grad(parts[k])) continue;
                    Tensor& dP = g.grad(parts[k]);
                    for (size_t i = 0; i < dP.size(); ++i) dP[i] += dC[offsets[k] + i];
                  }
                });
}

Var Gather(Graph& g, Var table, std::vector<int> ids) {
  const Tensor& T = g.value(table);
  const size_t d = T.cols();
  Tensor C = Matrix(ids.size(), d);
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || static_cast<size_t>(ids[i]) >= T.rows()) {
      throw ShapeError("Gather index " + std::to_string(ids[i]) + " outside table " +
                       T.ShapeString());
    }
    std::copy_n(T.row(ids[i]).begin(), d, C.row(i).begin());
  }
  return g.Node(std::move(C), {table}, [table, ids = std::move(ids), d](Graph& g, const Tensor& dC) {
    Tensor& dT = g.grad(table);
    for (size_t i = 0; i < ids.size(); ++i) {
      for (size_t j = 0; j < d; ++j) dT(ids[i], j) += dC(i, j);
    }
  });
}

Var Reshape(Graph& g, Var a, std::vector<size_t> shape) {
  Tensor C = g.value(a);
  C.Reshape(std::move(shape));
  return g.Node(std::move(C), {a}, [a](Graph& g, const Tensor& dC) {
    Tensor& dA = g.grad(a);
    for (size_t i = 0; i < dC.size(); ++i) dA[i] += dC[i];
  });
}

Var RepeatRows(Graph& g, Var row, size_t count) {
  const Tensor& R = g.value(row);
  const size_t n = R.size();
  Tensor C = Matrix(count, n);
  for (size_t i = 0; i < count; ++i) std::copy_n(R.values().begin(), n, C.row(i).begin());
  return g.Node(std::move(C), {row}, [row, count, n](Graph& g, const Tensor& dC) {
    Tensor& dR = g.grad(row);
    for (size_t i = 0; i < count; ++i) {
      for (size_t j = 0; j < n; ++j) dR[j] += dC(i, j);
    }
  });
}

Var RepeatEachRow(Graph& g, Var a, size_t count) {
  const Tensor& A = g.value(a);
  const size_t m = A.rows(), n = A.cols();
  Tensor C = Matrix(m * count, n);
  for (size_t i = 0; i < m; ++i) {
    for (size_t k = 0; k < count; ++k) std::copy_n(A.row(i).begin(), n, C.row(i * count + k).begin());
  }
  return g.Node(std::move(C), {a}, [a, m, n, count](Graph& g, const Tensor& dC) {
    Tensor& dA = g.grad(a);
    for (size_t i = 0; i < m; ++i) {
      for (size_t k = 0; k < count; ++k) {
        for (size_t j = 0; j < n; ++j) dA(i, j) += dC(i * count + k, j);
      }
    }
  });
}

Var MeanRows(Graph& g, Var a) {
  const Tensor& A = g.value(a);
  const size_t m = A.rows(), n = A.cols();
  Tensor C = Matrix(1, n);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) C(0, j) += A(i, j);
  }
  for (double& v : C.values()) v /= static_cast<double>(m);
  return g.Node(std::move(C), {a}, [a, m, n](Graph& g, const Tensor& dC) {
    Tensor& dA = g.grad(a);
    const double inv = 1.0 / static_cast<double>(m);
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < n; ++j) dA(i, j) += dC[j] * inv;
    }
  });
}

Var SoftmaxRows(Graph& g, Var a) {
  Tensor Y = g.value(a);
  const size_t m = Y.rows(), n = Y.cols();
  for (size_t i = 0; i < m; ++i) {
    auto p = Softmax(Y.row(i));
    std::copy(p.begin(), p.end(), Y.row(i).begin());
  }
  Tensor saved = Y;
  return g.Node(std::move(Y), {a}, [a, m, n, saved = std::move(saved)](Graph& g, const Tensor& dY) {
    Tensor& dA = g.grad(a);
    for (size_t i = 0; i < m; ++i) {
      double dot = 0.0;
      for (size_t j = 0; j < n; ++j) dot += dY(i, j) * saved(i, j);
      for (size_t j = 0; j < n; ++j) dA(i, j) += saved(i, j) * (dY(i, j) - dot);
    }
  });
}

Var Sum(Graph& g, Var a) {
  double s = 0.0;
  for (double v : g.value(a).values()) s += v;
  return g.Node(Tensor::Scalar(s), {a}, [a](Graph& g, const Tensor& dC) {
    Tensor& dA = g.grad(a);
    for (double& v : dA.values()) v += dC[0];
  });
}

Var SoftmaxCrossEntropy(Graph& g, Var logits, std::vector<int> targets) {
  const Tensor& L = g.value(logits);
  const size_t m = L.rows(), k = L.cols();
  if (targets.size() != m) {
    throw ShapeError("cross-entropy: " + std::to_string(targets.size()) + " targets for " +
                     L.ShapeString() + " logits");
  }
  Tensor grad = Matrix(m, k);
  double total = 0.0;
  for (size_t i = 0; i < m; ++i) {
    if (targets[i] < 0) continue;
    CrossEntropy ce = SoftmaxCrossEntropy(L.row(i), targets[i]);
    total += ce.loss;
    std::copy(ce.grad.begin(), ce.grad.end(), grad.row(i).begin());
  }
  return g.Node(Tensor::Scalar(total), {logits},
                [logits, grad = std::move(grad)](Graph& g, const Tensor& dC) {
                  Tensor& dL = g.grad(logits);
                  for (size_t i = 0; i < grad.size(); ++i) dL[i] += dC[0] * grad[i];
                });
}

Var Unfold(Graph& g, Var a, size_t width) {
  if (width == 0) throw ShapeError("Unfold width must be >= 1");
  const Tensor& A = g.value(a);
  const size_t T = A.rows(), d = A.cols();
  const long left = static_cast<long>((width - 1) / 2);
  Tensor C = Matrix(T, width * d);
  for (size_t t = 0; t < T; ++t) {
    for (size_t k = 0; k < width; ++k) {
      long src = static_cast<long>(t) - left + static_cast<long>(k);
      if (src < 0 || src >= static_cast<long>(T)) continue;
      std::copy_n(A.row(src).begin(), d, C.row(t).begin() + k * d);
    }
  }
  return g.Node(std::move(C), {a}, [a, T, d, width, left](Graph& g, const Tensor& dC) {
    Tensor& dA = g.grad(a);
    for (size_t t = 0; t < T; ++t) {
      for (size_t k = 0; k < width; ++k) {
        long src = static_cast<long>(t) - left + static_cast<long>(k);
        if (src < 0 || src >= static_cast<long>(T)) continue;
        for (size_t j = 0; j < d; ++j) dA(src, j) += dC(t, k * d + j);
      }
    }
  });
}

Var WeightedSum(Graph& g, const std::vector<Var>& scalars, const std::vector<double>& weights) {
  if (scalars.size() != weights.size()) throw ShapeError("WeightedSum: weight count mismatch");
  double s = 0.0;
  for (size_t i = 0; i < scalars.size(); ++i) s += weights[i] * g.value(scalars[i])[0];
  return g.Node(Tensor::Scalar(s), scalars, [scalars, weights](Graph& g, const Tensor& dC) {
    for (size_t i = 0; i < scalars.size(); ++i) {
      if (g.needs_grad(scalars[i])) g.grad(scalars[i])[0] += weights[i] * dC[0];
    }
  });
}

}  // namespace wcnslu::nn
