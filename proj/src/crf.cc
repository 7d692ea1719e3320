// src/crf.cc

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

#include "wcnslu/crf.h"

#include <cmath>
#include <limits>

#include "wcnslu/error.h"
#include "wcnslu/nn/ops.h"

namespace wcnslu {

using nn::Tensor;

namespace {

void CheckShapes(const Tensor& emissions, const CrfParams& crf) {
  const size_t K = crf.tag_count();
  if (emissions.rows() == 0 || emissions.size() == 0) {
    throw ShapeError("CRF needs at least one time step");
  }
  if (emissions.cols() != K || crf.stop.size() != K || crf.transitions.rows() != K ||
      crf.transitions.cols() != K) {
    throw ShapeError("CRF emissions " + emissions.ShapeString() + " vs " + std::to_string(K) +
                     " tags");
  }
}

// alpha[t][k]: log-sum of scores of prefixes ending in tag k at step t.
std::vector<std::vector<double>> ForwardTable(const Tensor& em, const CrfParams& crf) {
  const size_t T = em.rows(), K = crf.tag_count();
  std::vector<std::vector<double>> alpha(T, std::vector<double>(K));
  for (size_t k = 0; k < K; ++k) alpha[0][k] = crf.start[k] + em(0, k);
  std::vector<double> buf(K);
  for (size_t t = 1; t < T; ++t) {
    for (size_t j = 0; j < K; ++j) {
      for (size_t i = 0; i < K; ++i) buf[i] = alpha[t - 1][i] + crf.transitions(i, j);
      alpha[t][j] = nn::LogSumExp(buf) + em(t, j);
    }
  }
  return alpha;
}

std::vector<std::vector<double>> BackwardTable(const Tensor& em, const CrfParams& crf) {
  const size_t T = em.rows(), K = crf.tag_count();
  std::vector<std::vector<double>> beta(T, std::vector<double>(K));
  for (size_t k = 0; k < K; ++k) beta[T - 1][k] = crf.stop[k];
  std::vector<double> buf(K);
  for (size_t t = T - 1; t-- > 0;) {
    for (size_t i = 0; i < K; ++i) {
      for (size_t j = 0; j < K; ++j) buf[j] = crf.transitions(i, j) + em(t + 1, j) + beta[t + 1][j];
      beta[t][i] = nn::LogSumExp(buf);
    }
  }
  return beta;
}

double PartitionFromAlpha(const std::vector<std::vector<double>>& alpha, const CrfParams& crf) {
  const size_t K = crf.tag_count();
  std::vector<double> last(K);
  for (size_t k = 0; k < K; ++k) last[k] = alpha.back()[k] + crf.stop[k];
  return nn::LogSumExp(last);
}

}  // namespace

double CrfPathScore(const Tensor& emissions, const CrfParams& crf, std::span<const int> tags) {
  CheckShapes(emissions, crf);
  if (tags.size() != emissions.rows()) throw ShapeError("CRF path length mismatch");
  double s = crf.start[tags[0]] + crf.stop[tags.back()];
  for (size_t t = 0; t < tags.size(); ++t) {
    s += emissions(t, tags[t]);
    if (t > 0) s += crf.transitions(tags[t - 1], tags[t]);
  }
  return s;
}

double CrfLogPartition(const Tensor& emissions, const CrfParams& crf) {
  CheckShapes(emissions, crf);
  return PartitionFromAlpha(ForwardTable(emissions, crf), crf);
}

ViterbiPath CrfViterbi(const Tensor& emissions, const CrfParams& crf) {
  CheckShapes(emissions, crf);
  const size_t T = emissions.rows(), K = crf.tag_count();
  std::vector<std::vector<double>> delta(T, std::vector<double>(K));
  std::vector<std::vector<int>> back(T, std::vector<int>(K, 0));
  for (size_t k = 0; k < K; ++k) delta[0][k] = crf.start[k] + emissions(0, k);
  for (size_t t = 1; t < T; ++t) {
    for (size_t j = 0; j < K; ++j) {
      double best = -std::numeric_limits<double>::infinity();
      int arg = 0;
      for (size_t i = 0; i < K; ++i) {
        double s = delta[t - 1][i] + crf.transitions(i, j);
        if (s > best) {
          best = s;
          arg = static_cast<int>(i);
        }
      }
      delta[t][j] = best + emissions(t, j);
      back[t][j] = arg;
    }
  }
  ViterbiPath path;
  path.score = -std::numeric_limits<double>::infinity();
  int last = 0;
  for (size_t k = 0; k < K; ++k) {
    double s = delta[T - 1][k] + crf.stop[k];
    if (s > path.score) {
      path.score = s;
      last = static_cast<int>(k);
    }
  }
  path.tags.assign(T, 0);
  path.tags[T - 1] = last;
  for (size_t t = T - 1; t > 0; --t) path.tags[t - 1] = back[t][path.tags[t]];
  return path;
}

nn::Var CrfNegLogLikelihood(nn::Graph& g, nn::Var emissions, nn::Var transitions, nn::Var start,
                            nn::Var stop, std::vector<int> gold) {
  auto params = [&g, transitions, start, stop]() {
    CrfParams crf;
    crf.transitions = g.value(transitions);
    auto s = g.value(start).values();
    auto e = g.value(stop).values();
    crf.start.assign(s.begin(), s.end());
    crf.stop.assign(e.begin(), e.end());
    return crf;
  };
  CrfParams crf = params();
  const Tensor& em = g.value(emissions);
  CheckShapes(em, crf);
  if (gold.size() != em.rows()) throw ShapeError("CRF gold length mismatch");
  for (int y : gold) {
    if (y < 0 || static_cast<size_t>(y) >= crf.tag_count()) throw ShapeError("CRF gold tag out of range");
  }
  double nll = CrfLogPartition(em, crf) - CrfPathScore(em, crf, gold);

  return g.Node(
      Tensor::Scalar(nll), {emissions, transitions, start, stop},
      [emissions, transitions, start, stop, gold = std::move(gold), params](nn::Graph& g,
                                                                           const Tensor& dOut) {
        const CrfParams crf = params();
        const Tensor& em = g.value(emissions);
        const size_t T = em.rows(), K = crf.tag_count();
        auto alpha = ForwardTable(em, crf);
        auto beta = BackwardTable(em, crf);
        const double logz = PartitionFromAlpha(alpha, crf);
        const double scale = dOut[0];

        if (g.needs_grad(emissions)) {
          Tensor& dE = g.grad(emissions);
          for (size_t t = 0; t < T; ++t) {
            for (size_t k = 0; k < K; ++k) {
              dE(t, k) += scale * std::exp(alpha[t][k] + beta[t][k] - logz);
            }
            dE(t, gold[t]) -= scale;
          }
        }
        if (g.needs_grad(transitions)) {
          Tensor& dT = g.grad(transitions);
          for (size_t t = 1; t < T; ++t) {
            for (size_t i = 0; i < K; ++i) {
              for (size_t j = 0; j < K; ++j) {
                double lp = alpha[t - 1][i] + crf.transitions(i, j) + em(t, j) + beta[t][j] - logz;
                dT(i, j) += scale * std::exp(lp);
              }
            }
            dT(gold[t - 1], gold[t]) -= scale;
          }
        }
        if (g.needs_grad(start)) {
          Tensor& dS = g.grad(start);
          for (size_t k = 0; k < K; ++k) dS[k] += scale * std::exp(alpha[0][k] + beta[0][k] - logz);
          dS[gold[0]] -= scale;
        }
        if (g.needs_grad(stop)) {
          Tensor& dS = g.grad(stop);
          for (size_t k = 0; k < K; ++k) {
            dS[k] += scale * std::exp(alpha[T - 1][k] + beta[T - 1][k] - logz);
          }
          dS[gold[T - 1]] -= scale;
        }
      });
}

}  // namespace wcnslu
