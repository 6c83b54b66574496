// interp.hpp
//
// Static linear interpolation of backoff models. Weights are fitted by EM on
// a development corpus: E-step responsibilities, M-step means, uniform
// initialization. The objective is concave in the weights, so the fitted
// point is the global optimum up to the tolerance.

// Copyright 2026 The sublm authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBLM_INTERP_HPP
#define SUBLM_INTERP_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "sublm/corpus.hpp"
#include "sublm/error.hpp"
#include "sublm/scorer.hpp"

namespace sublm {

struct InterpolationWeights {
  std::vector<double> lambda;
  std::size_t iterations = 0;
  double final_dev_loglik = 0.0;  // total log10 likelihood of the dev set
  bool converged = false;
};

// A convex mixture of component models; each component evaluates the query
// with its own backoff and its own OOV mapping.
class InterpolatedModel {
 public:
  InterpolatedModel(std::vector<const Scorer*> components,
                    std::vector<double> lambda)
      : components_(std::move(components)), lambda_(std::move(lambda)) {
    if (components_.empty() || components_.size() != lambda_.size()) {
      throw InvariantViolation(
          "mixture needs one weight per component, at least one component");
    }
    double sum = 0.0;
    for (double l : lambda_) {
      if (!(l >= 0.0)) throw InvariantViolation("negative mixture weight");
      sum += l;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InvariantViolation("mixture weights sum to " +
                               std::to_string(sum) + ", expected 1");
    }
  }

  std::size_t size() const { return components_.size(); }
  const std::vector<double>& lambda() const { return lambda_; }
  const std::vector<const Scorer*>& components() const { return components_; }

  // log10 of sum_i lambda_i * P_i(word | context), computed with the max
  // trick over the components with nonzero weight so that a degenerate
  // weight vector like (1, 0) reproduces component 0 bit for bit.
  double log10_prob(const std::vector<std::string>& context,
                    std::string_view word) const {
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(components_.size(),
                              -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (lambda_[i] <= 0.0) continue;
      double t = std::log10(lambda_[i]) +
                 components_[i]->log10_prob_or_unk(context, word);
      terms[i] = t;
      if (t > max_term) max_term = t;
    }
    if (!std::isfinite(max_term)) return max_term;
    double acc = 0.0;
    for (double t : terms) {
      if (std::isfinite(t)) acc += std::pow(10.0, t - max_term);
    }
    // acc == 1 exactly when a single component carries all the weight
    return acc == 1.0 ? max_term : max_term + std::log10(acc);
  }

 private:
  std::vector<const Scorer*> components_;
  std::vector<double> lambda_;
};

inline double score(const InterpolatedModel& im,
                    const std::vector<std::string>& context,
                    std::string_view word) {
  return std::pow(10.0, im.log10_prob(context, word));
}

namespace detail {

// Linear-space probability of every scored dev event (each token plus </s>)
// under every component. matrix[j][i] = P_i(event_j).
inline std::vector<std::vector<double>> dev_event_probs(
    const std::vector<const Scorer*>& components,
    const NormalizedCorpus& dev) {
  std::vector<std::vector<double>> matrix;
  for (const auto& sentence : dev.sentences) {
    std::vector<std::string> context{std::string(kBos)};
    for (std::size_t j = 0; j <= sentence.size(); ++j) {
      std::string_view word = j < sentence.size()
                                  ? std::string_view(sentence[j])
                                  : std::string_view(kEos);
      std::vector<double> row(components.size());
      for (std::size_t i = 0; i < components.size(); ++i) {
        double lp = components[i]->log10_prob_or_unk(context, word);
        row[i] = std::isfinite(lp) ? std::pow(10.0, lp) : 0.0;
      }
      matrix.push_back(std::move(row));
      if (j < sentence.size()) context.push_back(sentence[j]);
    }
  }
  return matrix;
}

}  // namespace detail

// EM over the mixture weights. Dev log-likelihood is nondecreasing across
// iterations; iteration stops when the relative improvement drops below tol
// or after max_iters rounds.
inline InterpolationWeights fit_em(const std::vector<const Scorer*>& components,
                                   const NormalizedCorpus& dev,
                                   double tol = 1e-6,
                                   std::size_t max_iters = 200) {
  if (components.empty()) throw Error("need at least one component model");
  if (tol <= 0.0) throw Error("tolerance must be positive");
  if (dev.sentences.empty()) throw EmptyDevSet("development set is empty");

  const std::size_t m = components.size();
  InterpolationWeights w;
  w.lambda.assign(m, 1.0 / static_cast<double>(m));

  std::vector<std::vector<double>> probs =
      detail::dev_event_probs(components, dev);
  const std::size_t n = probs.size();

  for (const auto& row : probs) {
    bool any = false;
    for (double p : row) {
      if (p > 0.0) {
        any = true;
        break;
      }
    }
    if (!any) {
      throw AllZeroLikelihood(
          "a dev token has zero probability under every component; "
          "components appear to be closed-vocabulary");
    }
  }

  auto loglik = [&](const std::vector<double>& lambda) {
    double ll = 0.0;
    for (const auto& row : probs) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += lambda[i] * row[i];
      ll += std::log10(s);
    }
    return ll;
  };

  if (m == 1) {
    w.lambda = {1.0};
    w.final_dev_loglik = loglik(w.lambda);
    w.converged = true;
    return w;
  }

  double prev_ll = loglik(w.lambda);
  if (!std::isfinite(prev_ll)) {
    throw AllZeroLikelihood("dev log-likelihood is not finite under the "
                            "uniform mixture");
  }
  for (std::size_t iter = 1; iter <= max_iters; ++iter) {
    std::vector<double> resp(m, 0.0);
    for (const auto& row : probs) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += w.lambda[i] * row[i];
      for (std::size_t i = 0; i < m; ++i) {
        resp[i] += w.lambda[i] * row[i] / s;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      w.lambda[i] = resp[i] / static_cast<double>(n);
    }
    w.iterations = iter;
    double ll = loglik(w.lambda);
    double rel = std::abs(ll - prev_ll) /
                 std::max(std::abs(prev_ll),
                          std::numeric_limits<double>::min());
    prev_ll = ll;
    if (rel < tol) {
      w.converged = true;
      break;
    }
  }
  w.final_dev_loglik = prev_ll;
  return w;
}

// Weights report: one `name<TAB>lambda` line per component followed by the
// fit metadata.
inline std::string serialize_weights(const std::vector<std::string>& names,
                                     const InterpolationWeights& w) {
  if (names.size() != w.lambda.size()) {
    throw InvariantViolation("one name per fitted weight required");
  }
  char buf[64];
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.10f", w.lambda[i]);
    out += names[i];
    out.push_back('\t');
    out += buf;
    out.push_back('\n');
  }
  std::snprintf(buf, sizeof(buf), "%.6f", w.final_dev_loglik);
  out += "dev_log10_likelihood\t";
  out += buf;
  out.push_back('\n');
  out += "iterations\t" + std::to_string(w.iterations) + "\n";
  out += "converged\t" + std::string(w.converged ? "true" : "false") + "\n";
  return out;
}

}  // namespace sublm

#endif  // SUBLM_INTERP_HPP
