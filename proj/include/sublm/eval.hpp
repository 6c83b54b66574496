// eval.hpp
//
// Perplexity over normalized corpora (single models or mixtures) and word
// error rate between token sequences.

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

#ifndef SUBLM_EVAL_HPP
#define SUBLM_EVAL_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "sublm/corpus.hpp"
#include "sublm/error.hpp"
#include "sublm/interp.hpp"
#include "sublm/scorer.hpp"

namespace sublm {

struct SentenceScore {
  double log10_prob = 0.0;
  std::size_t tokens = 0;  // scored events in this sentence
  std::size_t oov = 0;
};

struct EvalReport {
  std::size_t token_count = 0;  // all events seen (tokens plus </s> each)
  std::size_t oov_count = 0;
  std::size_t scored_count = 0;  // differs from token_count when OOVs skipped
  double log10_prob_total = 0.0;
  double perplexity = 0.0;
  std::vector<SentenceScore> per_sentence;
};

struct PerplexityOptions {
  // Default scores OOV tokens through <unk> (open vocabulary); skipping is
  // offered because external toolkits differ.
  bool skip_oov = false;
};

namespace detail {

// Walks the corpus sentence by sentence, scoring each token and the </s>
// event; <s> is context only. `lp` maps (context, word) to log10 prob;
// `is_oov` decides what the report counts as out of vocabulary.
template <typename LpFn, typename OovFn>
EvalReport score_corpus(const NormalizedCorpus& corpus, LpFn&& lp,
                        OovFn&& is_oov, const PerplexityOptions& opts) {
  if (corpus.sentences.empty()) {
    throw EmptyCorpus("nothing to evaluate: corpus has no sentences");
  }
  EvalReport report;
  for (const auto& sentence : corpus.sentences) {
    SentenceScore ss;
    std::vector<std::string> context{std::string(kBos)};
    for (std::size_t j = 0; j <= sentence.size(); ++j) {
      std::string_view word = j < sentence.size()
                                  ? std::string_view(sentence[j])
                                  : std::string_view(kEos);
      ++report.token_count;
      bool oov = is_oov(word);
      if (oov) {
        ++report.oov_count;
        ++ss.oov;
      }
      if (!(oov && opts.skip_oov)) {
        ss.log10_prob += lp(context, word);
        ++ss.tokens;
      }
      if (j < sentence.size()) context.push_back(sentence[j]);
    }
    report.log10_prob_total += ss.log10_prob;
    report.scored_count += ss.tokens;
    report.per_sentence.push_back(std::move(ss));
  }
  if (report.scored_count == 0) {
    throw EmptyCorpus("no tokens left to score after OOV skipping");
  }
  report.perplexity = std::pow(
      10.0, -report.log10_prob_total / static_cast<double>(report.scored_count));
  return report;
}

}  // namespace detail

inline EvalReport perplexity(const Scorer& model,
                             const NormalizedCorpus& corpus,
                             const PerplexityOptions& opts = {}) {
  return detail::score_corpus(
      corpus,
      [&](const std::vector<std::string>& ctx, std::string_view w) {
        return model.log10_prob_or_unk(ctx, w);
      },
      [&](std::string_view w) { return !model.in_vocab(w); }, opts);
}

inline EvalReport perplexity(const InterpolatedModel& mixture,
                             const NormalizedCorpus& corpus,
                             const PerplexityOptions& opts = {}) {
  return detail::score_corpus(
      corpus,
      [&](const std::vector<std::string>& ctx, std::string_view w) {
        return mixture.log10_prob(ctx, w);
      },
      [&](std::string_view w) {
        // counted as OOV only when unknown to every component
        for (const Scorer* c : mixture.components()) {
          if (c->in_vocab(w)) return false;
        }
        return true;
      },
      opts);
}

struct WerReport {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t ref_len = 0;
  double wer = 0.0;  // may exceed 1.0 for insertion-heavy hypotheses

  std::size_t errors() const { return substitutions + insertions + deletions; }
};

// Levenshtein alignment with unit costs. The backtrace resolves cost ties by
// preferring substitution over insertion over deletion, so reports are
// deterministic.
inline WerReport wer(const std::vector<std::string>& reference,
                     const std::vector<std::string>& hypothesis) {
  if (reference.empty()) {
    throw EmptyReference("reference transcript is empty");
  }
  const std::size_t r = reference.size();
  const std::size_t h = hypothesis.size();

  std::vector<std::vector<std::size_t>> d(r + 1,
                                          std::vector<std::size_t>(h + 1, 0));
  for (std::size_t i = 1; i <= r; ++i) d[i][0] = i;
  for (std::size_t j = 1; j <= h; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= r; ++i) {
    for (std::size_t j = 1; j <= h; ++j) {
      std::size_t sub =
          d[i - 1][j - 1] + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      std::size_t ins = d[i][j - 1] + 1;
      std::size_t del = d[i - 1][j] + 1;
      d[i][j] = std::min(sub, std::min(ins, del));
    }
  }

  WerReport report;
  report.ref_len = r;
  std::size_t i = r;
  std::size_t j = h;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        d[i][j] == d[i - 1][j - 1] +
                       (reference[i - 1] == hypothesis[j - 1] ? 0 : 1)) {
      if (reference[i - 1] != hypothesis[j - 1]) ++report.substitutions;
      --i;
      --j;
    } else if (j > 0 && d[i][j] == d[i][j - 1] + 1) {
      ++report.insertions;
      --j;
    } else {
      ++report.deletions;
      --i;
    }
  }
  report.wer = static_cast<double>(report.errors()) / static_cast<double>(r);
  return report;
}

// Structured `metric<TAB>value` report bodies.
inline std::string serialize_eval_report(const EvalReport& report) {
  char buf[64];
  std::string out;
  out += "token_count\t" + std::to_string(report.token_count) + "\n";
  out += "oov_count\t" + std::to_string(report.oov_count) + "\n";
  out += "scored_count\t" + std::to_string(report.scored_count) + "\n";
  std::snprintf(buf, sizeof(buf), "%.6f", report.log10_prob_total);
  out += "log10_prob_total\t";
  out += buf;
  out.push_back('\n');
  std::snprintf(buf, sizeof(buf), "%.6f", report.perplexity);
  out += "perplexity\t";
  out += buf;
  out.push_back('\n');
  return out;
}

inline std::string serialize_wer_report(const WerReport& report) {
  char buf[64];
  std::string out;
  out += "ref_len\t" + std::to_string(report.ref_len) + "\n";
  out += "substitutions\t" + std::to_string(report.substitutions) + "\n";
  out += "insertions\t" + std::to_string(report.insertions) + "\n";
  out += "deletions\t" + std::to_string(report.deletions) + "\n";
  out += "errors\t" + std::to_string(report.errors()) + "\n";
  std::snprintf(buf, sizeof(buf), "%.6f", report.wer);
  out += "wer\t";
  out += buf;
  out.push_back('\n');
  return out;
}

}  // namespace sublm

#endif  // SUBLM_EVAL_HPP
