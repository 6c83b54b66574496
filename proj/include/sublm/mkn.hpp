// mkn.hpp
//
// Interpolated modified Kneser-Ney estimation. The top order keeps raw
// counts; every lower order uses continuation counts (distinct left
// extensions), except that n-grams starting with <s> keep their raw counts
// because nothing can ever precede <s>. Three count-tiered discounts per
// order are derived from count-of-counts; the discounted leftover mass of a
// context becomes its backoff weight. The unigram level interpolates with a
// uniform distribution over the event vocabulary, which keeps every
// conditional distribution summing to exactly one and gives <unk> positive
// probability.

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

#ifndef SUBLM_MKN_HPP
#define SUBLM_MKN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sublm/arpa.hpp"
#include "sublm/counts.hpp"
#include "sublm/error.hpp"

namespace sublm {

struct CountOfCounts {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::uint64_t n3 = 0;
  std::uint64_t n4 = 0;
};

struct Discounts {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3plus = 0.0;
  CountOfCounts coc;

  double for_count(std::uint64_t c) const {
    if (c >= 3) return d3plus;
    if (c == 2) return d2;
    if (c == 1) return d1;
    return 0.0;
  }
};

struct DiscountSet {
  std::vector<Discounts> by_order;  // by_order[k-1]
};

struct ModelConfig {
  std::size_t order = 5;
  VocabPolicy vocab_policy;
  // Extra probability floor mixed into P(<unk>) at the unigram level;
  // 0 disables it and the leftover-mass share alone keeps <unk> positive.
  double unk_floor = 0.0;
};

namespace detail {

inline void tally_coc(std::uint64_t c, CountOfCounts* coc) {
  if (c == 1) ++coc->n1;
  else if (c == 2) ++coc->n2;
  else if (c == 3) ++coc->n3;
  else if (c == 4) ++coc->n4;
}

// Chen-Goodman closed-form discounts with the documented degenerate-count
// fallbacks: n2=0 pins D2 to D1, n3=0 or n4=0 pins D3+ to D2. With
// `lenient` false, n2=0 is an error instead.
inline Discounts derive_discounts(const CountOfCounts& coc, bool lenient,
                                  std::size_t order_for_message) {
  if (coc.n1 == 0 || (!lenient && coc.n2 == 0)) {
    std::string where = order_for_message
                            ? " at order " + std::to_string(order_for_message)
                            : "";
    throw InsufficientStatistics("count-of-counts too sparse" + where +
                                 " (n1=" + std::to_string(coc.n1) +
                                 ", n2=" + std::to_string(coc.n2) + ")");
  }
  auto clamp = [](double v, double hi) {
    return std::min(hi, std::max(0.0, v));
  };
  double n1 = static_cast<double>(coc.n1);
  double n2 = static_cast<double>(coc.n2);
  double n3 = static_cast<double>(coc.n3);
  double n4 = static_cast<double>(coc.n4);

  Discounts d;
  d.coc = coc;
  double y = n1 / (n1 + 2.0 * n2);
  d.d1 = clamp(1.0 - 2.0 * y * n2 / n1, 1.0);
  d.d2 = coc.n2 == 0 ? d.d1 : clamp(2.0 - 3.0 * y * n3 / n2, 2.0);
  d.d3plus = (coc.n3 == 0 || coc.n4 == 0)
                 ? d.d2
                 : clamp(3.0 - 4.0 * y * n4 / n3, 3.0);
  return d;
}

inline bool starts_with_bos(std::string_view key) {
  return key == kBos || key.substr(0, kBos.size() + 1) == "<s> ";
}

}  // namespace detail

inline Discounts compute_discounts(const CountOfCounts& coc) {
  return detail::derive_discounts(coc, /*lenient=*/false, 0);
}

// Count-of-counts over the raw table at order k; the <s> unigram is a
// non-event and stays out of the order-1 statistics.
inline CountOfCounts count_of_counts(const CountTable& table, std::size_t k) {
  CountOfCounts coc;
  for (const auto& [key, cnt] : table.grams(k)) {
    if (k == 1 && key == kBos) continue;
    detail::tally_coc(cnt, &coc);
  }
  return coc;
}

inline Discounts compute_discounts(const CountTable& table, std::size_t k) {
  return detail::derive_discounts(count_of_counts(table, k),
                                  /*lenient=*/false, k);
}

// Estimates the interpolated modified Kneser-Ney model. Throws
// InsufficientStatistics when an order has no singleton count (single-word
// corpora and similar degenerate inputs).
inline ArpaModel estimate(const CountTable& input, const ModelConfig& config,
                          DiscountSet* discounts_out = nullptr) {
  if (config.order < 1) throw Error("model order must be >= 1");
  if (input.order != config.order) {
    throw OrderMismatch("count table has order " + std::to_string(input.order) +
                        " but config wants " + std::to_string(config.order));
  }

  CountTable capped;
  const CountTable* tp = &input;
  if (config.vocab_policy.mode == VocabPolicy::Mode::kOpenCapped) {
    capped = limit_vocab(input, config.vocab_policy);
    tp = &capped;
  }
  const CountTable& t = *tp;
  const std::size_t N = t.order;
  if (t.grams(1).empty()) {
    throw InsufficientStatistics("empty count table");
  }

  // Adjusted counts: raw at the top order; below it, the number of distinct
  // left extensions in the next order up (a count of distinct keys, so the
  // raw and adjusted higher-order tables give the same answer). <s>-initial
  // n-grams keep raw counts. Every key of the raw table reappears: any
  // occurrence is either sentence-initial (covered by its <s> window) or has
  // a live left neighbor.
  std::vector<std::map<std::string, std::uint64_t>> adj(N);
  adj[N - 1] = t.grams(N);
  for (std::size_t k = N; k-- > 1;) {
    auto& out = adj[k - 1];
    for (const auto& kv : t.grams(k + 1)) {
      std::size_t sp = kv.first.find(' ');
      out[kv.first.substr(sp + 1)] += 1;
    }
    for (const auto& [key, cnt] : t.grams(k)) {
      if (detail::starts_with_bos(key)) out[key] = cnt;
    }
  }

  DiscountSet ds;
  ds.by_order.resize(N);
  for (std::size_t k = 1; k <= N; ++k) {
    CountOfCounts coc;
    for (const auto& [key, cnt] : adj[k - 1]) {
      if (k == 1 && key == kBos) continue;
      detail::tally_coc(cnt, &coc);
    }
    ds.by_order[k - 1] = detail::derive_discounts(coc, /*lenient=*/true, k);
  }
  if (discounts_out) *discounts_out = ds;

  // Unigram events: everything but <s>, plus <unk> whether or not it was
  // seen in training.
  std::vector<std::string> events;
  bool saw_unk = false;
  for (const auto& [key, cnt] : adj[0]) {
    if (key == kBos) continue;
    if (key == kUnk) saw_unk = true;
    events.push_back(key);
  }
  if (!saw_unk) events.push_back(std::string(kUnk));

  std::uint64_t denom1 = 0;
  for (const auto& [key, cnt] : adj[0]) {
    if (key != kBos) denom1 += cnt;
  }

  const Discounts& d1 = ds.by_order[0];
  std::uint64_t t1 = 0, t2 = 0, t3 = 0;
  for (const auto& [key, cnt] : adj[0]) {
    if (key == kBos) continue;
    if (cnt == 1) ++t1;
    else if (cnt == 2) ++t2;
    else ++t3;
  }
  double gamma1 =
      (d1.d1 * static_cast<double>(t1) + d1.d2 * static_cast<double>(t2) +
       d1.d3plus * static_cast<double>(t3)) /
      static_cast<double>(denom1);
  double uniform = 1.0 / static_cast<double>(events.size());

  std::vector<std::unordered_map<std::string, double>> prob(N);
  for (const std::string& w : events) {
    auto it = adj[0].find(w);
    std::uint64_t a = it == adj[0].end() ? 0 : it->second;
    double p = (a > 0 ? (static_cast<double>(a) - d1.for_count(a)) /
                            static_cast<double>(denom1)
                      : 0.0) +
               gamma1 * uniform;
    prob[0][w] = p;
  }
  if (config.unk_floor > 0.0) {
    double keep = 1.0 - config.unk_floor;
    for (auto& [w, p] : prob[0]) p *= keep;
    prob[0][std::string(kUnk)] += config.unk_floor;
  }

  // gammas[k-1]: leftover mass per stored (k-1)-token context of order-k
  // n-grams; becomes that context's backoff weight.
  std::vector<std::unordered_map<std::string, double>> gammas(N);

  for (std::size_t k = 2; k <= N; ++k) {
    const Discounts& dk = ds.by_order[k - 1];
    const auto& table_k = adj[k - 1];

    // The map is bytewise-sorted, so all keys sharing a context are
    // contiguous; process one context block at a time.
    auto it = table_k.begin();
    while (it != table_k.end()) {
      std::size_t ctx_len = it->first.rfind(' ');
      std::string context = it->first.substr(0, ctx_len);
      auto block_end = it;
      std::uint64_t denom = 0;
      std::uint64_t b1 = 0, b2 = 0, b3 = 0;
      while (block_end != table_k.end() &&
             block_end->first.size() > context.size() &&
             block_end->first.compare(0, context.size(), context) == 0 &&
             block_end->first[context.size()] == ' ' &&
             block_end->first.find(' ', context.size() + 1) ==
                 std::string::npos) {
        std::uint64_t c = block_end->second;
        denom += c;
        if (c == 1) ++b1;
        else if (c == 2) ++b2;
        else ++b3;
        ++block_end;
      }
      double gamma = (dk.d1 * static_cast<double>(b1) +
                      dk.d2 * static_cast<double>(b2) +
                      dk.d3plus * static_cast<double>(b3)) /
                     static_cast<double>(denom);
      gammas[k - 1][context] = gamma;

      for (auto e = it; e != block_end; ++e) {
        // lower-order conditional: drop the first context token; the
        // resulting (k-1)-gram is always stored (suffix closure)
        std::string lower_key = e->first.substr(e->first.find(' ') + 1);
        auto lo = prob[k - 2].find(lower_key);
        if (lo == prob[k - 2].end()) {
          throw InvariantViolation("missing lower-order n-gram '" +
                                   lower_key + "'");
        }
        std::uint64_t c = e->second;
        double p = (static_cast<double>(c) - dk.for_count(c)) /
                       static_cast<double>(denom) +
                   gamma * lo->second;
        prob[k - 1][e->first] = p;
      }
      it = block_end;
    }
  }

  // Assemble the ARPA sections. log10 conversion happens only here.
  auto log_or_marker = [](double v) {
    return v > 0.0 ? std::log10(v) : kNonEventLogProb;
  };

  ArpaModel model;
  model.order = N;
  model.entries.resize(N);

  auto backoff_for = [&](std::size_t k, const std::string& key)
      -> std::optional<double> {
    if (k >= N) return std::nullopt;
    auto g = gammas[k].find(key);
    if (g == gammas[k].end()) return std::nullopt;
    return log_or_marker(g->second);
  };

  {
    ArpaEntry bos;
    bos.logprob = kNonEventLogProb;
    bos.ngram = std::string(kBos);
    bos.backoff = backoff_for(1, bos.ngram);
    model.section(1).push_back(std::move(bos));
    for (const std::string& w : events) {
      ArpaEntry e;
      e.logprob = std::log10(prob[0][w]);
      e.ngram = w;
      e.backoff = backoff_for(1, w);
      model.section(1).push_back(std::move(e));
    }
  }
  for (std::size_t k = 2; k <= N; ++k) {
    for (const auto& kv : adj[k - 1]) {
      ArpaEntry e;
      e.logprob = std::log10(prob[k - 1][kv.first]);
      e.ngram = kv.first;
      e.backoff = backoff_for(k, kv.first);
      model.section(k).push_back(std::move(e));
    }
  }
  return model;
}

}  // namespace sublm

#endif  // SUBLM_MKN_HPP
