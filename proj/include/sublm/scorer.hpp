// scorer.hpp
//
// Hash-indexed backoff queries over an ArpaModel: longest matching n-gram
// wins, shorter contexts are reached by adding the skipped contexts' backoff
// weights, absent contexts back off with weight 1.

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

#ifndef SUBLM_SCORER_HPP
#define SUBLM_SCORER_HPP

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sublm/arpa.hpp"
#include "sublm/corpus.hpp"

namespace sublm {

class Scorer {
 public:
  struct Entry {
    double logprob = 0.0;
    double backoff = 0.0;  // log10; 0 when absent
  };

  explicit Scorer(const ArpaModel& model) : order_(model.order) {
    std::size_t total = 0;
    for (const auto& section : model.entries) total += section.size();
    map_.reserve(total);
    for (std::size_t k = 1; k <= model.order; ++k) {
      for (const ArpaEntry& e : model.section(k)) {
        map_[e.ngram] = Entry{e.logprob, e.backoff.value_or(0.0)};
      }
    }
    has_unk_ = map_.find(std::string_view(kUnk)) != map_.end();
  }

  std::size_t order() const { return order_; }
  bool has_unk() const { return has_unk_; }

  bool in_vocab(std::string_view token) const {
    return map_.find(token) != map_.end();
  }

  const Entry* find(std::string_view ngram) const {
    auto it = map_.find(ngram);
    return it == map_.end() ? nullptr : &it->second;
  }

  // log10 P(word | context). The context may be any length; only the last
  // order-1 tokens matter. A word with no unigram entry yields -infinity;
  // callers wanting open-vocabulary behavior map to <unk> first (see
  // log10_prob_or_unk).
  double log10_prob(const std::vector<std::string>& context,
                    std::string_view word) const {
    std::size_t use =
        order_ == 0 ? 0 : std::min(context.size(), order_ - 1);
    std::size_t first = context.size() - use;

    // One buffer holds "c1 c2 ... cn word"; shorter contexts are suffixes.
    std::string key;
    std::vector<std::size_t> starts;
    for (std::size_t i = first; i < context.size(); ++i) {
      starts.push_back(key.size());
      key += context[i];
      key.push_back(' ');
    }
    std::size_t word_pos = key.size();
    key += word;

    double bow_sum = 0.0;
    for (std::size_t level = 0; level <= starts.size(); ++level) {
      std::size_t begin = level < starts.size() ? starts[level] : word_pos;
      std::string_view full_key =
          std::string_view(key).substr(begin);
      if (const Entry* e = find(full_key)) {
        return e->logprob + bow_sum;
      }
      if (level < starts.size()) {
        // context without the word, minus the trailing space
        std::string_view ctx_key = std::string_view(key).substr(
            starts[level], word_pos - 1 - starts[level]);
        if (const Entry* c = find(ctx_key)) bow_sum += c->backoff;
      }
    }
    return -std::numeric_limits<double>::infinity();
  }

  // Open-vocabulary query: words without a unigram entry are scored as
  // <unk>. Reports whether the mapping happened via *oov.
  double log10_prob_or_unk(const std::vector<std::string>& context,
                           std::string_view word, bool* oov = nullptr) const {
    bool is_oov = !in_vocab(word);
    if (oov) *oov = is_oov;
    if (is_oov && has_unk_) return log10_prob(context, kUnk);
    return log10_prob(context, word);
  }

 private:
  struct SvHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  struct SvEq {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const {
      return a == b;
    }
  };

  std::size_t order_;
  bool has_unk_ = false;
  std::unordered_map<std::string, Entry, SvHash, SvEq> map_;
};

}  // namespace sublm

#endif  // SUBLM_SCORER_HPP
