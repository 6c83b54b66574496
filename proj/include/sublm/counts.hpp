// counts.hpp
//
// N-gram counting over normalized corpora, vocabulary capping, and the
// count-file exchange format (whitespace-separated tokens, tab, decimal
// count; all orders in one file, canonically sorted).

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

#ifndef SUBLM_COUNTS_HPP
#define SUBLM_COUNTS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sublm/corpus.hpp"
#include "sublm/error.hpp"
#include "sublm/zio.hpp"

namespace sublm {

struct CountTable {
  std::size_t order = 0;
  // tables[k-1] maps the space-joined k-gram to its count. std::map keeps
  // iteration in bytewise order, which makes serialization canonical.
  std::vector<std::map<std::string, std::uint64_t>> tables;
  std::set<std::string> vocab;

  std::map<std::string, std::uint64_t>& grams(std::size_t k) {
    return tables.at(k - 1);
  }
  const std::map<std::string, std::uint64_t>& grams(std::size_t k) const {
    return tables.at(k - 1);
  }

  bool empty() const {
    for (const auto& t : tables) {
      if (!t.empty()) return false;
    }
    return true;
  }
};

namespace detail {

inline std::string join_window(const std::vector<std::string_view>& seq,
                               std::size_t begin, std::size_t len) {
  std::string key;
  for (std::size_t i = 0; i < len; ++i) {
    if (i) key.push_back(' ');
    key += seq[begin + i];
  }
  return key;
}

}  // namespace detail

// Counts all contiguous windows of length 1..order over each sentence padded
// with a single <s>/</s> pair. With single padding "<s>" only ever occupies
// the first position, so it is naturally a context token and never the
// predicted end of a k-gram for k >= 2.
inline CountTable count_ngrams(const NormalizedCorpus& corpus,
                               std::size_t order) {
  if (order < 1) throw Error("n-gram order must be >= 1");
  CountTable table;
  table.order = order;
  table.tables.resize(order);

  for (const auto& sentence : corpus.sentences) {
    if (sentence.empty()) throw EmptySentence("empty sentence in corpus");
    std::vector<std::string_view> seq;
    seq.reserve(sentence.size() + 2);
    seq.push_back(kBos);
    for (const auto& tok : sentence) seq.push_back(tok);
    seq.push_back(kEos);

    for (std::size_t k = 1; k <= order; ++k) {
      if (seq.size() < k) break;
      for (std::size_t i = 0; i + k <= seq.size(); ++i) {
        ++table.grams(k)[detail::join_window(seq, i, k)];
      }
    }
  }

  for (const auto& [tok, cnt] : table.grams(1)) table.vocab.insert(tok);
  return table;
}

inline CountTable merge(const CountTable& a, const CountTable& b) {
  if (a.order != b.order) {
    throw OrderMismatch("cannot merge order " + std::to_string(a.order) +
                        " with order " + std::to_string(b.order));
  }
  CountTable out = a;
  for (std::size_t k = 1; k <= b.order; ++k) {
    for (const auto& [key, cnt] : b.grams(k)) out.grams(k)[key] += cnt;
  }
  out.vocab.insert(b.vocab.begin(), b.vocab.end());
  return out;
}

struct VocabPolicy {
  enum class Mode { kOpenFull, kOpenCapped };
  Mode mode = Mode::kOpenFull;
  std::size_t cap = 0;
  std::string unk_token = std::string(kUnk);
};

// Keeps the `cap` most frequent unigram types (ties broken by bytewise
// order), rewrites everything else to the unk token and re-sums. <s>, </s>
// and the unk token itself never consume cap slots. Token mass per order is
// preserved exactly.
inline CountTable limit_vocab(const CountTable& table,
                              const VocabPolicy& policy) {
  if (policy.mode == VocabPolicy::Mode::kOpenFull) return table;
  if (policy.cap < 1) throw Error("vocabulary cap must be >= 1");

  auto reserved = [&](std::string_view tok) {
    return tok == kBos || tok == kEos || tok == policy.unk_token;
  };

  std::vector<std::pair<std::string, std::uint64_t>> candidates;
  for (const auto& [tok, cnt] : table.grams(1)) {
    if (!reserved(tok)) candidates.emplace_back(tok, cnt);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& x, const auto& y) {
              if (x.second != y.second) return x.second > y.second;
              return x.first < y.first;
            });
  std::set<std::string> kept;
  for (std::size_t i = 0; i < candidates.size() && i < policy.cap; ++i) {
    kept.insert(candidates[i].first);
  }

  CountTable out;
  out.order = table.order;
  out.tables.resize(table.order);
  for (std::size_t k = 1; k <= table.order; ++k) {
    for (const auto& [key, cnt] : table.grams(k)) {
      std::vector<std::string> toks = tokenize(key);
      std::string mapped;
      for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i) mapped.push_back(' ');
        if (reserved(toks[i]) || kept.count(toks[i])) {
          mapped += toks[i];
        } else {
          mapped += policy.unk_token;
        }
      }
      out.grams(k)[mapped] += cnt;
    }
  }
  for (const auto& [tok, cnt] : out.grams(1)) out.vocab.insert(tok);
  return out;
}

// `tok1 tok2 ... tokk<TAB>count`, one n-gram per line, orders ascending and
// bytewise-sorted within an order.
inline std::string serialize_counts(const CountTable& table) {
  std::string out;
  for (std::size_t k = 1; k <= table.order; ++k) {
    for (const auto& [key, cnt] : table.grams(k)) {
      out += key;
      out.push_back('\t');
      out += std::to_string(cnt);
      out.push_back('\n');
    }
  }
  return out;
}

inline void write_counts(const CountTable& table,
                         const std::filesystem::path& path) {
  write_text_file(path, serialize_counts(table));
}

// The order of the resulting table is the length of the longest n-gram in
// the file. Duplicate lines are summed.
inline CountTable parse_counts(std::string_view text) {
  CountTable table;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = (nl == std::string_view::npos)
                                ? text.substr(start)
                                : text.substr(start, nl - start);
    ++lineno;
    if (nl == std::string_view::npos && line.empty()) break;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) {
      std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos) {
        throw MalformedCountLine(lineno, "missing tab separator");
      }
      std::vector<std::string> toks = tokenize(line.substr(0, tab));
      if (toks.empty()) {
        throw MalformedCountLine(lineno, "empty n-gram");
      }
      std::string_view count_sv = line.substr(tab + 1);
      if (count_sv.empty()) {
        throw MalformedCountLine(lineno, "empty count");
      }
      std::uint64_t cnt = 0;
      for (char ch : count_sv) {
        if (ch < '0' || ch > '9') {
          throw MalformedCountLine(lineno, "count is not a nonnegative integer");
        }
        cnt = cnt * 10 + static_cast<std::uint64_t>(ch - '0');
      }
      std::size_t k = toks.size();
      if (k > table.order) {
        table.order = k;
        table.tables.resize(k);
      }
      table.grams(k)[join_tokens(toks)] += cnt;
      for (const auto& t : toks) table.vocab.insert(t);
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return table;
}

inline CountTable read_counts(const std::filesystem::path& path) {
  return parse_counts(read_file_auto(path));
}

}  // namespace sublm

#endif  // SUBLM_COUNTS_HPP
