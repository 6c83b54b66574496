// arpa.hpp
//
// ARPA backoff model serialization. The writer emits a canonical form
// (sections in ascending order, entries bytewise-sorted, fixed 7-digit
// precision) so identical models produce identical bytes. The reader accepts
// that form plus the usual variations found in files from other toolkits:
// extra blank lines, spaces instead of tabs, shortened floats.

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

#ifndef SUBLM_ARPA_HPP
#define SUBLM_ARPA_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sublm/corpus.hpp"
#include "sublm/error.hpp"
#include "sublm/zio.hpp"

namespace sublm {

// Conventional log10 probability marker for non-events such as <s>.
inline constexpr double kNonEventLogProb = -99.0;

struct ArpaEntry {
  double logprob = 0.0;  // log10
  std::string ngram;     // tokens joined by single spaces
  std::optional<double> backoff;  // log10, only meaningful below top order

  friend bool operator==(const ArpaEntry& a, const ArpaEntry& b) {
    return a.logprob == b.logprob && a.ngram == b.ngram &&
           a.backoff == b.backoff;
  }
};

struct ArpaModel {
  std::size_t order = 0;
  std::vector<std::vector<ArpaEntry>> entries;  // entries[k-1] is order k

  std::vector<ArpaEntry>& section(std::size_t k) { return entries.at(k - 1); }
  const std::vector<ArpaEntry>& section(std::size_t k) const {
    return entries.at(k - 1);
  }

  friend bool operator==(const ArpaModel& a, const ArpaModel& b) {
    return a.order == b.order && a.entries == b.entries;
  }
};

namespace detail {

inline std::string format_log10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.7f", v);
  std::string s = buf;
  if (s == "-0.0000000") s = "0.0000000";
  return s;
}

inline double parse_double(std::string_view field, std::size_t lineno,
                           const char* what) {
  std::string tmp(field);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size() || tmp.empty()) {
    throw MalformedArpa(lineno, std::string("unparsable ") + what + " '" +
                                    tmp + "'");
  }
  if (!std::isfinite(v)) {
    throw MalformedArpa(lineno, std::string("non-finite ") + what);
  }
  return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

}  // namespace detail

// Checks the model invariants the format relies on. Throws
// InvariantViolation with a description of the first problem found.
inline void validate_arpa(const ArpaModel& model) {
  if (model.entries.size() != model.order) {
    throw InvariantViolation("entry sections do not match model order");
  }
  for (std::size_t k = 1; k <= model.order; ++k) {
    std::unordered_set<std::string_view> seen;
    for (const ArpaEntry& e : model.section(k)) {
      if (!std::isfinite(e.logprob) || e.logprob > 0.0) {
        throw InvariantViolation("log probability above 0 for '" + e.ngram +
                                 "'");
      }
      if (e.backoff && !std::isfinite(*e.backoff)) {
        throw InvariantViolation("non-finite backoff for '" + e.ngram + "'");
      }
      if (e.backoff && k == model.order) {
        throw InvariantViolation("backoff weight on top-order n-gram '" +
                                 e.ngram + "'");
      }
      std::vector<std::string> toks = tokenize(e.ngram);
      if (toks.size() != k || join_tokens(toks) != e.ngram) {
        throw InvariantViolation("n-gram '" + e.ngram +
                                 "' malformed for order " + std::to_string(k));
      }
      if (!seen.insert(e.ngram).second) {
        throw InvariantViolation("duplicate n-gram '" + e.ngram + "'");
      }
    }
  }
}

inline std::string serialize_arpa(const ArpaModel& model) {
  validate_arpa(model);
  ArpaModel sorted = model;
  for (auto& section : sorted.entries) {
    std::sort(section.begin(), section.end(),
              [](const ArpaEntry& a, const ArpaEntry& b) {
                return a.ngram < b.ngram;
              });
  }

  std::string out;
  out += "\\data\\\n";
  for (std::size_t k = 1; k <= sorted.order; ++k) {
    out += "ngram " + std::to_string(k) + "=" +
           std::to_string(sorted.section(k).size()) + "\n";
  }
  for (std::size_t k = 1; k <= sorted.order; ++k) {
    out += "\n\\" + std::to_string(k) + "-grams:\n";
    for (const ArpaEntry& e : sorted.section(k)) {
      out += detail::format_log10(e.logprob);
      out.push_back('\t');
      out += e.ngram;
      if (e.backoff) {
        out.push_back('\t');
        out += detail::format_log10(*e.backoff);
      }
      out.push_back('\n');
    }
  }
  out += "\n\\end\\\n";
  return out;
}

inline void write_arpa(const ArpaModel& model,
                       const std::filesystem::path& path) {
  write_text_file(path, serialize_arpa(model));
}

inline ArpaModel parse_arpa(std::string_view text) {
  ArpaModel model;
  std::vector<std::size_t> header_counts;  // header_counts[k-1]

  enum class State { kPreamble, kData, kSection, kDone };
  State state = State::kPreamble;
  std::size_t current_k = 0;
  std::unordered_set<std::string> seen;

  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = (nl == std::string_view::npos)
                                ? text.substr(start)
                                : text.substr(start, nl - start);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    bool blank = true;
    for (char ch : line) {
      if (ch != ' ' && ch != '\t') {
        blank = false;
        break;
      }
    }

    if (!blank) {
      switch (state) {
        case State::kPreamble:
          if (line == "\\data\\") {
            state = State::kData;
          }
          // anything before \data\ is comment material, skipped
          break;
        case State::kData: {
          if (line.rfind("ngram ", 0) == 0) {
            std::string_view rest = line.substr(6);
            std::size_t eq = rest.find('=');
            if (eq == std::string_view::npos) {
              throw MalformedArpa(lineno, "malformed ngram header line");
            }
            std::size_t k = 0;
            for (char ch : rest.substr(0, eq)) {
              if (ch < '0' || ch > '9') {
                throw MalformedArpa(lineno, "malformed order in header");
              }
              k = k * 10 + static_cast<std::size_t>(ch - '0');
            }
            std::size_t cnt = 0;
            std::string_view cnt_sv = rest.substr(eq + 1);
            if (cnt_sv.empty()) {
              throw MalformedArpa(lineno, "missing count in header");
            }
            for (char ch : cnt_sv) {
              if (ch < '0' || ch > '9') {
                throw MalformedArpa(lineno, "malformed count in header");
              }
              cnt = cnt * 10 + static_cast<std::size_t>(ch - '0');
            }
            if (k != header_counts.size() + 1) {
              throw MalformedArpa(lineno, "ngram header orders not 1,2,...");
            }
            header_counts.push_back(cnt);
            break;
          }
          [[fallthrough]];
        }
        case State::kSection: {
          if (!line.empty() && line.front() == '\\') {
            if (line == "\\end\\") {
              if (current_k != header_counts.size()) {
                throw MalformedArpa(lineno, "missing n-gram sections");
              }
              state = State::kDone;
              break;
            }
            // "\k-grams:"
            std::string_view body = line.substr(1);
            std::size_t dash = body.find("-grams:");
            if (dash == std::string_view::npos || dash == 0) {
              throw MalformedArpa(lineno, "unrecognized section header");
            }
            std::size_t k = 0;
            for (char ch : body.substr(0, dash)) {
              if (ch < '0' || ch > '9') {
                throw MalformedArpa(lineno, "unrecognized section header");
              }
              k = k * 10 + static_cast<std::size_t>(ch - '0');
            }
            if (k != current_k + 1 || k > header_counts.size()) {
              throw MalformedArpa(lineno, "section out of order");
            }
            if (model.entries.size() < k) model.entries.resize(k);
            current_k = k;
            seen.clear();
            state = State::kSection;
            break;
          }
          if (state == State::kData) {
            throw MalformedArpa(lineno, "expected section header");
          }
          std::vector<std::string_view> fields = detail::split_fields(line);
          if (fields.size() < current_k + 1) {
            throw MalformedArpa(lineno, "too few fields for order " +
                                            std::to_string(current_k));
          }
          if (fields.size() > current_k + 2) {
            throw MalformedArpa(lineno, "too many fields for order " +
                                            std::to_string(current_k));
          }
          ArpaEntry entry;
          entry.logprob =
              detail::parse_double(fields[0], lineno, "log probability");
          std::string ngram;
          for (std::size_t i = 1; i <= current_k; ++i) {
            if (i > 1) ngram.push_back(' ');
            ngram += fields[i];
          }
          entry.ngram = std::move(ngram);
          if (fields.size() == current_k + 2) {
            entry.backoff =
                detail::parse_double(fields.back(), lineno, "backoff weight");
          }
          if (!seen.insert(entry.ngram).second) {
            throw MalformedArpa(lineno,
                                "duplicate n-gram '" + entry.ngram + "'");
          }
          model.section(current_k).push_back(std::move(entry));
          break;
        }
        case State::kDone:
          throw MalformedArpa(lineno, "content after \\end\\");
      }
    }

    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }

  if (state != State::kDone) {
    throw MalformedArpa(lineno, state == State::kPreamble
                                    ? "missing \\data\\ header"
                                    : "missing \\end\\ terminator");
  }
  model.order = header_counts.size();
  if (model.order == 0) {
    throw MalformedArpa(lineno, "model declares no n-gram orders");
  }
  model.entries.resize(model.order);
  for (std::size_t k = 1; k <= model.order; ++k) {
    if (model.section(k).size() != header_counts[k - 1]) {
      throw MalformedArpa(
          lineno, "header declares " + std::to_string(header_counts[k - 1]) +
                      " " + std::to_string(k) + "-grams but body has " +
                      std::to_string(model.section(k).size()));
    }
  }
  return model;
}

inline ArpaModel read_arpa(const std::filesystem::path& path) {
  return parse_arpa(read_file_auto(path));
}

}  // namespace sublm

#endif  // SUBLM_ARPA_HPP
