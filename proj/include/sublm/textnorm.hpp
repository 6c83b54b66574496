// textnorm.hpp
//
// Text normalization for subtitle corpora: caps-line removal, sentence
// resegmentation, abbreviation expansion, number verbalization, punctuation
// stripping, initial decapitalization and spelling normalization. The pass
// is idempotent: normalize(normalize(x)) == normalize(x).

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

#ifndef SUBLM_TEXTNORM_HPP
#define SUBLM_TEXTNORM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sublm/corpus.hpp"
#include "sublm/error.hpp"
#include "sublm/numerals.hpp"
#include "sublm/rules.hpp"
#include "sublm/srt.hpp"
#include "sublm/unicode.hpp"

namespace sublm {

struct NormReport {
  std::size_t lines_in = 0;
  std::size_t lines_dropped_all_caps = 0;
  std::size_t caps_tokens_removed = 0;
  std::size_t numbers_verbalized = 0;
  std::size_t numbers_too_large = 0;
  std::size_t sentences_dropped_empty = 0;
  std::size_t sentences_out = 0;
  std::vector<std::string> warnings;
};

struct NormalizeResult {
  NormalizedCorpus corpus;
  NormReport report;
};

namespace detail {

inline std::string encode_range(const std::vector<char32_t>& cps,
                                std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) append_utf8(cps[i], out);
  return out;
}

inline bool is_terminator(char32_t c) {
  return c == U'.' || c == U'!' || c == U'?';
}

// Closing quotes/brackets that may sit between a terminator and the
// following whitespace without blocking the sentence break.
inline bool is_closer(char32_t c) {
  return c == U'"' || c == U'\'' || c == 0x2019 || c == 0x201D || c == U')' ||
         c == U']' || c == 0x00BB;
}

}  // namespace detail

// Removes hard-of-hearing annotations. A line whose alphabetic tokens are all
// fully uppercase is dropped entirely (speaker tags, sound captions); on mixed
// lines, fully uppercase tokens longer than `caps_word_max_len` letters are
// removed so short words kept in caps for emphasis survive. Returns the
// surviving line text, or nullopt when the whole line goes.
inline std::optional<std::string> drop_script_lines(
    std::string_view line, std::size_t caps_word_max_len,
    std::size_t* tokens_removed = nullptr) {
  std::vector<std::string> tokens = tokenize(line);
  bool saw_alpha_token = false;
  bool all_caps = true;
  for (const std::string& tok : tokens) {
    if (count_letters(tok) == 0) continue;
    saw_alpha_token = true;
    if (!is_all_upper_token(tok)) all_caps = false;
  }
  if (saw_alpha_token && all_caps) return std::nullopt;

  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (std::string& tok : tokens) {
    if (is_all_upper_token(tok) && count_letters(tok) > caps_word_max_len) {
      if (tokens_removed) ++*tokens_removed;
      continue;
    }
    kept.push_back(std::move(tok));
  }
  return join_tokens(kept);
}

// Rebuilds sentences from subtitle lines. A sentence ends at {. ! ?} when the
// punctuation run (plus any closing quotes) is followed by whitespace or the
// line end, except when a single '.' closes a known abbreviation. Unterminated
// lines are buffered and joined with following lines; whatever is still
// buffered at document end is flushed one sentence per original line, which
// keeps the pass idempotent on its own output.
inline std::vector<std::string> resegment(const std::vector<std::string>& lines,
                                          const NormRuleSet& rules) {
  std::vector<std::string> sentences;
  std::vector<std::string> pending;

  auto emit = [&](std::string tail) {
    std::vector<std::string> tokens;
    for (std::string& part : pending) {
      std::vector<std::string> t = tokenize(part);
      tokens.insert(tokens.end(), t.begin(), t.end());
    }
    pending.clear();
    std::vector<std::string> t = tokenize(tail);
    tokens.insert(tokens.end(), t.begin(), t.end());
    if (!tokens.empty()) sentences.push_back(join_tokens(tokens));
  };

  for (const std::string& line : lines) {
    std::vector<char32_t> cps = decode_utf8(line);
    std::size_t seg = 0;
    std::size_t i = 0;
    while (i < cps.size()) {
      if (!detail::is_terminator(cps[i])) {
        ++i;
        continue;
      }
      std::size_t run_end = i;
      while (run_end < cps.size() && detail::is_terminator(cps[run_end])) {
        ++run_end;
      }
      std::size_t close_end = run_end;
      while (close_end < cps.size() && detail::is_closer(cps[close_end])) {
        ++close_end;
      }
      bool at_boundary =
          close_end == cps.size() || is_space(cps[close_end]);
      bool abbrev = false;
      if (at_boundary && run_end - i == 1 && cps[i] == U'.') {
        std::size_t tok_start = i;
        while (tok_start > seg && !is_space(cps[tok_start - 1])) --tok_start;
        std::string token = detail::encode_range(cps, tok_start, i + 1);
        abbrev = rules.abbreviations.count(token) > 0;
      }
      if (at_boundary && !abbrev) {
        emit(detail::encode_range(cps, seg, close_end));
        seg = close_end;
        i = close_end;
      } else {
        i = run_end;
      }
    }
    std::string rest = detail::encode_range(cps, seg, cps.size());
    std::vector<std::string> rest_tokens = tokenize(rest);
    if (!rest_tokens.empty()) pending.push_back(join_tokens(rest_tokens));
  }

  for (std::string& part : pending) sentences.push_back(std::move(part));
  return sentences;
}

inline std::vector<std::string> expand_abbreviations(
    const std::vector<std::string>& tokens, const NormRuleSet& rules) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& tok : tokens) {
    auto it = rules.abbreviations.find(tok);
    if (it == rules.abbreviations.end()) {
      out.push_back(tok);
    } else {
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  return out;
}

namespace detail {

inline bool parse_u64(const std::vector<char32_t>& cps, std::size_t begin,
                      std::size_t end, std::uint64_t* value) {
  // 12 digits is the widest value any supported grammar accepts; wider runs
  // are reported as out of range by the caller.
  if (end - begin > 12) return false;
  std::uint64_t v = 0;
  for (std::size_t i = begin; i < end; ++i) {
    v = v * 10 + static_cast<std::uint64_t>(cps[i] - U'0');
  }
  *value = v;
  return true;
}

inline bool all_ascii_digits(const std::vector<char32_t>& cps,
                             std::size_t begin, std::size_t end) {
  if (begin >= end) return false;
  for (std::size_t i = begin; i < end; ++i) {
    if (!is_ascii_digit(cps[i])) return false;
  }
  return true;
}

enum class NumMatch { kNone, kVerbalized, kTooLarge };

// Core numeric patterns, applied to a token with edge punctuation removed:
// plain integers, dot-grouped thousands (1.250.000) and comma decimals
// (3,5). Ordinal suffixes (1e, 2de, 8ste) are handled separately because the
// suffix letters would otherwise mark the token as alphabetic.
inline NumMatch verbalize_core(const std::vector<char32_t>& cps,
                               std::size_t b, std::size_t e,
                               const NumberGrammar& grammar,
                               std::vector<std::string>* words) {
  if (b >= e) return NumMatch::kNone;

  if (all_ascii_digits(cps, b, e)) {
    std::uint64_t v;
    if (!parse_u64(cps, b, e, &v) || v > grammar.max_value()) {
      return NumMatch::kTooLarge;
    }
    *words = grammar.cardinal(v);
    return NumMatch::kVerbalized;
  }

  // Dot-grouped thousands: 1-3 digits, then one or more ".ddd" groups.
  {
    std::size_t i = b;
    while (i < e && is_ascii_digit(cps[i])) ++i;
    std::size_t lead = i - b;
    if (lead >= 1 && lead <= 3 && i < e && cps[i] == U'.') {
      std::vector<char32_t> digits(cps.begin() + static_cast<std::ptrdiff_t>(b),
                                   cps.begin() + static_cast<std::ptrdiff_t>(i));
      bool ok = true;
      while (i < e && cps[i] == U'.') {
        if (i + 3 >= e || !all_ascii_digits(cps, i + 1, i + 4)) {
          ok = false;
          break;
        }
        digits.insert(digits.end(), cps.begin() + static_cast<std::ptrdiff_t>(i + 1),
                      cps.begin() + static_cast<std::ptrdiff_t>(i + 4));
        i += 4;
      }
      if (ok && i == e) {
        std::uint64_t v;
        if (!parse_u64(digits, 0, digits.size(), &v) || v > grammar.max_value()) {
          return NumMatch::kTooLarge;
        }
        *words = grammar.cardinal(v);
        return NumMatch::kVerbalized;
      }
    }
  }

  // Comma decimal: digits ',' digits. The fractional part is read digit
  // group wise: leading zeros come out one by one, the remainder as a whole.
  {
    std::size_t comma = b;
    while (comma < e && is_ascii_digit(cps[comma])) ++comma;
    if (comma > b && comma < e && cps[comma] == U',' &&
        all_ascii_digits(cps, comma + 1, e)) {
      std::uint64_t ip;
      if (!parse_u64(cps, b, comma, &ip) || ip > grammar.max_value()) {
        return NumMatch::kTooLarge;
      }
      std::size_t fb = comma + 1;
      std::size_t zeros = 0;
      while (fb + zeros < e && cps[fb + zeros] == U'0') ++zeros;
      std::uint64_t frac = 0;
      bool has_frac_tail = fb + zeros < e;
      if (has_frac_tail) {
        if (!parse_u64(cps, fb + zeros, e, &frac) || frac > grammar.max_value()) {
          return NumMatch::kTooLarge;
        }
      }
      *words = grammar.cardinal(ip);
      words->push_back(grammar.decimal_word());
      for (std::size_t z = 0; z < zeros; ++z) {
        std::vector<std::string> zw = grammar.cardinal(0);
        words->insert(words->end(), zw.begin(), zw.end());
      }
      if (has_frac_tail) {
        std::vector<std::string> fw = grammar.cardinal(frac);
        words->insert(words->end(), fw.begin(), fw.end());
      }
      return NumMatch::kVerbalized;
    }
  }

  return NumMatch::kNone;
}

// Ordinal core: digits followed by "e", "de" or "ste".
inline NumMatch verbalize_ordinal(const std::vector<char32_t>& cps,
                                  std::size_t b, std::size_t e,
                                  const NumberGrammar& grammar,
                                  std::vector<std::string>* words) {
  std::size_t i = b;
  while (i < e && is_ascii_digit(cps[i])) ++i;
  if (i == b || i == e) return NumMatch::kNone;
  std::string suffix = encode_range(cps, i, e);
  if (suffix != "e" && suffix != "de" && suffix != "ste") {
    return NumMatch::kNone;
  }
  std::uint64_t v;
  if (!parse_u64(cps, b, i, &v) || v > grammar.max_value()) {
    return NumMatch::kTooLarge;
  }
  *words = grammar.ordinal(v);
  return NumMatch::kVerbalized;
}

}  // namespace detail

// Replaces numeric tokens by their spoken form. Tokens mixing letters and
// digits (plate numbers, "EU27") are left alone; tokens of digits and
// punctuation have each digit run verbalized in place with the punctuation
// kept at the seams for the strip stage to judge. Numbers beyond the grammar
// range pass through unchanged and are recorded in the report.
inline std::vector<std::string> verbalize_numbers(
    const std::vector<std::string>& tokens, const NumberGrammar& grammar,
    NormReport* report = nullptr) {
  std::vector<std::string> out;
  out.reserve(tokens.size());

  auto too_large = [&](const std::string& tok) {
    out.push_back(tok);
    if (report) {
      ++report->numbers_too_large;
      report->warnings.push_back("number out of range, kept as is: " + tok);
    }
  };

  for (const std::string& tok : tokens) {
    bool has_digit = false;
    for (unsigned char ch : tok) {
      if (ch >= '0' && ch <= '9') {
        has_digit = true;
        break;
      }
    }
    if (!has_digit) {
      out.push_back(tok);
      continue;
    }

    std::vector<char32_t> cps = decode_utf8(tok);
    std::size_t b = 0;
    std::size_t e = cps.size();
    while (b < e && is_punct(cps[b])) ++b;
    while (e > b && is_punct(cps[e - 1])) --e;
    std::string prefix = detail::encode_range(cps, 0, b);
    std::string suffix = detail::encode_range(cps, e, cps.size());

    std::vector<std::string> words;
    detail::NumMatch m =
        detail::verbalize_ordinal(cps, b, e, grammar, &words);
    if (m == detail::NumMatch::kNone) {
      m = detail::verbalize_core(cps, b, e, grammar, &words);
    }
    if (m == detail::NumMatch::kTooLarge) {
      too_large(tok);
      continue;
    }
    if (m == detail::NumMatch::kVerbalized) {
      words.front().insert(0, prefix);
      words.back().append(suffix);
      out.insert(out.end(), words.begin(), words.end());
      if (report) ++report->numbers_verbalized;
      continue;
    }

    bool has_alpha = false;
    for (char32_t c : cps) {
      if (is_alpha(c)) {
        has_alpha = true;
        break;
      }
    }
    if (has_alpha) {
      out.push_back(tok);
      continue;
    }

    // Digits mixed with punctuation only ("2-3", "10:30", "12.") - read each
    // digit run, leave the punctuation attached where it stood.
    std::vector<std::string> pieces;
    std::string glue;
    bool run_too_large = false;
    std::size_t i = 0;
    while (i < cps.size() && !run_too_large) {
      if (is_ascii_digit(cps[i])) {
        std::size_t j = i;
        while (j < cps.size() && is_ascii_digit(cps[j])) ++j;
        std::uint64_t v;
        if (!detail::parse_u64(cps, i, j, &v) || v > grammar.max_value()) {
          run_too_large = true;
          break;
        }
        std::vector<std::string> words_run = grammar.cardinal(v);
        words_run.front().insert(0, glue);
        glue.clear();
        pieces.insert(pieces.end(), words_run.begin(), words_run.end());
        i = j;
      } else {
        if (pieces.empty()) {
          append_utf8(cps[i], glue);
        } else {
          append_utf8(cps[i], pieces.back());
        }
        ++i;
      }
    }
    if (run_too_large) {
      too_large(tok);
      continue;
    }
    if (!glue.empty()) pieces.push_back(glue);
    out.insert(out.end(), pieces.begin(), pieces.end());
    if (report) ++report->numbers_verbalized;
  }
  return out;
}

// Drops punctuation. A '-' survives between two letters (compounds and the
// split number forms), an apostrophe survives between two letters (z'n) and
// is normalized to ASCII. Slashes and dashes between words split the token
// instead of silently gluing the words together. Tokens reduced to nothing
// disappear; a sentence reduced to nothing is dropped by the caller.
inline std::vector<std::string> strip_punctuation(
    const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& tok : tokens) {
    std::vector<char32_t> cps = decode_utf8(tok);
    std::vector<std::string> parts;
    std::string cur;
    auto close_part = [&]() {
      if (!cur.empty()) {
        parts.push_back(std::move(cur));
        cur.clear();
      }
    };
    for (std::size_t i = 0; i < cps.size(); ++i) {
      char32_t c = cps[i];
      bool between_letters = i > 0 && i + 1 < cps.size() &&
                             is_alpha(cps[i - 1]) && is_alpha(cps[i + 1]);
      if (c == U'-') {
        if (between_letters) cur.push_back('-');
      } else if (is_apostrophe(c)) {
        if (between_letters) cur.push_back('\'');
      } else if (c == U'/' || c == 0x2013 || c == 0x2014) {
        close_part();
      } else if (is_punct(c)) {
        // dropped
      } else {
        append_utf8(c, cur);
      }
    }
    close_part();
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

// Lowercases the sentence-initial token when the frequency list says the
// lowercase variant is the more common spelling. Ties and unknown pairs keep
// the original, so proper names survive.
inline void decapitalize_initial(std::vector<std::string>* tokens,
                                 const NormRuleSet& rules) {
  if (tokens->empty()) return;
  std::string& first = tokens->front();
  std::string lower = lowercase(first);
  if (lower == first) return;
  auto freq = [&](const std::string& form) -> std::uint64_t {
    auto it = rules.case_freq.find(form);
    return it == rules.case_freq.end() ? 0 : it->second;
  };
  if (freq(first) < freq(lower)) first = std::move(lower);
}

inline void apply_spelling_map(std::vector<std::string>* tokens,
                               const NormRuleSet& rules) {
  for (std::string& tok : *tokens) {
    auto it = rules.spelling_map.find(tok);
    if (it != rules.spelling_map.end()) tok = it->second;
  }
}

// Full pipeline over an ingested document. Caps handling runs on raw lines
// (annotations are a per-line phenomenon), then sentences are rebuilt and
// each one flows through expansion, verbalization, stripping, initial-case
// and spelling normalization.
inline NormalizeResult normalize(const RawSubtitleDoc& doc,
                                 const NormRuleSet& rules) {
  const NumberGrammar& grammar = number_grammar(rules.locale);
  NormalizeResult res;
  res.report.lines_in = doc.lines.size();

  std::vector<std::string> kept_lines;
  kept_lines.reserve(doc.lines.size());
  for (const std::string& line : doc.lines) {
    std::optional<std::string> kept = drop_script_lines(
        line, rules.caps_word_max_len, &res.report.caps_tokens_removed);
    if (!kept) {
      ++res.report.lines_dropped_all_caps;
      continue;
    }
    kept_lines.push_back(std::move(*kept));
  }

  for (std::string& sent : resegment(kept_lines, rules)) {
    std::vector<std::string> tokens = tokenize(sent);
    tokens = expand_abbreviations(tokens, rules);
    tokens = verbalize_numbers(tokens, grammar, &res.report);
    tokens = strip_punctuation(tokens);
    if (tokens.empty()) {
      ++res.report.sentences_dropped_empty;
      continue;
    }
    decapitalize_initial(&tokens, rules);
    apply_spelling_map(&tokens, rules);
    res.corpus.sentences.push_back(std::move(tokens));
  }
  res.report.sentences_out = res.corpus.sentences.size();
  return res;
}

inline NormalizeResult normalize_text(std::string_view text,
                                      const NormRuleSet& rules) {
  return normalize(ingest_text(text, SourceFormat::kPlain, "<text>"), rules);
}

}  // namespace sublm

#endif  // SUBLM_TEXTNORM_HPP
