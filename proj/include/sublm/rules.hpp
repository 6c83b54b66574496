// rules.hpp

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

// Normalization rule tables. All tables are editable TSV files:
//   abbreviations.tsv  token<TAB>full form (value may be several tokens)
//   spelling.tsv       variant<TAB>canonical form
//   case_freq.tsv      word form<TAB>count
//   settings.tsv       key<TAB>value (caps_word_max_len, locale)
// Blank lines and lines starting with '#' are ignored.

#ifndef SUBLM_RULES_HPP
#define SUBLM_RULES_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sublm/error.hpp"
#include "sublm/unicode.hpp"

namespace sublm {

struct NormRuleSet {
  std::map<std::string, std::vector<std::string>> abbreviations;
  std::map<std::string, std::string> spelling_map;
  std::map<std::string, std::uint64_t> case_freq;
  int caps_word_max_len = 4;
  std::string locale = "nl";
};

namespace detail {

// key<TAB>value with comment/blank skipping; calls fn(key, value, lineno).
template <typename Fn>
void for_each_tsv_line(std::istream& in, const std::string& name, Fn fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw RuleFileError(name, lineno, "expected key<TAB>value");
    }
    std::string key = line.substr(0, tab);
    std::string value = line.substr(tab + 1);
    if (key.empty() || value.empty()) {
      throw RuleFileError(name, lineno, "empty key or value");
    }
    fn(key, value, lineno);
  }
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline bool has_dot_or_apostrophe(std::string_view token) {
  for (char32_t c : decode_utf8(token)) {
    if (c == U'.' || is_apostrophe(c)) return true;
  }
  return false;
}

}  // namespace detail

inline void parse_abbreviations(std::istream& in, const std::string& name,
                                NormRuleSet& rules) {
  detail::for_each_tsv_line(
      in, name, [&](const std::string& key, const std::string& value,
                    std::size_t lineno) {
        if (!detail::has_dot_or_apostrophe(key)) {
          throw RuleFileError(name, lineno,
                              "abbreviation key needs a dot or apostrophe: " +
                                  key);
        }
        std::vector<std::string> expansion = detail::split_ws(value);
        if (expansion.empty()) {
          throw RuleFileError(name, lineno, "empty expansion");
        }
        rules.abbreviations[key] = std::move(expansion);
      });
}

inline void parse_spelling(std::istream& in, const std::string& name,
                           NormRuleSet& rules) {
  detail::for_each_tsv_line(in, name,
                            [&](const std::string& key,
                                const std::string& value, std::size_t) {
                              rules.spelling_map[key] = value;
                            });
  // Idempotence: a canonical form may not itself be rewritten elsewhere.
  for (const auto& [key, value] : rules.spelling_map) {
    auto it = rules.spelling_map.find(value);
    if (it != rules.spelling_map.end() && it->second != value) {
      throw RuleFileError(name, 0,
                          "spelling map is not idempotent: " + key + " -> " +
                              value + " -> " + it->second);
    }
  }
}

inline void parse_case_freq(std::istream& in, const std::string& name,
                            NormRuleSet& rules) {
  detail::for_each_tsv_line(
      in, name, [&](const std::string& key, const std::string& value,
                    std::size_t lineno) {
        std::uint64_t count = 0;
        std::size_t pos = 0;
        try {
          if (!value.empty() && value[0] == '-') throw std::invalid_argument("");
          count = std::stoull(value, &pos);
        } catch (const std::exception&) {
          throw RuleFileError(name, lineno, "bad count: " + value);
        }
        if (pos != value.size()) {
          throw RuleFileError(name, lineno, "bad count: " + value);
        }
        rules.case_freq[key] = count;
      });
}

inline void parse_settings(std::istream& in, const std::string& name,
                           NormRuleSet& rules) {
  detail::for_each_tsv_line(
      in, name, [&](const std::string& key, const std::string& value,
                    std::size_t lineno) {
        if (key == "caps_word_max_len") {
          int v = 0;
          try {
            v = std::stoi(value);
          } catch (const std::exception&) {
            v = -1;
          }
          if (v < 0) throw RuleFileError(name, lineno, "bad length: " + value);
          rules.caps_word_max_len = v;
        } else if (key == "locale") {
          rules.locale = value;
        } else {
          throw RuleFileError(name, lineno, "unknown setting: " + key);
        }
      });
}

// Loads all rule tables from a directory. Missing files yield empty tables
// (the pipeline still runs); unreadable or malformed files are errors.
inline NormRuleSet load_rules(const std::filesystem::path& dir) {
  NormRuleSet rules;
  auto load = [&](const char* file, auto parser) {
    std::filesystem::path p = dir / file;
    if (!std::filesystem::exists(p)) return;
    std::ifstream in(p);
    if (!in) throw UnreadableFile("cannot open " + p.string());
    parser(in, p.string(), rules);
  };
  load("abbreviations.tsv",
       [](std::istream& in, const std::string& n, NormRuleSet& r) {
         parse_abbreviations(in, n, r);
       });
  load("spelling.tsv",
       [](std::istream& in, const std::string& n, NormRuleSet& r) {
         parse_spelling(in, n, r);
       });
  load("case_freq.tsv",
       [](std::istream& in, const std::string& n, NormRuleSet& r) {
         parse_case_freq(in, n, r);
       });
  load("settings.tsv",
       [](std::istream& in, const std::string& n, NormRuleSet& r) {
         parse_settings(in, n, r);
       });
  return rules;
}

}  // namespace sublm

#endif  // SUBLM_RULES_HPP
