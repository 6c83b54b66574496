// corpus.hpp

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

#ifndef SUBLM_CORPUS_HPP
#define SUBLM_CORPUS_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sublm/error.hpp"
#include "sublm/unicode.hpp"

namespace sublm {

// Sentence boundary and unknown-word tokens. Sentences never store <s>/</s>
// themselves; they are injected at counting time.
inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

struct NormalizedCorpus {
  std::vector<std::vector<std::string>> sentences;

  bool empty() const { return sentences.empty(); }

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.size();
    return n;
  }
};

// Whitespace tokenization (Unicode-aware; NBSP counts as whitespace).
inline std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char32_t c : decode_utf8(line)) {
    if (is_space(c)) {
      if (!cur.empty()) {
        tokens.push_back(cur);
        cur.clear();
      }
    } else {
      append_utf8(c, cur);
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

// One sentence per line, single spaces, LF endings.
inline std::string render_corpus(const NormalizedCorpus& corpus) {
  std::string out;
  for (const auto& sentence : corpus.sentences) {
    out += join_tokens(sentence);
    out.push_back('\n');
  }
  return out;
}

// Reads already-normalized text (one sentence per line); blank lines are
// skipped.
inline NormalizedCorpus parse_corpus(std::string_view text) {
  NormalizedCorpus corpus;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = (nl == std::string_view::npos)
                                ? text.substr(start)
                                : text.substr(start, nl - start);
    std::vector<std::string> tokens = tokenize(line);
    if (!tokens.empty()) corpus.sentences.push_back(std::move(tokens));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return corpus;
}

inline NormalizedCorpus read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableFile("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str());
}

inline void write_text_file(const std::filesystem::path& path,
                            std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UnreadableFile("cannot open for writing " + path.string());
  out << content;
  if (!out) throw UnreadableFile("write error on " + path.string());
}

}  // namespace sublm

#endif  // SUBLM_CORPUS_HPP
