// srt.hpp

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

// Ingestion of raw subtitle sources. SubRip (.srt) structure -- cue numbers,
// timestamp lines, inline markup -- is stripped here, leaving only cue text.

#ifndef SUBLM_SRT_HPP
#define SUBLM_SRT_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sublm/error.hpp"
#include "sublm/unicode.hpp"

namespace sublm {

enum class SourceFormat { kPlain, kSrt };

enum class DecodePolicy { kReplace, kStrict };

struct RawSubtitleDoc {
  std::vector<std::string> lines;  // source order, cue structure removed
  SourceFormat source_format = SourceFormat::kPlain;
  std::string source_id;
};

namespace detail {

inline bool is_blank_line(std::string_view s) {
  for (char32_t c : decode_utf8(s)) {
    if (!is_space(c)) return false;
  }
  return true;
}

inline bool is_index_line(std::string_view s) {
  bool digit = false;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != ' ' && c != '\t') {
      return false;
    }
  }
  return digit;
}

inline bool is_timestamp_line(std::string_view s) {
  return s.find("-->") != std::string_view::npos;
}

// Drops <...> tags and {...} override blocks from a cue text line.
inline std::string strip_markup(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '<') {
      std::size_t close = s.find('>', i + 1);
      if (close != std::string_view::npos) {
        i = close + 1;
        continue;
      }
    } else if (c == '{') {
      std::size_t close = s.find('}', i + 1);
      if (close != std::string_view::npos) {
        i = close + 1;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

// Splits on LF, dropping trailing CR and a leading BOM.
inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) start = 3;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = (nl == std::string_view::npos)
                                ? text.substr(start)
                                : text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  // A trailing newline produces one empty tail entry; drop it.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline std::string scrub_utf8(std::string_view raw, DecodePolicy policy,
                              const std::string& source_id) {
  bool valid = true;
  std::vector<char32_t> cps = decode_utf8(raw, &valid);
  if (!valid && policy == DecodePolicy::kStrict) {
    throw UnreadableFile(source_id + ": invalid UTF-8");
  }
  return valid ? std::string(raw) : encode_utf8(cps);
}

}  // namespace detail

// Parses SRT cue structure from decoded lines. Tolerates missing blank
// separators between cues when the next cue is recognizable (index line
// followed by a timestamp line).
inline std::vector<std::string> parse_srt_lines(
    const std::vector<std::string>& lines) {
  enum class State { kIndex, kTimestamp, kText };
  State state = State::kIndex;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    bool blank = detail::is_blank_line(line);
    switch (state) {
      case State::kIndex:
        if (blank) continue;
        if (detail::is_timestamp_line(line)) {
          throw MalformedSrt(i + 1, "timestamp line with no preceding index");
        }
        if (!detail::is_index_line(line)) {
          throw MalformedSrt(i + 1, "expected cue index");
        }
        state = State::kTimestamp;
        break;
      case State::kTimestamp:
        if (!detail::is_timestamp_line(line)) {
          throw MalformedSrt(i + 1, "expected timestamp line after cue index");
        }
        state = State::kText;
        break;
      case State::kText:
        if (blank) {
          state = State::kIndex;
          continue;
        }
        if (detail::is_timestamp_line(line)) {
          throw MalformedSrt(i + 1, "timestamp line with no preceding index");
        }
        // Un-separated next cue: digits followed by a timestamp line.
        if (detail::is_index_line(line) && i + 1 < lines.size() &&
            detail::is_timestamp_line(lines[i + 1])) {
          state = State::kTimestamp;
          continue;
        }
        {
          std::string text = detail::trim(detail::strip_markup(line));
          if (!text.empty()) out.push_back(std::move(text));
        }
        break;
    }
  }
  if (state == State::kTimestamp) {
    throw MalformedSrt(lines.size(), "cue index at end of file");
  }
  return out;
}

// Ingests decoded text in the given format.
inline RawSubtitleDoc ingest_text(std::string_view text, SourceFormat format,
                                  std::string source_id,
                                  DecodePolicy policy = DecodePolicy::kReplace) {
  std::string scrubbed = detail::scrub_utf8(text, policy, source_id);
  std::vector<std::string> lines = detail::split_lines(scrubbed);
  RawSubtitleDoc doc;
  doc.source_format = format;
  doc.source_id = std::move(source_id);
  if (format == SourceFormat::kSrt) {
    doc.lines = parse_srt_lines(lines);
  } else {
    doc.lines = std::move(lines);
  }
  return doc;
}

inline SourceFormat format_for_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(c));
  return ext == ".srt" ? SourceFormat::kSrt : SourceFormat::kPlain;
}

// Reads and ingests a file; format defaults from the extension.
inline RawSubtitleDoc ingest(const std::filesystem::path& path,
                             std::optional<SourceFormat> format = std::nullopt,
                             DecodePolicy policy = DecodePolicy::kReplace) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UnreadableFile("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw UnreadableFile("read error on " + path.string());
  }
  SourceFormat fmt = format.value_or(format_for_path(path));
  return ingest_text(buf.str(), fmt, path.string(), policy);
}

}  // namespace sublm

#endif  // SUBLM_SRT_HPP
