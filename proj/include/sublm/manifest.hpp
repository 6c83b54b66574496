// manifest.hpp
//
// Corpus manifest: one record per subtitle source with explicit show type
// and domain tags, so grouped training does not depend on directory naming.
//
// Format: records separated by blank lines, `key: value` per line, '#'
// comments. Keys: path (required), show, type, domains (comma separated; a
// show may carry several domain tags).

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

#ifndef SUBLM_MANIFEST_HPP
#define SUBLM_MANIFEST_HPP

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sublm/error.hpp"

namespace sublm {

struct ManifestEntry {
  std::string path;
  std::string show_id;
  std::string show_type;
  std::vector<std::string> domains;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
};

namespace detail {

inline std::string trim_ascii(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) {
    --e;
  }
  return std::string(s.substr(b, e - b));
}

}  // namespace detail

inline CorpusManifest parse_manifest(std::string_view text) {
  CorpusManifest manifest;
  std::set<std::string> seen_paths;

  ManifestEntry current;
  bool open = false;
  std::size_t record_line = 0;

  auto flush = [&](std::size_t lineno) {
    if (!open) return;
    if (current.path.empty()) {
      throw MalformedManifest(record_line,
                              "record is missing the required 'path' key");
    }
    if (!seen_paths.insert(current.path).second) {
      throw MalformedManifest(lineno,
                              "duplicate path '" + current.path + "'");
    }
    manifest.entries.push_back(std::move(current));
    current = ManifestEntry{};
    open = false;
  };

  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view raw = (nl == std::string_view::npos)
                               ? text.substr(start)
                               : text.substr(start, nl - start);
    ++lineno;
    std::string line = detail::trim_ascii(raw);

    if (line.empty() || line[0] == '#') {
      if (line.empty()) flush(lineno);
    } else {
      std::size_t colon = line.find(':');
      if (colon == std::string::npos) {
        throw MalformedManifest(lineno, "expected 'key: value'");
      }
      std::string key = detail::trim_ascii(line.substr(0, colon));
      std::string value = detail::trim_ascii(line.substr(colon + 1));
      if (!open) {
        open = true;
        record_line = lineno;
      }
      if (key == "path") {
        if (!current.path.empty()) {
          throw MalformedManifest(lineno, "record has two 'path' keys");
        }
        if (value.empty()) {
          throw MalformedManifest(lineno, "empty path");
        }
        current.path = value;
      } else if (key == "show") {
        current.show_id = value;
      } else if (key == "type") {
        current.show_type = value;
      } else if (key == "domains") {
        std::size_t pos = 0;
        while (pos <= value.size()) {
          std::size_t comma = value.find(',', pos);
          std::string tag = detail::trim_ascii(
              comma == std::string::npos ? value.substr(pos)
                                         : value.substr(pos, comma - pos));
          if (!tag.empty()) current.domains.push_back(tag);
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
      } else {
        throw MalformedManifest(lineno, "unknown key '" + key + "'");
      }
    }

    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  flush(lineno);
  return manifest;
}

inline CorpusManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableFile("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

}  // namespace sublm

#endif  // SUBLM_MANIFEST_HPP
