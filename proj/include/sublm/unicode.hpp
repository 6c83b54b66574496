// unicode.hpp

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

// Minimal UTF-8 and case handling, enough for Dutch subtitle text: ASCII,
// Latin-1 Supplement and Latin Extended-A. Codepoints outside these ranges
// are treated as caseless word characters.

#ifndef SUBLM_UNICODE_HPP
#define SUBLM_UNICODE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sublm {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Appends the UTF-8 encoding of cp to out.
inline void append_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(cp, out);
  return out;
}

// Decodes UTF-8; invalid sequences become U+FFFD (one replacement per
// rejected byte). `valid` reports whether the input was fully well-formed.
inline std::vector<char32_t> decode_utf8(std::string_view s,
                                         bool* valid = nullptr) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  bool ok = true;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(kReplacementChar);
      ok = false;
      ++i;
      continue;
    }
    if (i + len > s.size()) {
      out.push_back(kReplacementChar);
      ok = false;
      ++i;
      continue;
    }
    bool good = true;
    for (int k = 1; k < len; ++k) {
      unsigned char b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        good = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings and surrogates.
    if (good) {
      if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
          (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
          (cp >= 0xD800 && cp <= 0xDFFF)) {
        good = false;
      }
    }
    if (!good) {
      out.push_back(kReplacementChar);
      ok = false;
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  if (valid) *valid = ok;
  return out;
}

inline bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

inline bool is_alpha(char32_t c) {
  if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
  // Latin-1 Supplement letters (excluding multiplication/division signs).
  if (c >= 0xC0 && c <= 0xFF && c != 0xD7 && c != 0xF7) return true;
  // Latin Extended-A is all letters.
  if (c >= 0x100 && c <= 0x17F) return true;
  return false;
}

inline char32_t to_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x130) return U'i';   // I with dot above
    if (c == 0x178) return 0xFF;   // Y with diaeresis
    if (c == 0x131 || c == 0x138 || c == 0x149 || c == 0x17F) return c;
    if (c <= 0x137 || (c >= 0x14A && c <= 0x177)) {
      return (c % 2 == 0) ? c + 1 : c;
    }
    // 0x139..0x148 and 0x179..0x17E: odd codepoints are uppercase.
    return (c % 2 == 1) ? c + 1 : c;
  }
  return c;
}

inline char32_t to_upper(char32_t c) {
  if (c >= U'a' && c <= U'z') return c - 32;
  if (c >= 0xE0 && c <= 0xFE && c != 0xF7) return c - 32;
  if (c == 0xFF) return 0x178;
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x131) return U'I';
    if (c == 0x17F) return U'S';
    if (c == 0x130 || c == 0x138 || c == 0x149 || c == 0x178) return c;
    if (c <= 0x137 || (c >= 0x14A && c <= 0x177)) {
      return (c % 2 == 1) ? c - 1 : c;
    }
    return (c % 2 == 0) ? c - 1 : c;
  }
  return c;
}

inline bool is_upper(char32_t c) { return is_alpha(c) && to_lower(c) != c; }
inline bool is_lower(char32_t c) { return is_alpha(c) && to_upper(c) != c; }

// Punctuation for stripping purposes: ASCII punctuation plus the common
// typographic marks that show up in subtitle files.
inline bool is_punct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  switch (c) {
    case 0xA1:   // inverted exclamation
    case 0xBF:   // inverted question
    case 0xAB:   // left guillemet
    case 0xBB:   // right guillemet
    case 0xB4:   // acute accent
    case 0xB7:   // middle dot
    case 0x2010: // hyphen
    case 0x2011: // non-breaking hyphen
    case 0x2012:
    case 0x2013: // en dash
    case 0x2014: // em dash
    case 0x2018:
    case 0x2019: // right single quote / apostrophe
    case 0x201A:
    case 0x201B:
    case 0x201C:
    case 0x201D:
    case 0x201E:
    case 0x201F:
    case 0x2026: // ellipsis
    case 0x2039:
    case 0x203A:
      return true;
    default:
      return false;
  }
}

inline bool is_apostrophe(char32_t c) { return c == U'\'' || c == 0x2019; }

// Whitespace for tokenization; NBSP appears routinely in subtitle files.
inline bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\r' || c == U'\n' || c == U'\f' ||
         c == U'\v' || c == 0xA0;
}

inline std::string lowercase(std::string_view token) {
  std::vector<char32_t> cps = decode_utf8(token);
  for (char32_t& c : cps) c = to_lower(c);
  return encode_utf8(cps);
}

inline std::size_t count_letters(std::string_view token) {
  std::size_t n = 0;
  for (char32_t c : decode_utf8(token)) {
    if (is_alpha(c)) ++n;
  }
  return n;
}

// A token is fully uppercase if it has at least one letter and every letter
// is uppercase; digits and punctuation are ignored.
inline bool is_all_upper_token(std::string_view token) {
  bool saw_letter = false;
  for (char32_t c : decode_utf8(token)) {
    if (is_alpha(c)) {
      saw_letter = true;
      if (!is_upper(c)) return false;
    }
  }
  return saw_letter;
}

}  // namespace sublm

#endif  // SUBLM_UNICODE_HPP
