// numerals.hpp

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

// Number verbalization. Numbers are written out in their *split* form, one
// token per written word and the unit tied to "en" with a hyphen, so 274
// becomes "twee honderd vier-en zeventig" rather than one agglutinated word.

#ifndef SUBLM_NUMERALS_HPP
#define SUBLM_NUMERALS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sublm/error.hpp"

namespace sublm {

class NumberGrammar {
 public:
  virtual ~NumberGrammar() = default;

  // Largest value the grammar can verbalize.
  virtual std::uint64_t max_value() const = 0;

  // Split verbalization of a cardinal. Throws NumberTooLarge above
  // max_value().
  virtual std::vector<std::string> cardinal(std::uint64_t n) const = 0;

  // Ordinal form ("2e" -> tweede); suffix applies to the last token.
  virtual std::vector<std::string> ordinal(std::uint64_t n) const = 0;

  // Word spoken for the decimal separator ("komma" in Dutch).
  virtual const std::string& decimal_word() const = 0;
};

class DutchNumberGrammar final : public NumberGrammar {
 public:
  std::uint64_t max_value() const override { return 999'999'999'999ULL; }

  std::vector<std::string> cardinal(std::uint64_t n) const override {
    if (n > max_value()) {
      throw NumberTooLarge("number exceeds grammar range: " +
                           std::to_string(n));
    }
    if (n == 0) return {"nul"};
    std::vector<std::string> out;
    append_groups(n, out);
    return out;
  }

  std::vector<std::string> ordinal(std::uint64_t n) const override {
    std::vector<std::string> out = cardinal(n);
    out.back() = ordinal_form(out.back());
    return out;
  }

  const std::string& decimal_word() const override {
    static const std::string kKomma = "komma";
    return kKomma;
  }

 private:
  static const char* small(std::uint64_t n) {
    static const char* kSmall[] = {
        "nul",      "een",      "twee",    "drie",     "vier",
        "vijf",     "zes",      "zeven",   "acht",     "negen",
        "tien",     "elf",      "twaalf",  "dertien",  "veertien",
        "vijftien", "zestien",  "zeventien", "achttien", "negentien"};
    return kSmall[n];
  }

  static const char* tens(std::uint64_t n) {
    static const char* kTens[] = {"",       "",        "twintig", "dertig",
                                  "veertig", "vijftig", "zestig",  "zeventig",
                                  "tachtig", "negentig"};
    return kTens[n];
  }

  // 1..99
  static void append_sub_hundred(std::uint64_t n,
                                 std::vector<std::string>& out) {
    if (n < 20) {
      out.push_back(small(n));
      return;
    }
    std::uint64_t t = n / 10, u = n % 10;
    if (u == 0) {
      out.push_back(tens(t));
    } else {
      out.push_back(std::string(small(u)) + "-en");
      out.push_back(tens(t));
    }
  }

  // 1..999; "honderd" takes no leading "een".
  static void append_sub_thousand(std::uint64_t n,
                                  std::vector<std::string>& out) {
    std::uint64_t h = n / 100, r = n % 100;
    if (h >= 2) out.push_back(small(h));
    if (h >= 1) out.push_back("honderd");
    if (r > 0) append_sub_hundred(r, out);
  }

  static void append_groups(std::uint64_t n, std::vector<std::string>& out) {
    std::uint64_t milliard = n / 1'000'000'000ULL;
    std::uint64_t million = (n / 1'000'000ULL) % 1000;
    std::uint64_t thousand = (n / 1000) % 1000;
    std::uint64_t rest = n % 1000;
    if (milliard > 0) {
      append_sub_thousand(milliard, out);
      out.push_back("miljard");
    }
    if (million > 0) {
      append_sub_thousand(million, out);
      out.push_back("miljoen");
    }
    if (thousand > 0) {
      // "duizend", not "een duizend".
      if (thousand != 1) append_sub_thousand(thousand, out);
      out.push_back("duizend");
    }
    if (rest > 0) append_sub_thousand(rest, out);
  }

  // Last-token ordinal suffix. The set of possible final tokens is closed.
  static std::string ordinal_form(const std::string& word) {
    if (word == "een") return "eerste";
    if (word == "drie") return "derde";
    if (word == "acht") return "achtste";
    if (word == "nul") return "nulde";
    if (word.size() >= 3 && word.compare(word.size() - 3, 3, "tig") == 0) {
      return word + "ste";
    }
    if (word == "honderd" || word == "duizend" || word == "miljoen" ||
        word == "miljard") {
      return word + "ste";
    }
    return word + "de";
  }
};

// Grammar lookup by locale tag. Only Dutch ("nl") is shipped.
inline const NumberGrammar& number_grammar(std::string_view locale) {
  static const DutchNumberGrammar kDutch;
  if (locale == "nl" || locale == "dutch" || locale == "nl_NL" ||
      locale == "nl_BE") {
    return kDutch;
  }
  throw Error("no number grammar for locale '" + std::string(locale) + "'");
}

}  // namespace sublm

#endif  // SUBLM_NUMERALS_HPP
