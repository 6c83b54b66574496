// Copyright 2026 The sublm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "sublm/rules.hpp"
#include "sublm/srt.hpp"
#include "testutil.hpp"

using namespace sublm;

namespace {

const char kSimpleSrt[] =
    "1\n"
    "00:00:01,000 --> 00:00:03,000\n"
    "Hallo daar.\n"
    "Hoe gaat het?\n"
    "\n"
    "2\n"
    "00:00:04,000 --> 00:00:05,500\n"
    "<i>Prima</i>, dank je.\n";

}  // namespace

TEST_CASE("srt cues reduce to text lines") {
  RawSubtitleDoc doc = ingest_text(kSimpleSrt, SourceFormat::kSrt, "test");
  REQUIRE(doc.lines.size() == 3);
  CHECK(doc.lines[0] == "Hallo daar.");
  CHECK(doc.lines[1] == "Hoe gaat het?");
  CHECK(doc.lines[2] == "Prima, dank je.");  // markup stripped
}

TEST_CASE("srt tolerates missing blank separator and BOM") {
  std::string text =
      "\xEF\xBB\xBF"
      "1\r\n"
      "00:00:01,000 --> 00:00:02,000\r\n"
      "Eerste cue\r\n"
      "2\r\n"
      "00:00:03,000 --> 00:00:04,000\r\n"
      "Tweede cue\r\n";
  RawSubtitleDoc doc = ingest_text(text, SourceFormat::kSrt, "test");
  REQUIRE(doc.lines.size() == 2);
  CHECK(doc.lines[0] == "Eerste cue");
  CHECK(doc.lines[1] == "Tweede cue");
}

TEST_CASE("malformed srt structures raise with line numbers") {
  // Timestamp with no index before it.
  try {
    ingest_text("00:00:01,000 --> 00:00:02,000\ntekst\n", SourceFormat::kSrt,
                "t");
    FAIL("expected MalformedSrt");
  } catch (const MalformedSrt& e) {
    CHECK(e.line() == 1);
  }
  // Index not followed by a timestamp.
  CHECK_THROWS_AS(ingest_text("1\nniet een tijdstempel\n", SourceFormat::kSrt,
                              "t"),
                  MalformedSrt);
  // Dangling index at end of file.
  CHECK_THROWS_AS(ingest_text("1\n00:00:01,000 --> 00:00:02,000\nx\n\n7\n",
                              SourceFormat::kSrt, "t"),
                  MalformedSrt);
}

TEST_CASE("invalid utf8 is replaced by default and fatal when strict") {
  std::string text = "1\n00:00:01,000 --> 00:00:02,000\nb\xFFslist\n";
  RawSubtitleDoc doc = ingest_text(text, SourceFormat::kSrt, "t");
  CHECK(doc.lines[0] == "b\xEF\xBF\xBDslist");
  CHECK_THROWS_AS(
      ingest_text(text, SourceFormat::kSrt, "t", DecodePolicy::kStrict),
      UnreadableFile);
}

TEST_CASE("plain format keeps lines as-is") {
  RawSubtitleDoc doc =
      ingest_text("een regel\ntwee regel\n", SourceFormat::kPlain, "t");
  REQUIRE(doc.lines.size() == 2);
  CHECK(doc.lines[1] == "twee regel");
}

TEST_CASE("format is inferred from the file extension") {
  CHECK(format_for_path("a/b/file.SRT") == SourceFormat::kSrt);
  CHECK(format_for_path("a/b/file.txt") == SourceFormat::kPlain);
}

TEST_CASE("abbreviation table parses multi-token expansions") {
  std::istringstream in("dhr.\tmeneer\nd.w.z.\tdat wil zeggen\n");
  NormRuleSet rules;
  parse_abbreviations(in, "abbr", rules);
  REQUIRE(rules.abbreviations.count("d.w.z."));
  CHECK(rules.abbreviations.at("d.w.z.") ==
        std::vector<std::string>{"dat", "wil", "zeggen"});
}

TEST_CASE("abbreviation keys must look like abbreviations") {
  std::istringstream in("gewoon\twoord\n");
  NormRuleSet rules;
  CHECK_THROWS_AS(parse_abbreviations(in, "abbr", rules), RuleFileError);
}

TEST_CASE("spelling table rejects non-idempotent chains") {
  std::istringstream in("a-b\tcd\ncd\tef\n");
  NormRuleSet rules;
  CHECK_THROWS_AS(parse_spelling(in, "sp", rules), RuleFileError);

  // Identity mappings for the target are fine.
  std::istringstream ok("on-line\tonline\nweek-end\tweekend\n");
  NormRuleSet rules2;
  parse_spelling(ok, "sp", rules2);
  CHECK(rules2.spelling_map.at("on-line") == "online");
}

TEST_CASE("case frequency and settings tables validate values") {
  std::istringstream freq("de\t1200\nDe\t300\n");
  NormRuleSet rules;
  parse_case_freq(freq, "cf", rules);
  CHECK(rules.case_freq.at("de") == 1200);

  std::istringstream bad("de\t-5\n");
  CHECK_THROWS_AS(parse_case_freq(bad, "cf", rules), RuleFileError);

  std::istringstream settings("caps_word_max_len\t5\nlocale\tnl\n");
  parse_settings(settings, "st", rules);
  CHECK(rules.caps_word_max_len == 5);
  CHECK(rules.locale == "nl");

  std::istringstream unknown("mystery\t1\n");
  CHECK_THROWS_AS(parse_settings(unknown, "st", rules), RuleFileError);
}

TEST_CASE("rule lines without a tab are rejected, comments skipped") {
  std::istringstream in("# comment line\n\ndhr. meneer\n");
  NormRuleSet rules;
  CHECK_THROWS_AS(parse_abbreviations(in, "abbr", rules), RuleFileError);
}

TEST_CASE("load_rules reads the shipped rule directory") {
  NormRuleSet rules = load_rules(std::string(SUBLM_DATA_DIR) + "/rules");
  CHECK(rules.abbreviations.count("dhr."));
  CHECK(rules.spelling_map.at("on-line") == "online");
  CHECK(rules.spelling_map.at("Schelde-oever") == "Scheldeoever");
  CHECK(rules.case_freq.count("de"));
  CHECK(rules.caps_word_max_len == 4);
  CHECK(rules.locale == "nl");

  // Missing directory: everything empty, defaults intact.
  testutil::TempDir tmp;
  NormRuleSet none = load_rules(tmp.file("does_not_exist"));
  CHECK(none.abbreviations.empty());
  CHECK(none.caps_word_max_len == 4);
}
