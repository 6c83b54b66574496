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

#include <cmath>

#include <zlib.h>

#include "oracles.hpp"
#include "sublm/arpa.hpp"
#include "sublm/counts.hpp"
#include "sublm/mkn.hpp"
#include "sublm/scorer.hpp"
#include "testutil.hpp"

using namespace sublm;
using Catch::Matchers::WithinAbs;

namespace {

ArpaModel tiny_model() {
  ArpaModel m;
  m.order = 2;
  m.entries.resize(2);
  m.section(1).push_back({-1.0, "a", -0.5});
  m.section(1).push_back({-0.3, "b", -0.4});
  m.section(1).push_back({-2.0, "<unk>", std::nullopt});
  m.section(2).push_back({-0.2, "a b", std::nullopt});
  return m;
}

}  // namespace

TEST_CASE("writer emits the canonical layout") {
  std::string text = serialize_arpa(tiny_model());
  CHECK(text ==
        "\\data\\\n"
        "ngram 1=3\n"
        "ngram 2=1\n"
        "\n"
        "\\1-grams:\n"
        "-2.0000000\t<unk>\n"
        "-1.0000000\ta\t-0.5000000\n"
        "-0.3000000\tb\t-0.4000000\n"
        "\n"
        "\\2-grams:\n"
        "-0.2000000\ta b\n"
        "\n"
        "\\end\\\n");
}

TEST_CASE("negative zero never appears in output") {
  ArpaModel m;
  m.order = 2;
  m.entries.resize(2);
  m.section(1).push_back({-1.0, "x", -1e-9});
  m.section(2).push_back({-1e-12, "x x", std::nullopt});
  std::string text = serialize_arpa(m);
  CHECK(text.find("-0.0000000") == std::string::npos);
  CHECK(text.find("0.0000000") != std::string::npos);
}

TEST_CASE("read back of written model compares equal") {
  std::string text = serialize_arpa(tiny_model());
  ArpaModel back = parse_arpa(text);
  CHECK(back.order == 2);
  // The writer sorts sections, so compare against the sorted original.
  ArpaModel expect = parse_arpa(serialize_arpa(tiny_model()));
  CHECK(back == expect);
  // Write -> read -> write is byte-identical.
  CHECK(serialize_arpa(back) == text);
}

TEST_CASE("reader tolerates foreign formatting") {
  std::string text =
      "Some toolkit banner\n"
      "with free text\n"
      "\n"
      "\\data\\\n"
      "ngram 1=2\n"
      "ngram 2=1\n"
      "\n"
      "\\1-grams:\n"
      "-1 a -0.5\n"
      "\n"
      "-0.30103 b\n"
      "\n"
      "\\2-grams:\n"
      "-0.5 a b\n"
      "\n"
      "\\end\\\n";
  ArpaModel m = parse_arpa(text);
  CHECK(m.order == 2);
  REQUIRE(m.section(1).size() == 2);
  CHECK(m.section(1)[0].logprob == -1.0);
  REQUIRE(m.section(1)[0].backoff.has_value());
  CHECK(*m.section(1)[0].backoff == -0.5);
  CHECK_FALSE(m.section(1)[1].backoff.has_value());
  CHECK(m.section(2)[0].ngram == "a b");
}

TEST_CASE("malformed arpa inputs raise with line numbers") {
  // Header/body count mismatch.
  try {
    parse_arpa(
        "\\data\\\nngram 1=2\n\n\\1-grams:\n-1.0\ta\n\n\\end\\\n");
    FAIL("expected MalformedArpa");
  } catch (const MalformedArpa& e) {
    CHECK(e.line() > 0);
  }
  // Missing terminator.
  CHECK_THROWS_AS(parse_arpa("\\data\\\nngram 1=1\n\n\\1-grams:\n-1.0\ta\n"),
                  MalformedArpa);
  // Missing \data\ entirely.
  CHECK_THROWS_AS(parse_arpa("\\1-grams:\n-1.0\ta\n\\end\\\n"), MalformedArpa);
  // Sections out of order.
  CHECK_THROWS_AS(
      parse_arpa("\\data\\\nngram 1=1\nngram 2=1\n\n\\2-grams:\n-1.0\ta b\n"
                 "\n\\1-grams:\n-1.0\ta\n\n\\end\\\n"),
      MalformedArpa);
  // Duplicate n-gram in one section.
  CHECK_THROWS_AS(
      parse_arpa("\\data\\\nngram 1=2\n\n\\1-grams:\n-1.0\ta\n-2.0\ta\n\n"
                 "\\end\\\n"),
      MalformedArpa);
  // Unparsable probability.
  CHECK_THROWS_AS(
      parse_arpa("\\data\\\nngram 1=1\n\n\\1-grams:\nxyz\ta\n\n\\end\\\n"),
      MalformedArpa);
  // Too many fields for the order.
  CHECK_THROWS_AS(
      parse_arpa("\\data\\\nngram 1=1\n\n\\1-grams:\n-1.0\ta\t-0.5\t0.1\n\n"
                 "\\end\\\n"),
      MalformedArpa);
  // Content after the terminator.
  CHECK_THROWS_AS(
      parse_arpa("\\data\\\nngram 1=1\n\n\\1-grams:\n-1.0\ta\n\n\\end\\\n"
                 "trailing junk\n"),
      MalformedArpa);
}

TEST_CASE("validator rejects broken models before writing") {
  ArpaModel bad = tiny_model();
  bad.section(2)[0].backoff = -0.1;  // top order may not carry backoff
  CHECK_THROWS_AS(serialize_arpa(bad), InvariantViolation);

  ArpaModel pos = tiny_model();
  pos.section(1)[0].logprob = 0.5;
  CHECK_THROWS_AS(serialize_arpa(pos), InvariantViolation);

  ArpaModel dup = tiny_model();
  dup.section(1).push_back({-1.5, "a", std::nullopt});
  CHECK_THROWS_AS(serialize_arpa(dup), InvariantViolation);

  ArpaModel wrong_order = tiny_model();
  wrong_order.section(2)[0].ngram = "a b c";
  CHECK_THROWS_AS(serialize_arpa(wrong_order), InvariantViolation);
}

TEST_CASE("gzipped model files read transparently") {
  testutil::TempDir tmp;
  std::string text = serialize_arpa(tiny_model());

  gzFile gz = gzopen(tmp.file("m.arpa.gz").string().c_str(), "wb");
  REQUIRE(gz != nullptr);
  gzwrite(gz, text.data(), static_cast<unsigned>(text.size()));
  gzclose(gz);

  ArpaModel m = read_arpa(tmp.file("m.arpa.gz"));
  CHECK(serialize_arpa(m) == text);

  // Plain files pass through the same entry point.
  write_arpa(tiny_model(), tmp.file("m.arpa"));
  ArpaModel plain = read_arpa(tmp.file("m.arpa"));
  CHECK(serialize_arpa(plain) == text);
}

TEST_CASE("trained models round trip bytewise through files") {
  testutil::TempDir tmp;
  auto sents = oracle::random_corpus(3u, 30, 10, 7);
  NormalizedCorpus c;
  c.sentences = sents;
  ModelConfig config;
  config.order = 3;
  ArpaModel model = estimate(count_ngrams(c, 3), config);
  std::string first = serialize_arpa(model);
  write_arpa(model, tmp.file("m.arpa"));
  ArpaModel back = read_arpa(tmp.file("m.arpa"));
  CHECK(serialize_arpa(back) == first);
}

TEST_CASE("scorer returns stored probabilities and walks backoff") {
  Scorer s(tiny_model());
  CHECK(s.order() == 2);
  CHECK(s.has_unk());
  CHECK(s.in_vocab("a"));
  CHECK_FALSE(s.in_vocab("zzz"));

  // Stored bigram.
  CHECK_THAT(s.log10_prob({"a"}, "b"), WithinAbs(-0.2, 1e-15));
  // Backoff through the context's weight: bow(b) + lp(a).
  CHECK_THAT(s.log10_prob({"b"}, "a"), WithinAbs(-0.4 + -1.0, 1e-15));
  // Absent context contributes no weight.
  CHECK_THAT(s.log10_prob({"zzz"}, "b"), WithinAbs(-0.3, 1e-15));
  // Word absent everywhere: -infinity, or <unk> via the open query.
  CHECK(std::isinf(s.log10_prob({"a"}, "zzz")));
  bool oov = false;
  CHECK_THAT(s.log10_prob_or_unk({"a"}, "zzz", &oov),
             WithinAbs(-0.5 + -2.0, 1e-15));
  CHECK(oov);
  // Context longer than order-1 uses only the tail.
  CHECK_THAT(s.log10_prob({"x", "y", "a"}, "b"), WithinAbs(-0.2, 1e-15));
}

TEST_CASE("scorer and direct arpa agree after a file round trip") {
  // File precision is 1e-7; the reloaded scorer must agree to that level.
  testutil::TempDir tmp;
  auto sents = oracle::random_corpus(8u, 18, 24, 6);
  NormalizedCorpus c;
  c.sentences = sents;
  ModelConfig config;
  config.order = 2;
  ArpaModel model = estimate(count_ngrams(c, 2), config);
  write_arpa(model, tmp.file("m.arpa"));
  Scorer orig(model);
  Scorer reread(read_arpa(tmp.file("m.arpa")));
  for (const ArpaEntry& e : model.section(2)) {
    std::vector<std::string> toks = tokenize(e.ngram);
    std::vector<std::string> ctx(toks.begin(), toks.end() - 1);
    CHECK_THAT(reread.log10_prob(ctx, toks.back()),
               WithinAbs(orig.log10_prob(ctx, toks.back()), 1e-6));
  }
}
