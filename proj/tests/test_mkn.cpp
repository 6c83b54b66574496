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

#include "oracles.hpp"
#include "sublm/mkn.hpp"
#include "sublm/scorer.hpp"
#include "testutil.hpp"

using namespace sublm;
using Catch::Matchers::WithinAbs;

namespace {

double p(const Scorer& s, const std::vector<std::string>& ctx,
         std::string_view w) {
  return std::pow(10.0, s.log10_prob(ctx, w));
}

}  // namespace

TEST_CASE("closed-form discounts from count-of-counts") {
  Discounts d = compute_discounts(CountOfCounts{4, 2, 1, 1});
  CHECK_THAT(d.d1, WithinAbs(0.5, 1e-15));
  CHECK_THAT(d.d2, WithinAbs(1.25, 1e-15));
  CHECK_THAT(d.d3plus, WithinAbs(1.0, 1e-15));
  CHECK(d.for_count(1) == d.d1);
  CHECK(d.for_count(2) == d.d2);
  CHECK(d.for_count(7) == d.d3plus);
  CHECK(d.for_count(0) == 0.0);
}

TEST_CASE("missing n3/n4 pins the top discount to d2") {
  Discounts d = compute_discounts(CountOfCounts{4, 2, 0, 0});
  CHECK_THAT(d.d2, WithinAbs(2.0, 1e-15));
  CHECK_THAT(d.d3plus, WithinAbs(2.0, 1e-15));
}

TEST_CASE("too-sparse count-of-counts is an error") {
  CHECK_THROWS_AS(compute_discounts(CountOfCounts{0, 5, 1, 1}),
                  InsufficientStatistics);
  // The strict entry point also rejects n2 = 0.
  CHECK_THROWS_AS(compute_discounts(CountOfCounts{3, 0, 0, 0}),
                  InsufficientStatistics);
}

TEST_CASE("count-of-counts skips the bos unigram") {
  CountTable t = count_ngrams(testutil::corpus({"a b", "a c"}), 2);
  CountOfCounts coc = count_of_counts(t, 1);
  CHECK(coc.n1 == 2);  // b, c
  CHECK(coc.n2 == 2);  // a, </s>; <s> is excluded
  CountOfCounts coc2 = count_of_counts(t, 2);
  CHECK(coc2.n1 == 4);
  CHECK(coc2.n2 == 1);
}

TEST_CASE("two-sentence model reproduces hand-computed probabilities") {
  CountTable t = count_ngrams(testutil::corpus({"a b", "a c"}), 2);
  ModelConfig config;
  config.order = 2;
  DiscountSet ds;
  ArpaModel model = estimate(t, config, &ds);
  Scorer s(model);

  // Adjusted unigram counts are a:1 b:1 c:1 </s>:2, so n1=3, n2=1.
  CHECK_THAT(ds.by_order[0].d1, WithinAbs(0.6, 1e-15));
  CHECK_THAT(ds.by_order[0].d2, WithinAbs(2.0, 1e-15));
  CHECK_THAT(ds.by_order[0].d3plus, WithinAbs(2.0, 1e-15));
  CHECK_THAT(ds.by_order[1].d1, WithinAbs(2.0 / 3.0, 1e-15));

  // Unigrams: leftover mass 19/25 spread uniformly over 5 events.
  CHECK_THAT(p(s, {}, "a"), WithinAbs(29.0 / 125.0, 1e-12));
  CHECK_THAT(p(s, {}, "b"), WithinAbs(29.0 / 125.0, 1e-12));
  CHECK_THAT(p(s, {}, "c"), WithinAbs(29.0 / 125.0, 1e-12));
  CHECK_THAT(p(s, {}, "</s>"), WithinAbs(19.0 / 125.0, 1e-12));
  CHECK_THAT(p(s, {}, "<unk>"), WithinAbs(19.0 / 125.0, 1e-12));

  // Bigrams.
  CHECK_THAT(p(s, {"<s>"}, "a"), WithinAbs(29.0 / 125.0, 1e-12));
  CHECK_THAT(p(s, {"a"}, "b"), WithinAbs(241.0 / 750.0, 1e-12));
  CHECK_THAT(p(s, {"b"}, "</s>"), WithinAbs(163.0 / 375.0, 1e-12));

  // Backoff weights: gamma(<s>) is exactly 1, gamma(a) is 2/3.
  REQUIRE(s.find("<s>") != nullptr);
  CHECK_THAT(s.find("<s>")->backoff, WithinAbs(0.0, 1e-12));
  CHECK_THAT(std::pow(10.0, s.find("a")->backoff),
             WithinAbs(2.0 / 3.0, 1e-12));

  // <s> itself is a non-event.
  CHECK(s.find("<s>")->logprob == kNonEventLogProb);
}

TEST_CASE("every conditional distribution sums to one") {
  CountTable t = count_ngrams(testutil::corpus({"a b", "a c"}), 2);
  ModelConfig config;
  config.order = 2;
  Scorer s(estimate(t, config));

  const std::vector<std::string> events{"a", "b", "c", "</s>", "<unk>"};
  std::vector<std::vector<std::string>> contexts{
      {}, {"<s>"}, {"a"}, {"b"}, {"c"}, {"</s>"}, {"nooitgezien"}};
  for (const auto& ctx : contexts) {
    double sum = 0.0;
    for (const auto& w : events) sum += p(s, ctx, w);
    CHECK_THAT(sum, WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("estimates match the direct-summation reference") {
  for (std::uint32_t seed : {5u, 17u}) {
    for (std::size_t order : {2u, 3u}) {
      // Sparse on purpose: modified Kneser-Ney needs singleton and doubleton
      // counts at every order, which a tiny dense corpus does not have.
      auto sents = oracle::random_corpus(seed, 10, 18, 5);
      NormalizedCorpus c;
      c.sentences = sents;
      CountTable t = count_ngrams(c, order);
      ModelConfig config;
      config.order = order;
      ArpaModel model = estimate(t, config);
      Scorer s(model);
      oracle::MknOracle ref(sents, order);

      // Every stored n-gram's conditional probability, plus unseen events
      // under every stored context.
      for (std::size_t k = 1; k <= order; ++k) {
        for (const ArpaEntry& e : model.section(k)) {
          std::vector<std::string> toks = tokenize(e.ngram);
          std::string w = toks.back();
          if (w == "<s>") continue;
          std::vector<std::string> ctx(toks.begin(), toks.end() - 1);
          INFO("ngram: " << e.ngram);
          CHECK_THAT(p(s, ctx, w), WithinAbs(ref.prob(ctx, w), 1e-12));
        }
      }
      for (const ArpaEntry& e : model.section(order - 1)) {
        std::vector<std::string> ctx = tokenize(e.ngram);
        for (const std::string& w : ref.events()) {
          INFO("context: " << e.ngram << " word: " << w);
          CHECK_THAT(p(s, ctx, w), WithinAbs(ref.prob(ctx, w), 1e-12));
        }
      }
    }
  }
}

TEST_CASE("single-word corpora have too few statistics") {
  CountTable t = count_ngrams(testutil::corpus({"a", "a"}), 1);
  ModelConfig config;
  config.order = 1;
  CHECK_THROWS_AS(estimate(t, config), InsufficientStatistics);
}

TEST_CASE("empty tables are rejected") {
  CountTable t = count_ngrams(NormalizedCorpus{}, 2);
  ModelConfig config;
  config.order = 2;
  CHECK_THROWS_AS(estimate(t, config), InsufficientStatistics);
}

TEST_CASE("order mismatch between table and config") {
  CountTable t = count_ngrams(testutil::corpus({"a b"}), 2);
  ModelConfig config;
  config.order = 3;
  CHECK_THROWS_AS(estimate(t, config), OrderMismatch);
}

TEST_CASE("unk always gets positive probability") {
  CountTable t = count_ngrams(testutil::corpus({"a b", "a c"}), 2);
  ModelConfig config;
  config.order = 2;
  Scorer s(estimate(t, config));
  CHECK(p(s, {}, "<unk>") > 0.0);
  CHECK(s.has_unk());
}

TEST_CASE("unk floor mixes extra mass into unk") {
  CountTable t = count_ngrams(testutil::corpus({"a b", "a c"}), 2);
  ModelConfig plain;
  plain.order = 2;
  Scorer base(estimate(t, plain));

  ModelConfig floored = plain;
  floored.unk_floor = 0.01;
  Scorer s(estimate(t, floored));

  CHECK_THAT(p(s, {}, "<unk>"),
             WithinAbs(0.99 * p(base, {}, "<unk>") + 0.01, 1e-12));
  CHECK_THAT(p(s, {}, "a"), WithinAbs(0.99 * p(base, {}, "a"), 1e-12));

  // Still a distribution.
  double sum = 0.0;
  for (const char* w : {"a", "b", "c", "</s>", "<unk>"}) sum += p(s, {}, w);
  CHECK_THAT(sum, WithinAbs(1.0, 1e-9));
}

TEST_CASE("vocabulary cap flows through estimation") {
  CountTable t = count_ngrams(testutil::corpus({"a b", "a c", "a b"}), 2);
  ModelConfig config;
  config.order = 2;
  config.vocab_policy.mode = VocabPolicy::Mode::kOpenCapped;
  config.vocab_policy.cap = 2;  // keeps a and b; c folds into <unk>
  Scorer s(estimate(t, config));
  CHECK(s.in_vocab("a"));
  CHECK(s.in_vocab("b"));
  CHECK_FALSE(s.in_vocab("c"));
  CHECK(p(s, {"a"}, "<unk>") > 0.0);
}

TEST_CASE("higher-order corpora yield proper distributions") {
  auto sents = oracle::random_corpus(99u, 60, 40, 9);
  NormalizedCorpus c;
  c.sentences = sents;
  CountTable t = count_ngrams(c, 3);
  ModelConfig config;
  config.order = 3;
  ArpaModel model = estimate(t, config);
  Scorer s(model);

  std::vector<std::string> events;
  for (const ArpaEntry& e : model.section(1)) {
    if (e.ngram != "<s>") events.push_back(e.ngram);
  }
  // Sample of bigram contexts, including <s>-initial ones.
  std::size_t checked = 0;
  for (const ArpaEntry& e : model.section(2)) {
    if (checked >= 25) break;
    std::vector<std::string> ctx = tokenize(e.ngram);
    double sum = 0.0;
    for (const auto& w : events) sum += p(s, ctx, w);
    CHECK_THAT(sum, WithinAbs(1.0, 1e-9));
    ++checked;
  }
}
