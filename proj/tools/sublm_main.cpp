// sublm_main.cpp
//
// Command line driver: normalize, count, train, train-groups, interp, ppl,
// wer. Exit codes: 0 success, 1 batch completed with per-item failures,
// 2 fatal usage or input error.

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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sublm/sublm.hpp"

namespace fs = std::filesystem;

namespace {

sublm::NormRuleSet rules_or_default(const std::string& rules_dir) {
  if (rules_dir.empty()) return sublm::NormRuleSet{};
  return sublm::load_rules(rules_dir);
}

std::optional<sublm::SourceFormat> format_from_flag(const std::string& flag) {
  if (flag.empty() || flag == "auto") return std::nullopt;
  if (flag == "srt") return sublm::SourceFormat::kSrt;
  if (flag == "plain") return sublm::SourceFormat::kPlain;
  throw sublm::Error("unknown --format '" + flag + "' (srt|plain|auto)");
}

std::vector<std::string> gather_inputs(const std::vector<std::string>& paths,
                                       const std::string& manifest_path) {
  std::vector<std::string> inputs = paths;
  if (!manifest_path.empty()) {
    sublm::CorpusManifest m = sublm::read_manifest(manifest_path);
    fs::path base = fs::path(manifest_path).parent_path();
    for (const auto& entry : m.entries) {
      fs::path p(entry.path);
      inputs.push_back(p.is_absolute() ? p.string() : (base / p).string());
    }
  }
  return inputs;
}

std::string sanitize_filename(const std::string& name) {
  std::string out;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "_" : out;
}

void emit_report(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    sublm::write_text_file(out_path, text);
  }
}

sublm::NormalizedCorpus concat_corpora(const std::vector<std::string>& inputs) {
  sublm::NormalizedCorpus all;
  for (const auto& path : inputs) {
    sublm::NormalizedCorpus one = sublm::read_corpus(path);
    for (auto& s : one.sentences) all.sentences.push_back(std::move(s));
  }
  return all;
}

std::vector<double> parse_weight_list(const std::string& arg) {
  std::vector<double> weights;
  std::size_t pos = 0;
  while (pos <= arg.size()) {
    std::size_t comma = arg.find(',', pos);
    std::string field = comma == std::string::npos
                            ? arg.substr(pos)
                            : arg.substr(pos, comma - pos);
    char* end = nullptr;
    double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size()) {
      throw sublm::Error("bad weight '" + field + "' in --weights");
    }
    weights.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return weights;
}

int run_normalize(const std::vector<std::string>& paths,
                  const std::string& manifest_path,
                  const std::string& rules_dir, const std::string& out_dir,
                  const std::string& format_flag) {
  sublm::NormRuleSet rules = rules_or_default(rules_dir);
  std::optional<sublm::SourceFormat> fmt = format_from_flag(format_flag);
  std::vector<std::string> inputs = gather_inputs(paths, manifest_path);

  fs::create_directories(out_dir);
  std::map<std::string, int> stems;
  std::string report;
  std::size_t failures = 0;

  for (const auto& input : inputs) {
    try {
      sublm::RawSubtitleDoc doc = sublm::ingest(input, fmt);
      sublm::NormalizeResult res = sublm::normalize(doc, rules);

      std::string stem = fs::path(input).stem().string();
      if (stem.empty()) stem = "input";
      int n = ++stems[stem];
      std::string name = sanitize_filename(
          n == 1 ? stem + ".txt" : stem + "_" + std::to_string(n) + ".txt");
      fs::path out_path = fs::path(out_dir) / name;
      sublm::write_text_file(out_path, sublm::render_corpus(res.corpus));

      report += "ok\t" + input + "\t" + out_path.string() + "\tsentences=" +
                std::to_string(res.report.sentences_out) + " tokens=" +
                std::to_string(res.corpus.token_count()) + " lines_dropped=" +
                std::to_string(res.report.lines_dropped_all_caps) + "\n";
      for (const auto& w : res.report.warnings) {
        report += "warn\t" + input + "\t" + w + "\n";
      }
    } catch (const sublm::Error& e) {
      ++failures;
      report += "error\t" + input + "\t" + e.what() + "\n";
    }
  }

  report += "total\t" + std::to_string(inputs.size()) + "\nfailed\t" +
            std::to_string(failures) + "\n";
  sublm::write_text_file(fs::path(out_dir) / "report.txt", report);
  std::cout << report;
  return failures == 0 ? 0 : 1;
}

int run_count(const std::vector<std::string>& inputs, std::size_t order,
              const std::string& out) {
  sublm::CountTable table = sublm::count_ngrams(concat_corpora(inputs), order);
  sublm::write_counts(table, out);
  for (std::size_t k = 1; k <= table.order; ++k) {
    std::cout << "order " << k << "\t" << table.grams(k).size()
              << " distinct n-grams\n";
  }
  return 0;
}

int run_train(const std::string& counts_path,
              const std::vector<std::string>& inputs, std::size_t order,
              std::size_t vocab_cap, const std::string& out) {
  sublm::CountTable table;
  if (!counts_path.empty()) {
    table = sublm::read_counts(counts_path);
  } else {
    table = sublm::count_ngrams(concat_corpora(inputs), order);
  }

  sublm::ModelConfig config;
  config.order = order;
  if (vocab_cap > 0) {
    config.vocab_policy.mode = sublm::VocabPolicy::Mode::kOpenCapped;
    config.vocab_policy.cap = vocab_cap;
  }
  sublm::ArpaModel model = sublm::estimate(table, config);
  sublm::write_arpa(model, out);
  for (std::size_t k = 1; k <= model.order; ++k) {
    std::cout << "ngram " << k << "=" << model.section(k).size() << "\n";
  }
  return 0;
}

int run_train_groups(const std::string& manifest_path, const std::string& by,
                     std::size_t order, std::size_t vocab_cap,
                     const std::string& rules_dir, const std::string& out_dir) {
  if (by != "type" && by != "domain") {
    throw sublm::Error("--by must be 'type' or 'domain'");
  }
  sublm::NormRuleSet rules = rules_or_default(rules_dir);
  sublm::CorpusManifest manifest = sublm::read_manifest(manifest_path);
  fs::path base = fs::path(manifest_path).parent_path();

  std::map<std::string, std::vector<const sublm::ManifestEntry*>> groups;
  std::size_t failures = 0;
  std::string report;

  for (const auto& entry : manifest.entries) {
    if (by == "type") {
      if (entry.show_type.empty()) {
        report += "warn\t" + entry.path + "\tno type tag, skipped\n";
        ++failures;
        continue;
      }
      groups[entry.show_type].push_back(&entry);
    } else {
      if (entry.domains.empty()) {
        report += "warn\t" + entry.path + "\tno domain tags, skipped\n";
        ++failures;
        continue;
      }
      for (const auto& tag : entry.domains) groups[tag].push_back(&entry);
    }
  }

  fs::create_directories(out_dir);
  for (const auto& [group, members] : groups) {
    sublm::NormalizedCorpus corpus;
    std::size_t sources = 0;
    for (const sublm::ManifestEntry* entry : members) {
      fs::path p(entry->path);
      fs::path full = p.is_absolute() ? p : base / p;
      try {
        sublm::NormalizeResult res =
            sublm::normalize(sublm::ingest(full), rules);
        for (auto& s : res.corpus.sentences) {
          corpus.sentences.push_back(std::move(s));
        }
        ++sources;
      } catch (const sublm::Error& e) {
        report += "warn\t" + group + "\t" + full.string() + ": " + e.what() +
                  "\n";
        ++failures;
      }
    }
    if (corpus.sentences.empty()) {
      report += "warn\t" + group + "\tno usable data, group skipped\n";
      ++failures;
      continue;
    }
    try {
      sublm::ModelConfig config;
      config.order = order;
      if (vocab_cap > 0) {
        config.vocab_policy.mode = sublm::VocabPolicy::Mode::kOpenCapped;
        config.vocab_policy.cap = vocab_cap;
      }
      sublm::ArpaModel model =
          sublm::estimate(sublm::count_ngrams(corpus, order), config);
      fs::path out_path =
          fs::path(out_dir) / (sanitize_filename(group) + ".arpa");
      sublm::write_arpa(model, out_path);
      report += "ok\t" + group + "\t" + out_path.string() + "\tsources=" +
                std::to_string(sources) + " sentences=" +
                std::to_string(corpus.sentences.size()) + " tokens=" +
                std::to_string(corpus.token_count()) + "\n";
    } catch (const sublm::Error& e) {
      report += "error\t" + group + "\t" + e.what() + "\n";
      ++failures;
    }
  }

  sublm::write_text_file(fs::path(out_dir) / "groups.txt", report);
  std::cout << report;
  return failures == 0 ? 0 : 1;
}

int run_interp(const std::vector<std::string>& model_paths,
               const std::string& dev_path, double tol, std::size_t max_iters,
               const std::string& out) {
  std::vector<sublm::Scorer> scorers;
  scorers.reserve(model_paths.size());
  for (const auto& p : model_paths) {
    scorers.emplace_back(sublm::read_arpa(p));
  }
  std::vector<const sublm::Scorer*> components;
  for (const auto& s : scorers) components.push_back(&s);

  sublm::InterpolationWeights w =
      sublm::fit_em(components, sublm::read_corpus(dev_path), tol, max_iters);
  emit_report(sublm::serialize_weights(model_paths, w), out);
  return 0;
}

int run_ppl(const std::vector<std::string>& model_paths,
            const std::string& weights_arg, const std::string& test_path,
            bool skip_oov, const std::string& out) {
  std::vector<sublm::Scorer> scorers;
  scorers.reserve(model_paths.size());
  for (const auto& p : model_paths) {
    scorers.emplace_back(sublm::read_arpa(p));
  }
  sublm::NormalizedCorpus test = sublm::read_corpus(test_path);
  sublm::PerplexityOptions opts;
  opts.skip_oov = skip_oov;

  sublm::EvalReport report;
  if (scorers.size() == 1 && weights_arg.empty()) {
    report = sublm::perplexity(scorers[0], test, opts);
  } else {
    if (weights_arg.empty()) {
      throw sublm::Error(
          "--weights is required when scoring more than one model");
    }
    std::vector<double> lambda = parse_weight_list(weights_arg);
    if (lambda.size() != scorers.size()) {
      throw sublm::Error("got " + std::to_string(lambda.size()) +
                         " weights for " + std::to_string(scorers.size()) +
                         " models");
    }
    std::vector<const sublm::Scorer*> components;
    for (const auto& s : scorers) components.push_back(&s);
    sublm::InterpolatedModel mixture(components, lambda);
    report = sublm::perplexity(mixture, test, opts);
  }
  emit_report(sublm::serialize_eval_report(report), out);
  if (!out.empty()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", report.perplexity);
    std::cout << "perplexity\t" << buf << "\n";
  }
  return 0;
}

int run_wer(const std::string& ref_path, const std::string& hyp_path,
            const std::string& rules_dir, const std::string& out) {
  sublm::NormRuleSet rules = rules_or_default(rules_dir);
  auto flatten = [&](const std::string& path) {
    sublm::NormalizeResult res = sublm::normalize(sublm::ingest(path), rules);
    std::vector<std::string> tokens;
    for (auto& s : res.corpus.sentences) {
      for (auto& t : s) tokens.push_back(std::move(t));
    }
    return tokens;
  };
  sublm::WerReport report = sublm::wer(flatten(ref_path), flatten(hyp_path));
  emit_report(sublm::serialize_wer_report(report), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dutch subtitle n-gram language modeling toolkit"};
  app.require_subcommand(1);

  // normalize
  auto* norm = app.add_subcommand("normalize",
                                  "Normalize subtitle/plain text sources");
  std::vector<std::string> norm_paths;
  std::string norm_manifest, norm_rules, norm_out_dir, norm_format = "auto";
  norm->add_option("paths", norm_paths, "Input files (.srt or plain text)");
  norm->add_option("--manifest", norm_manifest, "Corpus manifest file");
  norm->add_option("--rules-dir", norm_rules,
                   "Directory with normalization rule tables");
  norm->add_option("--out", norm_out_dir, "Output directory")->required();
  norm->add_option("--format", norm_format, "srt|plain|auto (default auto)");

  // count
  auto* count = app.add_subcommand("count", "Count n-grams of normalized text");
  std::vector<std::string> count_inputs;
  std::string count_out;
  std::size_t count_order = 5;
  count->add_option("inputs", count_inputs, "Normalized text files")
      ->required();
  count->add_option("--order", count_order, "Highest n-gram order (default 5)");
  count->add_option("--out", count_out, "Count file to write")->required();

  // train
  auto* train = app.add_subcommand("train", "Estimate a Kneser-Ney model");
  std::vector<std::string> train_inputs;
  std::string train_counts, train_out;
  std::size_t train_order = 5, train_cap = 0;
  train->add_option("inputs", train_inputs, "Normalized text files");
  train->add_option("--counts", train_counts, "Train from an existing count file");
  train->add_option("--order", train_order, "Model order (default 5)");
  train->add_option("--vocab-cap", train_cap,
                    "Keep only the N most frequent words; rest become <unk>");
  train->add_option("--out", train_out, "ARPA file to write")->required();

  // train-groups
  auto* groups = app.add_subcommand(
      "train-groups", "Train one model per show type or domain tag");
  std::string groups_manifest, groups_by = "type", groups_rules, groups_out;
  std::size_t groups_order = 5, groups_cap = 0;
  groups->add_option("--manifest", groups_manifest, "Corpus manifest file")
      ->required();
  groups->add_option("--by", groups_by, "Group key: type|domain");
  groups->add_option("--order", groups_order, "Model order (default 5)");
  groups->add_option("--vocab-cap", groups_cap, "Vocabulary cap per group");
  groups->add_option("--rules-dir", groups_rules,
                     "Directory with normalization rule tables");
  groups->add_option("--out", groups_out, "Output directory")->required();

  // interp
  auto* interp = app.add_subcommand(
      "interp", "Fit linear interpolation weights by EM on a dev set");
  std::vector<std::string> interp_models;
  std::string interp_dev, interp_out;
  double interp_tol = 1e-6;
  std::size_t interp_iters = 200;
  interp->add_option("models", interp_models, "Component ARPA files")
      ->required();
  interp->add_option("--dev", interp_dev, "Normalized development text")
      ->required();
  interp->add_option("--tol", interp_tol,
                     "Relative log-likelihood tolerance (default 1e-6)");
  interp->add_option("--max-iters", interp_iters,
                     "Maximum EM iterations (default 200)");
  interp->add_option("--out", interp_out, "Weights report file (default stdout)");

  // ppl
  auto* ppl = app.add_subcommand("ppl", "Perplexity of a model or mixture");
  std::vector<std::string> ppl_models;
  std::string ppl_weights, ppl_test, ppl_out;
  bool ppl_skip_oov = false;
  ppl->add_option("models", ppl_models, "ARPA files")->required();
  ppl->add_option("--weights", ppl_weights,
                  "Comma-separated mixture weights (required for >1 model)");
  ppl->add_option("--test", ppl_test, "Normalized test text")->required();
  ppl->add_flag("--skip-oov", ppl_skip_oov,
                "Skip OOV tokens instead of scoring them as <unk>");
  ppl->add_option("--out", ppl_out, "Report file (default stdout)");

  // wer
  auto* werc = app.add_subcommand("wer", "Word error rate between transcripts");
  std::string wer_ref, wer_hyp, wer_rules, wer_out;
  werc->add_option("--ref", wer_ref, "Reference transcript")->required();
  werc->add_option("--hyp", wer_hyp, "Hypothesis transcript")->required();
  werc->add_option("--rules-dir", wer_rules,
                   "Directory with normalization rule tables");
  werc->add_option("--out", wer_out, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors are fatal
  }

  try {
    if (*norm) {
      return run_normalize(norm_paths, norm_manifest, norm_rules, norm_out_dir,
                           norm_format);
    }
    if (*count) return run_count(count_inputs, count_order, count_out);
    if (*train) {
      if (train_counts.empty() && train_inputs.empty()) {
        throw sublm::Error("train needs input text or --counts");
      }
      return run_train(train_counts, train_inputs, train_order, train_cap,
                       train_out);
    }
    if (*groups) {
      return run_train_groups(groups_manifest, groups_by, groups_order,
                              groups_cap, groups_rules, groups_out);
    }
    if (*interp) {
      return run_interp(interp_models, interp_dev, interp_tol, interp_iters,
                        interp_out);
    }
    if (*ppl) {
      return run_ppl(ppl_models, ppl_weights, ppl_test, ppl_skip_oov, ppl_out);
    }
    if (*werc) return run_wer(wer_ref, wer_hyp, wer_rules, wer_out);
  } catch (const sublm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
