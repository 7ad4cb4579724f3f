// Copyright 2026 The treetok Authors.
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

#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "treetok/treetok.h"

namespace treetok::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string trees;
  std::string corpus;
  std::string text;
  std::string model;
  std::string merges;
  std::string gold;
  std::string pred;
  std::string tokens;
  std::string out = "-";
  std::string fallback;
  std::string strategy = "right";
  std::uint64_t seed = 0;
  ToolConfig tool;
};

// ---- config file ------------------------------------------------------------

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::map<std::string, std::string> ReadConfigFile(const std::string& path) {
  InputFile file(path);
  std::map<std::string, std::string> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file.stream(), line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = Trim(std::string_view(trimmed).substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    entries[key] = Trim(std::string_view(trimmed).substr(eq + 1));
  }
  return entries;
}

std::optional<std::string> FindConfigPath(const std::vector<std::string>& args) {
  for (std::size_t n = 0; n < args.size(); ++n) {
    if (args[n] == "--config" && n + 1 < args.size()) return args[n + 1];
    if (args[n].rfind("--config=", 0) == 0) return args[n].substr(9);
  }
  return std::nullopt;
}

bool FlagGiven(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Inserts `--key=value` for every config entry the selected subcommand
// accepts and the command line does not already set.
std::vector<std::string> MergeConfig(CLI::App& app, const std::vector<std::string>& args) {
  const auto path = FindConfigPath(args);
  if (!path) return args;
  const auto entries = ReadConfigFile(*path);

  CLI::App* target = &app;
  std::size_t depth = 0;
  while (depth < args.size()) {
    CLI::App* sub = nullptr;
    try {
      sub = target->get_subcommand(args[depth]);
    } catch (const CLI::OptionNotFound&) {
      break;
    }
    target = sub;
    ++depth;
  }

  std::set<std::string> known;
  std::function<void(const CLI::App&)> collect = [&](const CLI::App& a) {
    for (const CLI::Option* opt : a.get_options()) {
      for (const auto& name : opt->get_lnames()) {
        std::string key = name;
        std::replace(key.begin(), key.end(), '-', '_');
        known.insert(key);
      }
    }
    for (const CLI::App* sub : a.get_subcommands({})) collect(*sub);
  };
  collect(app);

  std::vector<std::string> merged(args.begin(), args.begin() + depth);
  for (const auto& [key, value] : entries) {
    if (!known.count(key) || key == "config") {
      throw UsageError("unknown config key '" + key + "'");
    }
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (target->get_option_no_throw(flag) == nullptr) continue;
    if (FlagGiven(args, flag)) continue;
    merged.push_back(flag + "=" + value);
  }
  merged.insert(merged.end(), args.begin() + depth, args.end());
  return merged;
}

// ---- shared helpers ---------------------------------------------------------

std::optional<FallbackSpec> ResolveFallback(const Options& opt) {
  if (opt.fallback.empty()) return std::nullopt;
  auto strategy = ParseTreeStrategy(opt.fallback);
  if (!strategy) throw UsageError("unknown tree strategy '" + opt.fallback + "'");
  return FallbackSpec{*strategy, opt.seed};
}

StringMap<ParseNode> LoadTreeIndex(const std::string& path) {
  StringMap<ParseNode> index;
  if (path.empty()) return index;
  for (auto& rec : LoadTrees(path)) {
    auto [it, inserted] = index.try_emplace(rec.word, std::move(rec.tree));
    if (!inserted && !(it->second == rec.tree)) {
      throw Error(ErrorCode::kMalformedLine,
                  path + ": conflicting trees for word '" + it->first + "'");
    }
  }
  return index;
}

ParseNode TreeFor(const StringMap<ParseNode>& index, std::string_view word,
                  const std::optional<FallbackSpec>& fallback) {
  if (auto it = index.find(word); it != index.end()) return it->second;
  if (fallback) return FallbackTree(word, *fallback);
  throw Error(ErrorCode::kMissingTree, "no tree for word '" + std::string(word) + "'");
}

std::vector<std::string> SortedWords(const CorpusStats& corpus) {
  std::vector<std::string> words;
  words.reserve(corpus.word_freq.size());
  for (const auto& [w, f] : corpus.word_freq) words.push_back(w);
  std::sort(words.begin(), words.end());
  return words;
}

// Reports share stdout with the payload only when the payload goes elsewhere.
std::ostream& ReportStream(const Options& opt, std::ostream& out, std::ostream& err) {
  return opt.out == "-" ? err : out;
}

void Report(std::ostream& os, std::string_view metric, double value) {
  os << metric << '\t' << FormatValue(value) << '\n';
}

void Report(std::ostream& os, std::string_view metric, std::uint64_t value) {
  os << metric << '\t' << value << '\n';
}

// ---- commands ---------------------------------------------------------------

void BuildVocabCommand(const Options& opt, std::ostream& out, std::ostream& err) {
  ValidateConfig(opt.tool);
  const auto fallback = ResolveFallback(opt);
  const CorpusStats corpus = LoadCorpus(opt.corpus, opt.tool.lowercase);
  const auto index = LoadTreeIndex(opt.trees);

  std::vector<WeightedTree> trees;
  trees.reserve(corpus.word_freq.size());
  for (const auto& word : SortedWords(corpus)) {
    trees.push_back({TreeFor(index, word, fallback), corpus.word_freq.at(word)});
  }
  PruneTrace trace;
  const Vocabulary vocab = BuildVocabulary(trees, opt.tool, &trace);

  AtomicOutputFile file(opt.out);
  WriteVocabulary(file.stream(), vocab);
  file.Commit();

  std::ostream& report = ReportStream(opt, out, err);
  Report(report, "vocab_size", static_cast<std::uint64_t>(vocab.size()));
  Report(report, "prune_rounds", static_cast<std::uint64_t>(trace.sizes.size() - 1));
  Report(report, "initial_size", static_cast<std::uint64_t>(trace.sizes.front()));
}

void TokenizeCommand(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto fallback = ResolveFallback(opt);
  TokenizerModel model(LoadVocabulary(opt.model), opt.tool);
  const auto index = LoadTreeIndex(opt.trees);
  InputFile text(opt.text);
  AtomicOutputFile file(opt.out);
  const CorpusTokenStats stats =
      TokenizeCorpus(model, index, text.stream(), &file.stream(), fallback);
  file.Commit();

  const auto summary = SummarizeTokenStream(stats.tokens_per_sentence, stats.unk_tokens);
  std::ostream& report = ReportStream(opt, out, err);
  Report(report, "sentences", static_cast<std::uint64_t>(stats.sentences()));
  Report(report, "total_tokens", summary.total_tokens);
  Report(report, "avg_tokens_per_sentence", summary.avg_tokens_per_sentence);
  Report(report, "unk_rate", summary.unk_rate);
}

std::vector<GoldSegmentation> LoadPredictions(const std::string& path) {
  InputFile file(path);
  return ReadGold(file.stream());
}

void SegAccuracyCommand(const Options& opt, std::ostream& out) {
  const auto golds = LoadGold(opt.gold);
  std::vector<std::vector<std::string>> preds;
  preds.reserve(golds.size());

  const int sources = !opt.pred.empty() + !opt.model.empty() + !opt.merges.empty();
  if (sources != 1) throw UsageError("give exactly one of --pred, --model, --merges");

  if (!opt.pred.empty()) {
    const auto records = LoadPredictions(opt.pred);
    if (records.size() != golds.size()) {
      throw Error(ErrorCode::kLengthMismatch,
                  std::to_string(records.size()) + " predictions for " +
                      std::to_string(golds.size()) + " gold words");
    }
    for (std::size_t n = 0; n < records.size(); ++n) {
      if (records[n].word != golds[n].word) {
        throw Error(ErrorCode::kLengthMismatch,
                    "line " + std::to_string(n + 1) + ": prediction for '" + records[n].word +
                        "' aligned with gold '" + golds[n].word + "'");
      }
      preds.push_back(records[n].morphs);
    }
  } else if (!opt.model.empty()) {
    const auto fallback = ResolveFallback(opt);
    TokenizerModel model(LoadVocabulary(opt.model), opt.tool);
    const auto index = LoadTreeIndex(opt.trees);
    for (const auto& g : golds) {
      preds.push_back(TokenizeWord(model, g.word, TreeFor(index, g.word, fallback)).tokens);
    }
  } else {
    InputFile file(opt.merges);
    const BpeEncoder encoder(ReadMerges(file.stream()));
    for (const auto& g : golds) preds.push_back(encoder.Tokenize(g.word));
  }
  Report(out, "seg-accuracy", SegmentationAccuracy(preds, golds));
  Report(out, "words", static_cast<std::uint64_t>(golds.size()));
}

void MorphRecallCommand(const Options& opt, std::ostream& out) {
  const auto fallback = ResolveFallback(opt);
  const auto golds = LoadGold(opt.gold);
  const auto index = LoadTreeIndex(opt.trees);
  std::vector<ParseNode> trees;
  trees.reserve(golds.size());
  for (const auto& g : golds) trees.push_back(TreeFor(index, g.word, fallback));
  std::vector<const ParseNode*> views;
  for (const auto& t : trees) views.push_back(&t);
  const RecallSummary summary = MacroMorphemeRecall(views, golds);
  Report(out, "morph-recall", summary.mean);
  Report(out, "applicable", static_cast<std::uint64_t>(summary.applicable));
  Report(out, "skipped", static_cast<std::uint64_t>(summary.skipped));
}

struct TokenFileStats {
  StringMap<std::uint64_t> counts;
  std::vector<std::size_t> per_sentence;
};

TokenFileStats ReadTokenFile(const std::string& path) {
  InputFile file(path);
  TokenFileStats stats;
  std::string line;
  std::uint64_t offset = 0;
  while (std::getline(file.stream(), line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto bad = utf8::FindInvalid(line)) {
      throw Error(ErrorCode::kInvalidUtf8,
                  path + ": invalid UTF-8 at byte offset " + std::to_string(offset + *bad));
    }
    offset += line.size() + 1;
    const auto toks = utf8::SplitWhitespace(line);
    if (toks.empty()) continue;
    for (std::string_view t : toks) ++stats.counts[std::string(t)];
    stats.per_sentence.push_back(toks.size());
  }
  return stats;
}

void RenyiCommand(const Options& opt, std::ostream& out) {
  const TokenFileStats stats = ReadTokenFile(opt.tokens);
  const double alpha = opt.tool.renyi_alpha;
  Report(out, "renyi-efficiency",
         RenyiEfficiency(TokenDistribution::FromCounts(stats.counts), alpha));
  Report(out, "alpha", alpha);
  Report(out, "types", static_cast<std::uint64_t>(stats.counts.size()));
}

void StatsCommand(const Options& opt, std::ostream& out) {
  const TokenFileStats stats = ReadTokenFile(opt.tokens);
  std::uint64_t unk = 0;
  if (!opt.model.empty()) {
    const Vocabulary vocab = LoadVocabulary(opt.model);
    for (const auto& [tok, c] : stats.counts) {
      if (!vocab.Contains(tok)) unk += c;
    }
  }
  Vocabulary observed;
  for (const auto& [tok, c] : stats.counts) observed.Set(tok, c);
  const auto summary = SummarizeTokenStream(stats.per_sentence, unk);
  Report(out, "sentences", static_cast<std::uint64_t>(stats.per_sentence.size()));
  Report(out, "total_tokens", summary.total_tokens);
  Report(out, "avg_tokens_per_sentence", summary.avg_tokens_per_sentence);
  if (!opt.model.empty()) Report(out, "unk_rate", summary.unk_rate);
  Report(out, "corpus_entropy", CorpusEntropy(observed));
}

void ParseCommand(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto strategy = ParseTreeStrategy(opt.strategy);
  if (!strategy) throw UsageError("unknown tree strategy '" + opt.strategy + "'");
  const CorpusStats corpus = LoadCorpus(opt.corpus, opt.tool.lowercase);
  std::vector<TreeRecord> records;
  for (const auto& word : SortedWords(corpus)) {
    records.push_back({word, FallbackTree(word, *strategy, opt.seed)});
  }
  AtomicOutputFile file(opt.out);
  WriteTrees(file.stream(), records);
  file.Commit();
  Report(ReportStream(opt, out, err), "trees", static_cast<std::uint64_t>(records.size()));
}

void BpeTrainCommand(const Options& opt, std::ostream& out, std::ostream& err) {
  const CorpusStats corpus = LoadCorpus(opt.corpus, opt.tool.lowercase);
  const BpeModel model = BpeTrain(corpus, opt.tool.target_vocab_size);
  AtomicOutputFile merges(opt.merges);
  WriteMerges(merges.stream(), model.merges);
  AtomicOutputFile vocab(opt.out);
  WriteVocabulary(vocab.stream(), model.vocab);
  merges.Commit();
  vocab.Commit();
  std::ostream& report = opt.merges == "-" ? err : ReportStream(opt, out, err);
  Report(report, "merges", static_cast<std::uint64_t>(model.merges.size()));
  Report(report, "vocab_size", static_cast<std::uint64_t>(model.vocab.size()));
}

void BpeTokenizeCommand(const Options& opt, std::ostream& out, std::ostream& err) {
  InputFile merges(opt.merges);
  const BpeEncoder encoder(ReadMerges(merges.stream()));
  InputFile text(opt.text);
  AtomicOutputFile file(opt.out);
  std::vector<std::size_t> per_sentence;
  std::string line;
  while (std::getline(text.stream(), line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::FindInvalid(line)) throw Error(ErrorCode::kInvalidUtf8, "invalid UTF-8 in text");
    const std::string source = opt.tool.lowercase ? utf8::ToLower(line) : line;
    const auto words = utf8::SplitWhitespace(source);
    std::size_t count = 0;
    for (std::string_view w : words) {
      for (const auto& tok : encoder.Tokenize(w)) {
        file.stream() << (count++ ? " " : "") << tok;
      }
    }
    file.stream() << '\n';
    if (!words.empty()) per_sentence.push_back(count);
  }
  file.Commit();
  const auto summary = SummarizeTokenStream(per_sentence, 0);
  std::ostream& report = ReportStream(opt, out, err);
  Report(report, "sentences", static_cast<std::uint64_t>(per_sentence.size()));
  Report(report, "total_tokens", summary.total_tokens);
  Report(report, "avg_tokens_per_sentence", summary.avg_tokens_per_sentence);
}

// ---- command-line surface -----------------------------------------------------

void AddConfig(CLI::App* app, Options& opt) {
  app->add_option("--config", opt.config, "Flat key=value file; flags take precedence");
}

void AddFallback(CLI::App* app, Options& opt) {
  app->add_option("--fallback", opt.fallback,
                  "Tree strategy for words without a tree: right|left|balanced|random");
  app->add_option("--seed", opt.seed, "Seed for the random strategy");
}

void AddThreads(CLI::App* app, Options& opt) {
  app->add_option("--threads", opt.tool.threads, "Worker cap; 0 uses all cores");
}

void AddLowercase(CLI::App* app, Options& opt) {
  app->add_flag("--lowercase", opt.tool.lowercase, "Lowercase words before lookup");
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidAlpha:
    case ErrorCode::kInvalidConfig:
      return kExitUsageError;
    default:
      return kExitDomainError;
  }
}

}  // namespace

std::string FormatValue(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eni") == std::string::npos) s += ".0";
  return s;
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app("Tree-constrained subword tokenization", "treetok");
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build-vocab", "Build and prune a vocabulary from trees");
  build->add_option("--trees", opt.trees, "Trees file (word<TAB>tree)");
  build->add_option("--corpus", opt.corpus, "Training corpus")->required();
  build->add_option("--vocab-size", opt.tool.target_vocab_size, "Target vocabulary size");
  build->add_option("--pair-threshold", opt.tool.pair_threshold,
                    "Admit pairs whose frequency exceeds this");
  build->add_option("--prune-rate", opt.tool.prune_rate, "Fraction removed per round");
  build->add_option("--out", opt.out, "Vocabulary file")->required();
  AddFallback(build, opt);
  AddLowercase(build, opt);
  AddThreads(build, opt);
  AddConfig(build, opt);

  auto* tokenize = app.add_subcommand("tokenize", "Segment a text with a vocabulary");
  tokenize->add_option("--model", opt.model, "Vocabulary file")->required();
  tokenize->add_option("--trees", opt.trees, "Trees file");
  tokenize->add_option("--text", opt.text, "Input text")->required();
  tokenize->add_option("--out", opt.out, "Token output (default stdout)");
  tokenize->add_option("--cache", opt.tool.cache_capacity, "Word cache entries; 0 disables");
  AddFallback(tokenize, opt);
  AddLowercase(tokenize, opt);
  AddConfig(tokenize, opt);

  auto* eval = app.add_subcommand("eval", "Evaluation metrics");
  eval->require_subcommand(1);

  auto* seg = eval->add_subcommand("seg-accuracy", "Exact-match segmentation accuracy");
  seg->add_option("--gold", opt.gold, "Gold file")->required();
  seg->add_option("--pred", opt.pred, "Predictions (word<TAB>tokens), aligned with gold");
  seg->add_option("--model", opt.model, "Segment gold words with this vocabulary");
  seg->add_option("--trees", opt.trees, "Trees for --model");
  seg->add_option("--merges", opt.merges, "Segment gold words with this BPE merge list");
  AddFallback(seg, opt);
  AddConfig(seg, opt);

  auto* recall = eval->add_subcommand("morph-recall", "Morpheme boundary recall of trees");
  recall->add_option("--trees", opt.trees, "Trees file");
  recall->add_option("--gold", opt.gold, "Gold file")->required();
  AddFallback(recall, opt);
  AddConfig(recall, opt);

  auto* renyi = eval->add_subcommand("renyi", "Renyi efficiency of a token stream");
  renyi->add_option("--tokens", opt.tokens, "Tokenized text")->required();
  renyi->add_option("--alpha", opt.tool.renyi_alpha, "Renyi order");
  AddConfig(renyi, opt);

  auto* stats = eval->add_subcommand("stats", "Token stream statistics");
  stats->add_option("--tokens", opt.tokens, "Tokenized text")->required();
  stats->add_option("--model", opt.model, "Vocabulary for the unknown-token rate");
  AddConfig(stats, opt);

  auto* parse = app.add_subcommand("parse", "Write heuristic trees for corpus words");
  parse->add_option("--corpus", opt.corpus, "Corpus")->required();
  parse->add_option("--strategy", opt.strategy, "right|left|balanced|random");
  parse->add_option("--seed", opt.seed, "Seed for the random strategy");
  parse->add_option("--out", opt.out, "Trees file (default stdout)");
  AddLowercase(parse, opt);
  AddConfig(parse, opt);

  auto* bpe_train = app.add_subcommand("bpe-train", "Train the BPE baseline");
  bpe_train->add_option("--corpus", opt.corpus, "Corpus")->required();
  bpe_train->add_option("--vocab-size", opt.tool.target_vocab_size, "Vocabulary budget");
  bpe_train->add_option("--merges", opt.merges, "Merges file")->required();
  bpe_train->add_option("--out", opt.out, "Vocabulary file")->required();
  AddLowercase(bpe_train, opt);
  AddConfig(bpe_train, opt);

  auto* bpe_tok = app.add_subcommand("bpe-tokenize", "Segment a text with BPE merges");
  bpe_tok->add_option("--merges", opt.merges, "Merges file")->required();
  bpe_tok->add_option("--text", opt.text, "Input text")->required();
  bpe_tok->add_option("--out", opt.out, "Token output (default stdout)");
  AddLowercase(bpe_tok, opt);
  AddConfig(bpe_tok, opt);

  try {
    std::vector<std::string> argv = MergeConfig(app, args);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);

    if (build->parsed()) {
      BuildVocabCommand(opt, out, err);
    } else if (tokenize->parsed()) {
      TokenizeCommand(opt, out, err);
    } else if (seg->parsed()) {
      SegAccuracyCommand(opt, out);
    } else if (recall->parsed()) {
      MorphRecallCommand(opt, out);
    } else if (renyi->parsed()) {
      RenyiCommand(opt, out);
    } else if (stats->parsed()) {
      StatsCommand(opt, out);
    } else if (parse->parsed()) {
      ParseCommand(opt, out, err);
    } else if (bpe_train->parsed()) {
      BpeTrainCommand(opt, out, err);
    } else if (bpe_tok->parsed()) {
      BpeTokenizeCommand(opt, out, err);
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  } catch (const UsageError& e) {
    err << "treetok: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const Error& e) {
    err << "treetok: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "treetok: " << e.what() << '\n';
    return kExitDomainError;
  }
}

}  // namespace treetok::cli
