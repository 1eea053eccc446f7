// Copyright 2026 The silverner Authors.
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

#include "silverner/cli.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "silverner/alias_dictionary.h"
#include "silverner/baseline_tagger.h"
#include "silverner/conll_io.h"
#include "silverner/corpus_generator.h"
#include "silverner/dump_ingest.h"
#include "silverner/entity_classifier.h"
#include "silverner/evaluator.h"
#include "silverner/tagger_kernels.h"
#include "silverner/text_segmentation.h"
#include "silverner/types.h"

namespace silverner {

namespace {

const std::map<std::string, std::string> &ConfigDefaults() {
  static const std::map<std::string, std::string> defaults = {
      {"min_alias_length", "2"},
      {"require_capital", "1"},
      {"include_redirects", "1"},
      {"strip_disambiguation_qualifier", "1"},
      {"suffix_stripping", "0"},
      {"infer_aliases", "1"},
      {"split_comma_aliases", "1"},
      {"exempt_sentence_initial", "1"},
      {"stoplist", ""},
      {"tokenizer_rules", ""},
      {"priority", "PER,ORG,LOC"},
      {"wiki_code", "hywiki"},
      {"disambiguation_classes", "Q4167410"},
      {"max_record_bytes", "0"},
      {"use_current_word", "1"},
      {"use_prev_next_words", "1"},
      {"max_ngram", "6"},
      {"use_word_shape", "1"},
      {"window", "1"},
      {"hash_bits", "22"},
  };
  return defaults;
}

std::vector<std::string> SplitList(const std::string &text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Input stream owning either a file or borrowing stdin ("-").
class Input {
 public:
  explicit Input(const std::string &path) {
    if (path == "-") {
      stream_ = &std::cin;
      return;
    }
    if (std::filesystem::is_directory(path)) throw InputError("'" + path + "' is a directory");
    file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*file_) throw InputError("cannot open '" + path + "'");
    stream_ = file_.get();
  }
  std::istream &get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream *stream_ = nullptr;
};

// Writes to a temporary file and renames on commit, so failed runs leave no partial output.
class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)), tmp_(path_ + ".tmp") {
    file_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!file_) throw InputError("cannot write '" + path_ + "'");
  }
  ~Output() {
    if (!committed_) {
      file_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }
  std::ostream &get() { return file_; }
  void Commit() {
    file_.close();
    if (!file_) throw InputError("failed writing '" + path_ + "'");
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
  }

 private:
  std::string path_;
  std::string tmp_;
  std::ofstream file_;
  bool committed_ = false;
};

TokenizerRules LoadTokenizer(const RunConfig &config) {
  const std::string &path = config.Get("tokenizer_rules");
  if (path.empty()) return {};
  Input in(path);
  return ReadTokenizerRules(in.get());
}

TypeMapping LoadMapping(const std::string &path, const RunConfig &config) {
  Input in(path);
  TypeMapping mapping = ReadTypeMapping(in.get());
  mapping.priority = ParsePriority(config.Get("priority"));
  return mapping;
}

EntityStreamOptions EntityOptions(const RunConfig &config) {
  EntityStreamOptions options;
  options.wiki_code = config.Get("wiki_code");
  auto classes = SplitList(config.Get("disambiguation_classes"));
  options.disambiguation_classes = {classes.begin(), classes.end()};
  options.max_record_bytes = static_cast<std::size_t>(config.GetInt("max_record_bytes"));
  return options;
}

AliasConfig MakeAliasConfig(const RunConfig &config, const TokenizerRules &rules) {
  AliasConfig ac;
  ac.min_alias_length = static_cast<std::size_t>(config.GetInt("min_alias_length"));
  ac.require_capital = config.GetBool("require_capital");
  ac.include_redirects = config.GetBool("include_redirects");
  ac.strip_disambiguation_qualifier = config.GetBool("strip_disambiguation_qualifier");
  ac.tokenizer = rules;
  if (config.GetBool("suffix_stripping")) ac.normalizer = SuffixStripper(DefaultArmenianSuffixes());
  return ac;
}

FeatureTemplateConfig MakeFeatureConfig(const RunConfig &config) {
  FeatureTemplateConfig fc;
  fc.use_current_word = config.GetBool("use_current_word");
  fc.use_prev_next_words = config.GetBool("use_prev_next_words");
  fc.max_ngram = static_cast<int>(config.GetInt("max_ngram"));
  fc.use_word_shape = config.GetBool("use_word_shape");
  fc.window = static_cast<int>(config.GetInt("window"));
  fc.hash_bits = static_cast<int>(config.GetInt("hash_bits"));
  return fc;
}

struct Knowledge {
  std::vector<RawArticle> articles;
  KnowledgeIndex index;
};

Knowledge LoadKnowledge(const std::string &wiki_dump, const std::string &wikidata_dump,
                        const std::string &mapping_path, const RunConfig &config,
                        Counters &counters) {
  if (wiki_dump == "-" && wikidata_dump == "-") {
    throw InputError("only one dump can be read from standard input");
  }
  TypeMapping mapping = LoadMapping(mapping_path, config);
  Knowledge k;
  {
    Input in(wiki_dump);
    PageStreamOptions po;
    po.max_record_bytes = static_cast<std::size_t>(config.GetInt("max_record_bytes"));
    k.articles = ReadAllArticles(in.get(), po, &counters);
  }
  std::vector<EntityRecord> entities;
  {
    Input in(wikidata_dump);
    entities = ReadAllEntities(in.get(), EntityOptions(config), &counters);
  }
  k.index = BuildKnowledgeIndex(entities, k.articles, mapping, &counters);
  return k;
}

AnnotatedCorpus LoadCorpus(const std::string &path) {
  Input in(path);
  return ReadConll(in.get());
}

void WriteStats(std::ostream &os, const CorpusStats &stats) {
  os << "sentences\t" << stats.sentences << '\n';
  os << "tokens\t" << stats.tokens << '\n';
  for (NEType t : {NEType::kLOC, NEType::kORG, NEType::kPER}) {
    os << NETypeName(t) << '\t' << stats.entities.at(t) << '\n';
  }
}

struct Flags {
  std::string wiki_dump, wikidata_dump, mapping, config, output, corpus, gold, pred, model;
  std::string train_out, dev_out, aliases, wiki_code, priority, manifest, format = "text";
  std::uint64_t seed = 1;
  double train_fraction = 0.8;
  int epochs = 20;
  std::size_t jobs = 1;
  bool confusion = false;
};

}  // namespace

RunConfig::RunConfig() : values_(ConfigDefaults()) {}

void RunConfig::Set(const std::string &key, const std::string &value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw InputError("unknown config key '" + key + "'");
  it->second = value;
  // Validate eagerly so errors point at the offending key.
  if (key == "priority") {
    ParsePriority(value);
  } else if (key != "stoplist" && key != "tokenizer_rules" && key != "wiki_code" &&
             key != "disambiguation_classes") {
    GetInt(key);
  }
}

const std::string &RunConfig::Get(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw InvariantError("config key '" + key + "' has no default");
  return it->second;
}

std::int64_t RunConfig::GetInt(const std::string &key) const {
  const std::string &v = Get(key);
  char *end = nullptr;
  long long n = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || n < 0) {
    throw InputError("config key '" + key + "' needs a non-negative integer, got '" + v + "'");
  }
  return n;
}

bool RunConfig::GetBool(const std::string &key) const {
  auto n = GetInt(key);
  if (n > 1) throw InputError("config key '" + key + "' must be 0 or 1");
  return n == 1;
}

void RunConfig::Load(const std::string &path) {
  Input in(path);
  std::string line;
  int line_number = 0;
  while (std::getline(in.get(), line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError(path + ":" + std::to_string(line_number) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    Set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::string RunConfig::Canonical() const {
  std::string text;
  for (const auto &[k, v] : values_) text += k + "=" + v + "\n";
  return text;
}

std::string RunConfig::Digest() const { return Hex64(FeatureHash(Canonical())); }

void RunManifest::Write(std::ostream &os) const {
  os << "subcommand=" << subcommand << '\n';
  os << "tool_version=" << kToolVersion << '\n';
  os << "kernels=" << kernels::IsaName(kernels::ActiveKernels().isa) << '\n';
  os << "config_digest=" << config_digest << '\n';
  if (!seed.empty()) os << "seed=" << seed << '\n';
  for (const auto &[k, v] : inputs) os << "input." << k << '=' << v << '\n';
  for (const auto &[k, v] : outputs) os << "output." << k << '=' << v << '\n';
  for (const auto &[k, v] : counters) os << "counter." << k << '=' << v << '\n';
}

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Silver-standard NER corpus tools", "silverner"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Flags f;

  auto add_config = [&](CLI::App *sub) {
    sub->add_option("--config", f.config, "key=value config file (default: $SILVERNER_CONFIG)");
    sub->add_option("--manifest", f.manifest, "run manifest path");
  };
  auto add_dumps = [&](CLI::App *sub) {
    sub->add_option("--wikidata-dump", f.wikidata_dump, "Wikidata JSON dump, one entity per line")
        ->required();
    sub->add_option("--mapping", f.mapping, "subclass-of to NE type mapping")->required();
    sub->add_option("--wiki-code", f.wiki_code, "sitelink key, e.g. hywiki");
    sub->add_option("--priority", f.priority, "type priority, e.g. PER,ORG,LOC");
  };

  auto *classify = app.add_subcommand("classify", "classify entities into PER/ORG/LOC");
  add_dumps(classify);
  classify->add_option("--output", f.output, "classification map")->required();
  add_config(classify);

  auto *aliases = app.add_subcommand("aliases", "build the alias dictionary");
  aliases->add_option("--wiki-dump", f.wiki_dump, "Wikipedia XML dump (- for stdin)")->required();
  add_dumps(aliases);
  aliases->add_option("--output", f.output, "dictionary file")->required();
  add_config(aliases);

  auto *generate = app.add_subcommand("generate", "generate the silver-standard corpus");
  generate->add_option("--wiki-dump", f.wiki_dump, "Wikipedia XML dump (- for stdin)")->required();
  add_dumps(generate);
  generate->add_option("--aliases", f.aliases, "prebuilt alias dictionary");
  generate->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  generate->add_option("--output", f.output, "CoNLL output")->required();
  add_config(generate);

  auto *stats = app.add_subcommand("stats", "corpus statistics");
  stats->add_option("--corpus", f.corpus, "CoNLL corpus")->required();
  stats->add_option("--output", f.output, "write statistics here instead of stdout");
  add_config(stats);

  auto *validate = app.add_subcommand("validate", "check IOB2 validity");
  validate->add_option("--corpus", f.corpus, "CoNLL corpus")->required();
  add_config(validate);

  auto *split = app.add_subcommand("split", "split a corpus into train and dev parts");
  split->add_option("--corpus", f.corpus, "CoNLL corpus")->required();
  split->add_option("--seed", f.seed, "shuffle seed");
  split->add_option("--train-fraction", f.train_fraction, "fraction of sentences for training")
      ->check(CLI::Range(0.0, 1.0));
  split->add_option("--train-out", f.train_out, "training part")->required();
  split->add_option("--dev-out", f.dev_out, "development part")->required();
  add_config(split);

  auto *train = app.add_subcommand("train", "train the baseline tagger");
  train->add_option("--corpus", f.corpus, "IOB2 training corpus")->required();
  train->add_option("--epochs", f.epochs, "training epochs");
  train->add_option("--seed", f.seed, "shuffle seed");
  train->add_option("--model", f.model, "model output")->required();
  add_config(train);

  auto *tag = app.add_subcommand("tag", "tag a corpus with a trained model");
  tag->add_option("--model", f.model, "model file")->required();
  tag->add_option("--corpus", f.corpus, "CoNLL corpus to tag")->required();
  tag->add_option("--output", f.output, "tagged CoNLL output")->required();
  add_config(tag);

  auto *evaluate = app.add_subcommand("evaluate", "score predictions against gold");
  evaluate->add_option("--gold", f.gold, "gold CoNLL corpus")->required();
  evaluate->add_option("--pred", f.pred, "predicted CoNLL corpus")->required();
  evaluate->add_option("--format", f.format, "text or tsv")
      ->check(CLI::IsMember({"text", "tsv"}));
  evaluate->add_flag("--confusion", f.confusion, "also print the token confusion matrix");
  evaluate->add_option("--output", f.output, "write the report here instead of stdout");
  add_config(evaluate);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return 1;
  }

  CLI::App *sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  RunManifest manifest;
  manifest.subcommand = name;
  Counters counters;

  try {
    RunConfig config;
    std::string config_path = f.config;
    if (config_path.empty()) {
      if (const char *env = std::getenv(std::string(kConfigEnvVar).c_str()); env && *env) {
        config_path = env;
      }
    }
    if (!config_path.empty()) {
      config.Load(config_path);
      manifest.inputs["config"] = config_path;
    }
    if (!f.wiki_code.empty()) config.Set("wiki_code", f.wiki_code);
    if (!f.priority.empty()) config.Set("priority", f.priority);
    manifest.config_digest = config.Digest();

    std::string primary_output;
    if (name == "classify") {
      manifest.inputs["wikidata_dump"] = f.wikidata_dump;
      manifest.inputs["mapping"] = f.mapping;
      TypeMapping mapping = LoadMapping(f.mapping, config);
      std::vector<EntityRecord> entities;
      {
        Input in(f.wikidata_dump);
        entities = ReadAllEntities(in.get(), EntityOptions(config), &counters);
      }
      ClassMap classes = ClassifyAll(entities, mapping);
      counters.Add("classify.classified", static_cast<std::int64_t>(classes.size()));
      Output o(f.output);
      WriteClassMap(o.get(), classes, BuildSiteIndex(entities));
      o.Commit();
      primary_output = manifest.outputs["classes"] = f.output;
    } else if (name == "aliases" || name == "generate") {
      manifest.inputs["wiki_dump"] = f.wiki_dump;
      manifest.inputs["wikidata_dump"] = f.wikidata_dump;
      manifest.inputs["mapping"] = f.mapping;
      TokenizerRules rules = LoadTokenizer(config);
      Knowledge k = LoadKnowledge(f.wiki_dump, f.wikidata_dump, f.mapping, config, counters);
      WikitextOptions wikitext;
      AliasConfig ac = MakeAliasConfig(config, rules);
      AliasDictionary dict(ac);
      if (!f.aliases.empty()) {
        manifest.inputs["aliases"] = f.aliases;
        Input in(f.aliases);
        dict = AliasDictionary::Read(in.get(), ac);
      } else {
        AnchorCounts anchors = CollectLinkAnchors(k.articles, wikitext);
        dict = BuildAliasDictionary(anchors, k.articles, k.index, ac, wikitext, &counters);
      }
      Output o(f.output);
      if (name == "aliases") {
        dict.Write(o.get());
        manifest.outputs["aliases"] = f.output;
      } else {
        GeneratorConfig gc;
        gc.selection.exempt_sentence_initial = config.GetBool("exempt_sentence_initial");
        if (const std::string &path = config.Get("stoplist"); !path.empty()) {
          Input in(path);
          std::string word;
          while (std::getline(in.get(), word)) {
            if (!word.empty() && word.back() == '\r') word.pop_back();
            if (!word.empty() && word[0] != '#') gc.selection.stoplist.insert(word);
          }
        }
        gc.tokenizer = rules;
        gc.wikitext = wikitext;
        gc.infer_aliases = config.GetBool("infer_aliases");
        gc.split_comma_aliases = config.GetBool("split_comma_aliases");
        gc.jobs = f.jobs;
        AnnotatedCorpus corpus = GenerateCorpus(k.articles, k.index, dict, gc, &counters);
        if (auto v = ValidateIob(corpus); !v.empty()) {
          throw InvariantError("generated corpus violates IOB2: " + v[0].reason);
        }
        WriteConll(o.get(), corpus);
        manifest.outputs["corpus"] = f.output;
      }
      o.Commit();
      primary_output = f.output;
    } else if (name == "stats") {
      manifest.inputs["corpus"] = f.corpus;
      CorpusStats s = ComputeStats(LoadCorpus(f.corpus));
      if (f.output.empty()) {
        WriteStats(out, s);
      } else {
        Output o(f.output);
        WriteStats(o.get(), s);
        o.Commit();
        primary_output = manifest.outputs["stats"] = f.output;
      }
    } else if (name == "validate") {
      manifest.inputs["corpus"] = f.corpus;
      auto violations = ValidateIob(LoadCorpus(f.corpus));
      for (const auto &v : violations) {
        out << "sentence " << v.sentence + 1 << " token " << v.token + 1 << ": " << v.reason
            << '\n';
      }
      out << "violations\t" << violations.size() << '\n';
      counters.Add("validate.violations", static_cast<std::int64_t>(violations.size()));
      if (!violations.empty()) {
        err << "error: corpus is not IOB2-valid\n";
        return 1;
      }
    } else if (name == "split") {
      manifest.inputs["corpus"] = f.corpus;
      manifest.seed = std::to_string(f.seed);
      auto [train_part, dev_part] = SplitCorpus(LoadCorpus(f.corpus), f.train_fraction, f.seed);
      Output ot(f.train_out), od(f.dev_out);
      WriteConll(ot.get(), train_part);
      WriteConll(od.get(), dev_part);
      ot.Commit();
      od.Commit();
      counters.Add("split.train_sentences", static_cast<std::int64_t>(train_part.sentences.size()));
      counters.Add("split.dev_sentences", static_cast<std::int64_t>(dev_part.sentences.size()));
      manifest.outputs = {{"train", f.train_out}, {"dev", f.dev_out}};
      primary_output = f.train_out;
    } else if (name == "train") {
      manifest.inputs["corpus"] = f.corpus;
      manifest.seed = std::to_string(f.seed);
      TrainReport report;
      TaggerModel model = Train(LoadCorpus(f.corpus), f.epochs, f.seed, MakeFeatureConfig(config),
                                &report);
      counters.Add("train.updates", report.updates);
      counters.Add("train.features", report.features);
      counters.Add("train.collisions", report.collisions);
      Output o(f.model);
      model.Save(o.get());
      o.Commit();
      primary_output = manifest.outputs["model"] = f.model;
    } else if (name == "tag") {
      manifest.inputs["model"] = f.model;
      manifest.inputs["corpus"] = f.corpus;
      TaggerModel model = [&] {
        Input in(f.model);
        return TaggerModel::Load(in.get());
      }();
      AnnotatedCorpus tagged = TagCorpus(model, LoadCorpus(f.corpus));
      if (auto v = ValidateIob(tagged); !v.empty()) {
        throw InvariantError("tagger output violates IOB2: " + v[0].reason);
      }
      Output o(f.output);
      WriteConll(o.get(), tagged);
      o.Commit();
      primary_output = manifest.outputs["corpus"] = f.output;
    } else if (name == "evaluate") {
      manifest.inputs["gold"] = f.gold;
      manifest.inputs["pred"] = f.pred;
      AnnotatedCorpus gold = LoadCorpus(f.gold);
      AnnotatedCorpus pred = LoadCorpus(f.pred);
      EvalReport report = Score(gold, pred);
      std::string text = f.format == "tsv" ? RenderReportTsv(report) : RenderReport(report);
      if (f.confusion) text += "\n" + RenderConfusion(Confusion(gold, pred));
      if (f.output.empty()) {
        out << text;
      } else {
        Output o(f.output);
        o.get() << text;
        o.Commit();
        primary_output = manifest.outputs["report"] = f.output;
      }
    }

    for (const auto &[k, v] : counters.values()) manifest.counters[k] = v;
    std::string manifest_path = f.manifest;
    if (manifest_path.empty() && !primary_output.empty()) {
      manifest_path = primary_output + ".manifest";
    }
    if (manifest_path.empty()) {
      manifest.Write(err);
    } else {
      Output o(manifest_path);
      manifest.Write(o.get());
      o.Commit();
    }
    return 0;
  } catch (const InputError &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantError &e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace silverner
