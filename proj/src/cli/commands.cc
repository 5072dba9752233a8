// Copyright 2026 The ScopeIt Authors.
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

#include "scopeit/cli/commands.h"

#include <filesystem>
#include <fstream>
#include <random>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "scopeit/augment/augment.h"
#include "scopeit/augment/synthetic.h"
#include "scopeit/cli/config.h"
#include "scopeit/cli/pipeline.h"
#include "scopeit/cli/service.h"
#include "scopeit/common/error.h"
#include "scopeit/common/io.h"
#include "scopeit/extractors/extractors.h"
#include "scopeit/nnprobe/index.h"
#include "scopeit/scoper/scoper.h"
#include "scopeit/textprep/tokenizer.h"

namespace scopeit::cli {
namespace {

namespace fs = std::filesystem;

// Raw email files: a single file, or every regular file of a directory in
// path order. Ids are file names.
std::vector<std::pair<std::string, std::string>> read_raw_inputs(const std::string& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::directory_iterator(path)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(path);
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (const fs::path& f : files) out.emplace_back(f.filename().string(), read_file(f.string()));
  return out;
}

bool is_jsonl(const std::string& path) { return fs::path(path).extension() == ".jsonl"; }

std::vector<textprep::Document> load_documents(const std::string& path) {
  std::vector<textprep::Document> docs;
  if (is_jsonl(path)) {
    for (corpus::LabeledDocument& d : corpus::load_jsonl_corpus(path, false)) {
      docs.push_back(std::move(d.doc));
    }
  } else {
    for (const auto& [id, text] : read_raw_inputs(path)) {
      docs.push_back(textprep::preprocess_text(id, text));
    }
  }
  return docs;
}

std::string file_id(const std::string& path) { return fs::path(path).filename().string(); }

void print(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

nlohmann::json metrics_json(const model::Metrics& m) { return m.to_json(); }

struct Options {
  // preprocess
  std::string in, out, vocab, build_vocab, vocab_mode = "wordpiece";
  size_t vocab_size = 30000;
  size_t max_tokens = textprep::kDefaultMaxTokens;
  // augment
  std::string negatives, reviews, templates;
  size_t shuffle = 0, per_template = 10;
  // gen-corpus
  std::string spec, out_dir;
  // train
  std::string config, corpus, train, validation, test, store, variant, log;
  double lr = 0;
  int epochs = 0;
  size_t batch_size = 0;
  // shared
  uint64_t seed = 1;
  std::string model, id;
  double threshold = 0;
  // nn
  std::string index, layer = "contextual", metric = "euclidean";
  size_t sample_size = 10000, k = 3;
  long sentence = -1;
  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
};

int cmd_preprocess(const Options& o, std::ostream& out) {
  textprep::VocabMode mode = textprep::vocab_mode_from_string(o.vocab_mode);
  std::vector<textprep::Document> docs = load_documents(o.in);
  std::optional<textprep::Vocabulary> vocab;
  if (!o.vocab.empty()) {
    vocab = textprep::Vocabulary::load(o.vocab, mode);
  } else {
    std::vector<std::string> sentences;
    for (const auto& d : docs) sentences.insert(sentences.end(), d.sentences.begin(), d.sentences.end());
    vocab = mode == textprep::VocabMode::kWord
                ? textprep::Vocabulary::build_word_level(sentences, o.vocab_size)
                : textprep::Vocabulary::build_wordpiece(sentences, o.vocab_size);
    vocab->save(o.build_vocab);
  }
  std::string lines;
  size_t sentences = 0, tokens = 0, truncated = 0;
  for (const textprep::Document& d : docs) {
    textprep::TokenizedDocument t = textprep::tokenize_document(d, *vocab, o.max_tokens);
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& s : t.sentence_tokens) {
      nlohmann::json p = nlohmann::json::array();
      for (int id : s) p.push_back(vocab->token(id));
      pieces.push_back(p);
      tokens += s.size();
    }
    for (bool b : t.truncated) truncated += b;
    sentences += t.size();
    lines += nlohmann::json{{"id", d.id},
                            {"vocab_id", t.vocab_id},
                            {"sentences", d.sentences},
                            {"tokens", pieces},
                            {"token_ids", t.sentence_tokens},
                            {"truncated", t.truncated}}
                 .dump();
    lines += '\n';
  }
  write_file(o.out, lines);
  print(out, {{"documents", docs.size()},
              {"sentences", sentences},
              {"tokens", tokens},
              {"truncated_sentences", truncated},
              {"vocab_id", vocab->id()}});
  return kExitOk;
}

int cmd_augment(const Options& o, std::ostream& out) {
  std::vector<corpus::LabeledDocument> docs = corpus::load_jsonl_corpus(o.in);
  const size_t base = docs.size();
  std::mt19937_64 rng(o.seed);
  augment::DisqualificationList dq = augment::DisqualificationList::defaults();
  nlohmann::json summary = {{"input", base}};
  auto add_negatives = [&](const std::string& path, corpus::SourceTag tag, const char* key) {
    if (path.empty()) return;
    auto candidates = corpus::load_jsonl_corpus(path, false);
    auto kept = augment::filter_negatives(candidates, dq, tag);
    summary[key] = {{"candidates", candidates.size()}, {"accepted", kept.size()}};
    for (auto& d : kept) docs.push_back(std::move(d));
  };
  add_negatives(o.negatives, corpus::SourceTag::kNegativeEnron, "negatives");
  add_negatives(o.reviews, corpus::SourceTag::kNegativeReview, "review_negatives");
  if (o.shuffle > 0) {
    std::vector<size_t> eligible;
    for (size_t i = 0; i < base; ++i) {
      if (augment::passage_ranges(docs[i].doc).size() > 3) eligible.push_back(i);
    }
    size_t made = 0;
    for (size_t k = 0; k < o.shuffle && !eligible.empty(); ++k) {
      size_t src = eligible[std::uniform_int_distribution<size_t>(0, eligible.size() - 1)(rng)];
      corpus::LabeledDocument v = augment::shuffle_passages(docs[src], rng());
      v.doc.id = "shuf-" + std::to_string(k) + "-" + docs[src].id();
      v.source = corpus::SourceTag::kAugmentedShuffle;
      docs.push_back(std::move(v));
      ++made;
    }
    summary["shuffled"] = {{"eligible", eligible.size()}, {"created", made}};
  }
  if (!o.templates.empty()) {
    size_t made = 0;
    std::vector<augment::EmailTemplate> ts = augment::load_templates(o.templates);
    for (size_t t = 0; t < ts.size(); ++t) {
      std::string prefix = "tmpl-" + (ts[t].name.empty() ? std::to_string(t) : ts[t].name);
      for (auto& d : augment::instantiate_template(ts[t], rng(), o.per_template, prefix)) {
        docs.push_back(std::move(d));
        ++made;
      }
    }
    summary["templates"] = {{"templates", ts.size()}, {"created", made}};
  }
  corpus::write_jsonl_corpus(o.out, docs);
  summary["output"] = docs.size();
  summary["stats"] = corpus::to_json(corpus::corpus_stats(docs));
  print(out, summary);
  return kExitOk;
}

int cmd_gen_corpus(const Options& o, std::ostream& out) {
  nlohmann::json spec_json;
  try {
    spec_json = nlohmann::json::parse(read_file(o.spec));
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(o.spec + ": " + e.what());
  }
  augment::SyntheticSpec spec = augment::SyntheticSpec::from_json(spec_json);
  augment::SyntheticCorpus c = augment::build_synthetic_corpus(spec, o.seed);
  fs::create_directories(o.out_dir);
  corpus::write_jsonl_corpus((fs::path(o.out_dir) / "train.jsonl").string(), c.split.train);
  corpus::write_jsonl_corpus((fs::path(o.out_dir) / "validation.jsonl").string(),
                             c.split.validation);
  corpus::write_jsonl_corpus((fs::path(o.out_dir) / "test.jsonl").string(), c.split.test);
  nlohmann::json book = c.bookkeeping.to_json();
  book["seed"] = o.seed;
  book["spec"] = spec.to_json();
  write_file((fs::path(o.out_dir) / "bookkeeping.json").string(), book.dump(2) + "\n");
  print(out, book);
  return kExitOk;
}

int cmd_train(const Options& o, const CLI::App& sub, std::ostream& out) {
  RunConfig rc = o.config.empty() ? RunConfig{} : RunConfig::load(o.config);
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (given("--corpus")) rc.corpus = o.corpus;
  if (given("--train")) rc.train_corpus = o.train;
  if (given("--validation")) rc.validation_corpus = o.validation;
  if (given("--test")) rc.test_corpus = o.test;
  if (given("--vocab")) rc.vocab = o.vocab;
  if (given("--store")) rc.embedding_store = o.store;
  if (given("--variant")) {
    rc.variant = o.variant;
    if (o.variant == "seq2seq" && !given("--vocab-mode")) rc.vocab_mode = textprep::VocabMode::kWord;
  }
  if (given("--vocab-mode")) rc.vocab_mode = textprep::vocab_mode_from_string(o.vocab_mode);
  if (given("--vocab-size")) rc.vocab_size = o.vocab_size;
  if (given("--lr")) rc.train.lr = o.lr;
  if (given("--epochs")) rc.train.epochs = o.epochs;
  if (given("--batch-size")) rc.train.batch_size = o.batch_size;
  if (given("--seed")) rc.seed = o.seed;
  rc.validate();

  corpus::CorpusSplit split = load_split(rc);
  std::unique_ptr<model::EmbeddingStore> store = load_store(rc.embedding_store);
  std::ofstream log;
  if (!o.log.empty()) {
    log.open(o.log);
    if (!log) throw Error("cannot write " + o.log);
  }
  FitResult fr = fit(rc, split.train, split.validation, store.get(), [&](const model::EpochRecord& r) {
    spdlog::info("epoch {} train {:.5f} val {:.5f} f1 {:.4f} lr {:g}", r.epoch, r.train_loss,
                 r.val_loss, r.val_f1, r.lr);
    if (log.is_open()) log << model::to_json(r).dump() << "\n" << std::flush;
  });
  fr.model.save(o.out);
  nlohmann::json summary = {
      {"checkpoint", o.out},
      {"best_epoch", fr.result.best_epoch},
      {"best_val_loss", fr.result.best_val_loss},
      {"epochs_run", fr.result.log.size()},
      {"early_stopped", fr.result.early_stopped},
      {"parameters", model::parameter_count(fr.model.config())},
      {"validation",
       metrics_json(evaluate_corpus(fr.model, split.validation, rc.classify_threshold, store.get()))}};
  if (!split.test.empty()) {
    summary["test"] =
        metrics_json(evaluate_corpus(fr.model, split.test, rc.classify_threshold, store.get()));
  }
  print(out, summary);
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  model::ScopeItModel m = model::ScopeItModel::load(o.model);
  auto store = load_store(o.store);
  auto docs = corpus::load_jsonl_corpus(o.corpus);
  model::Metrics metrics = evaluate_corpus(m, docs, o.threshold, store.get());
  nlohmann::json j = metrics_json(metrics);
  j["threshold"] = o.threshold;
  j["documents"] = docs.size();
  print(out, j);
  return kExitOk;
}

int cmd_score(const Options& o, std::ostream& out) {
  model::ScopeItModel m = model::ScopeItModel::load(o.model);
  auto store = load_store(o.store);
  std::string id = o.id.empty() ? file_id(o.in) : o.id;
  print(out, score_text(m, id, read_file(o.in), o.threshold, store.get()));
  return kExitOk;
}

int cmd_scope(const Options& o, std::ostream& out) {
  model::ScopeItModel m = model::ScopeItModel::load(o.model);
  auto store = load_store(o.store);
  std::string id = o.id.empty() ? file_id(o.in) : o.id;
  textprep::Document doc = textprep::preprocess_text(id, read_file(o.in));
  model::RelevanceScores s = m.score(m.tokenize(doc), store.get());
  print(out, scoper::scope(doc, s.scores, o.threshold).to_json());
  return kExitOk;
}

model::ProbeLayer probe_layer(const std::string& s) {
  if (s == "contextual") return model::ProbeLayer::kContextual;
  if (s == "sentence") return model::ProbeLayer::kSentence;
  throw ConfigError("unknown layer '" + s + "'");
}

int cmd_nn_build(const Options& o, std::ostream& out) {
  model::ScopeItModel m = model::ScopeItModel::load(o.model);
  auto store = load_store(o.store);
  auto docs = corpus::load_jsonl_corpus(o.corpus, false);
  nnprobe::EmbeddingIndex index =
      nnprobe::build_index(docs, m, o.sample_size, o.seed, store.get(), probe_layer(o.layer),
                           nnprobe::metric_from_string(o.metric));
  index.save(o.index);
  print(out, {{"index", o.index},
              {"rows", index.size()},
              {"dim", index.dim()},
              {"metric", nnprobe::to_string(index.metric())},
              {"layer", o.layer}});
  return kExitOk;
}

int cmd_nn_query(const Options& o, std::ostream& out) {
  model::ScopeItModel m = model::ScopeItModel::load(o.model);
  auto store = load_store(o.store);
  nnprobe::EmbeddingIndex index = nnprobe::EmbeddingIndex::load(o.index);
  std::string id = o.id.empty() ? file_id(o.in) : o.id;
  textprep::Document doc = textprep::preprocess_text(id, read_file(o.in));
  model::ScoreOptions opts;
  opts.keep_embeddings = true;
  opts.layer = probe_layer(o.layer);
  model::RelevanceScores s = m.score(m.tokenize(doc), store.get(), opts);
  if (o.sentence >= static_cast<long>(doc.size())) {
    throw AlignmentError("sentence " + std::to_string(o.sentence) + " out of range");
  }
  nlohmann::json results = nlohmann::json::array();
  for (size_t i = 0; i < doc.size(); ++i) {
    if (o.sentence >= 0 && static_cast<size_t>(o.sentence) != i) continue;
    nlohmann::json hits = nlohmann::json::array();
    for (const nnprobe::Neighbor& n : index.query(s.embeddings[i], o.k)) {
      hits.push_back({{"doc_id", n.meta.doc_id},
                      {"sentence", n.meta.sentence},
                      {"text", n.meta.text},
                      {"before", n.before},
                      {"after", n.after},
                      {"distance", n.distance}});
    }
    results.push_back({{"sentence", i}, {"text", doc.original_sentence(i)}, {"neighbors", hits}});
  }
  print(out, {{"id", id}, {"queries", results}});
  return kExitOk;
}

int cmd_extract_eval(const Options& o, std::ostream& out) {
  model::ScopeItModel m = model::ScopeItModel::load(o.model);
  auto store = load_store(o.store);
  auto docs = corpus::load_jsonl_corpus(o.corpus);
  print(out, extractors::compare_before_after(docs, scorer_for(m, store.get()), o.threshold).to_json());
  return kExitOk;
}

int cmd_serve(const Options& o) {
  model::ScopeItModel m = model::ScopeItModel::load(o.model);
  auto store = load_store(o.store);
  if (!serve(m, o.host, o.port, o.threshold, store.get())) {
    throw Error("cannot listen on " + o.host + ":" + std::to_string(o.port));
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sentence relevance scoping toolkit", "scopeit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  Options o;

  auto* pre = app.add_subcommand("preprocess", "Segment and tokenize documents into JSONL");
  pre->add_option("--in", o.in, "Raw email file, directory, or JSONL corpus")->required();
  pre->add_option("--out", o.out, "Tokenized JSONL output")->required();
  auto* pre_vocab = pre->add_option("--vocab", o.vocab, "Existing vocabulary file");
  auto* pre_build = pre->add_option("--build-vocab", o.build_vocab, "Build a vocabulary and write it here");
  pre_vocab->excludes(pre_build);
  pre->add_option("--vocab-mode", o.vocab_mode, "wordpiece or word")->capture_default_str();
  pre->add_option("--vocab-size", o.vocab_size, "Size of a built vocabulary")->capture_default_str();
  pre->add_option("--max-tokens", o.max_tokens, "Per-sentence token cap")->capture_default_str();

  auto* aug = app.add_subcommand("augment", "Add negatives, shuffled and templated emails");
  aug->add_option("--in", o.in, "Labeled JSONL corpus")->required();
  aug->add_option("--out", o.out, "Augmented JSONL corpus")->required();
  aug->add_option("--negatives", o.negatives, "Candidate negatives (JSONL)");
  aug->add_option("--review-negatives", o.reviews, "Candidate review-style negatives (JSONL)");
  aug->add_option("--shuffle", o.shuffle, "Number of passage-shuffled variants");
  aug->add_option("--templates", o.templates, "Template JSON file");
  aug->add_option("--per-template", o.per_template, "Instances per template")->capture_default_str();
  aug->add_option("--seed", o.seed, "Random seed")->capture_default_str();

  auto* gen = app.add_subcommand("gen-corpus", "Generate the synthetic labeled corpus");
  gen->add_option("--spec", o.spec, "Generator spec JSON")->required();
  gen->add_option("--out-dir", o.out_dir, "Directory for the split files")->required();
  gen->add_option("--seed", o.seed, "Random seed")->capture_default_str();

  auto* tr = app.add_subcommand("train", "Train a relevance model");
  tr->add_option("--config", o.config, "Run config JSON");
  tr->add_option("--out", o.out, "Checkpoint output")->required();
  tr->add_option("--corpus", o.corpus, "Single corpus split by the configured fractions");
  tr->add_option("--train", o.train, "Training corpus");
  tr->add_option("--validation", o.validation, "Validation corpus");
  tr->add_option("--test", o.test, "Test corpus");
  tr->add_option("--vocab", o.vocab, "Vocabulary file");
  tr->add_option("--vocab-mode", o.vocab_mode, "wordpiece or word");
  tr->add_option("--vocab-size", o.vocab_size, "Size of a built vocabulary");
  tr->add_option("--store", o.store, "Precomputed embedding store");
  tr->add_option("--variant", o.variant, "scopeit, no-inter, seq2seq or cls-only");
  tr->add_option("--lr", o.lr, "Learning rate");
  tr->add_option("--epochs", o.epochs, "Maximum epochs");
  tr->add_option("--batch-size", o.batch_size, "Documents per batch");
  tr->add_option("--seed", o.seed, "Random seed");
  tr->add_option("--log", o.log, "Epoch log (JSONL)");

  auto* ev = app.add_subcommand("eval", "Precision, recall and F1 on a labeled corpus");
  ev->add_option("--model", o.model, "Checkpoint")->required();
  ev->add_option("--corpus", o.corpus, "Labeled JSONL corpus")->required();
  ev->add_option("--store", o.store, "Precomputed embedding store");
  auto* ev_threshold = ev->add_option("--threshold", o.threshold, "Classification threshold");

  auto* sc = app.add_subcommand("score", "Per-sentence relevance scores for one email");
  sc->add_option("--model", o.model, "Checkpoint")->required();
  sc->add_option("--in", o.in, "Raw email file")->required();
  sc->add_option("--id", o.id, "Document id (defaults to the file name)");
  sc->add_option("--store", o.store, "Precomputed embedding store");
  auto* sc_threshold = sc->add_option("--threshold", o.threshold, "Scoping threshold");

  auto* sp = app.add_subcommand("scope", "Scoped message for one email");
  sp->add_option("--model", o.model, "Checkpoint")->required();
  sp->add_option("--in", o.in, "Raw email file")->required();
  sp->add_option("--id", o.id, "Document id (defaults to the file name)");
  sp->add_option("--store", o.store, "Precomputed embedding store");
  auto* sp_threshold = sp->add_option("--threshold", o.threshold, "Scoping threshold");

  auto* nn = app.add_subcommand("nn", "Nearest-neighbor probe over sentence embeddings");
  nn->require_subcommand(1);
  auto* nb = nn->add_subcommand("build", "Index a corpus sample");
  nb->add_option("--model", o.model, "Checkpoint")->required();
  nb->add_option("--corpus", o.corpus, "JSONL corpus")->required();
  nb->add_option("--out", o.index, "Index output")->required();
  nb->add_option("--sample-size", o.sample_size, "Documents to sample")->capture_default_str();
  nb->add_option("--layer", o.layer, "contextual or sentence")->capture_default_str();
  nb->add_option("--metric", o.metric, "euclidean or cosine")->capture_default_str();
  nb->add_option("--store", o.store, "Precomputed embedding store");
  nb->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  auto* nq = nn->add_subcommand("query", "Neighbors of the sentences of one email");
  nq->add_option("--model", o.model, "Checkpoint")->required();
  nq->add_option("--index", o.index, "Index file")->required();
  nq->add_option("--in", o.in, "Raw email file")->required();
  nq->add_option("--id", o.id, "Document id (defaults to the file name)");
  nq->add_option("--sentence", o.sentence, "Only this sentence index");
  nq->add_option("--k", o.k, "Neighbors per query")->capture_default_str();
  nq->add_option("--layer", o.layer, "contextual or sentence")->capture_default_str();
  nq->add_option("--store", o.store, "Precomputed embedding store");

  auto* xe = app.add_subcommand("extract-eval", "Entity extraction before and after scoping");
  xe->add_option("--model", o.model, "Checkpoint")->required();
  xe->add_option("--corpus", o.corpus, "JSONL corpus with gold entities")->required();
  xe->add_option("--store", o.store, "Precomputed embedding store");
  auto* xe_threshold = xe->add_option("--threshold", o.threshold, "Scoping threshold");

  auto* sv = app.add_subcommand("serve", "HTTP scoring endpoint");
  sv->add_option("--model", o.model, "Checkpoint")->required();
  sv->add_option("--host", o.host, "Bind address")->capture_default_str();
  sv->add_option("--port", o.port, "Port")->capture_default_str();
  sv->add_option("--store", o.store, "Precomputed embedding store");
  auto* sv_threshold = sv->add_option("--threshold", o.threshold, "Scoping threshold");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "scopeit: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }
  if (pre->parsed() && o.vocab.empty() && o.build_vocab.empty()) {
    err << "scopeit preprocess: give --vocab or --build-vocab\n";
    return kExitUsage;
  }

  if (ev->parsed()) {
    if (ev_threshold->count() == 0) o.threshold = model::kClassifyThreshold;
  } else {
    std::pair<CLI::App*, CLI::Option*> scoped[] = {
        {sc, sc_threshold}, {sp, sp_threshold}, {xe, xe_threshold}, {sv, sv_threshold}};
    for (auto [cmd, opt] : scoped) {
      if (cmd->parsed() && opt->count() == 0) o.threshold = scoper::kScopeThreshold;
    }
  }

  try {
    if (pre->parsed()) return cmd_preprocess(o, out);
    if (aug->parsed()) return cmd_augment(o, out);
    if (gen->parsed()) return cmd_gen_corpus(o, out);
    if (tr->parsed()) return cmd_train(o, *tr, out);
    if (ev->parsed()) return cmd_eval(o, out);
    if (sc->parsed()) return cmd_score(o, out);
    if (sp->parsed()) return cmd_scope(o, out);
    if (nb->parsed()) return cmd_nn_build(o, out);
    if (nq->parsed()) return cmd_nn_query(o, out);
    if (xe->parsed()) return cmd_extract_eval(o, out);
    if (sv->parsed()) return cmd_serve(o);
  } catch (const std::exception& e) {
    err << "scopeit: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace scopeit::cli
