// Copyright 2026 The stackdet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// stackdet command-line interface.
//
// Exit codes: 0 ok, 1 unexpected failure, 2 configuration, 3 data,
// 4 numerical, 5 external adapter.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stackdet/bench.hpp"
#include "stackdet/corpus.hpp"
#include "stackdet/error.hpp"
#include "stackdet/evaluation.hpp"
#include "stackdet/external.hpp"
#include "stackdet/lm_detector.hpp"
#include "stackdet/logreg.hpp"
#include "stackdet/model_io.hpp"
#include "stackdet/parallel.hpp"
#include "stackdet/stacked.hpp"
#include "stackdet/synth.hpp"
#include "stackdet/theory_sim.hpp"

namespace sd = stackdet;
using nlohmann::ordered_json;

namespace {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

class Logger {
 public:
  void set_level(Level l) { level_ = l; }

  void Emit(Level l, const std::string& event, ordered_json fields = {}) const {
    if (l > level_) return;
    static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
    ordered_json line;
    line["level"] = kNames[static_cast<int>(l)];
    line["event"] = event;
    if (fields.is_object()) {
      for (auto it = fields.begin(); it != fields.end(); ++it) {
        line[it.key()] = it.value();
      }
    }
    std::cerr << line.dump() << '\n';
  }

 private:
  Level level_ = Level::kWarn;
};

Logger g_log;

struct Shared {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string log_level = "warn";
  double re = 0.01;
  double tau = 0.25;
  std::size_t k = 3;
  std::string out = "-";
  std::string abbreviations;

  sd::FilterConfig filter() const { return {re, tau, k}; }
};

struct DetectorFlags {
  std::string model;
  std::string adapter;
  bool training_free = false;
  bool plain = false;
};

sd::SentenceSplitter Splitter(const Shared& s) {
  return s.abbreviations.empty() ? sd::SentenceSplitter()
                                 : sd::SentenceSplitter::FromFile(
                                       s.abbreviations);
}

// Writes to a file or, for "-", to stdout.
void WriteOutput(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sd::DataError("cannot write '" + path + "'");
  out << content;
  if (!out) throw sd::DataError("write to '" + path + "' failed");
}

std::vector<sd::Document> LoadCorpus(const std::string& path,
                                     const Shared& s) {
  auto docs = sd::ReadJsonl(path, Splitter(s));
  g_log.Emit(Level::kInfo, "corpus_loaded",
             {{"path", path}, {"documents", docs.size()}});
  return docs;
}

std::vector<int> Labels(std::span<const sd::Document> docs) {
  std::vector<int> labels;
  labels.reserve(docs.size());
  for (const auto& d : docs) {
    if (!d.label) {
      throw sd::DataError("document '" + d.id + "' has no label");
    }
    labels.push_back(*d.label);
  }
  return labels;
}

std::shared_ptr<const sd::Detector> OpenDetector(const DetectorFlags& f) {
  if (f.model.empty() == f.adapter.empty()) {
    throw sd::InvalidConfig("exactly one of --model or --adapter is required");
  }
  if (!f.adapter.empty()) {
    auto argv = sd::ExternalDetector::SplitCommand(f.adapter);
    if (argv.empty()) throw sd::InvalidConfig("--adapter command is empty");
    return std::make_shared<sd::ExternalDetector>(std::move(argv));
  }
  return std::shared_ptr<const sd::Detector>(sd::LoadDetector(f.model));
}

void FlushAdapterWarnings(const sd::Detector& det) {
  if (const auto* ext = dynamic_cast<const sd::ExternalDetector*>(&det)) {
    for (const auto& w : ext->TakeWarnings()) {
      g_log.Emit(Level::kWarn, "adapter_warning", {{"message", w}});
    }
  }
}

std::string DetectorId(const sd::Detector& det, const DetectorFlags& f) {
  if (f.plain) return det.name();
  return std::string(f.training_free || !f.adapter.empty()
                         ? "stacked-training-free("
                         : "stacked(") +
         det.name() + ")";
}

// Score used for ranking: the logit, so saturated probabilities keep order.
std::vector<double> RankingScores(const sd::Detector& det,
                                  std::span<const sd::Document> docs,
                                  const Shared& s, bool plain) {
  std::vector<double> out(docs.size());
  const sd::FilterConfig fc = s.filter();
  sd::ParallelFor(docs.size(), s.jobs, [&](std::size_t i) {
    out[i] = plain ? det.Score(docs[i].text).logit
                   : sd::StackedInfer(det, docs[i], fc).score.logit;
  });
  return out;
}

std::string Stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// ------------------------------------------------------------------ train

struct TrainFlags {
  std::string corpus;
  std::string detector = "logreg";
  int epochs = 5;
  double eta = 1.0;
  std::size_t batch_size = 32;
  std::string feature = "word";
  std::uint32_t ngram = 2;
  std::uint32_t buckets = sd::kDefaultHashBuckets;
  std::uint32_t lm_order = 1;
  double lm_lambda = 0.1;
  bool plain = false;
  std::string trace;
  std::string report;
};

int RunTrain(const Shared& s, const TrainFlags& t) {
  if (s.out == "-") throw sd::InvalidConfig("train needs --out <model path>");
  const auto docs = LoadCorpus(t.corpus, s);
  const auto split = sd::SplitDataset(docs, {2.0, 1.0, 1.0, s.seed});
  g_log.Emit(Level::kInfo, "split",
             {{"train", split.train.size()},
              {"val", split.val.size()},
              {"test", split.test.size()}});

  std::shared_ptr<const sd::Detector> det;
  std::string trace_text;
  if (t.detector == "lm") {
    std::vector<std::string> human, machine;
    Labels(split.train);  // every training document must be labeled
    for (const auto& d : split.train) {
      (*d.label == 0 ? human : machine).push_back(d.text);
    }
    if (human.empty() || machine.empty()) {
      throw sd::DegenerateDataset("training split must contain both classes");
    }
    auto lm = std::make_shared<sd::NGramLMDetector>(
        sd::NGramLMDetector::Fit(human, machine, t.lm_order, t.lm_lambda));
    sd::SaveModel(*lm, s.out);
    det = lm;
  } else if (t.detector == "logreg") {
    sd::TrainConfig tc;
    tc.epochs = t.epochs;
    tc.eta = t.eta;
    tc.batch_size = t.batch_size;
    tc.tau = s.tau;
    tc.r_e = s.re;
    tc.k = s.k;
    tc.seed = s.seed;
    const auto init =
        sd::LogRegModel::Zero(sd::ParseFeatureMode(t.feature), t.ngram,
                              t.buckets);
    auto result = t.plain ? sd::TrainPlain(init, split.train, tc)
                          : sd::TrainHardEM(init, split.train, tc, s.jobs);
    for (const auto& e : result.trace.epochs) {
      ordered_json j;
      j["epoch"] = e.epoch;
      j["mean_q"] = e.mean_q;
      j["filtered_fraction"] = e.filtered_fraction;
      j["wall_seconds"] = e.wall_seconds;
      g_log.Emit(Level::kDebug, "epoch", j);
      trace_text += j.dump() + "\n";
    }
    sd::SaveModel(result.model, s.out);
    det = std::make_shared<sd::LogRegDetector>(
        std::make_shared<sd::LogRegModel>(std::move(result.model)));
  } else {
    throw sd::InvalidConfig("--detector must be 'logreg' or 'lm'");
  }
  if (!t.trace.empty()) WriteOutput(t.trace, trace_text);

  const bool plain = t.plain;
  const auto scores = RankingScores(*det, split.val, s, plain);
  const auto report =
      sd::Evaluate(scores, Labels(split.val),
                   plain ? det->name() : "stacked(" + det->name() + ")",
                   Stem(t.corpus) + ":val", s.seed);
  WriteOutput(t.report.empty() ? "-" : t.report, report.ToJson() + "\n");
  return 0;
}

// ----------------------------------------------------------------- detect

int RunDetect(const Shared& s, const DetectorFlags& f,
              const std::string& input) {
  const auto det = OpenDetector(f);
  const auto splitter = Splitter(s);
  const sd::FilterConfig fc = s.filter();
  fc.Validate();

  std::ifstream file;
  std::istream* in = &std::cin;
  if (input != "-") {
    file.open(input);
    if (!file) throw sd::DataError("cannot open input '" + input + "'");
    in = &file;
  }
  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (s.out != "-") {
    out_file.open(s.out, std::ios::binary);
    if (!out_file) throw sd::DataError("cannot write '" + s.out + "'");
    out = &out_file;
  }

  constexpr std::size_t kChunk = 256;
  std::string line;
  std::size_t lineno = 0, total = 0;
  bool done = false;
  while (!done) {
    std::vector<sd::Document> chunk;
    while (chunk.size() < kChunk) {
      if (!std::getline(*in, line)) {
        done = true;
        break;
      }
      if (auto d = sd::ParseJsonlLine(line, input, ++lineno, splitter)) {
        chunk.push_back(std::move(*d));
      }
    }
    std::vector<sd::InferenceResult> results(chunk.size());
    sd::ParallelFor(chunk.size(), s.jobs, [&](std::size_t i) {
      if (f.plain) {
        results[i].score = det->Score(chunk[i].text);
        results[i].n_groups = sd::GroupSubsequences(chunk[i], fc.k).size();
      } else {
        results[i] = sd::StackedInfer(*det, chunk[i], fc);
      }
    });
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      ordered_json j;
      j["id"] = chunk[i].id;
      j["score"] = results[i].score.value;
      j["n_groups"] = results[i].n_groups;
      j["n_filtered"] = results[i].n_filtered;
      *out << j.dump() << '\n';
    }
    out->flush();
    total += chunk.size();
    FlushAdapterWarnings(*det);
  }
  if (in->bad()) throw sd::DataError("read error on '" + input + "'");
  g_log.Emit(Level::kInfo, "detect_done", {{"documents", total}});
  return 0;
}

// ------------------------------------------------------------------- eval

int RunEval(const Shared& s, const DetectorFlags& f, const std::string& corpus,
            const std::string& corpus_id) {
  const auto det = OpenDetector(f);
  s.filter().Validate();
  const auto docs = LoadCorpus(corpus, s);
  const auto labels = Labels(docs);
  const auto scores = RankingScores(*det, docs, s, f.plain);
  FlushAdapterWarnings(*det);
  const auto report =
      sd::Evaluate(scores, labels, DetectorId(*det, f),
                   corpus_id.empty() ? Stem(corpus) : corpus_id, s.seed);
  WriteOutput(s.out, report.ToJson() + "\n");
  return 0;
}

// --------------------------------------------------------------- simulate

struct SimFlags {
  std::vector<double> delta{0.5};
  std::vector<std::size_t> n{20};
  std::vector<double> alpha{0.0};
  std::vector<double> alpha_s{0.0};
  std::vector<double> alpha_h{0.0};
  std::vector<double> rho{0.0};
  std::string world = "categorical";
  std::size_t alphabet = 8;
  std::size_t dim = 2;
  std::size_t sequences = 1;
  int trials = 2000;
  int bootstrap = 1000;
  int repeats = 1;
  std::string lr_mode = "exact";
  std::string summary;
};

int RunSimulate(const Shared& s, const SimFlags& f) {
  sd::SimConfig cfg;
  if (f.world == "categorical") {
    cfg.kind = sd::WorldKind::kCategorical;
  } else if (f.world == "gaussian") {
    cfg.kind = sd::WorldKind::kGaussian;
  } else {
    throw sd::InvalidConfig("--world must be 'categorical' or 'gaussian'");
  }
  if (f.lr_mode == "exact") {
    cfg.lr_mode = sd::LrMode::kExact;
  } else if (f.lr_mode == "mixture") {
    cfg.lr_mode = sd::LrMode::kMixture;
  } else {
    throw sd::InvalidConfig("--lr-mode must be 'exact' or 'mixture'");
  }
  cfg.alphabet = f.alphabet;
  cfg.dim = f.dim;
  cfg.sequences = f.sequences;
  cfg.trials = f.trials;
  cfg.bootstrap = f.bootstrap;
  cfg.repeats = f.repeats;
  cfg.seed = s.seed;
  cfg.jobs = s.jobs;

  sd::SweepGrid grid;
  grid.delta = f.delta;
  grid.n = f.n;
  grid.alpha = f.alpha;
  grid.alpha_s = f.alpha_s;
  grid.alpha_h = f.alpha_h;
  grid.rho = f.rho;
  const auto points = grid.Expand();
  g_log.Emit(Level::kInfo, "simulate", {{"grid_points", points.size()}});
  const auto rows = sd::RunExperiment(cfg, points);
  WriteOutput(s.out, sd::ExperimentCsv(rows, f.repeats > 1));
  if (!f.summary.empty()) {
    WriteOutput(f.summary, sd::CurveSummaryJson(rows) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------- overlap

int RunOverlap(const Shared& s, const std::string& human,
               const std::vector<std::string>& machine) {
  const auto human_docs = LoadCorpus(human, s);
  ordered_json pairs = ordered_json::array();
  for (const auto& m : machine) {
    const auto machine_docs = LoadCorpus(m, s);
    ordered_json j;
    j["human"] = Stem(human);
    j["machine"] = Stem(m);
    j["consistent_proportion"] =
        sd::ConsistentSentenceProportion(human_docs, machine_docs);
    pairs.push_back(j);
  }
  ordered_json out;
  out["pairs"] = pairs;
  WriteOutput(s.out, out.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------------ bench

int RunBench(const Shared& s, const DetectorFlags& f, const std::string& corpus,
             int rounds, int passes) {
  const auto det = OpenDetector(f);
  const auto docs = LoadCorpus(corpus, s);
  const sd::FilterConfig fc = s.filter();
  const auto b = sd::BenchStacked(*det, docs, fc, rounds, passes);
  FlushAdapterWarnings(*det);
  ordered_json j;
  j["detector"] = det->name();
  j["documents"] = b.docs;
  j["r_e"] = fc.r_e;
  j["tau"] = fc.tau;
  j["k"] = fc.k;
  j["base_calls"] = b.base_calls;
  j["stacked_calls"] = b.stacked_calls;
  j["base_bytes"] = b.base_bytes;
  j["stacked_bytes"] = b.stacked_bytes;
  j["base_seconds"] = b.base_seconds;
  j["stacked_seconds"] = b.stacked_seconds;
  j["ratio"] = b.ratio;
  WriteOutput(s.out, j.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------------ synth

struct SynthFlags {
  std::size_t docs = 500;
  std::size_t sentences = 12;
  std::size_t replace = 3;
  std::size_t train_docs = 300;
  std::size_t pool = 2000;
  std::string train_out;
};

int RunSynth(const Shared& s, const SynthFlags& f) {
  sd::SynthConfig cfg;
  cfg.sentences = f.sentences;
  cfg.seed = s.seed;
  const auto corpus = sd::GenerateSynthCorpus(cfg, f.train_docs, f.docs,
                                              f.pool);
  const auto mixed = sd::MixedCorpus(corpus, f.replace, s.seed);
  std::ostringstream os;
  sd::WriteJsonl(os, mixed);
  WriteOutput(s.out, os.str());
  if (!f.train_out.empty()) {
    std::vector<sd::Document> train;
    for (std::size_t i = 0; i < corpus.lm_human.size(); ++i) {
      train.push_back({"th" + std::to_string(i), corpus.lm_human[i], 0, {}});
      train.push_back({"tm" + std::to_string(i), corpus.lm_machine[i], 1, {}});
    }
    std::ostringstream ts;
    sd::WriteJsonl(ts, train);
    WriteOutput(f.train_out, ts.str());
  }
  return 0;
}

int ExitCodeFor(sd::ErrorKind kind) {
  switch (kind) {
    case sd::ErrorKind::kInvalidConfig:
    case sd::ErrorKind::kUnsupportedCombination:
    case sd::ErrorKind::kInvalidFilterSpec:
      return 2;
    case sd::ErrorKind::kNumerical:
      return 4;
    case sd::ErrorKind::kAdapterProtocol:
      return 5;
    default:
      return 3;
  }
}

void AddDetectorFlags(CLI::App* sub, DetectorFlags& f) {
  sub->add_option("--model", f.model, "Model file written by 'train'");
  sub->add_option("--adapter", f.adapter,
                  "External detector command (line protocol)");
  sub->add_flag("--training-free", f.training_free,
                "Wrap a frozen detector without training");
  sub->add_flag("--plain", f.plain, "Score full texts, no filtering");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stacked machine-generated text detection toolkit", "stackdet"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "",
                 "Flat key = value file; command-line flags override it");

  Shared s;
  app.add_option("--seed", s.seed, "Random seed")->capture_default_str();
  app.add_option("--jobs", s.jobs, "Worker threads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  app.add_option("--log-level", s.log_level, "error, warn, info or debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}))
      ->capture_default_str();
  app.add_option("--re", s.re, "Strict human-likeness threshold r_e")
      ->check(CLI::Range(0.0, 0.5))
      ->capture_default_str();
  app.add_option("--tau", s.tau, "Maximum filter ratio")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--k", s.k, "Sentences per subsequence")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", s.out, "Output path ('-' for stdout)")
      ->capture_default_str();
  app.add_option("--abbreviations", s.abbreviations,
                 "Abbreviation list for sentence splitting")
      ->check(CLI::ExistingFile);

  TrainFlags tf;
  auto* train = app.add_subcommand("train", "Train a detector (hard EM)");
  train->add_option("--corpus", tf.corpus, "Labeled JSONL corpus")
      ->required()
      ->check(CLI::ExistingFile);
  train->add_option("--detector", tf.detector, "logreg or lm")
      ->check(CLI::IsMember({"logreg", "lm"}))
      ->capture_default_str();
  train->add_option("--epochs", tf.epochs)->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train->add_option("--eta", tf.eta, "Learning rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--batch-size", tf.batch_size)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--feature", tf.feature, "word or char n-grams")
      ->check(CLI::IsMember({"word", "char"}))
      ->capture_default_str();
  train->add_option("--ngram", tf.ngram)->check(CLI::Range(1, 8))
      ->capture_default_str();
  train->add_option("--buckets", tf.buckets, "Hash buckets")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--lm-order", tf.lm_order)->check(CLI::Range(1, 8))
      ->capture_default_str();
  train->add_option("--lm-lambda", tf.lm_lambda)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_flag("--plain", tf.plain, "Train on full texts without E-step");
  train->add_option("--trace", tf.trace, "Per-epoch trace (JSONL)");
  train->add_option("--report", tf.report,
                    "Validation report path (default stdout)");

  DetectorFlags df;
  std::string detect_input = "-";
  auto* detect = app.add_subcommand("detect", "Score documents (JSONL out)");
  AddDetectorFlags(detect, df);
  detect->add_option("--input", detect_input, "JSONL input ('-' for stdin)")
      ->capture_default_str();

  DetectorFlags ef;
  std::string eval_corpus, eval_corpus_id;
  auto* eval = app.add_subcommand("eval", "AUROC and TPR@FPR report");
  AddDetectorFlags(eval, ef);
  eval->add_option("--corpus", eval_corpus, "Labeled JSONL corpus")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--corpus-id", eval_corpus_id, "Corpus name in report");

  SimFlags sf;
  auto* simulate = app.add_subcommand("simulate", "Theory Monte Carlo sweep");
  simulate->add_option("--delta", sf.delta, "TV distances")->delimiter(',');
  simulate->add_option("--n", sf.n, "Sentences per text")->delimiter(',');
  simulate->add_option("--alpha", sf.alpha, "Human-like share")
      ->delimiter(',');
  simulate->add_option("--alpha-s", sf.alpha_s, "Correctly removed share")
      ->delimiter(',');
  simulate->add_option("--alpha-h", sf.alpha_h, "Mistakenly removed share")
      ->delimiter(',');
  simulate->add_option("--rho", sf.rho, "Sentence dependency")
      ->delimiter(',');
  simulate->add_option("--world", sf.world, "categorical or gaussian")
      ->check(CLI::IsMember({"categorical", "gaussian"}))
      ->capture_default_str();
  simulate->add_option("--alphabet", sf.alphabet)->capture_default_str();
  simulate->add_option("--dim", sf.dim)->capture_default_str();
  simulate->add_option("--sequences", sf.sequences)->capture_default_str();
  simulate->add_option("--trials", sf.trials, "Texts per class")
      ->capture_default_str();
  simulate->add_option("--bootstrap", sf.bootstrap)->capture_default_str();
  simulate->add_option("--repeats", sf.repeats)->capture_default_str();
  simulate->add_option("--lr-mode", sf.lr_mode, "exact or mixture")
      ->check(CLI::IsMember({"exact", "mixture"}))
      ->capture_default_str();
  simulate->add_option("--summary", sf.summary, "Per-curve summary JSON");

  std::string overlap_human;
  std::vector<std::string> overlap_machine;
  auto* overlap =
      app.add_subcommand("overlap", "Consistent-sentence proportion");
  overlap->add_option("--human", overlap_human, "Human JSONL corpus")
      ->required()
      ->check(CLI::ExistingFile);
  overlap->add_option("--machine", overlap_machine, "Machine JSONL corpora")
      ->required()
      ->check(CLI::ExistingFile);

  DetectorFlags bf;
  std::string bench_corpus;
  int bench_rounds = 11, bench_passes = 3;
  auto* bench = app.add_subcommand("bench", "Time base vs stacked inference");
  AddDetectorFlags(bench, bf);
  bench->add_option("--corpus", bench_corpus, "JSONL corpus")
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("--rounds", bench_rounds)->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--passes", bench_passes)->check(CLI::PositiveNumber)
      ->capture_default_str();

  SynthFlags yf;
  auto* synth = app.add_subcommand("synth", "Write a synthetic mixed corpus");
  synth->add_option("--docs", yf.docs, "Documents per class")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--sentences", yf.sentences)->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--replace", yf.replace,
                    "Machine sentences swapped for human ones")
      ->capture_default_str();
  synth->add_option("--train-docs", yf.train_docs)->capture_default_str();
  synth->add_option("--pool", yf.pool, "Human sentence pool size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--train-out", yf.train_out,
                    "Also write detector training texts (JSONL)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "stackdet: error: " << e.what() << '\n';
    return 2;
  }

  const std::vector<std::string> levels = {"error", "warn", "info", "debug"};
  g_log.set_level(static_cast<Level>(
      std::find(levels.begin(), levels.end(), s.log_level) - levels.begin()));

  try {
    if (*train) return RunTrain(s, tf);
    if (*detect) return RunDetect(s, df, detect_input);
    if (*eval) return RunEval(s, ef, eval_corpus, eval_corpus_id);
    if (*simulate) return RunSimulate(s, sf);
    if (*overlap) return RunOverlap(s, overlap_human, overlap_machine);
    if (*bench) return RunBench(s, bf, bench_corpus, bench_rounds, bench_passes);
    if (*synth) return RunSynth(s, yf);
  } catch (const sd::Error& e) {
    std::cerr << "stackdet: " << sd::ErrorKindName(e.kind()) << ": "
              << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "stackdet: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
