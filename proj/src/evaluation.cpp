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

#include "stackdet/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "json.hpp"
#include "stackdet/error.hpp"

namespace stackdet {
namespace {

struct ClassCounts {
  std::size_t pos = 0;
  std::size_t neg = 0;
};

ClassCounts CheckInputs(std::span<const double> scores,
                        std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw InvalidConfig("scores and labels differ in length");
  }
  ClassCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) throw NumericalError("NaN score in metric");
    if (labels[i] == 1) {
      ++c.pos;
    } else if (labels[i] == 0) {
      ++c.neg;
    } else {
      throw DataError("labels must be 0 or 1");
    }
  }
  if (c.pos == 0 || c.neg == 0) {
    throw DegenerateDataset("metric needs both positive and negative labels");
  }
  return c;
}

// Twice the Mann-Whitney U statistic, kept integral so ties at 1/2 stay
// exact.
std::uint64_t TwiceU(std::span<const double> scores,
                     std::span<const int> labels) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  std::uint64_t twice_u = 0;
  std::uint64_t neg_below = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::uint64_t pos_tied = 0, neg_tied = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] == 1 ? pos_tied : neg_tied) += 1;
      ++j;
    }
    twice_u += pos_tied * (2 * neg_below + neg_tied);
    neg_below += neg_tied;
    i = j;
  }
  return twice_u;
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

double Auroc(std::span<const double> scores, std::span<const int> labels) {
  const ClassCounts c = CheckInputs(scores, labels);
  return static_cast<double>(TwiceU(scores, labels)) /
         (2.0 * static_cast<double>(c.pos) * static_cast<double>(c.neg));
}

double TprAtFpr(std::span<const double> scores, std::span<const int> labels,
                double k) {
  const ClassCounts c = CheckInputs(scores, labels);
  if (!(k >= 0.0 && k < 1.0)) throw InvalidConfig("K must lie in [0, 1)");

  std::vector<double> neg;
  neg.reserve(c.neg);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 0) neg.push_back(scores[i]);
  }
  std::sort(neg.begin(), neg.end(), std::greater<>());

  // Walk candidate thresholds downward over distinct negative scores; the
  // threshold just below a tie block admits the whole block.
  const double allowed = k * static_cast<double>(c.neg);
  double threshold = -INFINITY;
  bool limited = false;
  for (std::size_t i = 0; i < neg.size();) {
    std::size_t j = i;
    while (j < neg.size() && neg[j] == neg[i]) ++j;
    // With t = neg[i] exactly i negatives exceed t; going lower adds the
    // block.
    if (static_cast<double>(j) > allowed) {
      threshold = neg[i];
      limited = true;
      break;
    }
    i = j;
  }
  std::size_t tp = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 1 && (!limited || scores[i] > threshold)) ++tp;
  }
  return static_cast<double>(tp) / static_cast<double>(c.pos);
}

ConfidenceInterval BootstrapAuroc(std::span<const double> scores,
                                  std::span<const int> labels, int resamples,
                                  std::uint64_t seed, double level) {
  CheckInputs(scores, labels);
  if (resamples < 1) throw InvalidConfig("bootstrap needs >= 1 resample");
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    (labels[i] == 1 ? pos : neg).push_back(scores[i]);
  }
  std::vector<int> lab(pos.size() + neg.size());
  std::fill(lab.begin(), lab.begin() + static_cast<long>(pos.size()), 1);
  std::vector<double> sample(lab.size());
  std::vector<double> stats;
  stats.reserve(static_cast<std::size_t>(resamples));
  Rng rng(DeriveSeed(seed, 0x626f6f74ULL));
  for (int r = 0; r < resamples; ++r) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
      sample[i] = pos[rng.Index(pos.size())];
    }
    for (std::size_t i = 0; i < neg.size(); ++i) {
      sample[pos.size() + i] = neg[rng.Index(neg.size())];
    }
    stats.push_back(static_cast<double>(TwiceU(sample, lab)) /
                    (2.0 * static_cast<double>(pos.size()) *
                     static_cast<double>(neg.size())));
  }
  std::sort(stats.begin(), stats.end());
  const double tail = (1.0 - level) / 2.0;
  const auto n = static_cast<double>(stats.size());
  const auto lo = static_cast<std::size_t>(std::floor(tail * n));
  auto hi = static_cast<std::size_t>(std::ceil((1.0 - tail) * n));
  hi = std::clamp<std::size_t>(hi, 1, stats.size()) - 1;
  return {stats[std::min(lo, stats.size() - 1)], stats[hi]};
}

std::string EvalReport::ToJson() const {
  nlohmann::ordered_json j;
  j["auroc"] = auroc;
  nlohmann::ordered_json tpr;
  for (const auto& [k, v] : tpr_at_fpr) tpr[k] = v;
  j["tpr_at_fpr"] = tpr;
  j["n_pos"] = n_pos;
  j["n_neg"] = n_neg;
  j["seed"] = seed;
  j["detector_id"] = detector_id;
  j["corpus_id"] = corpus_id;
  return j.dump(2);
}

EvalReport Evaluate(std::span<const double> scores,
                    std::span<const int> labels, std::string detector_id,
                    std::string corpus_id, std::uint64_t seed) {
  const ClassCounts c = CheckInputs(scores, labels);
  EvalReport r;
  r.auroc = Auroc(scores, labels);
  r.tpr_at_fpr["0.5%"] = TprAtFpr(scores, labels, 0.005);
  r.tpr_at_fpr["5%"] = TprAtFpr(scores, labels, 0.05);
  r.n_pos = c.pos;
  r.n_neg = c.neg;
  r.seed = seed;
  r.detector_id = std::move(detector_id);
  r.corpus_id = std::move(corpus_id);
  return r;
}

DatasetSplit SplitDataset(std::span<const Document> corpus,
                          const SplitSpec& spec) {
  if (corpus.size() < 4) throw InvalidConfig("split needs >= 4 documents");
  if (!(spec.train > 0 && spec.val > 0 && spec.test > 0)) {
    throw InvalidConfig("split ratios must be positive");
  }
  const double total = spec.train + spec.val + spec.test;
  DatasetSplit out;
  Rng rng(DeriveSeed(spec.seed, 0x73706c74ULL));
  for (int label : {0, 1}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (!corpus[i].label) {
        throw DataError("split: document '" + corpus[i].id + "' is unlabeled");
      }
      if (*corpus[i].label == label) idx.push_back(i);
    }
    rng.Shuffle(idx);
    const auto n = static_cast<double>(idx.size());
    const auto cut1 =
        static_cast<std::size_t>(std::floor(n * spec.train / total + 1e-9));
    const auto cut2 = static_cast<std::size_t>(
        std::floor(n * (spec.train + spec.val) / total + 1e-9));
    for (std::size_t r = 0; r < idx.size(); ++r) {
      auto& part = r < cut1 ? out.train : r < cut2 ? out.val : out.test;
      part.push_back(corpus[idx[r]]);
    }
  }
  rng.Shuffle(out.train);
  rng.Shuffle(out.val);
  rng.Shuffle(out.test);
  return out;
}

std::string NormalizeSentence(std::string_view sentence) {
  std::string lowered = AsciiLower(sentence);
  std::string out;
  bool pending_space = false;
  for (char c : lowered) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  static constexpr std::string_view kMultiByte[] = {
      "\xE2\x80\xA6", "\xE2\x80\x9D", "\xE2\x80\x99"};
  for (bool changed = true; changed && !out.empty();) {
    changed = false;
    const char last = out.back();
    if (last == '.' || last == '!' || last == '?' || last == ';' ||
        last == ':' || last == ',' || last == '"' || last == '\'' ||
        last == ' ') {
      out.pop_back();
      changed = true;
      continue;
    }
    for (auto mb : kMultiByte) {
      if (EndsWith(out, mb)) {
        out.resize(out.size() - mb.size());
        changed = true;
        break;
      }
    }
  }
  return out;
}

double ConsistentSentenceProportion(std::span<const Document> human,
                                    std::span<const Document> machine) {
  if (human.empty() || machine.empty()) {
    throw InvalidConfig("overlap needs non-empty human and machine corpora");
  }
  std::unordered_set<std::string> human_set;
  for (const auto& d : human) {
    for (std::size_t i = 0; i < d.sentences.size(); ++i) {
      human_set.insert(NormalizeSentence(d.sentence(i)));
    }
  }
  std::size_t total = 0, hits = 0;
  for (const auto& d : machine) {
    for (std::size_t i = 0; i < d.sentences.size(); ++i) {
      ++total;
      hits += human_set.count(NormalizeSentence(d.sentence(i)));
    }
  }
  if (total == 0) return 0.0;
  return static_cast<double>(hits) / static_cast<double>(total);
}

Document InjectHumanSentences(const Document& machine_doc,
                              std::span<const std::string> pool,
                              std::size_t count, Rng& rng) {
  const std::size_t n = machine_doc.sentences.size();
  if (count >= n) {
    throw InvalidConfig("cannot replace " + std::to_string(count) + " of " +
                        std::to_string(n) + " sentences");
  }
  if (count == 0) return machine_doc;
  if (pool.empty()) throw InvalidConfig("human sentence pool is empty");

  std::vector<std::string> sentences;
  sentences.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    sentences.emplace_back(machine_doc.sentence(i));
  }
  for (std::size_t pos : rng.Sample(n, count)) {
    sentences[pos] = pool[rng.Index(pool.size())];
  }

  Document out;
  out.id = machine_doc.id;
  out.label = machine_doc.label;
  for (const auto& s : sentences) {
    if (!out.text.empty()) out.text.push_back(' ');
    out.sentences.push_back({out.text.size(), out.text.size() + s.size()});
    out.text += s;
  }
  return out;
}

}  // namespace stackdet
