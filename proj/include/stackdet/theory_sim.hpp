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

// Monte Carlo laboratory for sentence-level detection theory.
//
// Texts are sequences of abstract sentences drawn from a human
// distribution h or a machine distribution m. A "machine_mixed" text hides
// floor(alpha * n) human-like sentences at random positions. The best
// possible detector thresholds the likelihood ratio M(S) / H(S); sweeping
// n, alpha and the idealized filter (alpha_s correct removals, alpha_h
// mistaken ones) shows how detectability moves with each.

#ifndef STACKDET_THEORY_SIM_HPP_
#define STACKDET_THEORY_SIM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stackdet/rng.hpp"

namespace stackdet {

enum class WorldKind { kCategorical, kGaussian };

struct SentenceWorld {
  WorldKind kind = WorldKind::kCategorical;
  std::vector<double> h, m;        // categorical probabilities
  std::vector<double> mu_h, mu_m;  // gaussian means, identity covariance

  static SentenceWorld Categorical(std::vector<double> h,
                                   std::vector<double> m);
  static SentenceWorld Gaussian(std::vector<double> mu_h,
                                std::vector<double> mu_m);

  /// Alternating world over `alphabet` (even) symbols:
  /// h = (1 +- delta) / alphabet, m = (1 -+ delta) / alphabet,
  /// so TV(h, m) = delta. Requires 0 <= delta < 1.
  static SentenceWorld CategoricalWithTv(double delta,
                                         std::size_t alphabet = 8);
  /// mu_h = 0, mu_m = r * e_1 with r chosen so TV = delta. 0 <= delta < 1.
  static SentenceWorld GaussianWithTv(double delta, std::size_t dim = 2);

  std::size_t dim() const { return mu_h.size(); }
  /// Throws InvalidConfig.
  void Validate() const;
};

double NormalCdf(double x);

/// Categorical: half the L1 distance. Gaussian (shared identity
/// covariance): 2 Phi(|mu_h - mu_m| / 2) - 1.
double TvDistance(const SentenceWorld& world);

struct MixSpec {
  std::size_t n = 10;
  double alpha = 0.0;
  double rho = 0.0;
  /// Sentences per independent sequence; empty means one sequence of n.
  std::vector<std::size_t> lengths;
  /// Per-sequence dependency strengths; empty means `rho` everywhere.
  std::vector<double> rho_per_sequence;

  /// floor(alpha * n) with a 1e-9 guard.
  std::size_t human_like_count() const;
  std::vector<std::size_t> sequence_lengths() const;
  double sequence_rho(std::size_t j) const;
  bool iid() const;
  void Validate() const;
};

struct FilterSpec {
  double alpha_s = 0.0;
  double alpha_h = 0.0;

  bool active() const { return alpha_s > 0.0 || alpha_h > 0.0; }
};

enum class TextClass { kHuman, kMachineMixed };

/// One synthetic text. Categorical sentences live in `symbols`; gaussian
/// sentences are rows of `points` (size() x dim). `human_like[i]` marks
/// sentences drawn from h.
struct SimText {
  std::vector<int> symbols;
  std::vector<double> points;
  std::size_t dim = 0;
  std::vector<std::uint8_t> human_like;

  std::size_t size() const { return human_like.size(); }
};

/// Human texts draw all n sentences from h. Machine-mixed texts draw
/// n - floor(alpha n) from m and the rest from h at uniformly chosen
/// positions. With rho > 0 (gaussian only) sentence i of a sequence is
/// rho * mean(previous sentences of that sequence) + (1 - rho) * fresh draw.
/// Throws UnsupportedCombination for categorical worlds with rho > 0.
SimText SampleText(const SentenceWorld& world, const MixSpec& mix,
                   TextClass cls, Rng& rng);

enum class LrMode {
  kExact,    // exchangeable marginal over all position sets
  kMixture,  // per-sentence mixture ((1 - a/n) m + (a/n) h)
};

/// log M(S) - log H(S), where M averages over every placement of
/// `human_like` h-sentences among the |S| positions (uniform prior) and
/// H(S) = prod h(s_i). The exact mode runs an O(|S| * human_like) dynamic
/// program, equal to brute-force enumeration.
double LikelihoodRatioScore(const SimText& text, const SentenceWorld& world,
                            std::size_t human_like, LrMode mode = LrMode::kExact);

/// Uses mix.human_like_count(). Throws UnsupportedCombination unless the
/// mix is IID (rho == 0 everywhere), and InvalidConfig if text.size() != n.
double LikelihoodRatioScore(const SimText& text, const SentenceWorld& world,
                            const MixSpec& mix, LrMode mode = LrMode::kExact);

/// Idealized label-aware filter used by the theory (not the score-driven
/// retention rule). Machine-mixed: removes floor(alpha_s n) human-like and
/// floor(alpha_h n) machine sentences. Human: removes
/// floor((alpha_s + alpha_h) n) sentences. n is the text length; removals
/// are uniform. Throws InvalidFilterSpec if a kind runs short.
SimText ApplyTheoryFilter(const SimText& text, TextClass cls,
                          const FilterSpec& filter, Rng& rng);

/// Human-like count left in a machine-mixed text after filtering.
std::size_t FilteredHumanLike(const MixSpec& mix, const FilterSpec& filter);

struct FilterGainCondition {
  bool exact_first = false;   // 1 - a - a_h > (1 - a) sqrt(1 - a_s - a_h)
  bool exact_second = false;  // dependency term below its bound
  bool approx = false;        // a_s > (1 + a) / (1 - a) * a_h
};

FilterGainCondition CheckFilterGain(double delta, const MixSpec& mix,
                                    const FilterSpec& filter);

struct GridPoint {
  double delta = 0.5;
  std::size_t n = 20;
  double alpha = 0.0;
  double alpha_s = 0.0;
  double alpha_h = 0.0;
  double rho = 0.0;
};

struct SweepGrid {
  std::vector<double> delta{0.5};
  std::vector<std::size_t> n{20};
  std::vector<double> alpha{0.0};
  std::vector<double> alpha_s{0.0};
  std::vector<double> alpha_h{0.0};
  std::vector<double> rho{0.0};

  /// Cartesian product, delta outermost and rho innermost.
  std::vector<GridPoint> Expand() const;
};

struct SimConfig {
  WorldKind kind = WorldKind::kCategorical;
  std::size_t alphabet = 8;
  std::size_t dim = 2;
  std::size_t sequences = 1;  // L
  int trials = 2000;          // texts per class
  int bootstrap = 1000;
  int repeats = 1;            // independent reruns for mean +- std
  LrMode lr_mode = LrMode::kExact;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct ExperimentRow {
  GridPoint point;
  double tv = 0.0;
  int trials = 0;
  double auroc = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double repeat_mean = 0.0;
  double repeat_std = 0.0;
  std::string score_form;  // "exact", "mixture" or "iid-form-mismatch"
  std::optional<FilterGainCondition> filter_gain;
};

/// Each grid point samples `trials` human and `trials` machine-mixed texts
/// (streams derived from seed, class and trial index only, so a point's
/// result does not depend on the rest of the grid or on `jobs`), applies
/// the filter when active, scores with the likelihood ratio and reports
/// AUROC with a percentile bootstrap CI. Non-IID gaussian points fall back
/// to the IID-form score and say so in `score_form`.
std::vector<ExperimentRow> RunExperiment(const SimConfig& cfg,
                                         std::span<const GridPoint> grid);

std::string ExperimentCsv(std::span<const ExperimentRow> rows,
                          bool with_repeats = false);

/// Groups rows into curves over n (all else equal) and reports, per curve,
/// whether AUROC ever drops with n by more than the CIs allow.
std::string CurveSummaryJson(std::span<const ExperimentRow> rows);

}  // namespace stackdet

#endif  // STACKDET_THEORY_SIM_HPP_
