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

#include "stackdet/theory_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "stackdet/error.hpp"
#include "stackdet/evaluation.hpp"
#include "stackdet/parallel.hpp"

namespace stackdet {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t FloorCount(double fraction, std::size_t n) {
  return static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n) + 1e-9));
}

double LogAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double LogChoose(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Per-sentence log densities under h and m. Gaussian densities drop the
// shared normalizing constant, which cancels in the ratio.
void LogDensities(const SimText& text, const SentenceWorld& world,
                  std::vector<double>& lh, std::vector<double>& lm) {
  const std::size_t n = text.size();
  lh.resize(n);
  lm.resize(n);
  if (world.kind == WorldKind::kCategorical) {
    if (text.symbols.size() != n) {
      throw InvalidConfig("categorical text without symbols");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = static_cast<std::size_t>(text.symbols[i]);
      if (s >= world.h.size()) throw InvalidConfig("symbol out of range");
      lh[i] = std::log(world.h[s]);
      lm[i] = std::log(world.m[s]);
    }
    return;
  }
  const std::size_t d = world.dim();
  if (text.dim != d || text.points.size() != n * d) {
    throw InvalidConfig("gaussian text does not match world dimension");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double qh = 0.0, qm = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      const double x = text.points[i * d + c];
      qh += (x - world.mu_h[c]) * (x - world.mu_h[c]);
      qm += (x - world.mu_m[c]) * (x - world.mu_m[c]);
    }
    lh[i] = -0.5 * qh;
    lm[i] = -0.5 * qm;
  }
}

std::string Fmt(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<std::size_t> EvenLengths(std::size_t n, std::size_t parts) {
  std::vector<std::size_t> out(parts, n / parts);
  for (std::size_t j = 0; j < n % parts; ++j) ++out[j];
  return out;
}

}  // namespace

SentenceWorld SentenceWorld::Categorical(std::vector<double> h,
                                         std::vector<double> m) {
  SentenceWorld w;
  w.kind = WorldKind::kCategorical;
  w.h = std::move(h);
  w.m = std::move(m);
  w.Validate();
  return w;
}

SentenceWorld SentenceWorld::Gaussian(std::vector<double> mu_h,
                                      std::vector<double> mu_m) {
  SentenceWorld w;
  w.kind = WorldKind::kGaussian;
  w.mu_h = std::move(mu_h);
  w.mu_m = std::move(mu_m);
  w.Validate();
  return w;
}

SentenceWorld SentenceWorld::CategoricalWithTv(double delta,
                                               std::size_t alphabet) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw InvalidConfig("delta must lie in [0, 1]");
  }
  if (alphabet < 2 || alphabet % 2 != 0) {
    throw InvalidConfig("alphabet size must be even and >= 2");
  }
  std::vector<double> h(alphabet), m(alphabet);
  const double base = 1.0 / static_cast<double>(alphabet);
  for (std::size_t i = 0; i < alphabet; ++i) {
    const double v = i % 2 == 0 ? 1.0 : -1.0;
    h[i] = base * (1.0 + delta * v);
    m[i] = base * (1.0 - delta * v);
  }
  return Categorical(std::move(h), std::move(m));
}

SentenceWorld SentenceWorld::GaussianWithTv(double delta, std::size_t dim) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw InvalidConfig("gaussian delta must lie in [0, 1)");
  }
  if (dim < 1) throw InvalidConfig("dimension must be >= 1");
  // Invert delta = 2 Phi(r / 2) - 1 by bisection.
  double lo = 0.0, hi = 80.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (2.0 * NormalCdf(mid / 2.0) - 1.0 < delta ? lo : hi) = mid;
  }
  std::vector<double> mu_h(dim, 0.0), mu_m(dim, 0.0);
  mu_m[0] = delta == 0.0 ? 0.0 : 0.5 * (lo + hi);
  return Gaussian(std::move(mu_h), std::move(mu_m));
}

void SentenceWorld::Validate() const {
  if (kind == WorldKind::kCategorical) {
    if (h.empty() || h.size() != m.size()) {
      throw InvalidConfig("h and m must be non-empty and equally sized");
    }
    double sh = 0.0, sm = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (!(h[i] >= 0.0) || !(m[i] >= 0.0) || !std::isfinite(h[i]) ||
          !std::isfinite(m[i])) {
        throw InvalidConfig("categorical probabilities must be finite, >= 0");
      }
      sh += h[i];
      sm += m[i];
    }
    if (std::abs(sh - 1.0) > 1e-9 || std::abs(sm - 1.0) > 1e-9) {
      throw InvalidConfig("categorical probabilities must sum to 1");
    }
    return;
  }
  if (mu_h.empty() || mu_h.size() != mu_m.size()) {
    throw InvalidConfig("gaussian means must be non-empty and equally sized");
  }
  for (std::size_t i = 0; i < mu_h.size(); ++i) {
    if (!std::isfinite(mu_h[i]) || !std::isfinite(mu_m[i])) {
      throw InvalidConfig("gaussian means must be finite");
    }
  }
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double TvDistance(const SentenceWorld& world) {
  world.Validate();
  if (world.kind == WorldKind::kCategorical) {
    double s = 0.0;
    for (std::size_t i = 0; i < world.h.size(); ++i) {
      s += std::abs(world.h[i] - world.m[i]);
    }
    return std::min(1.0, 0.5 * s);
  }
  double d2 = 0.0;
  for (std::size_t i = 0; i < world.dim(); ++i) {
    d2 += (world.mu_h[i] - world.mu_m[i]) * (world.mu_h[i] - world.mu_m[i]);
  }
  return 2.0 * NormalCdf(std::sqrt(d2) / 2.0) - 1.0;
}

std::size_t MixSpec::human_like_count() const { return FloorCount(alpha, n); }

std::vector<std::size_t> MixSpec::sequence_lengths() const {
  if (lengths.empty()) return {n};
  return lengths;
}

double MixSpec::sequence_rho(std::size_t j) const {
  return rho_per_sequence.empty() ? rho : rho_per_sequence.at(j);
}

bool MixSpec::iid() const {
  const std::size_t parts = sequence_lengths().size();
  for (std::size_t j = 0; j < parts; ++j) {
    if (sequence_rho(j) != 0.0) return false;
  }
  return true;
}

void MixSpec::Validate() const {
  if (n < 1) throw InvalidConfig("n must be >= 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw InvalidConfig("alpha must lie in [0, 1)");
  }
  std::size_t total = 0;
  for (std::size_t c : sequence_lengths()) {
    if (c < 1) throw InvalidConfig("sequence lengths must be >= 1");
    total += c;
  }
  if (total != n) throw InvalidConfig("sequence lengths must sum to n");
  if (!rho_per_sequence.empty() &&
      rho_per_sequence.size() != sequence_lengths().size()) {
    throw InvalidConfig("one rho per sequence is required");
  }
  const std::size_t parts = sequence_lengths().size();
  for (std::size_t j = 0; j < parts; ++j) {
    const double r = sequence_rho(j);
    if (!(r >= 0.0 && r < 1.0)) throw InvalidConfig("rho must lie in [0, 1)");
  }
}

SimText SampleText(const SentenceWorld& world, const MixSpec& mix,
                   TextClass cls, Rng& rng) {
  world.Validate();
  mix.Validate();
  if (world.kind == WorldKind::kCategorical && !mix.iid()) {
    throw UnsupportedCombination(
        "categorical worlds have no dependency model; use a gaussian world "
        "for rho > 0");
  }
  SimText t;
  t.human_like.assign(mix.n, 1);
  if (cls == TextClass::kMachineMixed) {
    std::fill(t.human_like.begin(), t.human_like.end(), 0);
    for (std::size_t p : rng.Sample(mix.n, mix.human_like_count())) {
      t.human_like[p] = 1;
    }
  }

  if (world.kind == WorldKind::kCategorical) {
    std::vector<double> ch(world.h.size()), cm(world.m.size());
    double sh = 0.0, sm = 0.0;
    for (std::size_t i = 0; i < ch.size(); ++i) {
      ch[i] = sh += world.h[i];
      cm[i] = sm += world.m[i];
    }
    t.symbols.resize(mix.n);
    for (std::size_t i = 0; i < mix.n; ++i) {
      t.symbols[i] =
          static_cast<int>(rng.Categorical(t.human_like[i] ? ch : cm));
    }
    return t;
  }

  const std::size_t d = world.dim();
  t.dim = d;
  t.points.resize(mix.n * d);
  const auto seqs = mix.sequence_lengths();
  std::vector<double> sum(d);
  std::size_t pos = 0;
  for (std::size_t j = 0; j < seqs.size(); ++j) {
    const double rho = mix.sequence_rho(j);
    std::fill(sum.begin(), sum.end(), 0.0);
    for (std::size_t i = 0; i < seqs[j]; ++i, ++pos) {
      const auto& mu = t.human_like[pos] ? world.mu_h : world.mu_m;
      for (std::size_t c = 0; c < d; ++c) {
        const double fresh = mu[c] + rng.Normal();
        const double x =
            i == 0 ? fresh
                   : rho * sum[c] / static_cast<double>(i) + (1.0 - rho) * fresh;
        t.points[pos * d + c] = x;
        sum[c] += x;
      }
    }
  }
  return t;
}

double LikelihoodRatioScore(const SimText& text, const SentenceWorld& world,
                            std::size_t human_like, LrMode mode) {
  const std::size_t n = text.size();
  if (human_like > n) {
    throw InvalidConfig("more human-like sentences than the text holds");
  }
  std::vector<double> lh, lm;
  LogDensities(text, world, lh, lm);

  double log_h = 0.0;
  for (double v : lh) log_h += v;

  double log_m = 0.0;
  if (mode == LrMode::kMixture) {
    const double a = n ? static_cast<double>(human_like) / n : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (a == 0.0) {
        log_m += lm[i];
      } else if (a == 1.0) {
        log_m += lh[i];
      } else {
        log_m += LogAddExp(std::log1p(-a) + lm[i], std::log(a) + lh[i]);
      }
    }
  } else {
    // e[j] = log of the sum, over j-subsets P of the sentences seen so far,
    // of prod_{P} h * prod_{not P} m.
    std::vector<double> e(human_like + 1, kNegInf);
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = std::min(i + 1, human_like); j >= 1; --j) {
        e[j] = LogAddExp(e[j] + lm[i], e[j - 1] + lh[i]);
      }
      e[0] += lm[i];
    }
    log_m = e[human_like] - LogChoose(n, human_like);
  }
  const double score = log_m - log_h;
  if (std::isnan(score)) throw NumericalError("likelihood ratio is undefined");
  return score;
}

double LikelihoodRatioScore(const SimText& text, const SentenceWorld& world,
                            const MixSpec& mix, LrMode mode) {
  mix.Validate();
  if (!mix.iid()) {
    throw UnsupportedCombination(
        "no closed-form likelihood ratio under sentence dependency");
  }
  if (text.size() != mix.n) {
    throw InvalidConfig("text length does not match the mix spec");
  }
  return LikelihoodRatioScore(text, world, mix.human_like_count(), mode);
}

SimText ApplyTheoryFilter(const SimText& text, TextClass cls,
                          const FilterSpec& filter, Rng& rng) {
  if (!(filter.alpha_s >= 0.0 && filter.alpha_h >= 0.0 &&
        filter.alpha_s + filter.alpha_h < 1.0)) {
    throw InvalidFilterSpec(
        "need alpha_s >= 0, alpha_h >= 0 and alpha_s + alpha_h < 1");
  }
  const std::size_t n = text.size();
  std::vector<std::uint8_t> drop(n, 0);
  if (cls == TextClass::kMachineMixed) {
    std::vector<std::size_t> human, machine;
    for (std::size_t i = 0; i < n; ++i) {
      (text.human_like[i] ? human : machine).push_back(i);
    }
    const std::size_t rs = FloorCount(filter.alpha_s, n);
    const std::size_t rh = FloorCount(filter.alpha_h, n);
    if (rs > human.size()) {
      throw InvalidFilterSpec("cannot remove " + std::to_string(rs) +
                              " human-like sentences; text has " +
                              std::to_string(human.size()));
    }
    if (rh > machine.size()) {
      throw InvalidFilterSpec("cannot remove " + std::to_string(rh) +
                              " machine sentences; text has " +
                              std::to_string(machine.size()));
    }
    for (std::size_t p : rng.Sample(human.size(), rs)) drop[human[p]] = 1;
    for (std::size_t p : rng.Sample(machine.size(), rh)) drop[machine[p]] = 1;
  } else {
    const std::size_t r = FloorCount(filter.alpha_s + filter.alpha_h, n);
    if (r > n) throw InvalidFilterSpec("more removals than sentences");
    for (std::size_t p : rng.Sample(n, r)) drop[p] = 1;
  }

  SimText out;
  out.dim = text.dim;
  for (std::size_t i = 0; i < n; ++i) {
    if (drop[i]) continue;
    out.human_like.push_back(text.human_like[i]);
    if (!text.symbols.empty()) out.symbols.push_back(text.symbols[i]);
    for (std::size_t c = 0; c < text.dim; ++c) {
      out.points.push_back(text.points[i * text.dim + c]);
    }
  }
  return out;
}

std::size_t FilteredHumanLike(const MixSpec& mix, const FilterSpec& filter) {
  const std::size_t a = mix.human_like_count();
  const std::size_t rs = FloorCount(filter.alpha_s, mix.n);
  return rs >= a ? 0 : a - rs;
}

FilterGainCondition CheckFilterGain(double delta, const MixSpec& mix,
                                    const FilterSpec& filter) {
  FilterGainCondition c;
  const double a = mix.alpha, as = filter.alpha_s, ah = filter.alpha_h;
  const double root = std::sqrt(std::max(0.0, 1.0 - as - ah));
  const double gap = (1.0 - a - ah) - (1.0 - a) * root;
  c.exact_first = gap > 0.0;

  double dependency = 0.0;
  const auto seqs = mix.sequence_lengths();
  for (std::size_t j = 0; j < seqs.size(); ++j) {
    dependency += static_cast<double>(seqs[j] - 1) * mix.sequence_rho(j);
  }
  dependency /= static_cast<double>(mix.n);
  c.exact_second =
      root < 1.0 && dependency < delta * gap / (2.0 * (1.0 - root));
  c.approx = a < 1.0 && as > (1.0 + a) / (1.0 - a) * ah;
  return c;
}

std::vector<GridPoint> SweepGrid::Expand() const {
  std::vector<GridPoint> out;
  for (double d : delta)
    for (std::size_t nn : n)
      for (double a : alpha)
        for (double as : alpha_s)
          for (double ah : alpha_h)
            for (double r : rho) out.push_back({d, nn, a, as, ah, r});
  return out;
}

namespace {

double PointAuroc(const SimConfig& cfg, const GridPoint& p,
                  std::uint64_t seed, ConfidenceInterval* ci) {
  const SentenceWorld world =
      cfg.kind == WorldKind::kCategorical
          ? SentenceWorld::CategoricalWithTv(p.delta, cfg.alphabet)
          : SentenceWorld::GaussianWithTv(p.delta, cfg.dim);
  MixSpec mix;
  mix.n = p.n;
  mix.alpha = p.alpha;
  mix.rho = p.rho;
  if (cfg.sequences > p.n) {
    throw InvalidConfig("more sequences than sentences at n=" +
                        std::to_string(p.n));
  }
  if (cfg.sequences > 1) mix.lengths = EvenLengths(p.n, cfg.sequences);
  mix.Validate();
  const FilterSpec filter{p.alpha_s, p.alpha_h};
  const std::size_t machine_h =
      filter.active() ? FilteredHumanLike(mix, filter)
                      : mix.human_like_count();

  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<double> scores(2 * trials);
  std::vector<int> labels(2 * trials);
  ParallelFor(2 * trials, cfg.jobs, [&](std::size_t i) {
    const bool machine = i >= trials;
    const std::size_t trial = machine ? i - trials : i;
    const TextClass cls = machine ? TextClass::kMachineMixed : TextClass::kHuman;
    Rng rng(DeriveSeed(seed, machine ? 1 : 0, trial));
    SimText t = SampleText(world, mix, cls, rng);
    if (filter.active()) t = ApplyTheoryFilter(t, cls, filter, rng);
    scores[i] = LikelihoodRatioScore(t, world, std::min(machine_h, t.size()),
                                     cfg.lr_mode);
    labels[i] = machine ? 1 : 0;
  });
  if (ci) *ci = BootstrapAuroc(scores, labels, cfg.bootstrap,
                               DeriveSeed(seed, 0x6369ULL));
  return Auroc(scores, labels);
}

}  // namespace

std::vector<ExperimentRow> RunExperiment(const SimConfig& cfg,
                                         std::span<const GridPoint> grid) {
  if (cfg.trials < 100) throw InvalidConfig("trials must be >= 100");
  if (cfg.bootstrap < 1) throw InvalidConfig("bootstrap must be >= 1");
  if (cfg.repeats < 1) throw InvalidConfig("repeats must be >= 1");
  if (cfg.sequences < 1) throw InvalidConfig("sequences must be >= 1");

  std::vector<ExperimentRow> rows;
  rows.reserve(grid.size());
  for (const GridPoint& p : grid) {
    ExperimentRow row;
    row.point = p;
    row.trials = cfg.trials;
    row.tv = TvDistance(cfg.kind == WorldKind::kCategorical
                            ? SentenceWorld::CategoricalWithTv(p.delta,
                                                               cfg.alphabet)
                            : SentenceWorld::GaussianWithTv(p.delta, cfg.dim));
    if (p.rho != 0.0) {
      row.score_form = "iid-form-mismatch";
    } else {
      row.score_form = cfg.lr_mode == LrMode::kExact ? "exact" : "mixture";
    }

    std::vector<double> values;
    for (int r = 0; r < cfg.repeats; ++r) {
      const std::uint64_t seed =
          r == 0 ? cfg.seed : DeriveSeed(cfg.seed, 0x72657074ULL, r);
      ConfidenceInterval ci;
      values.push_back(PointAuroc(cfg, p, seed, r == 0 ? &ci : nullptr));
      if (r == 0) {
        row.auroc = values.back();
        row.ci_lo = ci.lo;
        row.ci_hi = ci.hi;
      }
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    row.repeat_mean = mean;
    row.repeat_std = values.size() > 1
                         ? std::sqrt(var / static_cast<double>(values.size() - 1))
                         : 0.0;

    const FilterSpec filter{p.alpha_s, p.alpha_h};
    if (filter.active()) {
      MixSpec mix;
      mix.n = p.n;
      mix.alpha = p.alpha;
      mix.rho = p.rho;
      if (cfg.sequences > 1) mix.lengths = EvenLengths(p.n, cfg.sequences);
      row.filter_gain = CheckFilterGain(row.tv, mix, filter);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string ExperimentCsv(std::span<const ExperimentRow> rows,
                          bool with_repeats) {
  std::ostringstream os;
  os << "delta,tv,n,alpha,alpha_s,alpha_h,rho,trials,auroc,ci_lo,ci_hi";
  if (with_repeats) os << ",auroc_mean,auroc_std";
  os << ",score_form,gain_exact,gain_approx\n";
  for (const auto& r : rows) {
    const auto& p = r.point;
    os << Fmt(p.delta, "%g") << ',' << Fmt(r.tv) << ',' << p.n << ','
       << Fmt(p.alpha, "%g") << ',' << Fmt(p.alpha_s, "%g") << ','
       << Fmt(p.alpha_h, "%g") << ',' << Fmt(p.rho, "%g") << ',' << r.trials
       << ',' << Fmt(r.auroc) << ',' << Fmt(r.ci_lo) << ',' << Fmt(r.ci_hi);
    if (with_repeats) {
      os << ',' << Fmt(r.repeat_mean) << ',' << Fmt(r.repeat_std);
    }
    os << ',' << r.score_form << ',';
    if (r.filter_gain) {
      os << (r.filter_gain->exact_first && r.filter_gain->exact_second ? "holds"
                                                                 : "violated")
         << ',' << (r.filter_gain->approx ? "holds" : "violated");
    } else {
      os << "na,na";
    }
    os << '\n';
  }
  return os.str();
}

std::string CurveSummaryJson(std::span<const ExperimentRow> rows) {
  using Key = std::tuple<double, double, double, double, double>;
  std::map<Key, std::vector<const ExperimentRow*>> curves;
  for (const auto& r : rows) {
    const auto& p = r.point;
    curves[{p.delta, p.alpha, p.alpha_s, p.alpha_h, p.rho}].push_back(&r);
  }
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (auto& [key, pts] : curves) {
    std::stable_sort(pts.begin(), pts.end(),
                     [](const ExperimentRow* a, const ExperimentRow* b) {
                       return a->point.n < b->point.n;
                     });
    bool monotone = true;
    nlohmann::ordered_json ns = nlohmann::ordered_json::array();
    nlohmann::ordered_json au = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      ns.push_back(pts[i]->point.n);
      au.push_back(pts[i]->auroc);
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (pts[j]->point.n > pts[i]->point.n &&
            pts[j]->ci_hi < pts[i]->ci_lo) {
          monotone = false;
        }
      }
    }
    nlohmann::ordered_json c;
    c["delta"] = std::get<0>(key);
    c["alpha"] = std::get<1>(key);
    c["alpha_s"] = std::get<2>(key);
    c["alpha_h"] = std::get<3>(key);
    c["rho"] = std::get<4>(key);
    c["n"] = ns;
    c["auroc"] = au;
    c["non_decreasing_within_ci"] = monotone;
    out.push_back(c);
  }
  return out.dump(2);
}

}  // namespace stackdet
