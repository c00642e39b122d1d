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


// Python bindings. Strings in, plain Python values out; the heavy calls
// release the GIL.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <vector>

#include "stackdet/error.hpp"
#include "stackdet/evaluation.hpp"
#include "stackdet/lm_detector.hpp"
#include "stackdet/logreg.hpp"
#include "stackdet/model_io.hpp"
#include "stackdet/external.hpp"
#include "stackdet/retention.hpp"
#include "stackdet/segmentation.hpp"
#include "stackdet/stacked.hpp"
#include "stackdet/theory_sim.hpp"

namespace py = pybind11;
namespace sd = stackdet;

namespace {

std::vector<std::string> SplitText(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& s : sd::SplitSentences(text)) {
    out.push_back(text.substr(s.begin, s.size()));
  }
  return out;
}

py::dict InferenceDict(const sd::InferenceResult& r) {
  py::dict d;
  d["score"] = r.score.value;
  d["logit"] = r.score.logit;
  d["n_groups"] = r.n_groups;
  d["n_filtered"] = r.n_filtered;
  d["mask"] = r.mask.bits;
  d["base_calls"] = r.base_calls;
  return d;
}

sd::FilterConfig Filter(double r_e, double tau, std::size_t k) {
  sd::FilterConfig cfg{r_e, tau, k};
  cfg.Validate();
  return cfg;
}

py::dict RowDict(const sd::ExperimentRow& r) {
  py::dict d;
  d["delta"] = r.point.delta;
  d["n"] = r.point.n;
  d["alpha"] = r.point.alpha;
  d["alpha_s"] = r.point.alpha_s;
  d["alpha_h"] = r.point.alpha_h;
  d["rho"] = r.point.rho;
  d["tv"] = r.tv;
  d["trials"] = r.trials;
  d["auroc"] = r.auroc;
  d["ci"] = py::make_tuple(r.ci_lo, r.ci_hi);
  d["score_form"] = r.score_form;
  if (r.filter_gain) {
    d["gain_exact"] = r.filter_gain->exact_first && r.filter_gain->exact_second;
    d["gain_approx"] = r.filter_gain->approx;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_stackdet, m) {
  m.doc() = "Stacked sentence-filtering detection of machine-generated text";

  static py::exception<sd::Error> error(m, "StackdetError",
                                        PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const sd::Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error)(e.what());
      exc.attr("kind") = sd::ErrorKindName(e.kind());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("split_sentences", &SplitText, py::arg("text"));

  m.def("filter_budget", &sd::FilterBudget, py::arg("tau"), py::arg("n"));
  m.def(
      "compute_mask",
      [](const std::vector<double>& scores, double r_e, double tau) {
        return sd::ComputeMask(scores, Filter(r_e, tau, 1)).bits;
      },
      py::arg("scores"), py::arg("r_e") = 0.01, py::arg("tau") = 0.25);
  m.def(
      "naive_mask",
      [](const std::vector<double>& scores) {
        return sd::NaiveMask(scores).bits;
      },
      py::arg("scores"));
  m.def(
      "random_mask",
      [](std::size_t n, double ratio, std::uint64_t seed) {
        return sd::RandomMask(n, ratio, seed).bits;
      },
      py::arg("n"), py::arg("drop_ratio"), py::arg("seed") = 0);

  m.def("auroc", [](const std::vector<double>& s, const std::vector<int>& y) {
    return sd::Auroc(s, y);
  }, py::arg("scores"), py::arg("labels"));
  m.def(
      "tpr_at_fpr",
      [](const std::vector<double>& s, const std::vector<int>& y, double k) {
        return sd::TprAtFpr(s, y, k);
      },
      py::arg("scores"), py::arg("labels"), py::arg("fpr"));
  m.def(
      "bootstrap_auroc",
      [](const std::vector<double>& s, const std::vector<int>& y,
         int resamples, std::uint64_t seed) {
        const auto ci = sd::BootstrapAuroc(s, y, resamples, seed);
        return py::make_tuple(ci.lo, ci.hi);
      },
      py::arg("scores"), py::arg("labels"), py::arg("resamples") = 1000,
      py::arg("seed") = 0);

  py::class_<sd::Detector, std::shared_ptr<sd::Detector>>(m, "Detector")
      .def_property_readonly("name", &sd::Detector::name)
      .def(
          "score",
          [](const sd::Detector& d, const std::string& text) {
            return d.Score(text).value;
          },
          py::arg("text"))
      .def(
          "score_batch",
          [](const sd::Detector& d, const std::vector<std::string>& texts) {
            std::vector<std::string_view> views(texts.begin(), texts.end());
            std::vector<sd::DetectorScore> scores;
            {
              py::gil_scoped_release release;
              scores = d.ScoreBatch(views);
            }
            std::vector<double> out;
            for (const auto& s : scores) out.push_back(s.value);
            return out;
          },
          py::arg("texts"));

  py::class_<sd::NGramLMDetector, sd::Detector,
             std::shared_ptr<sd::NGramLMDetector>>(m, "NGramLM")
      .def(py::init<std::uint32_t, double>(), py::arg("order") = 1,
           py::arg("smoothing") = 0.1)
      .def_static(
          "fit",
          [](const std::vector<std::string>& human,
             const std::vector<std::string>& machine, std::uint32_t order,
             double lambda) {
            return std::make_shared<sd::NGramLMDetector>(
                sd::NGramLMDetector::Fit(human, machine, order, lambda));
          },
          py::arg("human"), py::arg("machine"), py::arg("order") = 1,
          py::arg("smoothing") = 0.1)
      .def("add_human", &sd::NGramLMDetector::AddHuman, py::arg("text"))
      .def("add_machine", &sd::NGramLMDetector::AddMachine, py::arg("text"))
      .def("logit",
           [](const sd::NGramLMDetector& d, const std::string& text) {
             return d.Score(text).logit;
           },
           py::arg("text"))
      .def("save", [](const sd::NGramLMDetector& d, const std::string& path) {
        sd::SaveModel(d, path);
      }, py::arg("path"))
      .def_property_readonly("order", &sd::NGramLMDetector::order)
      .def_property_readonly("vocab_size", &sd::NGramLMDetector::vocab_size);

  py::class_<sd::ExternalDetector, sd::Detector,
             std::shared_ptr<sd::ExternalDetector>>(m, "ExternalDetector")
      .def(py::init([](const std::string& command) {
             return std::make_shared<sd::ExternalDetector>(
                 sd::ExternalDetector::SplitCommand(command));
           }),
           py::arg("command"))
      .def("take_warnings", &sd::ExternalDetector::TakeWarnings);

  m.def(
      "load_detector",
      [](const std::string& path) {
        return std::shared_ptr<sd::Detector>(sd::LoadDetector(path));
      },
      py::arg("path"));

  m.def(
      "stacked_score",
      [](const sd::Detector& base, const std::string& text, double r_e,
         double tau, std::size_t k) {
        const auto doc = sd::MakeDocument("doc", text);
        const auto cfg = Filter(r_e, tau, k);
        sd::InferenceResult r;
        {
          py::gil_scoped_release release;
          r = sd::StackedInfer(base, doc, cfg);
        }
        return InferenceDict(r);
      },
      py::arg("detector"), py::arg("text"), py::arg("r_e") = 0.01,
      py::arg("tau") = 0.25, py::arg("k") = 3);

  m.def(
      "tv_distance",
      [](const std::vector<double>& h, const std::vector<double>& m) {
        return sd::TvDistance(sd::SentenceWorld::Categorical(h, m));
      },
      py::arg("h"), py::arg("m"));
  m.def(
      "gaussian_tv_distance",
      [](const std::vector<double>& mu_h, const std::vector<double>& mu_m) {
        return sd::TvDistance(sd::SentenceWorld::Gaussian(mu_h, mu_m));
      },
      py::arg("mu_h"), py::arg("mu_m"));

  m.def(
      "simulate",
      [](std::vector<double> delta, std::vector<std::size_t> n,
         std::vector<double> alpha, std::vector<double> alpha_s,
         std::vector<double> alpha_h, std::vector<double> rho,
         const std::string& world, int trials, int bootstrap,
         std::uint64_t seed, int jobs) {
        sd::SweepGrid grid{delta, n, alpha, alpha_s, alpha_h, rho};
        sd::SimConfig cfg;
        if (world == "gaussian") {
          cfg.kind = sd::WorldKind::kGaussian;
        } else if (world != "categorical") {
          throw sd::InvalidConfig("world must be 'categorical' or 'gaussian'");
        }
        cfg.trials = trials;
        cfg.bootstrap = bootstrap;
        cfg.seed = seed;
        cfg.jobs = jobs;
        const auto points = grid.Expand();
        std::vector<sd::ExperimentRow> rows;
        {
          py::gil_scoped_release release;
          rows = sd::RunExperiment(cfg, points);
        }
        py::list out;
        for (const auto& r : rows) out.append(RowDict(r));
        return out;
      },
      py::kw_only(), py::arg("delta") = std::vector<double>{0.5},
      py::arg("n") = std::vector<std::size_t>{20},
      py::arg("alpha") = std::vector<double>{0.0},
      py::arg("alpha_s") = std::vector<double>{0.0},
      py::arg("alpha_h") = std::vector<double>{0.0},
      py::arg("rho") = std::vector<double>{0.0},
      py::arg("world") = "categorical", py::arg("trials") = 2000,
      py::arg("bootstrap") = 1000, py::arg("seed") = 0, py::arg("jobs") = 1);
}
