# Copyright 2026 The stackdet Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import math
import os

import pytest

import stackdet

ADAPTERS = os.path.join(os.path.dirname(__file__), "..", "adapters")


def test_split_sentences():
    assert stackdet.split_sentences("Dr. Smith left. He returned.") == [
        "Dr. Smith left.",
        "He returned.",
    ]


def test_masks():
    assert stackdet.compute_mask([0.005, 0.8, 0.003, 0.4], 0.01, 0.25) == [1, 1, 0, 1]
    assert stackdet.naive_mask([0.1, 0.2]) == [0, 1]
    assert stackdet.random_mask(8, 0.25, seed=3).count(0) == 2
    assert stackdet.filter_budget(0.29, 100) == 29


def test_metrics():
    assert stackdet.auroc([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1]) == pytest.approx(0.75)
    assert stackdet.tpr_at_fpr([0.5] * 4, [0, 0, 1, 1], 0.0) == 0.0
    lo, hi = stackdet.bootstrap_auroc([0.1, 0.4, 0.35, 0.8] * 10, [0, 0, 1, 1] * 10, 200)
    assert lo <= 0.75 <= hi


def test_errors_carry_kind():
    with pytest.raises(stackdet.StackdetError) as info:
        stackdet.auroc([0.1, 0.2], [1, 1])
    assert info.value.kind == "DegenerateDataset"
    with pytest.raises(stackdet.StackdetError):
        stackdet.compute_mask([0.1], 0.01, 1.5)


def test_lm_and_stacking(tmp_path):
    lm = stackdet.NGramLM.fit(["alpha beta"], ["gamma delta"], order=1, smoothing=0.1)
    assert lm.logit("gamma delta gamma") == pytest.approx(3 * math.log(11))
    path = str(tmp_path / "lm.sdm")
    lm.save(path)
    loaded = stackdet.load_detector(path)
    assert loaded.name == "ngram-lm"
    text = "Gamma delta. Alpha beta alpha. Gamma gamma."
    assert loaded.score(text) == lm.score(text)
    r = stackdet.stacked_score(lm, text, r_e=0.3, tau=0.34, k=1)
    assert r["mask"] == [1, 0, 1]
    assert r["score"] > lm.score(text)
    assert lm.score_batch(["gamma.", "alpha."])[0] > 0.5


def test_external_adapter():
    det = stackdet.ExternalDetector("python3 " + os.path.join(ADAPTERS, "half.py"))
    assert det.score_batch(["a.", "b."]) == [0.5, 0.5]


def test_theory():
    assert stackdet.tv_distance([0.5, 0.5], [1.0, 0.0]) == pytest.approx(0.5)
    assert stackdet.gaussian_tv_distance([0.0], [0.0]) == 0.0
    rows = stackdet.simulate(delta=[0.3], n=[2, 30], trials=300, bootstrap=100, seed=1)
    assert len(rows) == 2
    assert rows[1]["auroc"] > rows[0]["auroc"]
    lo, hi = rows[0]["ci"]
    assert lo <= rows[0]["auroc"] <= hi
