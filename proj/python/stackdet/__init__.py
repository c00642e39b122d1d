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


"""Stacked sentence-filtering detection of machine-generated text."""

from ._stackdet import (
    Detector,
    ExternalDetector,
    NGramLM,
    StackdetError,
    auroc,
    bootstrap_auroc,
    compute_mask,
    filter_budget,
    gaussian_tv_distance,
    load_detector,
    naive_mask,
    random_mask,
    simulate,
    split_sentences,
    stacked_score,
    tpr_at_fpr,
    tv_distance,
)

__all__ = [
    "Detector",
    "ExternalDetector",
    "NGramLM",
    "StackdetError",
    "auroc",
    "bootstrap_auroc",
    "compute_mask",
    "filter_budget",
    "gaussian_tv_distance",
    "load_detector",
    "naive_mask",
    "random_mask",
    "simulate",
    "split_sentences",
    "stacked_score",
    "tpr_at_fpr",
    "tv_distance",
]
