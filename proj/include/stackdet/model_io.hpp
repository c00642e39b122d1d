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

#ifndef STACKDET_MODEL_IO_HPP_
#define STACKDET_MODEL_IO_HPP_

#include <cstdint>
#include <memory>
#include <string>

#include "stackdet/detector.hpp"
#include "stackdet/lm_detector.hpp"
#include "stackdet/logreg.hpp"

namespace stackdet {

// Binary model file, all integers little-endian, doubles as IEEE-754 bits:
//
//   offset 0   "SDTM"            magic
//   offset 4   u8 version        kModelFormatVersion
//   offset 5   u8 kind           1 = logistic regression, 2 = n-gram LM
//   payload (kind 1):
//     u8 feature_mode, u8 reserved(0), u32 n, u32 hash_buckets,
//     f64 bias, u32 nnz, nnz x (u32 index, f64 weight)   index ascending
//   payload (kind 2):
//     u32 order, f64 lambda, u64 |vocab|, |vocab| x u64 (ascending),
//     then for human and machine: u64 |ngrams|, pairs (u64 key, u64 count)
//     ascending by key, u64 |contexts|, pairs likewise
//   trailer    "END\n"
//
// Zero weights are not stored. Files are byte-identical for equal models.
inline constexpr std::uint8_t kModelFormatVersion = 1;

enum class ModelKind : std::uint8_t { kLogReg = 1, kNGramLM = 2 };

void SaveModel(const LogRegModel& model, const std::string& path);
void SaveModel(const NGramLMDetector& model, const std::string& path);

std::string SerializeModel(const LogRegModel& model);
std::string SerializeModel(const NGramLMDetector& model);

/// All loaders throw ModelFormatError on bad magic, version mismatch, wrong
/// kind, truncation or trailing bytes.
LogRegModel LoadLogRegModel(const std::string& path);
NGramLMDetector LoadNGramLM(const std::string& path);
LogRegModel DeserializeLogReg(const std::string& bytes);
NGramLMDetector DeserializeNGramLM(const std::string& bytes);

ModelKind PeekModelKind(const std::string& path);

/// Loads either kind behind the Detector interface.
std::unique_ptr<Detector> LoadDetector(const std::string& path);

}  // namespace stackdet

#endif  // STACKDET_MODEL_IO_HPP_
