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

#ifndef STACKDET_EXTERNAL_HPP_
#define STACKDET_EXTERNAL_HPP_

#include <mutex>
#include <string>
#include <vector>

#include "stackdet/detector.hpp"

namespace stackdet {

/// Runs a third-party detector as a child process.
///
/// Protocol, per batch: the child receives one JSON string literal per
/// line on stdin (stdin is then closed) and must print exactly one decimal
/// score per line on stdout, in input order, and exit 0. Scores outside
/// [0, 1] are clamped and a warning is recorded. Any other deviation fails
/// the whole batch with AdapterProtocolError.
class ExternalDetector : public Detector {
 public:
  explicit ExternalDetector(std::vector<std::string> argv);

  /// Whitespace-separated command line, no shell quoting.
  static std::vector<std::string> SplitCommand(const std::string& command);

  std::string name() const override { return "external:" + argv_.front(); }
  std::vector<DetectorScore> ScoreBatch(
      std::span<const std::string_view> texts) const override;

  /// Returns and clears the clamp warnings recorded so far.
  std::vector<std::string> TakeWarnings() const;

  const std::vector<std::string>& argv() const { return argv_; }

 private:
  std::vector<std::string> argv_;
  mutable std::mutex warnings_mu_;
  mutable std::vector<std::string> warnings_;
};

}  // namespace stackdet

#endif  // STACKDET_EXTERNAL_HPP_
