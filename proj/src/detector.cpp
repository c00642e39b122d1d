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


#include "stackdet/detector.hpp"

#include <cmath>

#include "stackdet/error.hpp"

namespace stackdet {

// h lies in [0.5, 1], so 1 - h is exact and so is 1 - (1 - h).
double Sigmoid(double x) {
  const double h = 1.0 / (1.0 + std::exp(-std::fabs(x)));
  return x >= 0.0 ? h : 1.0 - h;
}

double LogitOf(double p) { return std::log(p) - std::log1p(-p); }

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyDocument: return "EmptyDocument";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kEmptyRetention: return "EmptyRetention";
    case ErrorKind::kNumerical: return "NumericalError";
    case ErrorKind::kAdapterProtocol: return "AdapterProtocolError";
    case ErrorKind::kModelFormat: return "ModelFormatError";
    case ErrorKind::kDegenerateDataset: return "DegenerateDataset";
    case ErrorKind::kUnsupportedCombination: return "UnsupportedCombination";
    case ErrorKind::kInvalidFilterSpec: return "InvalidFilterSpec";
    case ErrorKind::kData: return "DataError";
  }
  return "Error";
}

}  // namespace stackdet
