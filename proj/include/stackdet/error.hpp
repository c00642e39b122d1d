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

#ifndef STACKDET_ERROR_HPP_
#define STACKDET_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace stackdet {

enum class ErrorKind {
  kEmptyDocument,
  kInvalidConfig,
  kEmptyRetention,
  kNumerical,
  kAdapterProtocol,
  kModelFormat,
  kDegenerateDataset,
  kUnsupportedCombination,
  kInvalidFilterSpec,
  kData,
};

const char* ErrorKindName(ErrorKind kind);

/// Base of every error raised by the library. The kind is what callers
/// (notably the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define STACKDET_DEFINE_ERROR(Name, Kind)                 \
  class Name : public Error {                            \
   public:                                               \
    explicit Name(const std::string& what)               \
        : Error(ErrorKind::Kind, what) {}                \
  };

STACKDET_DEFINE_ERROR(EmptyDocument, kEmptyDocument)
STACKDET_DEFINE_ERROR(InvalidConfig, kInvalidConfig)
STACKDET_DEFINE_ERROR(EmptyRetention, kEmptyRetention)
STACKDET_DEFINE_ERROR(AdapterProtocolError, kAdapterProtocol)
STACKDET_DEFINE_ERROR(ModelFormatError, kModelFormat)
STACKDET_DEFINE_ERROR(DegenerateDataset, kDegenerateDataset)
STACKDET_DEFINE_ERROR(UnsupportedCombination, kUnsupportedCombination)
STACKDET_DEFINE_ERROR(InvalidFilterSpec, kInvalidFilterSpec)
STACKDET_DEFINE_ERROR(DataError, kData)

#undef STACKDET_DEFINE_ERROR

/// Raised on NaN/inf during training. `feature_index` is -1 when the
/// offending quantity is not tied to a single weight (e.g. the bias or Q).
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, long feature_index = -1)
      : Error(ErrorKind::kNumerical, what), feature_index_(feature_index) {}
  long feature_index() const noexcept { return feature_index_; }

 private:
  long feature_index_;
};

}  // namespace stackdet

#endif  // STACKDET_ERROR_HPP_
