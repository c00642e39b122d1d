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

#include "stackdet/model_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <utility>
#include <vector>

#include "stackdet/error.hpp"

namespace stackdet {
namespace {

constexpr char kMagic[4] = {'S', 'D', 'T', 'M'};
constexpr char kTrailer[4] = {'E', 'N', 'D', '\n'};

class Writer {
 public:
  void Bytes(const char* p, std::size_t n) { out_.append(p, n); }
  void U8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void U64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  void Need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw ModelFormatError("model file truncated");
  }
  std::uint8_t U8() {
    Need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{U8()} << (8 * i);
    return v;
  }
  std::uint64_t U64() {
    Need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{U8()} << (8 * i);
    return v;
  }
  double F64() { return std::bit_cast<double>(U64()); }
  bool Match(const char (&tag)[4]) {
    Need(4);
    const bool ok = std::equal(tag, tag + 4, bytes_.data() + pos_);
    pos_ += 4;
    return ok;
  }
  // Guards element counts against the remaining size before allocating.
  std::uint64_t Count(std::size_t element_bytes) {
    const std::uint64_t n = U64();
    if (n > (bytes_.size() - pos_) / element_bytes) {
      throw ModelFormatError("model file truncated");
    }
    return n;
  }
  bool AtEnd() const { return pos_ == bytes_.size(); }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

void WriteHeader(Writer& w, ModelKind kind) {
  w.Bytes(kMagic, 4);
  w.U8(kModelFormatVersion);
  w.U8(static_cast<std::uint8_t>(kind));
}

void ReadHeader(Reader& r, ModelKind expected) {
  if (!r.Match(kMagic)) throw ModelFormatError("not a stackdet model file");
  const std::uint8_t version = r.U8();
  if (version != kModelFormatVersion) {
    throw ModelFormatError("unsupported model format version " +
                           std::to_string(version) + " (expected " +
                           std::to_string(kModelFormatVersion) + ")");
  }
  const std::uint8_t kind = r.U8();
  if (kind != static_cast<std::uint8_t>(expected)) {
    throw ModelFormatError("unexpected model kind " + std::to_string(kind));
  }
}

void ReadTrailer(Reader& r) {
  if (!r.Match(kTrailer)) throw ModelFormatError("model file trailer missing");
  if (!r.AtEnd()) throw ModelFormatError("trailing bytes after model");
}

template <typename Map>
void WriteSorted(Writer& w, const Map& m) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> items(m.begin(),
                                                             m.end());
  std::sort(items.begin(), items.end());
  w.U64(items.size());
  for (const auto& [k, v] : items) {
    w.U64(k);
    w.U64(v);
  }
}

std::unordered_map<std::uint64_t, std::uint64_t> ReadMap(Reader& r) {
  const std::uint64_t n = r.Count(16);
  std::unordered_map<std::uint64_t, std::uint64_t> m;
  m.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t k = r.U64();
    m[k] = r.U64();
  }
  return m;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFormatError("cannot open model file: " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void WriteFile(const std::string& bytes, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidConfig("cannot write model file: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InvalidConfig("failed writing model file: " + path);
}

}  // namespace

std::string SerializeModel(const LogRegModel& model) {
  Writer w;
  WriteHeader(w, ModelKind::kLogReg);
  w.U8(static_cast<std::uint8_t>(model.feature_mode));
  w.U8(0);
  w.U32(model.n);
  w.U32(model.hash_buckets);
  w.F64(model.bias);
  std::uint32_t nnz = 0;
  for (double v : model.weights) nnz += v != 0.0 || std::signbit(v);
  w.U32(nnz);
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    const double v = model.weights[i];
    if (v == 0.0 && !std::signbit(v)) continue;
    w.U32(static_cast<std::uint32_t>(i));
    w.F64(v);
  }
  w.Bytes(kTrailer, 4);
  return w.Take();
}

LogRegModel DeserializeLogReg(const std::string& bytes) {
  Reader r(bytes);
  ReadHeader(r, ModelKind::kLogReg);
  LogRegModel m;
  const std::uint8_t mode = r.U8();
  if (mode > 1) throw ModelFormatError("bad feature mode byte");
  m.feature_mode = static_cast<FeatureMode>(mode);
  r.U8();
  m.n = r.U32();
  m.hash_buckets = r.U32();
  if (m.n < 1 || m.hash_buckets < 1) {
    throw ModelFormatError("bad n-gram order or bucket count");
  }
  m.bias = r.F64();
  m.weights.assign(m.hash_buckets, 0.0);
  const std::uint32_t nnz = r.U32();
  std::int64_t last = -1;
  for (std::uint32_t i = 0; i < nnz; ++i) {
    const std::uint32_t idx = r.U32();
    if (idx >= m.hash_buckets || static_cast<std::int64_t>(idx) <= last) {
      throw ModelFormatError("weight index out of order or range");
    }
    last = idx;
    m.weights[idx] = r.F64();
  }
  ReadTrailer(r);
  for (double v : m.weights) {
    if (!std::isfinite(v)) throw ModelFormatError("non-finite weight");
  }
  if (!std::isfinite(m.bias)) throw ModelFormatError("non-finite bias");
  return m;
}

std::string SerializeModel(const NGramLMDetector& model) {
  Writer w;
  WriteHeader(w, ModelKind::kNGramLM);
  w.U32(model.order());
  w.F64(model.lambda());
  std::vector<std::uint64_t> vocab(model.vocab().begin(), model.vocab().end());
  std::sort(vocab.begin(), vocab.end());
  w.U64(vocab.size());
  for (auto v : vocab) w.U64(v);
  for (const NGramCounts* c : {&model.human(), &model.machine()}) {
    WriteSorted(w, c->ngrams);
    WriteSorted(w, c->contexts);
  }
  w.Bytes(kTrailer, 4);
  return w.Take();
}

NGramLMDetector DeserializeNGramLM(const std::string& bytes) {
  Reader r(bytes);
  ReadHeader(r, ModelKind::kNGramLM);
  const std::uint32_t order = r.U32();
  const double lambda = r.F64();
  if (order < 1 || !(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ModelFormatError("bad LM order or smoothing constant");
  }
  NGramLMDetector d(order, lambda);
  const std::uint64_t nv = r.Count(8);
  std::unordered_set<std::uint64_t> vocab;
  vocab.reserve(nv);
  for (std::uint64_t i = 0; i < nv; ++i) vocab.insert(r.U64());
  NGramCounts human, machine;
  for (NGramCounts* c : {&human, &machine}) {
    c->ngrams = ReadMap(r);
    c->contexts = ReadMap(r);
  }
  ReadTrailer(r);
  d.Restore(std::move(human), std::move(machine), std::move(vocab));
  return d;
}

void SaveModel(const LogRegModel& model, const std::string& path) {
  WriteFile(SerializeModel(model), path);
}

void SaveModel(const NGramLMDetector& model, const std::string& path) {
  WriteFile(SerializeModel(model), path);
}

LogRegModel LoadLogRegModel(const std::string& path) {
  return DeserializeLogReg(ReadFile(path));
}

NGramLMDetector LoadNGramLM(const std::string& path) {
  return DeserializeNGramLM(ReadFile(path));
}

ModelKind PeekModelKind(const std::string& path) {
  const std::string bytes = ReadFile(path);
  if (bytes.size() < 6 || !std::equal(kMagic, kMagic + 4, bytes.data())) {
    throw ModelFormatError("not a stackdet model file: " + path);
  }
  const auto kind = static_cast<std::uint8_t>(bytes[5]);
  if (kind == 1) return ModelKind::kLogReg;
  if (kind == 2) return ModelKind::kNGramLM;
  throw ModelFormatError("unknown model kind " + std::to_string(kind));
}

std::unique_ptr<Detector> LoadDetector(const std::string& path) {
  const std::string bytes = ReadFile(path);
  if (bytes.size() >= 6 && bytes[5] == 2) {
    return std::make_unique<NGramLMDetector>(DeserializeNGramLM(bytes));
  }
  return std::make_unique<LogRegDetector>(
      std::make_shared<const LogRegModel>(DeserializeLogReg(bytes)));
}

}  // namespace stackdet
