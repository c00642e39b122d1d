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

#include "stackdet/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "stackdet/error.hpp"

namespace stackdet {
namespace {

bool Blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

std::optional<Document> ParseJsonlLine(const std::string& line,
                                       const std::string& source,
                                       std::size_t lineno,
                                       const SentenceSplitter& splitter) {
  if (Blank(line)) return std::nullopt;
  const std::string where = source + ":" + std::to_string(lineno) + ": ";
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(where + "invalid JSON (" + e.what() + ")");
  }
  if (!j.is_object()) throw DataError(where + "expected a JSON object");

  std::string id;
  const auto id_it = j.find("id");
  if (id_it == j.end() || id_it->is_null()) {
    throw DataError(where + "missing \"id\"");
  } else if (id_it->is_string()) {
    id = id_it->get<std::string>();
  } else if (id_it->is_number_integer()) {
    id = std::to_string(id_it->get<long long>());
  } else {
    throw DataError(where + "\"id\" must be a string");
  }

  const auto text_it = j.find("text");
  if (text_it == j.end() || !text_it->is_string()) {
    throw DataError(where + "\"text\" must be a string");
  }

  std::optional<int> label;
  const auto label_it = j.find("label");
  if (label_it != j.end() && !label_it->is_null()) {
    if (!label_it->is_number_integer()) {
      throw DataError(where + "\"label\" must be 0 or 1");
    }
    const auto v = label_it->get<long long>();
    if (v != 0 && v != 1) throw DataError(where + "\"label\" must be 0 or 1");
    label = static_cast<int>(v);
  }

  try {
    return MakeDocument(std::move(id), text_it->get<std::string>(), label,
                        splitter);
  } catch (const EmptyDocument&) {
    throw EmptyDocument(where + "document has no text");
  }
}

std::vector<Document> ReadJsonl(std::istream& in, const std::string& source,
                                const SentenceSplitter& splitter) {
  std::vector<Document> docs;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (auto doc = ParseJsonlLine(line, source, lineno, splitter)) {
      docs.push_back(std::move(*doc));
    }
  }
  if (in.bad()) throw DataError(source + ": read error");
  return docs;
}

std::vector<Document> ReadJsonl(const std::string& path,
                                const SentenceSplitter& splitter) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus '" + path + "'");
  return ReadJsonl(in, path, splitter);
}

void WriteJsonl(std::ostream& out, std::span<const Document> docs) {
  for (const auto& d : docs) {
    nlohmann::ordered_json j;
    j["id"] = d.id;
    j["text"] = d.text;
    if (d.label) j["label"] = *d.label;
    out << j.dump() << '\n';
  }
}

void WriteJsonl(const std::string& path, std::span<const Document> docs) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  WriteJsonl(out, docs);
  if (!out) throw DataError("write to '" + path + "' failed");
}

}  // namespace stackdet
