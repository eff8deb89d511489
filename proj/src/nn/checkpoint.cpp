// Copyright 2026 The radar_tracker Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "radar/nn/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace radar::nn {

using nlohmann::json;

std::string checkpoint_to_string(const std::vector<StateEntry>& state) {
  json doc = json::object();
  for (const StateEntry& entry : state) {
    const MatX& m = *entry.value;
    json tensor;
    tensor["shape"] = {m.rows(), m.cols()};
    std::vector<double> data;
    data.reserve(m.size());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    tensor["data"] = std::move(data);
    doc[entry.name] = std::move(tensor);
  }
  return doc.dump();
}

void save_checkpoint(const std::string& path, const std::vector<StateEntry>& state) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  out << checkpoint_to_string(state) << "\n";
}

void load_checkpoint_string(const std::string& text,
                            const std::vector<StateEntry>& state) {
  json doc = json::parse(text);
  for (const StateEntry& entry : state) {
    if (!doc.contains(entry.name)) {
      throw std::runtime_error("checkpoint is missing tensor: " + entry.name);
    }
    const json& tensor = doc.at(entry.name);
    const auto shape = tensor.at("shape").get<std::vector<Eigen::Index>>();
    MatX& m = *entry.value;
    if (shape.size() != 2 || shape[0] != m.rows() || shape[1] != m.cols()) {
      throw std::runtime_error("checkpoint shape mismatch for tensor: " + entry.name);
    }
    const auto data = tensor.at("data").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(data.size()) != m.size()) {
      throw std::runtime_error("checkpoint size mismatch for tensor: " + entry.name);
    }
    Eigen::Index flat = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = data[flat++];
  }
}

void load_checkpoint(const std::string& path, const std::vector<StateEntry>& state) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  load_checkpoint_string(text, state);
}

}  // namespace radar::nn
