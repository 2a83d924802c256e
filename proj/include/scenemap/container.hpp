// Copyright 2026 The scenemap Authors.
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

#ifndef SCENEMAP_CONTAINER_HPP_
#define SCENEMAP_CONTAINER_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace scenemap {

// On-disk tensor: a line-oriented text manifest followed by a blank line and
// a row-major little-endian float64 payload. The manifest keys are written
// in a fixed order so identical content produces identical bytes.
struct TensorContainer {
  std::string tag;          // semantic name of the artifact
  std::string stage;        // pipeline stage that produced it
  std::string config_hash;  // hash of the generating configuration
  std::vector<std::size_t> shape;
  std::map<std::string, std::string> meta;  // extra manifest entries
  std::vector<double> payload;              // row-major

  std::size_t element_count() const;
  void validate() const;

  void save(const std::filesystem::path& path) const;
  static TensorContainer load(const std::filesystem::path& path);

  // 2-D helpers.
  static TensorContainer from_matrix(const Eigen::MatrixXd& m,
                                     const std::string& tag,
                                     const std::string& stage,
                                     const std::string& config_hash);
  Eigen::MatrixXd to_matrix() const;
};

// FNV-1a over the canonical text; stable, content-addressed provenance key.
std::string fnv1a_hex(const std::string& text);

}  // namespace scenemap

#endif  // SCENEMAP_CONTAINER_HPP_
