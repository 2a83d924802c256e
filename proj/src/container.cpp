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

#include "scenemap/container.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "scenemap/errors.hpp"

namespace scenemap {

static_assert(std::endian::native == std::endian::little,
              "container payloads are little-endian; big-endian hosts are "
              "not supported");

namespace {
constexpr char kMagic[] = "scenemap-tensor v1";
}

std::size_t TensorContainer::element_count() const {
  std::size_t n = 1;
  for (std::size_t s : shape) n *= s;
  return shape.empty() ? 0 : n;
}

void TensorContainer::validate() const {
  if (shape.empty()) throw ArgumentError("TensorContainer: empty shape");
  if (payload.size() != element_count())
    throw ArgumentError("TensorContainer: payload size does not match shape");
  for (double v : payload)
    if (!std::isfinite(v))
      throw NumericError("TensorContainer: non-finite payload value");
}

void TensorContainer::save(const std::filesystem::path& path) const {
  validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("TensorContainer: cannot open " + path.string());

  out << kMagic << "\n";
  out << "tag: " << tag << "\n";
  out << "stage: " << stage << "\n";
  out << "config_hash: " << config_hash << "\n";
  out << "dtype: float64\n";
  out << "byte_order: little\n";
  out << "shape:";
  for (std::size_t s : shape) out << " " << s;
  out << "\n";
  for (const auto& [key, value] : meta) out << "meta." << key << ": " << value << "\n";
  out << "\n";
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(double)));
  if (!out) throw Error("TensorContainer: write failed for " + path.string());
}

TensorContainer TensorContainer::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DependencyError("TensorContainer: missing " + path.string());

  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw Error("TensorContainer: bad magic in " + path.string());

  TensorContainer t;
  while (std::getline(in, line) && !line.empty()) {
    const std::size_t colon = line.find(": ");
    if (colon == std::string::npos)
      throw Error("TensorContainer: malformed manifest line '" + line + "'");
    const std::string key = line.substr(0, colon);
    const std::string value = line.substr(colon + 2);
    if (key == "tag") {
      t.tag = value;
    } else if (key == "stage") {
      t.stage = value;
    } else if (key == "config_hash") {
      t.config_hash = value;
    } else if (key == "dtype") {
      if (value != "float64")
        throw Error("TensorContainer: unsupported dtype " + value);
    } else if (key == "byte_order") {
      if (value != "little")
        throw Error("TensorContainer: unsupported byte order " + value);
    } else if (key == "shape") {
      std::istringstream dims(value);
      std::size_t s;
      while (dims >> s) t.shape.push_back(s);
    } else if (key.rfind("meta.", 0) == 0) {
      t.meta[key.substr(5)] = value;
    } else {
      throw Error("TensorContainer: unknown manifest key '" + key + "'");
    }
  }

  t.payload.resize(t.element_count());
  in.read(reinterpret_cast<char*>(t.payload.data()),
          static_cast<std::streamsize>(t.payload.size() * sizeof(double)));
  if (in.gcount() !=
      static_cast<std::streamsize>(t.payload.size() * sizeof(double)))
    throw Error("TensorContainer: truncated payload in " + path.string());
  t.validate();
  return t;
}

TensorContainer TensorContainer::from_matrix(const Eigen::MatrixXd& m,
                                             const std::string& tag,
                                             const std::string& stage,
                                             const std::string& config_hash) {
  TensorContainer t;
  t.tag = tag;
  t.stage = stage;
  t.config_hash = config_hash;
  t.shape = {static_cast<std::size_t>(m.rows()),
             static_cast<std::size_t>(m.cols())};
  t.payload.resize(t.element_count());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      t.payload[static_cast<std::size_t>(i) * m.cols() + j] = m(i, j);
  return t;
}

Eigen::MatrixXd TensorContainer::to_matrix() const {
  if (shape.size() != 2)
    throw ArgumentError("TensorContainer: tensor '" + tag + "' is not 2-D");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(shape[0]),
                    static_cast<Eigen::Index>(shape[1]));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = payload[static_cast<std::size_t>(i) * m.cols() + j];
  return m;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4)
    out << ((hash >> shift) & 0xF);
  return out.str();
}

}  // namespace scenemap
