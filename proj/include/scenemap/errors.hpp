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

#ifndef SCENEMAP_ERRORS_HPP_
#define SCENEMAP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace scenemap {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments to an operation (dimension mismatch, empty input, bad range).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A position falls outside the room, or the scene layout is impossible.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Numerical failure: divergence, degenerate input, unachievable target,
// disconnected kernel graph, undefined measurement.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage ran without its upstream artifacts.
class DependencyError : public Error {
 public:
  using Error::Error;
};

// An artifact exists but was produced by a different configuration.
class StaleArtifactError : public DependencyError {
 public:
  using DependencyError::DependencyError;
};

}  // namespace scenemap

#endif  // SCENEMAP_ERRORS_HPP_
