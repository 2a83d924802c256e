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

#ifndef SCENEMAP_DSP_HPP_
#define SCENEMAP_DSP_HPP_

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace scenemap {
namespace dsp {

// Complex FFT of a fixed size, backed by FFTW. Each instance owns its plans
// and scratch buffers: executing two different instances concurrently is
// safe, one instance must not be shared across threads. Plan creation is
// serialized internally (the FFTW planner is not thread-safe).
class Fft {
 public:
  explicit Fft(std::size_t size);
  ~Fft();

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return size_; }

  void forward(const std::complex<double>* in, std::complex<double>* out);
  // Unnormalized inverse; divide by size() to invert forward().
  void inverse(const std::complex<double>* in, std::complex<double>* out);

 private:
  struct Impl;
  std::size_t size_;
  std::unique_ptr<Impl> impl_;
};

std::size_t next_pow2(std::size_t n);

// Full linear convolution, length x.size() + h.size() - 1, via zero-padded
// FFTs. Exact up to roundoff; used where direct convolution is too slow.
std::vector<double> fft_convolve(const std::vector<double>& x,
                                 const std::vector<double>& h);

// Direct linear convolution; reference path for small inputs and tests.
std::vector<double> direct_convolve(const std::vector<double>& x,
                                    const std::vector<double>& h);

}  // namespace dsp
}  // namespace scenemap

#endif  // SCENEMAP_DSP_HPP_
