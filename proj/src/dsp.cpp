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

#include "scenemap/dsp.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "scenemap/errors.hpp"

namespace scenemap {
namespace dsp {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft::Impl {
  fftw_complex* buf_in = nullptr;
  fftw_complex* buf_out = nullptr;
  fftw_plan plan_fwd = nullptr;
  fftw_plan plan_inv = nullptr;
};

Fft::Fft(std::size_t size) : size_(size), impl_(new Impl) {
  if (size == 0) throw ArgumentError("Fft: size must be positive");
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->buf_in = fftw_alloc_complex(size);
  impl_->buf_out = fftw_alloc_complex(size);
  const int n = static_cast<int>(size);
  // FFTW_ESTIMATE keeps planning deterministic and does not touch the buffers.
  impl_->plan_fwd = fftw_plan_dft_1d(n, impl_->buf_in, impl_->buf_out,
                                     FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->plan_inv = fftw_plan_dft_1d(n, impl_->buf_in, impl_->buf_out,
                                     FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (impl_->plan_fwd) fftw_destroy_plan(impl_->plan_fwd);
  if (impl_->plan_inv) fftw_destroy_plan(impl_->plan_inv);
  if (impl_->buf_in) fftw_free(impl_->buf_in);
  if (impl_->buf_out) fftw_free(impl_->buf_out);
}

void Fft::forward(const std::complex<double>* in, std::complex<double>* out) {
  // std::complex<double> is array-compatible with double[2].
  std::memcpy(impl_->buf_in, reinterpret_cast<const double*>(in),
              size_ * sizeof(fftw_complex));
  fftw_execute(impl_->plan_fwd);
  std::memcpy(reinterpret_cast<double*>(out), impl_->buf_out,
              size_ * sizeof(fftw_complex));
}

void Fft::inverse(const std::complex<double>* in, std::complex<double>* out) {
  std::memcpy(impl_->buf_in, reinterpret_cast<const double*>(in),
              size_ * sizeof(fftw_complex));
  fftw_execute(impl_->plan_inv);
  std::memcpy(reinterpret_cast<double*>(out), impl_->buf_out,
              size_ * sizeof(fftw_complex));
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> fft_convolve(const std::vector<double>& x,
                                 const std::vector<double>& h) {
  if (x.empty() || h.empty()) throw ArgumentError("fft_convolve: empty input");
  const std::size_t out_len = x.size() + h.size() - 1;
  const std::size_t n = next_pow2(out_len);

  std::vector<std::complex<double>> a(n), b(n), spec(n);
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = x[i];
  for (std::size_t i = 0; i < h.size(); ++i) b[i] = h[i];

  Fft fft(n);
  std::vector<std::complex<double>> fa(n), fb(n);
  fft.forward(a.data(), fa.data());
  fft.forward(b.data(), fb.data());
  for (std::size_t i = 0; i < n; ++i) spec[i] = fa[i] * fb[i];
  fft.inverse(spec.data(), fa.data());

  std::vector<double> out(out_len);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real() * scale;
  return out;
}

std::vector<double> direct_convolve(const std::vector<double>& x,
                                    const std::vector<double>& h) {
  if (x.empty() || h.empty()) throw ArgumentError("direct_convolve: empty input");
  std::vector<double> out(x.size() + h.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j) out[i + j] += x[i] * h[j];
  return out;
}

}  // namespace dsp
}  // namespace scenemap
