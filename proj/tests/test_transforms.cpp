// SPDX-License-Identifier: Apache-2.0
//
// squid-ofdm: phase-quantized constant-envelope MU-MIMO-OFDM precoding
// Copyright (C) 2026 The squid-ofdm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "squidofdm/rng.hpp"
#include "squidofdm/transforms.hpp"

using namespace squidofdm;

namespace {

CGrid random_grid(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  auto rng = make_stream(seed, 0, Stream::validation);
  return draw_cn_matrix(rng, r, c, 1.0);
}

}  // namespace

TEST_CASE("zeros map to zeros") {
  CHECK(to_freq(TimeGrid(3, 8)).values.isZero(0.0));
  CHECK(to_time(FreqGrid(3, 8)).values.isZero(0.0));
}

TEST_CASE("dc vector") {
  const int n = 16;
  TimeGrid ones(CGrid::Ones(1, n));
  const FreqGrid f = to_freq(ones);
  CHECK(std::abs(f(0, 0) - std::sqrt(16.0)) < 1e-12);
  for (int k = 1; k < n; ++k) CHECK(std::abs(f(0, k)) < 1e-12);

  FreqGrid spike(1, n);
  spike(0, 0) = std::sqrt(16.0);
  const TimeGrid t = to_time(spike);
  for (int i = 0; i < n; ++i) CHECK(std::abs(t(0, i) - 1.0) < 1e-12);
}

TEST_CASE("round trips and parseval") {
  const CGrid x = random_grid(4, 8, 1);
  const TimeGrid xt(x);
  CHECK((to_time(to_freq(xt)).values - x).norm() < 1e-12 * x.norm());
  const FreqGrid xf(x);
  CHECK((to_freq(to_time(xf)).values - x).norm() < 1e-12 * x.norm());
  CHECK(std::abs(to_freq(xt).values.norm() - x.norm()) < 1e-10 * x.norm());
  CHECK(std::abs(to_time(xf).values.norm() - x.norm()) < 1e-10 * x.norm());
}

TEST_CASE("linearity") {
  const CGrid x = random_grid(3, 32, 2);
  const CGrid y = random_grid(3, 32, 3);
  const Complex a(0.3, -1.2);
  const Complex b(2.0, 0.5);
  const CGrid lhs = to_freq(TimeGrid(CGrid(a * x + b * y))).values;
  const CGrid rhs = a * to_freq(TimeGrid(x)).values + b * to_freq(TimeGrid(y)).values;
  CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());
}

TEST_CASE("matches the naive dft for several sizes") {
  for (int n : {1, 2, 5, 12, 64, 100}) {
    const CGrid x = random_grid(2, n, static_cast<std::uint64_t>(n));
    const CGrid f = to_freq(TimeGrid(x)).values;
    for (Eigen::Index r = 0; r < 2; ++r) {
      std::vector<Complex> row(x.row(r).data(), x.row(r).data() + n);
      const auto ref = oracle::dft(row);
      for (int k = 0; k < n; ++k) CHECK(std::abs(f(r, k) - ref[static_cast<std::size_t>(k)]) < 1e-11);
    }
  }
}

TEST_CASE("forward kernel sign") {
  // x_n = e^{+j 2 pi n / N} concentrates in bin 1 under the e^{-j...} forward kernel.
  const int n = 8;
  TimeGrid x(1, n);
  for (int i = 0; i < n; ++i) x(0, i) = std::polar(1.0, 2.0 * M_PI * i / n);
  const FreqGrid f = to_freq(x);
  CHECK(std::abs(f(0, 1) - std::sqrt(8.0)) < 1e-12);
}

TEST_CASE("in-place rows") {
  CGrid x = random_grid(5, 24, 9);
  const CGrid orig = x;
  unitary_dft_rows(x, -1);
  unitary_dft_rows(x, +1);
  CHECK((x - orig).norm() < 1e-12 * orig.norm());
}
