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
#include <random>

#include "doctest.h"
#include "squidofdm/quantizer.hpp"
#include "squidofdm/rng.hpp"

using namespace squidofdm;

namespace {

bool same(Complex a, Complex b) { return a.real() == b.real() && a.imag() == b.imag(); }

}  // namespace

TEST_CASE("two bits, sign form") {
  const PhaseQuantizer q(PhaseBits::finite(2), 2.0);
  CHECK(std::abs(q(Complex(1.0, 0.3)) - Complex(1.0, 1.0)) < 1e-15);
  CHECK(same(quantize_two_bit_sign(Complex(1.0, 0.3), 2.0), Complex(1.0, 1.0)));
}

TEST_CASE("infinite resolution keeps the phase") {
  const PhaseQuantizer q(PhaseBits::infinite(), 1.0);
  const Complex out = q(std::polar(3.0, M_PI / 4));
  CHECK(std::abs(out - std::polar(1.0, M_PI / 4)) < 1e-15);
  CHECK(q.alphabet().empty());
  CHECK_THROWS_AS(q.bin(Complex(1.0, 0.0)), ConfigError);
}

TEST_CASE("three bits, small angle") {
  // floor(8 * 0.1 / 2pi) = 0, so the bin-0 centre pi/8
  const PhaseQuantizer q(PhaseBits::finite(3), 1.0);
  CHECK(q.bin(std::polar(1.0, 0.1)) == 0);
  CHECK(std::abs(q(std::polar(1.0, 0.1)) - std::polar(1.0, M_PI / 8)) < 1e-15);
}

TEST_CASE("one bit has no in-phase part") {
  const PhaseQuantizer q(PhaseBits::finite(1), 1.0);
  const Complex out = q(Complex(0.2, 0.9));
  CHECK(out.real() == 0.0);
  CHECK(out.imag() == 1.0);
  CHECK(q(Complex(0.2, -0.9)).imag() == -1.0);
  CHECK(q(Complex(-5.0, 1e-3)).imag() == 1.0);
}

TEST_CASE("alphabet layout") {
  for (int p = 1; p <= 6; ++p) {
    const double pant = 0.37;
    const PhaseQuantizer q(PhaseBits::finite(p), pant);
    const int m_count = 1 << p;
    REQUIRE(static_cast<int>(q.alphabet().size()) == m_count);
    for (int m = 0; m < m_count; ++m) {
      const Complex a = q.alphabet()[static_cast<std::size_t>(m)];
      CHECK(std::abs(std::abs(a) - std::sqrt(pant)) < 1e-15);
      const Complex expect = std::polar(std::sqrt(pant), (M_PI + 2.0 * M_PI * m) / m_count);
      CHECK(std::abs(a - expect) < 1e-15);
    }
  }
}

TEST_CASE("edges, zero and axes") {
  const PhaseQuantizer q3(PhaseBits::finite(3), 1.0);
  // an angle exactly on an edge belongs to the bin that starts there
  CHECK(q3.bin(Complex(1.0, 0.0)) == 0);
  CHECK(q3.bin(Complex(0.0, 1.0)) == 2);
  CHECK(q3.bin(Complex(-1.0, 0.0)) == 4);
  CHECK(q3.bin(Complex(0.0, -1.0)) == 6);
  CHECK(q3.bin(Complex(0.0, 0.0)) == 0);
  CHECK(same(q3(Complex(0.0, 0.0)), q3.alphabet()[0]));
  const PhaseQuantizer qi(PhaseBits::infinite(), 4.0);
  CHECK(same(qi(Complex(0.0, 0.0)), Complex(2.0, 0.0)));
  CHECK(q3.bin(Complex(1.0, -1e-300)) == 7);
}

TEST_CASE("idempotent and on the alphabet") {
  auto rng = make_stream(11, 0, Stream::validation);
  for (PhaseBits p : {PhaseBits::finite(1), PhaseBits::finite(2), PhaseBits::finite(3), PhaseBits::finite(5),
                      PhaseBits::infinite()}) {
    const double pant = 0.018;
    const PhaseQuantizer q(p, pant);
    for (int i = 0; i < 20000; ++i) {
      const Complex z = draw_cn(rng, 1.0);
      const Complex a = q(z);
      CHECK(std::abs(std::abs(a) - std::sqrt(pant)) <= 1e-12 * std::sqrt(pant));
      const Complex b = q(a);
      if (p.is_infinite()) {
        REQUIRE(std::abs(a - b) <= 1e-15 * std::sqrt(pant));
      } else {
        REQUIRE(same(a, b));
      }
      if (!p.is_infinite()) {
        const double m = q.bin(z);
        const double centre = (M_PI + 2.0 * M_PI * m) / (1 << p.bits());
        double d = std::arg(a) - centre;
        d = std::remainder(d, 2.0 * M_PI);
        CHECK(std::abs(d) < 1e-12);
      }
    }
  }
}

TEST_CASE("two-bit sign form agrees bit-exactly") {
  auto rng = make_stream(12, 0, Stream::validation);
  const double pant = 300.0 / (32.0 * 512.0);
  const PhaseQuantizer q(PhaseBits::finite(2), pant);
  long mismatches = 0;
  for (int i = 0; i < 1000000; ++i) {
    const Complex z = draw_cn(rng, 1.0);
    if (!same(q(z), quantize_two_bit_sign(z, pant))) ++mismatches;
  }
  CHECK(mismatches == 0);
  for (Complex z : {Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1), Complex(-0.0, 0.0),
                    Complex(0.0, -0.0), Complex(3, 3), Complex(-3, 3)}) {
    CHECK(same(q(z), quantize_two_bit_sign(z, pant)));
  }
}

TEST_CASE("grid quantization is entry-wise") {
  auto rng = make_stream(13, 0, Stream::validation);
  const TimeGrid x(draw_cn_matrix(rng, 5, 33, 1.0));
  const PhaseQuantizer q(PhaseBits::finite(3), 0.5);
  const TimeGrid y = q(x);
  for (Eigen::Index r = 0; r < 5; ++r) {
    for (Eigen::Index c = 0; c < 33; ++c) CHECK(same(y(r, c), q(x(r, c))));
  }
}

TEST_CASE("quantizer rejects bad power") {
  CHECK_THROWS_AS(PhaseQuantizer(PhaseBits::finite(2), 0.0), ConfigError);
  CHECK_THROWS_AS(PhaseQuantizer(PhaseBits::finite(2), -1.0), ConfigError);
}
