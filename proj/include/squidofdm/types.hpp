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
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace squidofdm {

using Complex = std::complex<double>;

// Row-major so that one antenna (or UE) row is contiguous for the per-row FFTs.
using CGrid = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Raised for invalid configurations and dimension mismatches.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a per-subcarrier factorization fails; the harness treats it as a failed trial.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Domain { time, freq };

/// Rows are antennas (or UEs), columns are time samples n or subcarriers k.
/// The domain tag keeps time- and frequency-domain matrices from being mixed up.
template <Domain D>
struct Grid {
  CGrid values;

  Grid() = default;
  Grid(Eigen::Index rows, Eigen::Index cols) : values(CGrid::Zero(rows, cols)) {}
  explicit Grid(CGrid v) : values(std::move(v)) {}

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  Complex& operator()(Eigen::Index r, Eigen::Index c) { return values(r, c); }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return values(r, c); }
};

using TimeGrid = Grid<Domain::time>;
using FreqGrid = Grid<Domain::freq>;

}  // namespace squidofdm
