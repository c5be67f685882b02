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
#include "squidofdm/transforms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace squidofdm {
namespace {

// The FFTW planner is not thread-safe; execution of an existing plan on new arrays is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n)));
    fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

}  // namespace

void unitary_dft_rows(CGrid& rows, int sign) {
  const int n = static_cast<int>(rows.cols());
  if (n == 0 || rows.rows() == 0) return;
  fftw_plan plan = PlanCache::instance().get(n, sign);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const Eigen::Index count = rows.rows();
#pragma omp parallel for schedule(static) if (count * n >= 16384)
  for (Eigen::Index r = 0; r < count; ++r) {
    auto* row = reinterpret_cast<fftw_complex*>(rows.row(r).data());
    fftw_execute_dft(plan, row, row);
    rows.row(r) *= scale;
  }
}

FreqGrid to_freq(const TimeGrid& x) {
  FreqGrid out(x.values);
  unitary_dft_rows(out.values, -1);
  return out;
}

TimeGrid to_time(const FreqGrid& x) {
  TimeGrid out(x.values);
  unitary_dft_rows(out.values, +1);
  return out;
}

}  // namespace squidofdm
