// Copyright 2026 The spinsqz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bayesian phase reconstruction with Jz population measurements.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinsqz/dicke.hpp"

namespace spinsqz {

// Posterior on a uniform grid over [lo, hi).
struct PhasePosterior {
  double lo = -kPi;
  double hi = kPi;
  std::vector<double> weights;  // normalized

  static PhasePosterior flat(double lo, double hi, std::size_t points);

  std::size_t size() const { return weights.size(); }
  double spacing() const { return (hi - lo) / static_cast<double>(weights.size()); }
  double phase(std::size_t k) const { return lo + spacing() * static_cast<double>(k); }
  double mean() const;
  double stddev() const;  // linear (non-circular) standard deviation
  double total() const;
};

// P(m | phi): diagonal of exp(-i phi G) rho exp(i phi G) in the Jz basis, with
// G = g.J for a unit vector g. Entries below zero are clipped and the vector
// renormalized.
std::vector<double> measurement_distribution(const DickeState& state, const Vec3& generator,
                                             double phi);

// Likelihood table P(m | phi) for many phases; reuses one decomposition of G
// and of the state.
class LikelihoodModel {
 public:
  LikelihoodModel(const DickeState& state, const Vec3& generator);

  std::vector<double> distribution(double phi) const;
  // Row-major [phases.size()] x [N + 1] table of log P(m | phi), clipped at log(1e-300).
  std::vector<double> log_table(const std::vector<double>& phases) const;
  int outcomes() const { return static_cast<int>(dim_); }

 private:
  Eigen::Index dim_;
  // P_m(phi) = Re sum_k exp(-i phi k) coeff(m, k + dim - 1), k = a - b.
  CMatrix coeff_;
};

struct ProtocolOptions {
  std::size_t grid_points = 4096;
  double window_lo = -0.5 * kPi;
  double window_hi = 0.5 * kPi;
  double refine_factor = 4.0;
  double refine_below_cells = 10.0;  // refine when sigma < this many grid spacings
};

struct ProtocolPoint {
  long long measurements = 0;
  double sigma = 0.0;
  double qcrb = 0.0;
  double mean = 0.0;
};

struct ProtocolResult {
  std::vector<ProtocolPoint> points;  // M strictly increasing
  std::uint64_t seed = 0;
  double lambda_max = 0.0;
  Vec3 generator = Vec3::Zero();
  std::string rng = "splitmix64";
};

// Measurement counts at which sigma is recorded: round(10^(k/8)) for
// k = 0, 1, ... up to M_max, deduplicated, plus M_max itself.
std::vector<long long> log_spaced_counts(long long m_max);

// Encode with the optimal generator G of the state after a pi/2 pulse about G,
// measure Jz M_max times, and track the posterior standard deviation.
ProtocolResult run_protocol(const DickeState& state, long long m_max, double phi_true,
                            std::uint64_t seed, const ProtocolOptions& options = {});

}  // namespace spinsqz
