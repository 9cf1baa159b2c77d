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

#include "spinsqz/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "spinsqz/metrology.hpp"
#include "spinsqz/rng.hpp"

namespace spinsqz {

namespace {

constexpr double kProbabilityFloor = 1e-300;
const double kLogFloor = std::log(kProbabilityFloor);

void require_unit(const Vec3& g) {
  if (!g.allFinite() || std::abs(g.norm() - 1.0) > 1e-9) {
    throw InvalidArgument("generator must be a unit vector");
  }
}

std::vector<double> clip_and_normalize(std::vector<double> p) {
  double total = 0.0;
  for (double& x : p) {
    if (x < -1e-12) throw NumericalError("negative outcome probability " + std::to_string(x));
    x = std::max(x, 0.0);
    total += x;
  }
  if (!(total > 0.0)) throw NumericalError("outcome distribution has zero mass");
  for (double& x : p) x /= total;
  return p;
}

PhasePosterior normalized_posterior(double lo, double hi, const std::vector<double>& log_post) {
  PhasePosterior post;
  post.lo = lo;
  post.hi = hi;
  const double peak = *std::max_element(log_post.begin(), log_post.end());
  if (!std::isfinite(peak)) throw NumericalError("posterior is not finite");
  post.weights.resize(log_post.size());
  double total = 0.0;
  for (std::size_t i = 0; i < log_post.size(); ++i) {
    post.weights[i] = std::exp(log_post[i] - peak);
    total += post.weights[i];
  }
  for (double& w : post.weights) w /= total;
  return post;
}

std::vector<double> grid_phases(double lo, double hi, std::size_t k) {
  std::vector<double> out(k);
  const double step = (hi - lo) / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = lo + step * static_cast<double>(i);
  return out;
}

}  // namespace

PhasePosterior PhasePosterior::flat(double lo, double hi, std::size_t points) {
  if (!(hi > lo) || points < 2) throw InvalidArgument("posterior needs hi > lo and >= 2 points");
  PhasePosterior p;
  p.lo = lo;
  p.hi = hi;
  p.weights.assign(points, 1.0 / static_cast<double>(points));
  return p;
}

double PhasePosterior::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double PhasePosterior::mean() const {
  double s = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) s += weights[k] * phase(k);
  return s / total();
}

double PhasePosterior::stddev() const {
  const double mu = mean();
  double s = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double d = phase(k) - mu;
    s += weights[k] * d * d;
  }
  return std::sqrt(std::max(s / total(), 0.0));
}

std::vector<double> measurement_distribution(const DickeState& state, const Vec3& generator,
                                             double phi) {
  require_unit(generator);
  const CMatrix u = hermitian_exponential(spin_projection(state.n_atoms(), generator), phi);
  std::vector<double> p(static_cast<std::size_t>(state.dim()));
  if (state.is_pure()) {
    const CVector psi = u * state.amplitudes();
    for (Eigen::Index m = 0; m < psi.size(); ++m) p[m] = std::norm(psi(m));
  } else {
    const CMatrix rho = u * state.density_matrix() * u.adjoint();
    for (Eigen::Index m = 0; m < rho.rows(); ++m) p[m] = rho(m, m).real();
  }
  return clip_and_normalize(std::move(p));
}

LikelihoodModel::LikelihoodModel(const DickeState& state, const Vec3& generator)
    : dim_(state.dim()) {
  require_unit(generator);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(spin_projection(state.n_atoms(), generator));
  if (es.info() != Eigen::Success) throw NumericalError("generator eigen-solve failed");
  // Eigenvalues of a unit spin projection are exactly -j, ..., j, so phase
  // factors depend only on the index difference a - b.
  const CMatrix& v = es.eigenvectors();
  const CMatrix rt = v.adjoint() * state.to_density() * v;
  coeff_ = CMatrix::Zero(dim_, 2 * dim_ - 1);
  for (Eigen::Index m = 0; m < dim_; ++m) {
    for (Eigen::Index a = 0; a < dim_; ++a) {
      const Complex vma = v(m, a);
      for (Eigen::Index b = 0; b < dim_; ++b) {
        coeff_(m, a - b + dim_ - 1) += vma * rt(a, b) * std::conj(v(m, b));
      }
    }
  }
}

std::vector<double> LikelihoodModel::distribution(double phi) const {
  CVector z(2 * dim_ - 1);
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    z(k) = std::polar(1.0, -phi * static_cast<double>(k - dim_ + 1));
  }
  const CVector p = coeff_ * z;
  std::vector<double> out(static_cast<std::size_t>(dim_));
  for (Eigen::Index m = 0; m < dim_; ++m) out[m] = p(m).real();
  return clip_and_normalize(std::move(out));
}

std::vector<double> LikelihoodModel::log_table(const std::vector<double>& phases) const {
  const Eigen::Index nk = static_cast<Eigen::Index>(phases.size());
  const Eigen::Index w = 2 * dim_ - 1;
  std::vector<double> table(phases.size() * static_cast<std::size_t>(dim_));
  constexpr Eigen::Index kBlock = 512;
  CMatrix z(w, kBlock);
  for (Eigen::Index start = 0; start < nk; start += kBlock) {
    const Eigen::Index cols = std::min(kBlock, nk - start);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double phi = phases[start + c];
      for (Eigen::Index k = 0; k < w; ++k) {
        z(k, c) = std::polar(1.0, -phi * static_cast<double>(k - dim_ + 1));
      }
    }
    const CMatrix p = coeff_ * z.leftCols(cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      double total = 0.0;
      for (Eigen::Index m = 0; m < dim_; ++m) total += std::max(p(m, c).real(), 0.0);
      double* row = table.data() + (start + c) * dim_;
      for (Eigen::Index m = 0; m < dim_; ++m) {
        const double pm = std::max(p(m, c).real(), 0.0) / total;
        row[m] = pm > kProbabilityFloor ? std::log(pm) : kLogFloor;
      }
    }
  }
  return table;
}

std::vector<long long> log_spaced_counts(long long m_max) {
  if (m_max < 1) throw InvalidArgument("M_max must be >= 1");
  std::vector<long long> out;
  for (int k = 0;; ++k) {
    const long long m = std::llround(std::pow(10.0, k / 8.0));
    if (m > m_max) break;
    if (out.empty() || m != out.back()) out.push_back(m);
  }
  if (out.back() != m_max) out.push_back(m_max);
  return out;
}

ProtocolResult run_protocol(const DickeState& state, long long m_max, double phi_true,
                            std::uint64_t seed, const ProtocolOptions& options) {
  if (m_max < 1) throw InvalidArgument("M_max must be >= 1");
  if (!std::isfinite(phi_true)) throw InvalidArgument("phi_true must be finite");
  if (!(options.window_hi > options.window_lo)) throw InvalidArgument("empty phase window");
  if (options.grid_points < 16) throw InvalidArgument("phase grid needs >= 16 points");
  if (!(options.refine_factor > 1.0)) throw InvalidArgument("refine_factor must be > 1");

  ProtocolResult result;
  result.seed = seed;
  result.rng = std::string(SplitMix64::kName);
  const QfimResult f = qfim(state);
  result.lambda_max = f.lambda_max();
  result.generator = f.optimal_generator();

  const DickeState encoded = rotate(state, result.generator, 0.5 * kPi);
  const LikelihoodModel model(encoded, result.generator);
  const std::size_t d = static_cast<std::size_t>(model.outcomes());

  std::vector<double> cdf = measurement_distribution(encoded, result.generator, phi_true);
  for (std::size_t m = 1; m < d; ++m) cdf[m] += cdf[m - 1];

  const std::size_t k = options.grid_points;
  double lo = options.window_lo;
  double hi = options.window_hi;
  std::vector<double> table = model.log_table(grid_phases(lo, hi, k));
  std::vector<double> log_post(k, 0.0);
  std::vector<long long> counts(d, 0);

  const std::vector<long long> records = log_spaced_counts(m_max);
  std::size_t next_record = 0;
  SplitMix64 rng(seed);

  for (long long shot = 1; shot <= m_max; ++shot) {
    const double u = rng.uniform() * cdf.back();
    const std::size_t outcome = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    const std::size_t m = std::min(outcome, d - 1);
    ++counts[m];

    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      log_post[i] += table[i * d + m];
      best = std::max(best, table[i * d + m]);
    }
    if (best <= kLogFloor + 1.0) {
      std::ostringstream msg;
      msg << "degenerate posterior: outcome " << m << " has zero likelihood on [" << lo << ", "
          << hi << ")";
      throw NumericalError(msg.str());
    }

    PhasePosterior post = normalized_posterior(lo, hi, log_post);
    double sigma = post.stddev();
    while (sigma < options.refine_below_cells * post.spacing()) {
      const double width = (hi - lo) / options.refine_factor;
      const double centre = post.mean();
      lo = centre - 0.5 * width;
      hi = centre + 0.5 * width;
      table = model.log_table(grid_phases(lo, hi, k));
      std::fill(log_post.begin(), log_post.end(), 0.0);
      for (std::size_t c = 0; c < d; ++c) {
        if (counts[c] == 0) continue;
        const double n = static_cast<double>(counts[c]);
        for (std::size_t i = 0; i < k; ++i) log_post[i] += n * table[i * d + c];
      }
      post = normalized_posterior(lo, hi, log_post);
      sigma = post.stddev();
    }

    if (next_record < records.size() && shot == records[next_record]) {
      ProtocolPoint pt;
      pt.measurements = shot;
      pt.sigma = sigma;
      pt.mean = post.mean();
      pt.qcrb = result.lambda_max > 0.0 ? qcrb_sigma(result.lambda_max, shot)
                                        : std::numeric_limits<double>::infinity();
      result.points.push_back(pt);
      ++next_record;
    }
  }
  return result;
}

}  // namespace spinsqz
