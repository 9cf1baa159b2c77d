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

#include "spinsqz/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace spinsqz {

QfimResult qfim_from_matrix(const Mat3& matrix) {
  const Mat3 sym = 0.5 * (matrix + matrix.transpose());
  Eigen::SelfAdjointEigenSolver<Mat3> es(sym);
  if (es.info() != Eigen::Success) throw NumericalError("QFIM eigen-solve failed");

  QfimResult r;
  r.matrix = sym;
  // Eigen returns ascending eigenvalues.
  for (int k = 0; k < 3; ++k) {
    r.eigenvalues[k] = es.eigenvalues()(2 - k);
    Vec3 v = es.eigenvectors().col(2 - k);
    v.normalize();
    for (int c = 0; c < 3; ++c) {
      if (std::abs(v(c)) > 1e-12) {
        if (v(c) < 0.0) v = -v;
        break;
      }
    }
    r.generators.col(k) = v;
  }
  r.degeneracy_gap = r.eigenvalues[0] - r.eigenvalues[1];
  return r;
}

QfimResult qfim(const DickeState& state) {
  const int n = state.n_atoms();
  const CMatrix rho = state.to_density();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()));
  if (es.info() != Eigen::Success) {
    throw NumericalError("density matrix eigendecomposition failed");
  }
  const RVector& p = es.eigenvalues();
  const CMatrix& v = es.eigenvectors();
  const Eigen::Index dim = p.size();
  const double threshold = kQfimRankEpsilon * std::abs(rho.trace().real());

  // Pair weights 2 (p_i - p_j)^2 / (p_i + p_j).
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double s = p(i) + p(j);
      if (s > threshold) {
        const double d = p(i) - p(j);
        w(i, j) = 2.0 * d * d / s;
      }
    }
  }

  const std::array<CMatrix, 3> rotated{
      v.adjoint() * build_operator(OperatorKind::Jx, n).matrix() * v,
      v.adjoint() * build_operator(OperatorKind::Jy, n).matrix() * v,
      v.adjoint() * build_operator(OperatorKind::Jz, n).matrix() * v,
  };
  Mat3 f;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      // Re sum_ij w_ij A_ij conj(B_ij), using B_ji = conj(B_ij).
      const double val =
          (w.cast<Complex>().cwiseProduct(rotated[a]).cwiseProduct(rotated[b].conjugate()))
              .sum()
              .real();
      f(a, b) = val;
      f(b, a) = val;
    }
  }
  return qfim_from_matrix(f);
}

double qcrb_sigma(double lambda_max, long long measurements) {
  if (!(lambda_max > 0.0)) throw InvalidArgument("QCRB needs lambda_max > 0");
  if (measurements < 1) throw InvalidArgument("QCRB needs M >= 1");
  return 1.0 / std::sqrt(static_cast<double>(measurements) * lambda_max);
}

double db_gain(double lambda_max, int n_atoms) {
  if (!(lambda_max > 0.0)) throw InvalidArgument("gain needs lambda_max > 0");
  if (n_atoms < 1) throw InvalidArgument("gain needs N >= 1");
  return 10.0 * std::log10(std::sqrt(lambda_max / n_atoms));
}

double holevo_variance(const DickeState& state) {
  if (!state.is_pure()) throw InvalidArgument("Holevo variance is defined for pure states only");
  const CVector& c = state.amplitudes();
  Complex moment(0.0, 0.0);
  for (Eigen::Index k = 0; k + 1 < c.size(); ++k) moment += std::conj(c(k + 1)) * c(k);
  const double mag = std::abs(moment);
  if (mag < 1e-12) return std::numeric_limits<double>::infinity();
  return 1.0 / (mag * mag) - 1.0;
}

}  // namespace spinsqz
