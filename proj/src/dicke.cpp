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

#include "spinsqz/dicke.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace spinsqz {

namespace {

void require_atoms(int n_atoms) {
  if (n_atoms < 1) {
    throw InvalidArgument("atom number must be >= 1, got " + std::to_string(n_atoms));
  }
}

double hermiticity_error(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Matrix of J+ in the ascending-m basis.
CMatrix raising(int n_atoms) {
  const Eigen::Index dim = n_atoms + 1;
  const double j = 0.5 * n_atoms;
  CMatrix jp = CMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k + 1 < dim; ++k) {
    const double m = -j + static_cast<double>(k);
    jp(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  return jp;
}

RVector m_values(int n_atoms) {
  const double j = 0.5 * n_atoms;
  return RVector::LinSpaced(n_atoms + 1, -j, j);
}

}  // namespace

DickeState DickeState::pure(int n_atoms, CVector amplitudes, const StateTolerance& tol) {
  require_atoms(n_atoms);
  if (amplitudes.size() != n_atoms + 1) {
    throw DimensionMismatch("amplitude vector has length " + std::to_string(amplitudes.size()) +
                            ", expected " + std::to_string(n_atoms + 1));
  }
  const double err = std::abs(amplitudes.squaredNorm() - 1.0);
  if (!(err <= tol.norm)) {
    std::ostringstream msg;
    msg << "pure state is not normalized (|norm^2 - 1| = " << err << ")";
    throw InvalidArgument(msg.str());
  }
  return DickeState(n_atoms, std::move(amplitudes));
}

DickeState DickeState::mixed(int n_atoms, CMatrix rho, const StateTolerance& tol) {
  require_atoms(n_atoms);
  if (rho.rows() != n_atoms + 1 || rho.cols() != n_atoms + 1) {
    throw DimensionMismatch("density matrix must be " + std::to_string(n_atoms + 1) + "x" +
                            std::to_string(n_atoms + 1));
  }
  DickeState s(n_atoms, std::move(rho));
  const InvariantReport r = s.check(true);
  if (!r.ok(tol)) {
    std::ostringstream msg;
    msg << "invalid density matrix: trace error " << r.norm_error << ", hermiticity error "
        << r.hermiticity_error << ", min eigenvalue " << r.min_eigenvalue;
    throw InvalidArgument(msg.str());
  }
  return s;
}

DickeState DickeState::pure_unchecked(int n_atoms, CVector amplitudes) {
  return DickeState(n_atoms, std::move(amplitudes));
}

DickeState DickeState::mixed_unchecked(int n_atoms, CMatrix rho) {
  return DickeState(n_atoms, std::move(rho));
}

const CVector& DickeState::amplitudes() const {
  if (!is_pure()) throw InvalidArgument("state is mixed; amplitudes unavailable");
  return std::get<CVector>(data_);
}

const CMatrix& DickeState::density_matrix() const {
  if (is_pure()) throw InvalidArgument("state is pure; use to_density()");
  return std::get<CMatrix>(data_);
}

CMatrix DickeState::to_density() const {
  if (is_pure()) {
    const CVector& v = std::get<CVector>(data_);
    return v * v.adjoint();
  }
  return std::get<CMatrix>(data_);
}

DickeState DickeState::as_mixed() const { return DickeState(n_atoms_, to_density()); }

double DickeState::purity() const {
  if (is_pure()) return std::pow(std::get<CVector>(data_).squaredNorm(), 2);
  const CMatrix& rho = std::get<CMatrix>(data_);
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.squaredNorm();
}

InvariantReport DickeState::check(bool with_eigenvalues) const {
  InvariantReport r;
  if (is_pure()) {
    r.norm_error = std::abs(std::get<CVector>(data_).squaredNorm() - 1.0);
    r.min_eigenvalue = 0.0;
    return r;
  }
  const CMatrix& rho = std::get<CMatrix>(data_);
  r.norm_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  r.hermiticity_error = hermiticity_error(rho);
  if (with_eigenvalues) {
    const CMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
    r.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  return r;
}

OperatorKind parse_operator_kind(std::string_view name) {
  static constexpr std::array<std::pair<std::string_view, OperatorKind>, 9> kTable{{
      {"jplus", OperatorKind::JPlus},
      {"jminus", OperatorKind::JMinus},
      {"jx", OperatorKind::Jx},
      {"jy", OperatorKind::Jy},
      {"jz", OperatorKind::Jz},
      {"jx2", OperatorKind::Jx2},
      {"jz2", OperatorKind::Jz2},
      {"j2", OperatorKind::J2},
      {"tact", OperatorKind::Tact},
  }};
  for (const auto& [key, kind] : kTable) {
    if (key == name) return kind;
  }
  throw InvalidArgument("unknown operator kind '" + std::string(name) + "'");
}

std::string_view operator_kind_name(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::JPlus: return "jplus";
    case OperatorKind::JMinus: return "jminus";
    case OperatorKind::Jx: return "jx";
    case OperatorKind::Jy: return "jy";
    case OperatorKind::Jz: return "jz";
    case OperatorKind::Jx2: return "jx2";
    case OperatorKind::Jz2: return "jz2";
    case OperatorKind::J2: return "j2";
    case OperatorKind::Tact: return "tact";
  }
  return "unknown";
}

CollectiveOperator::CollectiveOperator(int n_atoms, CMatrix matrix, bool hermitian)
    : n_atoms_(n_atoms), matrix_(std::move(matrix)), hermitian_(hermitian) {
  require_atoms(n_atoms);
  if (matrix_.rows() != n_atoms + 1 || matrix_.cols() != n_atoms + 1) {
    throw DimensionMismatch("operator matrix must be " + std::to_string(n_atoms + 1) + "x" +
                            std::to_string(n_atoms + 1));
  }
  if (hermitian_) {
    const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    if (hermiticity_error(matrix_) > 1e-12 * scale) {
      throw InvalidArgument("operator flagged Hermitian but matrix is not");
    }
  }
}

CollectiveOperator build_operator(OperatorKind kind, int n_atoms) {
  require_atoms(n_atoms);
  const CMatrix jp = raising(n_atoms);
  const CMatrix jm = jp.adjoint();
  const Complex i(0.0, 1.0);
  switch (kind) {
    case OperatorKind::JPlus: return {n_atoms, jp, false};
    case OperatorKind::JMinus: return {n_atoms, jm, false};
    case OperatorKind::Jx: return {n_atoms, 0.5 * (jp + jm), true};
    case OperatorKind::Jy: return {n_atoms, 0.5 * i * (jm - jp), true};
    case OperatorKind::Jz: return {n_atoms, m_values(n_atoms).cast<Complex>().asDiagonal(), true};
    case OperatorKind::Jx2: {
      const CMatrix jx = 0.5 * (jp + jm);
      return {n_atoms, jx * jx, true};
    }
    case OperatorKind::Jz2: {
      const RVector m = m_values(n_atoms);
      return {n_atoms, m.cwiseProduct(m).cast<Complex>().asDiagonal(), true};
    }
    case OperatorKind::J2: {
      const CMatrix jx = 0.5 * (jp + jm);
      const CMatrix jy = 0.5 * i * (jm - jp);
      const CMatrix jz = m_values(n_atoms).cast<Complex>().asDiagonal();
      return {n_atoms, jx * jx + jy * jy + jz * jz, true};
    }
    case OperatorKind::Tact: return {n_atoms, 0.125 * (jp * jp + jm * jm), true};
  }
  throw InvalidArgument("unhandled operator kind");
}

CMatrix spin_projection(int n_atoms, const Vec3& axis) {
  const CMatrix jp = raising(n_atoms);
  const CMatrix jm = jp.adjoint();
  const Complex i(0.0, 1.0);
  CMatrix out = (0.5 * axis.x()) * (jp + jm) + (0.5 * axis.y()) * i * (jm - jp);
  out.diagonal() += axis.z() * m_values(n_atoms).cast<Complex>();
  return out;
}

CMatrix hermitian_exponential(const CMatrix& hermitian, double angle) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const CVector phases =
      (es.eigenvalues() * (-angle)).unaryExpr([](double x) { return std::polar(1.0, x); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

DickeState basis_state(int n_atoms, int m_index) {
  require_atoms(n_atoms);
  if (m_index < 0 || m_index > n_atoms) {
    throw InvalidArgument("basis index " + std::to_string(m_index) + " outside [0, N]");
  }
  CVector v = CVector::Zero(n_atoms + 1);
  v(m_index) = 1.0;
  return DickeState::pure_unchecked(n_atoms, std::move(v));
}

DickeState maximally_mixed(int n_atoms) {
  require_atoms(n_atoms);
  const Eigen::Index dim = n_atoms + 1;
  return DickeState::mixed_unchecked(
      n_atoms, CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DickeState coherent_state(int n_atoms, double theta, double phi) {
  require_atoms(n_atoms);
  CVector v = CVector::Zero(n_atoms + 1);
  v(0) = 1.0;
  v = hermitian_exponential(build_operator(OperatorKind::Jy, n_atoms).matrix(), theta) * v;
  const RVector m = m_values(n_atoms);
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) *= std::polar(1.0, -phi * m(k));
  v.normalize();
  return DickeState::pure_unchecked(n_atoms, std::move(v));
}

namespace {

DickeState apply_unitary(const DickeState& state, const CMatrix& u) {
  if (state.is_pure()) {
    return DickeState::pure_unchecked(state.n_atoms(), u * state.amplitudes());
  }
  CMatrix rho = u * state.density_matrix() * u.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DickeState::mixed_unchecked(state.n_atoms(), std::move(rho));
}

}  // namespace

DickeState rotate(const DickeState& state, const Vec3& axis, double angle) {
  const double norm = axis.norm();
  if (!(norm > 0.0)) throw InvalidArgument("rotation axis must be nonzero");
  const CMatrix u = hermitian_exponential(spin_projection(state.n_atoms(), axis / norm), angle);
  return apply_unitary(state, u);
}

Complex expectation(const DickeState& state, const CollectiveOperator& op) {
  if (op.n_atoms() != state.n_atoms()) {
    throw DimensionMismatch("operator and state have different atom numbers");
  }
  if (state.is_pure()) {
    const CVector& v = state.amplitudes();
    return v.dot(op.matrix() * v);
  }
  // tr(rho A) = sum_ij rho_ij A_ji
  return (state.density_matrix().cwiseProduct(op.matrix().transpose())).sum();
}

double fidelity_with_pure(const DickeState& state, const DickeState& target) {
  if (!target.is_pure()) throw InvalidArgument("fidelity target must be a pure state");
  if (target.n_atoms() != state.n_atoms()) {
    throw DimensionMismatch("state and target have different atom numbers");
  }
  const CVector& t = target.amplitudes();
  double f = 0.0;
  if (state.is_pure()) {
    f = std::norm(t.dot(state.amplitudes()));
  } else {
    f = t.dot(state.density_matrix() * t).real();
  }
  return std::clamp(f, 0.0, 1.0);
}

DickeState bw_state(int n_atoms) {
  require_atoms(n_atoms);
  const Eigen::Index dim = n_atoms + 1;
  const double prefactor = 1.0 / std::sqrt(0.5 * n_atoms + 1.0);
  CVector v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    // k = j + m
    v(k) = prefactor * std::sin(kPi * (static_cast<double>(k) + 1.0) / (n_atoms + 2.0));
  }
  return DickeState::pure_unchecked(n_atoms, std::move(v));
}

namespace {

// Rotations about y via a cached eigendecomposition of Jy.
struct JyRotator {
  explicit JyRotator(int n_atoms) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(build_operator(OperatorKind::Jy, n_atoms).matrix());
    if (es.info() != Eigen::Success) throw NumericalError("Jy eigendecomposition failed");
    vectors = es.eigenvectors();
    values = es.eigenvalues();
  }
  // exp(-i angle Jy) v
  CVector apply(const CVector& v, double angle) const {
    CVector c = vectors.adjoint() * v;
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -angle * values(k));
    return vectors * c;
  }
  CMatrix vectors;
  RVector values;
};

CVector phase_z(const CVector& v, const RVector& m, double angle) {
  CVector out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out(k) = v(k) * std::polar(1.0, -angle * m(k));
  return out;
}

}  // namespace

Eigen::MatrixXd husimi_q(const DickeState& state, std::span<const double> theta_grid,
                         std::span<const double> phi_grid) {
  if (theta_grid.empty() || phi_grid.empty()) throw InvalidArgument("empty Q-function grid");
  const int n = state.n_atoms();
  const JyRotator ry(n);
  const RVector m = m_values(n);
  CVector down = CVector::Zero(n + 1);
  down(0) = 1.0;
  const CMatrix rho = state.is_pure() ? CMatrix() : state.density_matrix();

  Eigen::MatrixXd q(theta_grid.size(), phi_grid.size());
  for (std::size_t a = 0; a < theta_grid.size(); ++a) {
    const CVector tilted = ry.apply(down, theta_grid[a]);
    for (std::size_t b = 0; b < phi_grid.size(); ++b) {
      const CVector cs = phase_z(tilted, m, phi_grid[b]);
      double val = state.is_pure() ? std::norm(cs.dot(state.amplitudes()))
                                   : cs.dot(rho * cs).real();
      q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = std::max(val, 0.0);
    }
  }
  return q;
}

DickeState rotate_euler(const DickeState& state, double alpha, double beta, double gamma) {
  const int n = state.n_atoms();
  const RVector m = m_values(n);
  const CMatrix ry = hermitian_exponential(build_operator(OperatorKind::Jy, n).matrix(), beta);
  CMatrix u = ry;
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      u(r, c) *= std::polar(1.0, -alpha * m(r) - gamma * m(c));
    }
  }
  return apply_unitary(state, u);
}

AlignedFidelity aligned_fidelity(const DickeState& state, const DickeState& target) {
  if (!target.is_pure()) throw InvalidArgument("alignment target must be pure");
  if (target.n_atoms() != state.n_atoms()) {
    throw DimensionMismatch("state and target have different atom numbers");
  }
  const int n = state.n_atoms();
  const Eigen::Index dim = n + 1;
  const JyRotator ry(n);
  const RVector m = m_values(n);
  const CMatrix rho = state.to_density();
  const CVector& t = target.amplitudes();

  // <target| R rho R^dag |target> = <v| rho |v> with v = Rz(-c) Ry(-b) Rz(-a) |target>.
  auto evaluate = [&](double a, double b, double c) {
    const CVector w = ry.apply(phase_z(t, m, -a), -b);
    const CVector v = phase_z(w, m, -c);
    return v.dot(rho * v).real();
  };

  // Coarse scan. For fixed (a, b) the c-dependence is a trigonometric
  // polynomial in the index difference, so all c values share one O(dim^2) pass.
  constexpr int kAlpha = 96;
  constexpr int kBeta = 49;
  constexpr int kGamma = 96;
  AlignedFidelity best;
  best.fidelity = -1.0;
  std::vector<Complex> diag_sums(static_cast<std::size_t>(2 * dim - 1));
  for (int ia = 0; ia < kAlpha; ++ia) {
    const double a = kTwoPi * ia / kAlpha;
    const CVector ta = phase_z(t, m, -a);
    for (int ib = 0; ib < kBeta; ++ib) {
      const double b = kPi * ib / (kBeta - 1);
      const CVector w = ry.apply(ta, -b);
      // <v|rho|v> = sum_{r,s} conj(w_r) rho_rs w_s exp(i c (m_s - m_r)) with v = e^{i c m} w.
      std::fill(diag_sums.begin(), diag_sums.end(), Complex(0.0, 0.0));
      for (Eigen::Index r = 0; r < dim; ++r) {
        const Complex wr = std::conj(w(r));
        for (Eigen::Index s = 0; s < dim; ++s) {
          diag_sums[static_cast<std::size_t>(s - r + dim - 1)] += wr * rho(r, s) * w(s);
        }
      }
      for (int ic = 0; ic < kGamma; ++ic) {
        const double c = kTwoPi * ic / kGamma;
        Complex acc(0.0, 0.0);
        for (Eigen::Index d = -(dim - 1); d <= dim - 1; ++d) {
          acc += diag_sums[static_cast<std::size_t>(d + dim - 1)] *
                 std::polar(1.0, c * static_cast<double>(d));
        }
        if (acc.real() > best.fidelity) best = {acc.real(), a, b, c};
      }
    }
  }

  // Compass refinement from the best grid point.
  std::array<double, 3> x{best.alpha, best.beta, best.gamma};
  double fx = evaluate(x[0], x[1], x[2]);
  double step = kTwoPi / kAlpha;
  while (step > 1e-9) {
    bool improved = false;
    for (int dir = 0; dir < 3; ++dir) {
      for (double sign : {1.0, -1.0}) {
        auto y = x;
        y[dir] += sign * step;
        const double fy = evaluate(y[0], y[1], y[2]);
        if (fy > fx) {
          x = y;
          fx = fy;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {std::clamp(fx, 0.0, 1.0), x[0], x[1], x[2]};
}

}  // namespace spinsqz
