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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "spinsqz/dicke.hpp"
#include "spinsqz/metrology.hpp"

namespace spinsqz {
namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

using LMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

// [a, b] - i c evaluated in extended precision, so the check measures the
// stored operators rather than rounding in the product itself.
double commutator_defect(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
  const LMatrix la = a.cast<std::complex<long double>>();
  const LMatrix lb = b.cast<std::complex<long double>>();
  const LMatrix lc = c.cast<std::complex<long double>>();
  const LMatrix d = la * lb - lb * la - std::complex<long double>(0, 1) * lc;
  return static_cast<double>(d.cwiseAbs().maxCoeff());
}

CMatrix op(OperatorKind k, int n) { return build_operator(k, n).matrix(); }

// Deterministic pseudo-random pure state for property checks.
DickeState scrambled_state(int n, unsigned salt) {
  CVector psi(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double a = std::sin(1.7 * (k + 1) + salt) + 0.3 * std::cos(0.37 * k * k + 2.0 * salt);
    const double b = std::cos(2.3 * k - salt) * 0.8;
    psi(k) = Complex(a, b);
  }
  psi.normalize();
  return DickeState::pure(n, psi);
}

Vec3 bloch(const DickeState& s) {
  const int n = s.n_atoms();
  return Vec3(expectation(s, build_operator(OperatorKind::Jx, n)).real(),
              expectation(s, build_operator(OperatorKind::Jy, n)).real(),
              expectation(s, build_operator(OperatorKind::Jz, n)).real());
}

TEST(Operators, MatchProjectedTensorProducts) {
  for (int n : {1, 2, 3, 5, 7}) {
    const auto ref = oracle::projected_spins(n);
    EXPECT_LT(max_abs(op(OperatorKind::Jx, n) - ref.jx), 1e-12) << n;
    EXPECT_LT(max_abs(op(OperatorKind::Jy, n) - ref.jy), 1e-12) << n;
    EXPECT_LT(max_abs(op(OperatorKind::Jz, n) - ref.jz), 1e-12) << n;
    const CMatrix jp = ref.jx + Complex(0, 1) * ref.jy;
    const CMatrix jm = ref.jx - Complex(0, 1) * ref.jy;
    EXPECT_LT(max_abs(op(OperatorKind::JPlus, n) - jp), 1e-12);
    EXPECT_LT(max_abs(op(OperatorKind::JMinus, n) - jm), 1e-12);
    EXPECT_LT(max_abs(op(OperatorKind::Jx2, n) - ref.jx * ref.jx), 1e-12);
    EXPECT_LT(max_abs(op(OperatorKind::Jz2, n) - ref.jz * ref.jz), 1e-12);
    EXPECT_LT(max_abs(op(OperatorKind::Tact, n) - (jp * jp + jm * jm) / 8.0), 1e-12);
    const CMatrix casimir = ref.jx * ref.jx + ref.jy * ref.jy + ref.jz * ref.jz;
    EXPECT_LT(max_abs(op(OperatorKind::J2, n) - casimir), 1e-12);
  }
}

TEST(Operators, SmallExamples) {
  CMatrix jz(3, 3);
  jz.setZero();
  jz.diagonal() << -1, 0, 1;
  EXPECT_LT(max_abs(op(OperatorKind::Jz, 2) - jz), 1e-15);

  const CVector lowered = op(OperatorKind::JPlus, 2) * basis_state(2, 0).amplitudes();
  EXPECT_NEAR(std::abs(lowered(1) - std::sqrt(2.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(lowered(0)) + std::abs(lowered(2)), 0.0, 1e-15);

  EXPECT_LT(max_abs(op(OperatorKind::J2, 5) - 8.75 * CMatrix::Identity(6, 6)), 1e-12);
}

void check_spin_algebra(int n) {
  const CMatrix x = op(OperatorKind::Jx, n);
  const CMatrix y = op(OperatorKind::Jy, n);
  const CMatrix z = op(OperatorKind::Jz, n);
  EXPECT_LT(commutator_defect(x, y, z), 1e-12) << n;
  EXPECT_LT(commutator_defect(y, z, x), 1e-12) << n;
  EXPECT_LT(commutator_defect(z, x, y), 1e-12) << n;
  const double j = 0.5 * n;
  const CMatrix c = x * x + y * y + z * z;
  EXPECT_LT(max_abs(c - j * (j + 1) * CMatrix::Identity(n + 1, n + 1)), 1e-10) << n;
  EXPECT_LT(max_abs(op(OperatorKind::JPlus, n).adjoint() - op(OperatorKind::JMinus, n)), 1e-15);
  EXPECT_LT(max_abs(x - x.adjoint()), 1e-15);
  EXPECT_LT(max_abs(y - y.adjoint()), 1e-15);
}

TEST(Operators, CommutatorsAndCasimir) {
  for (int n : {1, 4, 17, 60, 100}) check_spin_algebra(n);
}

// Entries of JxJy reach ~j^2 here, so the correctly rounded ladder
// coefficients already carry ~1e-12 absolute error in the commutator.
TEST(Operators, CommutatorsAndCasimirAtN200) { check_spin_algebra(200); }

TEST(Operators, ParseNamesRoundTrip) {
  for (auto k : {OperatorKind::JPlus, OperatorKind::JMinus, OperatorKind::Jx, OperatorKind::Jy,
                 OperatorKind::Jz, OperatorKind::Jx2, OperatorKind::Jz2, OperatorKind::J2,
                 OperatorKind::Tact}) {
    EXPECT_EQ(parse_operator_kind(operator_kind_name(k)), k);
  }
  EXPECT_THROW(parse_operator_kind("jw"), InvalidArgument);
  EXPECT_THROW(build_operator(OperatorKind::Jx, 0), InvalidArgument);
}

TEST(States, ValidationRejectsBadInput) {
  CVector psi = CVector::Zero(3);
  psi(0) = 2.0;
  EXPECT_THROW(DickeState::pure(2, psi), InvalidArgument);
  EXPECT_THROW(DickeState::pure(3, CVector::Unit(3, 0)), DimensionMismatch);
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  rho(0, 1) = 0.3;  // not Hermitian
  EXPECT_THROW(DickeState::mixed(1, rho), InvalidArgument);
  rho(0, 1) = 0.0;
  rho(0, 0) = 1.2;
  rho(1, 1) = -0.2;  // negative population
  EXPECT_THROW(DickeState::mixed(1, rho), InvalidArgument);
}

TEST(CoherentState, PoleAndEquator) {
  const DickeState down = coherent_state(4, 0.0, 1.234);
  EXPECT_NEAR(std::abs(down.amplitudes()(0)), 1.0, 1e-14);

  const DickeState s = coherent_state(1, 0.5 * kPi, 0.0);
  const Eigen::Vector2cd ref = oracle::spin_half_y_rotation(0.5 * kPi).col(0);
  EXPECT_NEAR(std::abs(s.amplitudes()(0) - ref(0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.amplitudes()(1) - ref(1)), 0.0, 1e-14);
  EXPECT_NEAR(s.amplitudes()(0).real(), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(s.amplitudes()(1).real(), -1.0 / std::sqrt(2.0), 1e-14);

  const DickeState x = coherent_state(20, 0.5 * kPi, kPi);
  const CVector residual = op(OperatorKind::Jx, 20) * x.amplitudes() - 10.0 * x.amplitudes();
  EXPECT_LT(residual.norm(), 1e-9);
}

TEST(CoherentState, MatchesBinomialProductState) {
  for (int n : {1, 6, 25}) {
    for (double theta : {0.3, 1.1, 2.9}) {
      for (double phi : {0.0, 0.7, -2.2}) {
        const CVector got = coherent_state(n, theta, phi).amplitudes();
        const CVector ref = oracle::binomial_coherent(n, theta, phi);
        EXPECT_NEAR(std::abs(got.dot(ref)), 1.0, 1e-12);
        // Same global phase as well: both are real-positive at the south pole.
        EXPECT_LT((got - ref).norm(), 1e-10) << n << " " << theta << " " << phi;
      }
    }
  }
}

TEST(Rotation, ExamplesAndPurity) {
  const DickeState s = scrambled_state(9, 3);
  const DickeState same = rotate(s, Vec3(0, 0, 1), 0.0);
  EXPECT_LT((same.amplitudes() - s.amplitudes()).norm(), 1e-14);

  const DickeState flipped = rotate(basis_state(6, 0), Vec3(0, 1, 0), kPi);
  EXPECT_NEAR(std::abs(flipped.amplitudes()(6)), 1.0, 1e-12);

  const DickeState mixed = rotate(s.as_mixed(), Vec3(1, 2, -0.5).normalized(), 0.9);
  EXPECT_NEAR(mixed.purity(), 1.0, 1e-9);
  EXPECT_TRUE(mixed.check().ok({}));
}

TEST(Rotation, AgreesWithTaylorExponential) {
  const int n = 8;
  const Vec3 axis = Vec3(0.3, -0.4, 0.866).normalized();
  const auto j = oracle::ladder_spins(n);
  const oracle::Dense g = axis(0) * j.jx + axis(1) * j.jy + axis(2) * j.jz;
  const DickeState s = scrambled_state(n, 11);
  const CVector ref = oracle::expm_taylor(g, 1.3) * s.amplitudes();
  EXPECT_LT((rotate(s, axis, 1.3).amplitudes() - ref).norm(), 1e-11);
}

TEST(Rotation, BlochVectorRotatesRightHanded) {
  // exp(-i a n.J) rotates <J> by +a about n (Rodrigues formula).
  const DickeState s = scrambled_state(12, 5);
  const Vec3 v = bloch(s);
  for (const Vec3& n : {Vec3(0, 0, 1), Vec3(1, 1, 0).normalized(), Vec3(-0.2, 0.5, 0.8).normalized()}) {
    const double a = 0.77;
    const Vec3 expected = v * std::cos(a) + n.cross(v) * std::sin(a) + n * n.dot(v) * (1 - std::cos(a));
    EXPECT_LT((bloch(rotate(s, n, a)) - expected).norm(), 1e-10);
  }
}

TEST(Expectation, Examples) {
  EXPECT_NEAR(expectation(basis_state(10, 0), build_operator(OperatorKind::Jz, 10)).real(), -5.0, 1e-14);
  const DickeState x = coherent_state(14, 0.5 * kPi, kPi);
  EXPECT_NEAR(expectation(x, build_operator(OperatorKind::Jx, 14)).real(), 7.0, 1e-10);
  EXPECT_NEAR(std::abs(expectation(maximally_mixed(9), build_operator(OperatorKind::Jx, 9))), 0.0, 1e-14);
  EXPECT_THROW(expectation(x, build_operator(OperatorKind::Jx, 13)), DimensionMismatch);
}

TEST(Fidelity, Examples) {
  const DickeState s = scrambled_state(7, 2);
  EXPECT_NEAR(fidelity_with_pure(s, s), 1.0, 1e-13);
  EXPECT_NEAR(fidelity_with_pure(s.as_mixed(), s), 1.0, 1e-13);
  EXPECT_NEAR(fidelity_with_pure(basis_state(7, 0), basis_state(7, 7)), 0.0, 1e-15);
}

TEST(BwState, ClosedForms) {
  const CVector a = bw_state(2).amplitudes();
  EXPECT_NEAR(a(0).real(), 0.5, 1e-15);
  EXPECT_NEAR(a(1).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(a(2).real(), 0.5, 1e-15);
  for (int n : {1, 2, 9, 50, 100, 301}) {
    EXPECT_NEAR(bw_state(n).amplitudes().norm(), 1.0, 1e-12) << n;
    const double t = std::tan(kPi / (n + 2));
    EXPECT_NEAR(holevo_variance(bw_state(n)), t * t, 1e-12 * std::max(1.0, t * t)) << n;
  }
}

TEST(Husimi, NormalizationAndSymmetry) {
  const int n = 6;
  std::vector<double> theta{0.0};
  std::vector<double> phi{0.0, 1.0};
  EXPECT_NEAR(husimi_q(basis_state(n, 0), theta, phi)(0, 0), 1.0, 1e-14);

  // Midpoint quadrature of (N+1)/(4 pi) int Q sin(theta).
  const int nt = 400;
  const int np = 32;
  std::vector<double> tg(nt);
  std::vector<double> pg(np);
  for (int i = 0; i < nt; ++i) tg[i] = (i + 0.5) * kPi / nt;
  for (int i = 0; i < np; ++i) pg[i] = i * kTwoPi / np;
  const DickeState s = scrambled_state(n, 9);
  const Eigen::MatrixXd q = husimi_q(s, tg, pg);
  double integral = 0.0;
  for (int i = 0; i < nt; ++i) integral += q.row(i).sum() * std::sin(tg[i]);
  integral *= (kPi / nt) * (kTwoPi / np) * (n + 1) / (4.0 * kPi);
  EXPECT_NEAR(integral, 1.0, 1e-3);
  EXPECT_GE(q.minCoeff(), 0.0);
  EXPECT_LE(q.maxCoeff(), 1.0 + 1e-9);

  const Eigen::MatrixXd q0 = husimi_q(basis_state(n, n / 2), tg, pg);
  for (int i = 0; i < nt; ++i) {
    EXPECT_LT(q0.row(i).maxCoeff() - q0.row(i).minCoeff(), 1e-9);
  }
}

TEST(AlignedFidelity, RecoversKnownRotation) {
  const int n = 16;
  const DickeState target = bw_state(n);
  const DickeState moved = rotate_euler(target, 0.4, 1.1, -0.7);
  EXPECT_LT(fidelity_with_pure(moved, target), 0.9);
  const AlignedFidelity f = aligned_fidelity(moved, target);
  EXPECT_NEAR(f.fidelity, 1.0, 1e-6);
  EXPECT_NEAR(fidelity_with_pure(rotate_euler(moved, f.alpha, f.beta, f.gamma), target), f.fidelity,
              1e-9);
}

}  // namespace
}  // namespace spinsqz
