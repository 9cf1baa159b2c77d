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

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "spinsqz/metrology.hpp"
#include "spinsqz/propagator.hpp"

namespace spinsqz {
namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }
CMatrix op(OperatorKind k, int n) { return build_operator(k, n).matrix(); }

DickeState random_mixed(int n, unsigned salt) {
  CMatrix a(n + 1, n + 1);
  for (int r = 0; r <= n; ++r) {
    for (int c = 0; c <= n; ++c) {
      a(r, c) = Complex(std::sin(1.3 * r + 0.7 * c + salt), std::cos(0.4 * r * c - salt));
    }
  }
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DickeState::mixed(n, rho);
}

// Textbook master-equation right-hand side in the lab frame.
CMatrix reference_rhs(const ModelSpec& s, double t, const CMatrix& rho) {
  const CMatrix h = hamiltonian_at(s, t).matrix();
  CMatrix out = Complex(0, -1) * (h * rho - rho * h);
  if (auto l = jump_at(s, t)) {
    const CMatrix& lm = l->matrix();
    const CMatrix ldl = lm.adjoint() * lm;
    out += lm * rho * lm.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

CMatrix reference_evolve(const ModelSpec& s, CMatrix rho, double t0, double t1, long long steps) {
  const double h = (t1 - t0) / static_cast<double>(steps);
  for (long long i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    const CMatrix k1 = reference_rhs(s, t, rho);
    const CMatrix k2 = reference_rhs(s, t + 0.5 * h, rho + 0.5 * h * k1);
    const CMatrix k3 = reference_rhs(s, t + 0.5 * h, rho + 0.5 * h * k2);
    const CMatrix k4 = reference_rhs(s, t + h, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

TEST(LindbladRhs, Examples) {
  const int n = 6;
  const DickeState rho = random_mixed(n, 1);
  const CollectiveOperator zero(n, CMatrix::Zero(n + 1, n + 1), true);
  EXPECT_LT(max_abs(lindblad_rhs(rho, zero, std::nullopt)), 1e-15);

  Eigen::SelfAdjointEigenSolver<CMatrix> es(op(OperatorKind::Jx, n));
  const CVector v = es.eigenvectors().col(2);
  const DickeState dark = DickeState::mixed(n, v * v.adjoint());
  const CollectiveOperator jump(n, std::sqrt(0.7) * op(OperatorKind::Jx, n), true);
  EXPECT_LT(max_abs(lindblad_rhs(dark, zero, jump)), 1e-12);

  const DickeState down = basis_state(n, 0).as_mixed();
  EXPECT_LT(max_abs(lindblad_rhs(down, build_operator(OperatorKind::Jz, n), std::nullopt)), 1e-15);

  EXPECT_THROW(lindblad_rhs(down, build_operator(OperatorKind::Jz, n + 1), std::nullopt),
               DimensionMismatch);
}

TEST(LindbladRhs, TracelessAndMatchesReference) {
  const ModelSpec s(ModelFamily::Vc, 9, -1.4, 0.8, 2.8, 0.35);
  const DickeState rho = random_mixed(9, 4);
  for (double t : {0.0, 0.2, 1.3}) {
    const CMatrix got = lindblad_rhs(rho, hamiltonian_at(s, t), jump_at(s, t));
    EXPECT_LT(std::abs(got.trace()), 1e-12);
    EXPECT_LT(max_abs(got - got.adjoint()), 1e-12);
    EXPECT_LT(max_abs(got - reference_rhs(s, t, rho.density_matrix())), 1e-12);
  }
}

TEST(RotatingFrame, Examples) {
  const DickeState s = random_mixed(5, 2);
  EXPECT_LT(max_abs(to_rotating_frame(s, 3.0, 0.0).density_matrix() - s.density_matrix()), 1e-15);

  const DickeState eig = basis_state(7, 3);
  EXPECT_NEAR(fidelity_with_pure(to_rotating_frame(eig, 2.0, 1.7), eig), 1.0, 1e-14);

  // U^dag rho U with U = exp(-i delta t Jz) turns the Bloch vector by -delta t
  // about z, so +x lands on -y after delta t = pi / 2.
  const int n = 10;
  const DickeState plus_x = coherent_state(n, 0.5 * kPi, kPi);
  const DickeState moved = to_rotating_frame(plus_x, 1.0, 0.5 * kPi);
  const DickeState minus_y = rotate(plus_x, Vec3(0, 0, 1), -0.5 * kPi);
  EXPECT_NEAR(fidelity_with_pure(moved, minus_y), 1.0, 1e-9);
  EXPECT_NEAR(expectation(moved, build_operator(OperatorKind::Jy, n)).real(), -5.0, 1e-9);
}

TEST(Evolve, CommutingHamiltonianKeepsJz) {
  const int n = 12;
  const ModelSpec s(ModelFamily::Dicke, n, 1.0, 0.0, 0.0, 0.0);
  const Trajectory tr = evolve(basis_state(n, 0), s, 0.0, 7.3, default_step_control(s));
  for (const DickeState& st : tr.states) {
    EXPECT_NEAR(expectation(st, build_operator(OperatorKind::Jz, n)).real(), -6.0, 1e-8);
  }
}

TEST(Evolve, StaticHamiltonianMatchesExactExponential) {
  const int n = 10;
  const ModelSpec s(ModelFamily::TactRwa, n, 0.0, 1.0, 0.0, 0.0);
  const DickeState init = coherent_state(n, 0.9, 0.4);
  StepControl ctl;
  ctl.dt = 2e-4;
  const Trajectory tr = evolve(init, s, 0.0, 0.35, ctl);
  const CVector exact = oracle::expm_taylor(op(OperatorKind::Tact, n), 0.35) * init.amplitudes();
  EXPECT_LT((tr.states.back().amplitudes() - exact).norm(), 1e-9);
  EXPECT_NEAR(tr.times.back(), 0.35, 1e-15);
}

TEST(Evolve, RotatingFrameIntegrationMatchesLabFrameReference) {
  // Dissipative vc model with |cos| kinks; the library integrates in the
  // frame rotating with delta Jz and reports lab-frame states.
  const int n = 6;
  const ModelSpec s(ModelFamily::Vc, n, -3.0, 0.9, 6.0, 0.25);
  const DickeState init = coherent_state(n, 1.1, 0.3);
  const double t1 = 1.9;
  StepControl ctl = default_step_control(s);
  ctl.dt = std::min(ctl.dt, 1e-3);
  const Trajectory tr = evolve(init, s, 0.0, t1, ctl);
  EXPECT_NEAR(tr.times.back(), t1, 1e-12);
  const CMatrix ref = reference_evolve(s, init.to_density(), 0.0, t1, 20000);
  EXPECT_LT(max_abs(tr.states.back().density_matrix() - ref), 1e-8);
}

TEST(Evolve, PureAndMixedPathsAgree) {
  // Both are fourth-order schemes for the same flow, so they agree to the
  // truncation error of the step used.
  const int n = 8;
  const ModelSpec s = ModelSpec::pdd(n, 4.0, 0.5);
  const DickeState init = basis_state(n, 0);
  StepControl ctl = default_step_control(s);
  ctl.dt /= 8.0;
  const Trajectory pure = evolve(init, s, 0.0, 1.2, ctl);
  const Trajectory mixed = evolve(init.as_mixed(), s, 0.0, 1.2, ctl);
  ASSERT_EQ(pure.states.size(), mixed.states.size());
  for (std::size_t k = 0; k < pure.states.size(); ++k) {
    EXPECT_LT(max_abs(pure.states[k].to_density() - mixed.states[k].density_matrix()), 1e-10);
  }
}

TEST(Evolve, InvariantsOverDissipativeRun) {
  const int n = 14;
  const ModelSpec s(ModelFamily::Vc, n, -2.0, 0.4, 4.0, 0.05);
  StepControl ctl = default_step_control(s);
  ctl.record_every = 10;
  const Trajectory tr = evolve(basis_state(n, 0), s, 0.0, 6.0, ctl);
  for (std::size_t k = 1; k < tr.times.size(); ++k) EXPECT_GT(tr.times[k], tr.times[k - 1]);
  for (const DickeState& st : tr.states) {
    const InvariantReport r = st.check(true);
    EXPECT_LT(r.norm_error, 1e-8);
    EXPECT_LT(r.hermiticity_error, 1e-8);
    EXPECT_GE(r.min_eigenvalue, -1e-6);
  }
  EXPECT_LT(tr.states.back().purity(), 0.999);
}

TEST(Evolve, ClosedSystemStaysPure) {
  const int n = 16;
  const ModelSpec s = ModelSpec::pdd(n, 30.0, 0.2);
  StepControl ctl = default_step_control(s);
  ctl.record_every = 25;
  const Trajectory tr = evolve(basis_state(n, 0).as_mixed(), s, 0.0, 2.0, ctl);
  for (const DickeState& st : tr.states) EXPECT_NEAR(st.purity(), 1.0, 1e-7);
}

// Richardson ratio |x(h) - x(h/2)| / |x(h/2) - x(h/4)| on the final recorded state.
double convergence_ratio(const DickeState& init, const ModelSpec& s, double t1, double h) {
  auto final_density = [&](double dt) {
    StepControl ctl;
    ctl.dt = dt;
    return evolve(init, s, 0.0, t1, ctl).states.back().to_density();
  };
  const CMatrix a = final_density(h);
  const CMatrix b = final_density(0.5 * h);
  const CMatrix c = final_density(0.25 * h);
  return (a - b).norm() / (b - c).norm();
}

TEST(Evolve, FourthOrderConvergence) {
  const int n = 10;
  const ModelSpec closed(ModelFamily::Dicke, n, 0.6, 0.3, 1.1, 0.0);
  EXPECT_NEAR(convergence_ratio(coherent_state(n, 0.8, 0.2), closed, 4.0, 0.01), 16.0, 3.0);
  // Open system without |cos| kinks.
  const ModelSpec open(ModelFamily::Oat, n, 0.0, 0.8, 0.0, 0.05);
  EXPECT_NEAR(convergence_ratio(coherent_state(n, 0.5 * kPi, kPi).as_mixed(), open, 2.0, 0.01),
              16.0, 3.0);
}

TEST(StepControl, EnforcesLimits) {
  const ModelSpec s(ModelFamily::Dicke, 10, 2.0, 0.1, 2.0, 0.0);
  const StepControl def = default_step_control(s);
  EXPECT_NO_THROW(check_step_control(def, s));
  StepControl big = def;
  big.dt = (kTwoPi / s.fastest_frequency()) / 39.0;
  EXPECT_THROW(check_step_control(big, s), StepSizeError);
  StepControl bad = def;
  bad.dt = -1.0;
  EXPECT_THROW(check_step_control(bad, s), InvalidArgument);
  bad = def;
  bad.record_every = 0;
  EXPECT_THROW(check_step_control(bad, s), InvalidArgument);
  EXPECT_THROW(evolve(basis_state(10, 0), s, 0.0, 1.0, big), StepSizeError);
}

TEST(StepControl, KinksAlignWithEvenStepCounts) {
  const ModelSpec s(ModelFamily::Vc, 4, -1.0, 0.5, 7.0, 0.1);
  StepControl ctl;
  ctl.dt = 0.0123;
  const double dt = effective_step(ctl, s);
  EXPECT_LE(dt, ctl.dt);
  const double per_half = (kPi / 7.0) / dt;
  EXPECT_NEAR(per_half, std::round(per_half), 1e-9);
  EXPECT_EQ(std::llround(per_half) % 2, 0);
}

TEST(Evolve, QfiInvariantUnderChiSignFlip) {
  const int n = 12;
  for (auto f : {ModelFamily::Oat, ModelFamily::TactRwa}) {
    const DickeState init = f == ModelFamily::Oat ? coherent_state(n, 0.5 * kPi, kPi) : basis_state(n, 0);
    const ModelSpec plus(f, n, 0.0, 1.0, 0.0, 0.0);
    const ModelSpec minus(f, n, 0.0, -1.0, 0.0, 0.0);
    const StepControl ctl = default_step_control(plus);
    const Trajectory a = evolve(init, plus, 0.0, 0.5, ctl);
    const Trajectory b = evolve(init, minus, 0.0, 0.5, ctl);
    for (std::size_t k = 0; k < a.states.size(); k += 7) {
      EXPECT_NEAR(qfim(a.states[k]).lambda_max(), qfim(b.states[k]).lambda_max(), 1e-8);
    }
  }
}

}  // namespace
}  // namespace spinsqz
