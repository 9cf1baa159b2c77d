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

#include "spinsqz/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spinsqz {

namespace {

constexpr double kAbortTolerance = 1e-6;

bool has_kinks(const ModelSpec& spec) { return spec.gamma0() > 0.0 && spec.omega() != 0.0; }

// Families with a static delta Jz term are integrated in the frame rotating
// with it; term 0 is Jz for those families.
bool rotating_frame(const ModelSpec& spec) {
  const ModelFamily f = spec.family();
  return spec.delta() != 0.0 &&
         (f == ModelFamily::Dicke || f == ModelFamily::Pdd || f == ModelFamily::Vc);
}

// Square matrix stored by diagonals: band(i, o) = A(i, i + o), |o| <= width.
class Banded {
 public:
  Banded() = default;
  Banded(Eigen::Index n, int width) : n_(n), width_(width), data_(CMatrix::Zero(n, 2 * width + 1)) {}

  static Banded from_sparse(const ModelOperators::Sparse& m, int width) {
    Banded out(m.rows(), width);
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
      for (ModelOperators::Sparse::InnerIterator it(m, r); it; ++it) {
        const Eigen::Index o = it.col() - it.row();
        if (o < -width || o > width) throw InvalidArgument("operator exceeds band width");
        out.data_(it.row(), o + width) = it.value();
      }
    }
    return out;
  }

  void set_zero() { data_.setZero(); }

  // this += c * other * exp(-i phase_rate * o) on diagonal o
  void add_scaled(Complex c, const Banded& other, double phase_rate) {
    for (int o = -width_; o <= width_; ++o) {
      const Complex f = c * std::polar(1.0, -phase_rate * o);
      data_.col(o + width_) += f * other.data_.col(o + width_);
    }
  }

  // out = A * b for a dense matrix or vector b.
  template <class Dense>
  void apply(const Dense& b, Dense& out) const {
    out.resize(b.rows(), b.cols());
    out.noalias() = data_.col(width_).asDiagonal() * b;
    for (int o = -width_; o <= width_; ++o) {
      if (o == 0) continue;
      const Eigen::Index r0 = std::max<Eigen::Index>(0, -o);
      const Eigen::Index len = n_ - std::abs(o);
      if (len <= 0) continue;
      out.middleRows(r0, len).noalias() +=
          data_.col(o + width_).segment(r0, len).asDiagonal() * b.middleRows(r0 + o, len);
    }
  }

 private:
  Eigen::Index n_ = 0;
  int width_ = 0;
  CMatrix data_;
};

int band_width(const ModelOperators::Sparse& m) {
  int w = 0;
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (ModelOperators::Sparse::InnerIterator it(m, r); it; ++it) {
      w = std::max(w, static_cast<int>(std::abs(it.col() - it.row())));
    }
  }
  return w;
}

// RK4 right-hand sides from banded model terms, in the frame rotating with
// delta Jz when rotating_frame(spec).
class MasterEquation {
 public:
  explicit MasterEquation(const ModelSpec& spec)
      : ops_(spec), frame_rate_(rotating_frame(spec) ? spec.delta() : 0.0) {
    const Eigen::Index dim = spec.n_atoms() + 1;
    int width = 0;
    for (std::size_t k = 0; k < ops_.term_count(); ++k) width = std::max(width, band_width(ops_.term(k)));
    for (std::size_t k = 0; k < ops_.term_count(); ++k) {
      terms_.push_back(Banded::from_sparse(ops_.term(k), width));
    }
    const int jump_width = band_width(ops_.jump_operator());
    jx_ = Banded::from_sparse(ops_.jump_operator(), jump_width);
    h_ = Banded(dim, width);
    l_ = Banded(dim, jump_width);
    first_term_ = frame_rate_ != 0.0 ? 1 : 0;
  }

  double frame_rate() const { return frame_rate_; }

  // out = -i[H(t), rho] + D[L(t)] rho; rho must be Hermitian.
  void mixed(double t, const CMatrix& rho, CMatrix& out) {
    assemble_h(t);
    h_.apply(rho, x_);
    // [H, rho] = X - X^dag for Hermitian rho with X = H rho.
    out = Complex(0.0, -1.0) * (x_ - x_.adjoint());
    if (ops_.has_jump()) {
      const double s = ops_.jump_coefficient(t);
      if (s != 0.0) {
        l_.set_zero();
        l_.add_scaled(1.0, jx_, frame_rate_ * t);
        l_.apply(rho, y_);   // L rho
        l_.apply(y_, z_);    // L^2 rho
        w_ = y_.adjoint();   // rho L
        l_.apply(w_, x_);    // L rho L
        out += (s * s) * (x_ - 0.5 * (z_ + z_.adjoint()));
      }
    }
  }

  void pure(double t, const CVector& psi, CVector& out) {
    assemble_h(t);
    h_.apply(psi, out);
    out *= Complex(0.0, -1.0);
  }

 private:
  void assemble_h(double t) {
    h_.set_zero();
    for (std::size_t k = first_term_; k < terms_.size(); ++k) {
      const double c = ops_.coefficient(k, t);
      if (c != 0.0) h_.add_scaled(c, terms_[k], frame_rate_ * t);
    }
  }

  ModelOperators ops_;
  double frame_rate_;
  std::size_t first_term_ = 0;
  std::vector<Banded> terms_;
  Banded jx_, h_, l_;
  CMatrix x_, y_, z_, w_;
};

template <class T, class Rhs>
void rk4_step(Rhs&& rhs, double t, double h, T& y, T& k1, T& k2, T& k3, T& k4, T& tmp) {
  rhs(t, y, k1);
  tmp = y + (0.5 * h) * k1;
  rhs(t + 0.5 * h, tmp, k2);
  tmp = y + (0.5 * h) * k2;
  rhs(t + 0.5 * h, tmp, k3);
  tmp = y + h * k3;
  rhs(t + h, tmp, k4);
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

[[noreturn]] void abort_run(const std::string& what, double t) {
  std::ostringstream msg;
  msg << "state invariant violated at t = " << t << ": " << what;
  throw NumericalError(msg.str());
}

}  // namespace

double rk4_step_limit(const ModelSpec& spec) {
  // RK4 is stable for |h z| up to ~2.8 on both the imaginary and negative real axes.
  constexpr double kStableRadius = 2.5;
  const ModelOperators ops(spec);
  auto inf_norm = [](const ModelOperators::Sparse& m) {
    double best = 0.0;
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
      double row = 0.0;
      for (ModelOperators::Sparse::InnerIterator it(m, r); it; ++it) row += std::abs(it.value());
      best = std::max(best, row);
    }
    return best;
  };
  double h_norm = 0.0;
  for (std::size_t k = rotating_frame(spec) ? 1 : 0; k < ops.term_count(); ++k) {
    h_norm += ops.coefficient_bound(k) * inf_norm(ops.term(k));
  }
  double radius = 2.0 * h_norm;
  if (ops.has_jump()) {
    const double jx = inf_norm(ops.jump_operator());
    radius += 2.0 * spec.gamma0() * jx * jx;
  }
  return radius > 0.0 ? kStableRadius / radius : std::numeric_limits<double>::infinity();
}

StepControl default_step_control(const ModelSpec& spec) {
  StepControl ctl;
  const double wf = spec.fastest_frequency();
  ctl.dt = std::min(wf > 0.0 ? (kTwoPi / wf) / 100.0 : 1e-2, rk4_step_limit(spec));
  return ctl;
}

void check_step_control(const StepControl& ctl, const ModelSpec& spec) {
  if (!(ctl.dt > 0.0) || !std::isfinite(ctl.dt)) throw InvalidArgument("dt must be > 0");
  if (ctl.record_every < 1) throw InvalidArgument("record_every must be >= 1");
  const double wf = spec.fastest_frequency();
  if (wf > 0.0) {
    const double limit = (kTwoPi / wf) / 40.0;
    if (ctl.dt > limit * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "dt = " << ctl.dt << " exceeds (2 pi / omega_fast) / 40 = " << limit;
      throw StepSizeError(msg.str());
    }
  }
  const double stable = rk4_step_limit(spec);
  if (ctl.dt > stable * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt = " << ctl.dt << " exceeds the RK4 stability limit " << stable;
    throw StepSizeError(msg.str());
  }
}

double effective_step(const StepControl& ctl, const ModelSpec& spec) {
  if (!has_kinks(spec)) return ctl.dt;
  const double half_period = kPi / std::abs(spec.omega());
  double k = std::ceil(half_period / ctl.dt - 1e-9);
  if (static_cast<long long>(k) % 2 != 0) k += 1.0;
  return half_period / k;
}

CMatrix lindblad_rhs(const DickeState& state, const CollectiveOperator& hamiltonian,
                     const std::optional<CollectiveOperator>& jump) {
  if (hamiltonian.n_atoms() != state.n_atoms() ||
      (jump && jump->n_atoms() != state.n_atoms())) {
    throw DimensionMismatch("operator and state have different atom numbers");
  }
  const CMatrix rho = state.to_density();
  const CMatrix& h = hamiltonian.matrix();
  CMatrix out = Complex(0.0, -1.0) * (h * rho - rho * h);
  if (jump) {
    const CMatrix& l = jump->matrix();
    const CMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

void evolve_observed(const DickeState& initial, const ModelSpec& spec, double t0, double t1,
                     const StepControl& ctl, const StateObserver& observer) {
  if (initial.n_atoms() != spec.n_atoms()) {
    throw DimensionMismatch("initial state and model have different atom numbers");
  }
  if (!(t1 > t0)) throw InvalidArgument("evolve needs t1 > t0");
  check_step_control(ctl, spec);
  {
    const InvariantReport r = initial.check(true);
    if (!r.ok(StateTolerance{})) throw InvalidArgument("initial state violates invariants");
  }

  const double dt = effective_step(ctl, spec);
  const long long steps = static_cast<long long>(std::ceil((t1 - t0) / dt - 1e-9));
  MasterEquation eq(spec);
  const bool pure_path = initial.is_pure() && spec.gamma0() == 0.0;
  const int n = spec.n_atoms();

  auto step_size = [&](long long i) {
    return i + 1 == steps ? t1 - (t0 + static_cast<double>(i) * dt) : dt;
  };

  if (pure_path) {
    const double rate = eq.frame_rate();
    CVector psi = to_rotating_frame(initial, rate, t0).amplitudes();
    CVector k1, k2, k3, k4, tmp;
    auto rhs = [&eq](double t, const CVector& y, CVector& out) {
      out.resize(y.size());
      eq.pure(t, y, out);
    };
    observer(t0, initial);
    for (long long i = 0; i < steps; ++i) {
      const double t = t0 + static_cast<double>(i) * dt;
      rk4_step(rhs, t, step_size(i), psi, k1, k2, k3, k4, tmp);
      const double drift = std::abs(psi.squaredNorm() - 1.0);
      if (!(drift <= kAbortTolerance)) abort_run("norm drift " + std::to_string(drift), t);
      if (ctl.renormalize) psi.normalize();
      const bool last = i + 1 == steps;
      if (last || (i + 1) % ctl.record_every == 0) {
        const double tr = last ? t1 : t0 + static_cast<double>(i + 1) * dt;
        observer(tr, to_rotating_frame(DickeState::pure_unchecked(n, psi), -rate, tr));
      }
    }
    return;
  }

  const double rate = eq.frame_rate();
  CMatrix rho = to_rotating_frame(initial.as_mixed(), rate, t0).density_matrix();
  CMatrix k1, k2, k3, k4, tmp;
  auto rhs = [&eq](double t, const CMatrix& y, CMatrix& out) {
    out.resize(y.rows(), y.cols());
    eq.mixed(t, y, out);
  };
  observer(t0, initial.is_pure() ? initial.as_mixed() : initial);
  for (long long i = 0; i < steps; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    rk4_step(rhs, t, step_size(i), rho, k1, k2, k3, k4, tmp);
    const double drift = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (!(drift <= kAbortTolerance)) abort_run("trace drift " + std::to_string(drift), t);
    if (ctl.renormalize) {
      rho = 0.5 * (rho + rho.adjoint()).eval();
      rho /= rho.trace().real();
    }
    const bool last = i + 1 == steps;
    if (last || (i + 1) % ctl.record_every == 0) {
      const double tr = last ? t1 : t0 + static_cast<double>(i + 1) * dt;
      DickeState s = to_rotating_frame(DickeState::mixed_unchecked(n, rho), -rate, tr);
      const InvariantReport rep = s.check(ctl.check_positivity);
      if (!(rep.hermiticity_error <= kAbortTolerance)) {
        abort_run("hermiticity error " + std::to_string(rep.hermiticity_error), tr);
      }
      if (ctl.check_positivity && !(rep.min_eigenvalue >= -kAbortTolerance)) {
        abort_run("negative eigenvalue " + std::to_string(rep.min_eigenvalue), tr);
      }
      observer(tr, s);
    }
  }
}

Trajectory evolve(const DickeState& initial, const ModelSpec& spec, double t0, double t1,
                  const StepControl& ctl) {
  Trajectory traj{{}, {}, spec};
  evolve_observed(initial, spec, t0, t1, ctl, [&traj](double t, const DickeState& s) {
    traj.times.push_back(t);
    traj.states.push_back(s);
  });
  return traj;
}

DickeState to_rotating_frame(const DickeState& state, double delta, double t) {
  // U^dag = exp(+i delta t Jz) is diagonal in the Dicke basis.
  const int n = state.n_atoms();
  const double j = 0.5 * n;
  CVector phase(n + 1);
  for (int k = 0; k <= n; ++k) phase(k) = std::polar(1.0, delta * t * (k - j));
  if (state.is_pure()) {
    return DickeState::pure_unchecked(n, phase.cwiseProduct(state.amplitudes()));
  }
  CMatrix rho = phase.asDiagonal() * state.density_matrix() * phase.conjugate().asDiagonal();
  return DickeState::mixed_unchecked(n, std::move(rho));
}

}  // namespace spinsqz
