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

#include "spinsqz/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace spinsqz {

ModelFamily parse_model_family(std::string_view name) {
  if (name == "dicke") return ModelFamily::Dicke;
  if (name == "pdd") return ModelFamily::Pdd;
  if (name == "oat") return ModelFamily::Oat;
  if (name == "tact_rwa") return ModelFamily::TactRwa;
  if (name == "vc") return ModelFamily::Vc;
  throw InvalidArgument("unknown model family '" + std::string(name) + "'");
}

std::string_view model_family_name(ModelFamily family) {
  switch (family) {
    case ModelFamily::Dicke: return "dicke";
    case ModelFamily::Pdd: return "pdd";
    case ModelFamily::Oat: return "oat";
    case ModelFamily::TactRwa: return "tact_rwa";
    case ModelFamily::Vc: return "vc";
  }
  return "unknown";
}

ModelSpec::ModelSpec(ModelFamily family, int n_atoms, double delta, double chi, double omega,
                     double gamma0)
    : family_(family), n_atoms_(n_atoms), delta_(delta), chi_(chi), omega_(omega), gamma0_(gamma0) {
  if (n_atoms < 1) throw InvalidArgument("model needs N >= 1");
  if (!std::isfinite(delta) || !std::isfinite(chi) || !std::isfinite(omega) ||
      !std::isfinite(gamma0)) {
    throw InvalidArgument("model parameters must be finite");
  }
  if (gamma0 < 0.0) throw InvalidArgument("gamma0 must be >= 0");
  if (family == ModelFamily::Pdd) {
    const double target = 2.0 * delta;
    if (std::abs(omega - target) > 1e-12 * std::max(1.0, std::abs(target))) {
      std::ostringstream msg;
      msg << "pdd family requires omega = 2 delta (" << target << "), got " << omega;
      throw InvalidArgument(msg.str());
    }
  }
  if ((family == ModelFamily::Oat || family == ModelFamily::TactRwa) && omega != 0.0) {
    throw InvalidArgument(std::string(model_family_name(family)) + " family requires omega = 0");
  }
}

ModelSpec ModelSpec::pdd(int n_atoms, double delta, double chi, double gamma0) {
  return ModelSpec(ModelFamily::Pdd, n_atoms, delta, chi, 2.0 * delta, gamma0);
}

double ModelSpec::fastest_frequency() const {
  return std::max({std::abs(delta_), std::abs(omega_), n_atoms_ * std::abs(chi_)});
}

CollectiveOperator hamiltonian_at(const ModelSpec& spec, double t) {
  const int n = spec.n_atoms();
  switch (spec.family()) {
    case ModelFamily::Dicke:
    case ModelFamily::Pdd: {
      CMatrix h = spec.delta() * build_operator(OperatorKind::Jz, n).matrix() +
                  spec.chi() * std::cos(spec.omega() * t) *
                      build_operator(OperatorKind::Jx2, n).matrix();
      return {n, std::move(h), true};
    }
    case ModelFamily::Oat:
      return {n, -0.5 * spec.chi() * build_operator(OperatorKind::Jz2, n).matrix(), true};
    case ModelFamily::TactRwa:
      return {n, spec.chi() * build_operator(OperatorKind::Tact, n).matrix(), true};
    case ModelFamily::Vc: {
      CMatrix h = spec.delta() * build_operator(OperatorKind::Jz, n).matrix() -
                  spec.chi() * std::cos(spec.omega() * t) *
                      build_operator(OperatorKind::Jx2, n).matrix();
      return {n, std::move(h), true};
    }
  }
  throw InvalidArgument("unhandled model family");
}

std::optional<CollectiveOperator> jump_at(const ModelSpec& spec, double t) {
  if (spec.gamma0() == 0.0) return std::nullopt;
  const double amp = std::sqrt(spec.gamma0() * std::abs(std::cos(spec.omega() * t)));
  return CollectiveOperator(spec.n_atoms(),
                            amp * build_operator(OperatorKind::Jx, spec.n_atoms()).matrix(), true);
}

namespace {

ModelOperators::Sparse to_sparse(const CMatrix& m) {
  return m.sparseView(1.0, 1e-300);
}

}  // namespace

ModelOperators::ModelOperators(const ModelSpec& spec) : spec_(spec) {
  const int n = spec.n_atoms();
  switch (spec.family()) {
    case ModelFamily::Dicke:
    case ModelFamily::Pdd:
    case ModelFamily::Vc:
      terms_.push_back(to_sparse(build_operator(OperatorKind::Jz, n).matrix()));
      terms_.push_back(to_sparse(build_operator(OperatorKind::Jx2, n).matrix()));
      break;
    case ModelFamily::Oat:
      terms_.push_back(to_sparse(build_operator(OperatorKind::Jz2, n).matrix()));
      break;
    case ModelFamily::TactRwa:
      terms_.push_back(to_sparse(build_operator(OperatorKind::Tact, n).matrix()));
      break;
  }
  for (auto& t : terms_) t.makeCompressed();
  jx_ = to_sparse(build_operator(OperatorKind::Jx, n).matrix());
  jx_.makeCompressed();
}

double ModelOperators::coefficient(std::size_t k, double t) const {
  switch (spec_.family()) {
    case ModelFamily::Dicke:
    case ModelFamily::Pdd:
      return k == 0 ? spec_.delta() : spec_.chi() * std::cos(spec_.omega() * t);
    case ModelFamily::Vc:
      return k == 0 ? spec_.delta() : -spec_.chi() * std::cos(spec_.omega() * t);
    case ModelFamily::Oat: return -0.5 * spec_.chi();
    case ModelFamily::TactRwa: return spec_.chi();
  }
  return 0.0;
}

double ModelOperators::coefficient_bound(std::size_t k) const {
  switch (spec_.family()) {
    case ModelFamily::Dicke:
    case ModelFamily::Pdd:
    case ModelFamily::Vc:
      return k == 0 ? std::abs(spec_.delta()) : std::abs(spec_.chi());
    case ModelFamily::Oat: return 0.5 * std::abs(spec_.chi());
    case ModelFamily::TactRwa: return std::abs(spec_.chi());
  }
  return 0.0;
}

double ModelOperators::jump_coefficient(double t) const {
  return std::sqrt(spec_.gamma0() * std::abs(std::cos(spec_.omega() * t)));
}

DriveSample drive_profile(Complex beta0, double omega, double delta_c_prime0, double kappa,
                          double t) {
  if (!(omega > 0.0)) throw InvalidArgument("drive frequency must be > 0");
  const double phase = omega * t;
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  const Complex root = std::sqrt(Complex(c, 0.0));  // principal branch
  const Complex i(0.0, 1.0);

  DriveSample out;
  out.beta = beta0 * root;
  out.delta_c_prime = c >= 0.0 ? delta_c_prime0 : -delta_c_prime0;

  // Near zeros of cos the sqrt(sin tan) term diverges.
  constexpr double kDivergenceEps = 1e-12;
  if (std::abs(c) < kDivergenceEps) {
    out.eta_divergent = true;
    out.eta = Complex(std::numeric_limits<double>::infinity(), 0.0);
    return out;
  }
  // eta = i dbeta/dt - (Delta_c' - i kappa/2) beta, with
  // dbeta/dt = -omega beta0 sin / (2 sqrt(cos)) on the principal branch.
  const Complex dbeta = -omega * beta0 * s / (2.0 * root);
  out.eta = i * dbeta - (out.delta_c_prime - 0.5 * i * kappa) * out.beta;
  return out;
}

double t_peak_estimate(int n_atoms, double chi) {
  if (n_atoms < 1) throw InvalidArgument("N must be >= 1");
  if (chi == 0.0) throw InvalidArgument("chi must be nonzero");
  const double n = n_atoms;
  return (std::log(n * n) + 4.0) / (n * std::abs(chi));
}

double oat_plateau_time(int n_atoms, double chi) {
  if (n_atoms < 1) throw InvalidArgument("N must be >= 1");
  if (chi == 0.0) throw InvalidArgument("chi must be nonzero");
  return 4.0 / (std::sqrt(static_cast<double>(n_atoms)) * std::abs(chi));
}

}  // namespace spinsqz
