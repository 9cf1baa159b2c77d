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

#include "spinsqz/spinsqz.h"

#include <cstring>
#include <new>
#include <string>

#include "spinsqz/bayes.hpp"
#include "spinsqz/cavity.hpp"
#include "spinsqz/config.hpp"
#include "spinsqz/dicke.hpp"
#include "spinsqz/metrology.hpp"
#include "spinsqz/model.hpp"
#include "spinsqz/propagator.hpp"
#include "spinsqz/scenario.hpp"

struct sqz_state {
  spinsqz::DickeState value;
};
struct sqz_operator {
  spinsqz::CollectiveOperator value;
};
struct sqz_model {
  spinsqz::ModelSpec value;
};
struct sqz_trajectory {
  spinsqz::Trajectory value;
};
struct sqz_config {
  spinsqz::Config value;
};

namespace {

using namespace spinsqz;

thread_local std::string g_last_error;

sqz_status fail(sqz_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <class F>
sqz_status guarded(F&& body) {
  try {
    body();
    return SQZ_OK;
  } catch (const ConfigError& e) {
    return fail(SQZ_ERR_CONFIG, e.what());
  } catch (const StepSizeError& e) {
    return fail(SQZ_ERR_STEP_SIZE, e.what());
  } catch (const NumericalError& e) {
    return fail(SQZ_ERR_NUMERICAL, e.what());
  } catch (const DimensionMismatch& e) {
    return fail(SQZ_ERR_DIMENSION, e.what());
  } catch (const InvalidArgument& e) {
    return fail(SQZ_ERR_INVALID_ARGUMENT, e.what());
  } catch (const IoError& e) {
    return fail(SQZ_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SQZ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SQZ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SQZ_ERR_INTERNAL, "unknown error");
  }
}

template <class T>
void require(const T* p, const char* name) {
  if (p == nullptr) throw InvalidArgument(std::string(name) + " is NULL");
}

void copy_complex(const Complex* src, std::size_t count, double* out, std::size_t len) {
  require(out, "out");
  if (len < 2 * count) throw InvalidArgument("output buffer too small");
  for (std::size_t i = 0; i < count; ++i) {
    out[2 * i] = src[i].real();
    out[2 * i + 1] = src[i].imag();
  }
}

void copy_text(const std::string& text, char* buf, std::size_t len, std::size_t* needed,
               bool truncate) {
  if (needed != nullptr) *needed = text.size() + 1;
  if (buf == nullptr) return;
  if (len < text.size() + 1 && !truncate) throw InvalidArgument("text buffer too small");
  if (len == 0) return;
  const std::size_t n = std::min(text.size(), len - 1);
  std::memcpy(buf, text.data(), n);
  buf[n] = '\0';
}

template <class Handle, class Value>
void emit(Handle** out, Value&& v) {
  require(out, "out");
  *out = new Handle{std::forward<Value>(v)};
}

LabInputs to_lab(const sqz_lab_inputs* in) {
  require(in, "inputs");
  LabInputs lab;
  lab.Lambda = in->Lambda;
  lab.gamma = in->gamma;
  lab.kappa = in->kappa;
  lab.Delta_a = in->Delta_a;
  lab.Delta_c = in->Delta_c;
  lab.eta0 = in->eta0;
  lab.tau = in->tau;
  lab.omega_r = in->omega_r;
  lab.k = in->k;
  lab.g = in->g;
  lab.N = in->n_atoms;
  if (in->has_kgtau) lab.kgtau = in->kgtau;
  return lab;
}

constexpr const char* kLedgerNames[SQZ_LEDGER_SIZE] = {
    "excited_state_elimination", "cavity_elimination_1",  "cavity_elimination_2",
    "perturbation",              "single_momentum_flips", "pair_creation"};

}  // namespace

extern "C" {

const char* sqz_version(void) { return version_string().data(); }

const char* sqz_last_error(void) { return g_last_error.c_str(); }

const char* sqz_status_name(sqz_status status) {
  switch (status) {
    case SQZ_OK: return "ok";
    case SQZ_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SQZ_ERR_CONFIG: return "config error";
    case SQZ_ERR_NUMERICAL: return "numerical error";
    case SQZ_ERR_DIMENSION: return "dimension mismatch";
    case SQZ_ERR_STEP_SIZE: return "step size error";
    case SQZ_ERR_IO: return "i/o error";
    case SQZ_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

sqz_status sqz_state_basis(int n_atoms, int m_index, sqz_state** out) {
  return guarded([&] { emit(out, basis_state(n_atoms, m_index)); });
}

sqz_status sqz_state_coherent(int n_atoms, double theta, double phi, sqz_state** out) {
  return guarded([&] { emit(out, coherent_state(n_atoms, theta, phi)); });
}

sqz_status sqz_state_bw(int n_atoms, sqz_state** out) {
  return guarded([&] { emit(out, bw_state(n_atoms)); });
}

sqz_status sqz_state_maximally_mixed(int n_atoms, sqz_state** out) {
  return guarded([&] { emit(out, maximally_mixed(n_atoms)); });
}

sqz_status sqz_state_from_amplitudes(int n_atoms, const double* amplitudes, sqz_state** out) {
  return guarded([&] {
    require(amplitudes, "amplitudes");
    if (n_atoms < 1) throw InvalidArgument("N must be >= 1");
    CVector psi(n_atoms + 1);
    for (int i = 0; i <= n_atoms; ++i) psi(i) = Complex(amplitudes[2 * i], amplitudes[2 * i + 1]);
    emit(out, DickeState::pure(n_atoms, std::move(psi)));
  });
}

sqz_status sqz_state_from_density(int n_atoms, const double* rho, sqz_state** out) {
  return guarded([&] {
    require(rho, "rho");
    if (n_atoms < 1) throw InvalidArgument("N must be >= 1");
    const Eigen::Index d = n_atoms + 1;
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d * d; ++i) m.data()[i] = Complex(rho[2 * i], rho[2 * i + 1]);
    emit(out, DickeState::mixed(n_atoms, std::move(m)));
  });
}

void sqz_state_free(sqz_state* state) { delete state; }

int sqz_state_n_atoms(const sqz_state* state) { return state ? state->value.n_atoms() : -1; }

int sqz_state_is_pure(const sqz_state* state) { return state && state->value.is_pure() ? 1 : 0; }

sqz_status sqz_state_amplitudes(const sqz_state* state, double* out, size_t len) {
  return guarded([&] {
    require(state, "state");
    const CVector& a = state->value.amplitudes();
    copy_complex(a.data(), static_cast<std::size_t>(a.size()), out, len);
  });
}

sqz_status sqz_state_density(const sqz_state* state, double* out, size_t len) {
  return guarded([&] {
    require(state, "state");
    const CMatrix rho = state->value.to_density();
    copy_complex(rho.data(), static_cast<std::size_t>(rho.size()), out, len);
  });
}

sqz_status sqz_state_rotate(const sqz_state* state, const double axis[3], double angle,
                            sqz_state** out) {
  return guarded([&] {
    require(state, "state");
    require(axis, "axis");
    emit(out, rotate(state->value, Vec3(axis[0], axis[1], axis[2]), angle));
  });
}

sqz_status sqz_operator_build(const char* kind, int n_atoms, sqz_operator** out) {
  return guarded([&] {
    require(kind, "kind");
    emit(out, build_operator(parse_operator_kind(kind), n_atoms));
  });
}

void sqz_operator_free(sqz_operator* op) { delete op; }

sqz_status sqz_operator_matrix(const sqz_operator* op, double* out, size_t len) {
  return guarded([&] {
    require(op, "op");
    const CMatrix& m = op->value.matrix();
    copy_complex(m.data(), static_cast<std::size_t>(m.size()), out, len);
  });
}

sqz_status sqz_expectation(const sqz_state* state, const sqz_operator* op, double* re, double* im) {
  return guarded([&] {
    require(state, "state");
    require(op, "op");
    const Complex v = expectation(state->value, op->value);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

sqz_status sqz_model_create(const sqz_model_params* p, sqz_model** out) {
  return guarded([&] {
    require(p, "params");
    require(p->family, "params->family");
    emit(out, ModelSpec(parse_model_family(p->family), p->n_atoms, p->delta, p->chi, p->omega,
                        p->gamma0));
  });
}

void sqz_model_free(sqz_model* model) { delete model; }

sqz_status sqz_default_step_control(const sqz_model* model, sqz_step_control* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const StepControl c = default_step_control(model->value);
    *out = {c.dt, c.record_every, c.renormalize ? 1 : 0, c.check_positivity ? 1 : 0};
  });
}

sqz_status sqz_evolve(const sqz_state* initial, const sqz_model* model, double t0, double t1,
                      const sqz_step_control* control, sqz_trajectory** out) {
  return guarded([&] {
    require(initial, "initial");
    require(model, "model");
    StepControl c = default_step_control(model->value);
    if (control != nullptr) {
      c.dt = control->dt;
      c.record_every = control->record_every;
      c.renormalize = control->renormalize != 0;
      c.check_positivity = control->check_positivity != 0;
    }
    emit(out, evolve(initial->value, model->value, t0, t1, c));
  });
}

void sqz_trajectory_free(sqz_trajectory* trajectory) { delete trajectory; }

size_t sqz_trajectory_size(const sqz_trajectory* trajectory) {
  return trajectory ? trajectory->value.times.size() : 0;
}

sqz_status sqz_trajectory_time(const sqz_trajectory* trajectory, size_t index, double* t) {
  return guarded([&] {
    require(trajectory, "trajectory");
    require(t, "t");
    if (index >= trajectory->value.times.size()) throw InvalidArgument("index out of range");
    *t = trajectory->value.times[index];
  });
}

sqz_status sqz_trajectory_state(const sqz_trajectory* trajectory, size_t index, sqz_state** out) {
  return guarded([&] {
    require(trajectory, "trajectory");
    if (index >= trajectory->value.states.size()) throw InvalidArgument("index out of range");
    emit(out, trajectory->value.states[index]);
  });
}

sqz_status sqz_qfim_compute(const sqz_state* state, sqz_qfim* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    const QfimResult q = qfim(state->value);
    for (int r = 0; r < 3; ++r) {
      out->eigenvalues[r] = q.eigenvalues[r];
      for (int c = 0; c < 3; ++c) {
        out->matrix[3 * r + c] = q.matrix(r, c);
        out->generators[3 * r + c] = q.generators(c, r);
      }
    }
  });
}

sqz_status sqz_qcrb(double lambda_max, long long measurements, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = qcrb_sigma(lambda_max, measurements);
  });
}

sqz_status sqz_db_gain(double lambda_max, int n_atoms, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = db_gain(lambda_max, n_atoms);
  });
}

sqz_status sqz_holevo_variance(const sqz_state* state, double* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = holevo_variance(state->value);
  });
}

sqz_status sqz_aligned_fidelity(const sqz_state* state, const sqz_state* target,
                                double* fidelity, double angles[3]) {
  return guarded([&] {
    require(state, "state");
    require(target, "target");
    require(fidelity, "fidelity");
    const AlignedFidelity f = aligned_fidelity(state->value, target->value);
    *fidelity = f.fidelity;
    if (angles != nullptr) {
      angles[0] = f.alpha;
      angles[1] = f.beta;
      angles[2] = f.gamma;
    }
  });
}

sqz_status sqz_measurement_distribution(const sqz_state* state, const double generator[3],
                                        double phi, double* out, size_t len) {
  return guarded([&] {
    require(state, "state");
    require(generator, "generator");
    require(out, "out");
    const auto p = measurement_distribution(state->value,
                                            Vec3(generator[0], generator[1], generator[2]), phi);
    if (len < p.size()) throw InvalidArgument("output buffer too small");
    std::copy(p.begin(), p.end(), out);
  });
}

sqz_status sqz_run_protocol(const sqz_state* state, long long m_max, double phi_true,
                            uint64_t seed, double half_width, sqz_protocol_point* points,
                            size_t capacity, size_t* count) {
  return guarded([&] {
    require(state, "state");
    require(count, "count");
    if (!(half_width > 0.0)) throw InvalidArgument("half_width must be > 0");
    if (points == nullptr) {
      *count = log_spaced_counts(m_max).size();
      return;
    }
    ProtocolOptions opt;
    opt.window_lo = -half_width;
    opt.window_hi = half_width;
    const ProtocolResult r = run_protocol(state->value, m_max, phi_true, seed, opt);
    if (capacity < r.points.size()) throw InvalidArgument("points buffer too small");
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const ProtocolPoint& p = r.points[i];
      points[i] = {p.measurements, p.sigma, p.qcrb, p.mean};
    }
    *count = r.points.size();
  });
}

sqz_status sqz_cavity_derive(const sqz_lab_inputs* inputs, sqz_cavity_params* out) {
  return guarded([&] {
    require(out, "out");
    const CavityParams p = derive(to_lab(inputs));
    *out = {p.U0,   p.Delta_c_prime, p.beta0_complex.real(), p.beta0_complex.imag(), p.beta0,
            p.chi0, p.Gamma0,        p.omega_g,              p.epsilon};
  });
}

sqz_status sqz_cavity_ledger(const sqz_lab_inputs* inputs, sqz_ledger* out) {
  return guarded([&] {
    require(out, "out");
    const LabInputs lab = to_lab(inputs);
    const auto ledger = approximation_ledger(derive(lab), lab);
    for (int i = 0; i < SQZ_LEDGER_SIZE; ++i) {
      out->ratio[i] = ledger[i].ratio;
      out->pass[i] = ledger[i].pass ? 1 : 0;
      out->marginal[i] = ledger[i].marginal ? 1 : 0;
    }
  });
}

const char* sqz_ledger_name(int index) {
  return index >= 0 && index < SQZ_LEDGER_SIZE ? kLedgerNames[index] : nullptr;
}

sqz_status sqz_drive_profile(double beta0_re, double beta0_im, double omega, double delta_c_prime0,
                             double kappa, double t, sqz_drive_sample* out) {
  return guarded([&] {
    require(out, "out");
    const DriveSample d =
        drive_profile(Complex(beta0_re, beta0_im), omega, delta_c_prime0, kappa, t);
    *out = {d.beta.real(), d.beta.imag(), d.delta_c_prime,
            d.eta.real(),  d.eta.imag(),  d.eta_divergent ? 1 : 0};
  });
}

sqz_status sqz_config_load(const char* path, sqz_config** out) {
  return guarded([&] {
    require(path, "path");
    emit(out, Config::load(path));
  });
}

sqz_status sqz_config_parse(const char* text, sqz_config** out) {
  return guarded([&] {
    require(text, "text");
    emit(out, Config::parse(text));
  });
}

void sqz_config_free(sqz_config* config) { delete config; }

sqz_status sqz_config_validate(const sqz_config* config) {
  return guarded([&] {
    require(config, "config");
    validate_config(config->value);
  });
}

sqz_status sqz_run_scenario(const sqz_config* config, const char* output_dir, char* buf,
                            size_t len, size_t* needed) {
  return guarded([&] {
    require(config, "config");
    std::optional<std::filesystem::path> dir;
    if (output_dir != nullptr) dir = output_dir;
    const ScenarioResult r = run_scenario(config->value, dir);
    std::string list;
    for (const auto& f : r.files) list += f.string() + "\n";
    copy_text(list, buf, len, needed, true);
  });
}

sqz_status sqz_ledger_report(const sqz_config* config, char* buf, size_t len, size_t* needed) {
  return guarded([&] {
    require(config, "config");
    copy_text(ledger_report(config->value), buf, len, needed, false);
  });
}

sqz_status sqz_metadata_text(const sqz_config* config, char* buf, size_t len, size_t* needed) {
  return guarded([&] {
    require(config, "config");
    copy_text(metadata_text(resolve_config(config->value)), buf, len, needed, false);
  });
}

}  // extern "C"
