#include "nfg/nfg.h"

#include "nfg/correlation.hpp"
#include "nfg/families.hpp"
#include "nfg/overlap.hpp"

#include <algorithm>
#include <exception>
#include <new>
#include <optional>
#include <span>
#include <string>

struct nfg_state {
  nfg::GaussianState state;
};

struct nfg_channel {
  nfg::GaussianChannel channel;
};

namespace {

thread_local std::string g_last_error;

nfg_status status_of(nfg::ErrorCode code) {
  switch (code) {
    case nfg::ErrorCode::InvalidArgument: return NFG_ERR_INVALID_ARGUMENT;
    case nfg::ErrorCode::DimensionMismatch: return NFG_ERR_DIMENSION;
    case nfg::ErrorCode::NonFinite: return NFG_ERR_NON_FINITE;
    case nfg::ErrorCode::Unphysical: return NFG_ERR_UNPHYSICAL;
    case nfg::ErrorCode::NotPositiveDefinite: return NFG_ERR_NOT_POSITIVE_DEFINITE;
    case nfg::ErrorCode::InvalidChannel: return NFG_ERR_INVALID_CHANNEL;
    case nfg::ErrorCode::WrongPartition: return NFG_ERR_PARTITION;
    case nfg::ErrorCode::NoConvergence: return NFG_ERR_NO_CONVERGENCE;
  }
  return NFG_ERR_INTERNAL;
}

nfg_status fail(nfg_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
nfg_status guarded(F&& body) noexcept {
  try {
    return body();
  } catch (const nfg::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NFG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NFG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NFG_ERR_INTERNAL, "unknown exception");
  }
}

#define NFG_REQUIRE(cond, msg) \
  do {                         \
    if (!(cond)) return fail(NFG_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

void fill_result(const nfg::NfgResult& in, nfg_result* out) {
  out->value = in.value;
  out->method = static_cast<nfg_method>(in.method);
  out->lower_bound_only = in.lower_bound_only ? 1 : 0;
  out->converged = in.converged ? 1 : 0;
  out->n_theta = static_cast<int>(in.optimizer_theta.size());
  std::fill(std::begin(out->theta), std::end(out->theta), 0.0);
  std::copy_n(in.optimizer_theta.begin(), std::min<std::size_t>(8, in.optimizer_theta.size()), out->theta);
}

void fill_row(const nfg::SweepRow& in, nfg_sweep_row* out) {
  *out = {in.n_bar, in.mu, in.nfg, in.dg, in.q, in.nfg_minus_dg, in.nfg_minus_q};
}

nfg::StandardFormParams params_of(const nfg_standard_form& p) { return {p.a, p.b, p.c, p.d}; }

nfg::SweepGrid grid_of(const nfg_sweep_grid& g) {
  return {g.n_bar_min, g.n_bar_max, g.n_bar_steps, g.mu_min, g.mu_max, g.mu_steps};
}

nfg_status copy_out(const std::vector<double>& values, double* out, std::size_t len) {
  NFG_REQUIRE(out != nullptr, "output buffer is NULL");
  if (len < values.size()) {
    return fail(NFG_ERR_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(len) + " values, need " +
                                              std::to_string(values.size()));
  }
  std::copy(values.begin(), values.end(), out);
  return NFG_OK;
}

}  // namespace

extern "C" {

const char* nfg_status_string(nfg_status status) {
  switch (status) {
    case NFG_OK: return "ok";
    case NFG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NFG_ERR_DIMENSION: return "dimension mismatch";
    case NFG_ERR_NON_FINITE: return "non-finite value";
    case NFG_ERR_UNPHYSICAL: return "unphysical state";
    case NFG_ERR_NOT_POSITIVE_DEFINITE: return "matrix not positive definite";
    case NFG_ERR_INVALID_CHANNEL: return "invalid Gaussian channel";
    case NFG_ERR_PARTITION: return "wrong mode partition";
    case NFG_ERR_NO_CONVERGENCE: return "no convergence";
    case NFG_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case NFG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* nfg_last_error(void) { return g_last_error.c_str(); }

const char* nfg_version(void) { return "1.0.0"; }

// ---- states ----------------------------------------------------------------

nfg_status nfg_state_create(int n_a, int n_b, const double* cm, size_t cm_len, const double* mean, size_t mean_len,
                            int allow_unphysical, nfg_state** out) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(out != nullptr && cm != nullptr, "cm and out must be non-NULL");
    NFG_REQUIRE(n_a >= 0 && n_b >= 0 && n_a + n_b >= 1, "mode counts must be non-negative with at least one mode");
    const auto dim = static_cast<Eigen::Index>(2 * (n_a + n_b));
    nfg::CovarianceMatrix g(nfg::from_row_major(std::span(cm, cm_len), dim, dim));
    nfg::Vector d = nfg::Vector::Zero(dim);
    if (mean != nullptr) {
      if (static_cast<Eigen::Index>(mean_len) != dim) {
        return fail(NFG_ERR_DIMENSION, "mean must have " + std::to_string(dim) + " entries");
      }
      d = Eigen::Map<const nfg::Vector>(mean, dim);
    }
    nfg::Displacement disp(std::move(d));
    auto state = allow_unphysical ? nfg::GaussianState::unchecked(std::move(g), std::move(disp), n_a, n_b)
                                  : nfg::GaussianState(std::move(g), std::move(disp), n_a, n_b);
    *out = new nfg_state{std::move(state)};
    return NFG_OK;
  });
}

nfg_status nfg_state_ssts(double n_bar, double mu, nfg_state** out) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(out != nullptr, "out must be non-NULL");
    *out = new nfg_state{nfg::ssts({n_bar, mu})};
    return NFG_OK;
  });
}

nfg_status nfg_state_tmsv(double r, nfg_state** out) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(out != nullptr, "out must be non-NULL");
    *out = new nfg_state{nfg::tmsv(r)};
    return NFG_OK;
  });
}

nfg_status nfg_state_clone(const nfg_state* state, nfg_state** out) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(state != nullptr && out != nullptr, "state and out must be non-NULL");
    *out = new nfg_state{state->state};
    return NFG_OK;
  });
}

void nfg_state_destroy(nfg_state* state) { delete state; }

nfg_status nfg_state_partition(const nfg_state* state, int* n_a, int* n_b) {
  NFG_REQUIRE(state != nullptr && n_a != nullptr && n_b != nullptr, "arguments must be non-NULL");
  *n_a = state->state.n_a();
  *n_b = state->state.n_b();
  return NFG_OK;
}

nfg_status nfg_state_cm(const nfg_state* state, double* out, size_t len) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(state != nullptr, "state is NULL");
    return copy_out(nfg::to_row_major(state->state.cm().matrix()), out, len);
  });
}

nfg_status nfg_state_mean(const nfg_state* state, double* out, size_t len) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(state != nullptr, "state is NULL");
    const nfg::Vector& m = state->state.mean().vector();
    return copy_out(std::vector<double>(m.data(), m.data() + m.size()), out, len);
  });
}

// ---- core ------------------------------------------------------------------

nfg_status nfg_validate_cm(const double* cm, size_t dim, double tol, nfg_validation* report,
                           double* symplectic_eigenvalues, size_t eig_len) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(cm != nullptr && report != nullptr, "cm and report must be non-NULL");
    NFG_REQUIRE(tol >= 0.0, "tolerance must be non-negative");
    const auto n = static_cast<Eigen::Index>(dim);
    const nfg::ValidationReport r = nfg::validate_cm(nfg::from_row_major(std::span(cm, dim * dim), n, n), tol);
    report->physical = r.physical ? 1 : 0;
    report->symmetric = r.symmetric ? 1 : 0;
    report->symmetry_deviation = r.symmetry_deviation;
    report->min_symplectic_eigenvalue = r.symplectic_eigenvalues.back();
    if (symplectic_eigenvalues != nullptr) return copy_out(r.symplectic_eigenvalues, symplectic_eigenvalues, eig_len);
    return NFG_OK;
  });
}

nfg_status nfg_standard_form_of(const nfg_state* state, nfg_standard_form* params) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(state != nullptr && params != nullptr, "arguments must be non-NULL");
    const auto p = nfg::standard_form(state->state).params;
    *params = {p.a, p.b, p.c, p.d};
    return NFG_OK;
  });
}

// ---- overlaps ---------------------------------------------------------------

nfg_status nfg_overlap(const nfg_state* rho, const nfg_state* sigma, double* value, double* log_value) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(rho != nullptr && sigma != nullptr, "states must be non-NULL");
    const auto r = nfg::overlap(rho->state, sigma->state);
    if (value != nullptr) *value = r.value;
    if (log_value != nullptr) *log_value = r.log_value;
    return NFG_OK;
  });
}

nfg_status nfg_purity(const nfg_state* rho, double* value) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(rho != nullptr && value != nullptr, "arguments must be non-NULL");
    *value = nfg::purity(rho->state);
    return NFG_OK;
  });
}

nfg_status nfg_fidelity(const nfg_state* rho, const nfg_state* sigma, double* value) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(rho != nullptr && sigma != nullptr && value != nullptr, "arguments must be non-NULL");
    *value = nfg::fidelity_f(rho->state, sigma->state);
    return NFG_OK;
  });
}

nfg_status nfg_c_squared(const nfg_state* rho, const nfg_state* sigma, double* value) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(rho != nullptr && sigma != nullptr && value != nullptr, "arguments must be non-NULL");
    *value = nfg::c_squared(rho->state, sigma->state);
    return NFG_OK;
  });
}

// ---- correlation -----------------------------------------------------------

nfg_optimizer_config nfg_optimizer_default(void) {
  const nfg::OptimizerConfig c;
  return {c.grid_points, c.refine_iters, c.restarts, c.seed};
}

nfg_status nfg_closed_form(const nfg_standard_form* params, nfg_result* result) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(params != nullptr && result != nullptr, "arguments must be non-NULL");
    fill_result(nfg::nfg_closed_form(params_of(*params)), result);
    return NFG_OK;
  });
}

nfg_status nfg_two_mode(const nfg_state* state, nfg_result* result) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(state != nullptr && result != nullptr, "arguments must be non-NULL");
    fill_result(nfg::nfg_two_mode(state->state), result);
    return NFG_OK;
  });
}

nfg_status nfg_numeric(const nfg_state* state, const nfg_optimizer_config* config, nfg_result* result) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(state != nullptr && result != nullptr, "arguments must be non-NULL");
    nfg::OptimizerConfig c;
    if (config != nullptr) c = {config->grid_points, config->refine_iters, config->restarts, config->seed};
    fill_result(nfg::nfg_numeric(state->state, c), result);
    return NFG_OK;
  });
}

nfg_status nfg_upper_bound(const nfg_state* state, double* value) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(state != nullptr && value != nullptr, "arguments must be non-NULL");
    *value = nfg::nfg_upper_bound(state->state);
    return NFG_OK;
  });
}

// ---- channels ----------------------------------------------------------------

nfg_status nfg_channel_create(int modes, const double* k, const double* m_noise, const double* d_bar,
                              nfg_channel** out) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(k != nullptr && m_noise != nullptr && out != nullptr, "k, m_noise and out must be non-NULL");
    NFG_REQUIRE(modes >= 1, "channel needs at least one mode");
    const auto dim = static_cast<Eigen::Index>(2 * modes);
    const auto n = static_cast<std::size_t>(dim * dim);
    nfg::Vector d = nfg::Vector::Zero(dim);
    if (d_bar != nullptr) d = Eigen::Map<const nfg::Vector>(d_bar, dim);
    *out = new nfg_channel{nfg::GaussianChannel(nfg::from_row_major(std::span(k, n), dim, dim),
                                                nfg::from_row_major(std::span(m_noise, n), dim, dim), std::move(d))};
    return NFG_OK;
  });
}

void nfg_channel_destroy(nfg_channel* channel) { delete channel; }

nfg_status nfg_apply_channel(const nfg_state* state, const nfg_channel* channel, nfg_state** out) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(state != nullptr && channel != nullptr && out != nullptr, "arguments must be non-NULL");
    *out = new nfg_state{nfg::apply_channel(state->state, channel->channel)};
    return NFG_OK;
  });
}

nfg_status nfg_after_channel_closed_form(const nfg_standard_form* params, const nfg_channel* channel,
                                         nfg_result* result) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(params != nullptr && channel != nullptr && result != nullptr, "arguments must be non-NULL");
    fill_result(nfg::nfg_after_channel_closed_form(params_of(*params), channel->channel), result);
    return NFG_OK;
  });
}

nfg_status nfg_state_after_channel_closed_form(const nfg_state* state, const nfg_channel* channel,
                                               nfg_result* result) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(state != nullptr && channel != nullptr && result != nullptr, "arguments must be non-NULL");
    fill_result(nfg::nfg_after_channel_closed_form(state->state, channel->channel), result);
    return NFG_OK;
  });
}

nfg_status nfg_check_monotonicity(const nfg_state* state, const nfg_channel* channel, nfg_monotonicity* report) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(state != nullptr && channel != nullptr && report != nullptr, "arguments must be non-NULL");
    const auto r = nfg::check_monotonicity(state->state, channel->channel);
    *report = {r.before, r.after, r.slack, r.holds ? 1 : 0};
    return NFG_OK;
  });
}

// ---- SSTS ----------------------------------------------------------------------

nfg_status nfg_ssts_measures(double n_bar, double mu, nfg_sweep_row* row) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(row != nullptr, "row is NULL");
    fill_row(nfg::sweep_point({n_bar, mu}), row);
    return NFG_OK;
  });
}

nfg_status nfg_ssts_limit(double mu, double* value) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(value != nullptr, "value is NULL");
    *value = nfg::nfg_ssts_limit(mu);
    return NFG_OK;
  });
}

nfg_status nfg_figure_grid(int figure, nfg_sweep_grid* grid) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(grid != nullptr, "grid is NULL");
    const auto g = nfg::figure_grid(figure);
    *grid = {g.n_bar_min, g.n_bar_max, g.n_bar_steps, g.mu_min, g.mu_max, g.mu_steps};
    return NFG_OK;
  });
}

nfg_status nfg_sweep(const nfg_sweep_grid* grid, nfg_sweep_row* rows, size_t capacity, size_t* count) {
  return guarded([&]() -> nfg_status {
    NFG_REQUIRE(grid != nullptr && count != nullptr, "grid and count must be non-NULL");
    nfg::validate_grid(grid_of(*grid));
    const std::size_t total =
        static_cast<std::size_t>(grid->n_bar_steps) * static_cast<std::size_t>(grid->mu_steps);
    *count = total;
    if (rows == nullptr) return NFG_OK;
    if (capacity < total) return fail(NFG_ERR_BUFFER_TOO_SMALL, "row buffer too small for sweep");
    const auto out = nfg::sweep(grid_of(*grid));
    for (std::size_t i = 0; i < out.size(); ++i) fill_row(out[i], &rows[i]);
    return NFG_OK;
  });
}

}  // extern "C"
