// nfg: command-line front end over the C API.
//
// Exit codes: 0 success, 1 domain failure (unphysical state, invalid channel,
// wrong partition, oracle mismatch), 2 I/O, parse or usage error.

#include "nfg/nfg.h"

#include "fock_oracle.hpp"
#include "state_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nfg::io::format_double;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;

// A failed C API call, carrying its status and message.
struct ApiFailure {
  nfg_status status;
  std::string message;
};

void check(nfg_status status) {
  if (status != NFG_OK) throw ApiFailure{status, nfg_last_error()};
}

struct StateDeleter {
  void operator()(nfg_state* s) const { nfg_state_destroy(s); }
};
struct ChannelDeleter {
  void operator()(nfg_channel* c) const { nfg_channel_destroy(c); }
};
using StatePtr = std::unique_ptr<nfg_state, StateDeleter>;
using ChannelPtr = std::unique_ptr<nfg_channel, ChannelDeleter>;

StatePtr make_state(const nfg::io::StateFile& f, bool allow_unphysical) {
  nfg_state* raw = nullptr;
  check(nfg_state_create(f.n_a, f.n_b, f.cm.data(), f.cm.size(), f.mean.data(), f.mean.size(),
                         allow_unphysical ? 1 : 0, &raw));
  return StatePtr(raw);
}

StatePtr load_state(const std::string& path, bool allow_unphysical) {
  return make_state(nfg::io::read_state(path), allow_unphysical);
}

ChannelPtr load_channel(const std::string& path) {
  const auto f = nfg::io::read_channel(path);
  nfg_channel* raw = nullptr;
  check(nfg_channel_create(f.modes, f.k.data(), f.m_noise.data(), f.d_bar.data(), &raw));
  return ChannelPtr(raw);
}

nfg::io::StateFile to_file(const nfg_state* s) {
  nfg::io::StateFile f;
  check(nfg_state_partition(s, &f.n_a, &f.n_b));
  f.cm.resize(f.dim() * f.dim());
  f.mean.resize(f.dim());
  check(nfg_state_cm(s, f.cm.data(), f.cm.size()));
  check(nfg_state_mean(s, f.mean.data(), f.mean.size()));
  return f;
}

const char* method_name(nfg_method m) {
  switch (m) {
    case NFG_METHOD_CLOSED_FORM: return "closed_form";
    case NFG_METHOD_NUMERIC: return "numeric";
    case NFG_METHOD_CHANNEL_CLOSED_FORM: return "channel_closed_form";
  }
  return "unknown";
}

// NFG_SEED overrides the optimizer's default seed.
nfg_optimizer_config optimizer_config() {
  nfg_optimizer_config c = nfg_optimizer_default();
  if (const char* s = std::getenv("NFG_SEED"); s != nullptr && *s != '\0') {
    try {
      c.seed = std::stoull(s);
    } catch (...) {
      throw nfg::io::ParseError("NFG_SEED must be an unsigned integer");
    }
  }
  return c;
}

void print_kv(const std::string& key, const std::string& value) { std::cout << key << ": " << value << "\n"; }
void print_kv(const std::string& key, double value) { print_kv(key, format_double(value)); }

// ---- validate ----------------------------------------------------------------

struct ValidateOpts {
  std::string state;
  double tol = 1e-9;
  bool json_out = false;
};

int cmd_validate(const ValidateOpts& o) {
  const auto f = nfg::io::read_state(o.state);
  nfg_validation report{};
  std::vector<double> nus(f.dim() / 2);
  check(nfg_validate_cm(f.cm.data(), f.dim(), o.tol, &report, nus.data(), nus.size()));
  if (o.json_out) {
    json j = {{"physical", report.physical != 0},
              {"symmetric", report.symmetric != 0},
              {"symmetry_deviation", report.symmetry_deviation},
              {"symplectic_eigenvalues", nus}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::string list;
    for (double nu : nus) list += (list.empty() ? "" : " ") + format_double(nu);
    print_kv("symplectic_eigenvalues", list);
    print_kv("symmetry_deviation", report.symmetry_deviation);
    print_kv("symmetric", report.symmetric ? "yes" : "no");
    print_kv("physical", report.physical ? "yes" : "no");
  }
  return report.physical ? kExitOk : kExitDomain;
}

// ---- nfg -----------------------------------------------------------------------

struct NfgOpts {
  std::string state;
  std::string method = "closed";
  bool json_out = false;
};

int cmd_nfg(const NfgOpts& o, bool allow_unphysical) {
  const auto s = load_state(o.state, allow_unphysical);
  if (o.method == "bound") {
    double v = 0;
    check(nfg_upper_bound(s.get(), &v));
    if (o.json_out) {
      std::cout << json{{"value", v}, {"method", "upper_bound"}}.dump(2) << "\n";
    } else {
      print_kv("value", v);
      print_kv("method", "upper_bound");
    }
    return kExitOk;
  }
  nfg_result r{};
  if (o.method == "closed") {
    check(nfg_two_mode(s.get(), &r));
  } else {
    const nfg_optimizer_config c = optimizer_config();
    check(nfg_numeric(s.get(), &c, &r));
  }
  const std::vector<double> theta(r.theta, r.theta + std::min(r.n_theta, 8));
  if (o.json_out) {
    json j = {{"value", r.value},
              {"method", method_name(r.method)},
              {"optimizer_theta", theta},
              {"lower_bound_only", r.lower_bound_only != 0},
              {"converged", r.converged != 0}};
    std::cout << j.dump(2) << "\n";
  } else {
    print_kv("value", r.value);
    print_kv("method", method_name(r.method));
    std::string list;
    for (double t : theta) list += (list.empty() ? "" : " ") + format_double(t);
    print_kv("optimizer_theta", list);
    print_kv("lower_bound_only", r.lower_bound_only ? "yes" : "no");
    print_kv("converged", r.converged ? "yes" : "no");
  }
  return kExitOk;
}

// ---- channel -------------------------------------------------------------------

struct ChannelOpts {
  std::string state;
  std::string channel;
  bool compare_closed = false;
  bool json_out = false;
};

int cmd_channel(const ChannelOpts& o, bool allow_unphysical) {
  const auto s = load_state(o.state, allow_unphysical);
  const auto ch = load_channel(o.channel);
  nfg_monotonicity m{};
  check(nfg_check_monotonicity(s.get(), ch.get(), &m));
  json j = {{"before", m.before}, {"after", m.after}, {"slack", m.slack}, {"monotone", m.holds != 0}};
  if (o.compare_closed) {
    nfg_result r{};
    check(nfg_state_after_channel_closed_form(s.get(), ch.get(), &r));
    j["closed_form_after"] = r.value;
    j["discrepancy"] = std::abs(r.value - m.after);
  }
  if (o.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    print_kv("before", m.before);
    print_kv("after", m.after);
    print_kv("slack", m.slack);
    print_kv("monotone", m.holds ? "yes" : "no");
    if (o.compare_closed) {
      print_kv("closed_form_after", j["closed_form_after"].get<double>());
      print_kv("discrepancy", j["discrepancy"].get<double>());
    }
  }
  return kExitOk;
}

// ---- sweep ---------------------------------------------------------------------

struct SweepOpts {
  int figure = 0;
  nfg_sweep_grid grid{0.0, 50.0, 51, 0.0, 1.0, 51};
  std::string out;
};

std::string sweep_csv(const std::vector<nfg_sweep_row>& rows) {
  std::string csv = "n_bar,mu,nfg,dg,q,nfg_minus_dg,nfg_minus_q\n";
  for (const auto& r : rows) {
    for (double v : {r.n_bar, r.mu, r.nfg, r.dg, r.q, r.nfg_minus_dg}) csv += format_double(v) + ",";
    csv += format_double(r.nfg_minus_q) + "\n";
  }
  return csv;
}

int cmd_sweep(SweepOpts o) {
  if (o.figure != 0) check(nfg_figure_grid(o.figure, &o.grid));
  std::size_t count = 0;
  check(nfg_sweep(&o.grid, nullptr, 0, &count));
  std::vector<nfg_sweep_row> rows(count);
  check(nfg_sweep(&o.grid, rows.data(), rows.size(), &count));
  const std::string csv = sweep_csv(rows);
  if (o.out.empty() || o.out == "-") {
    std::cout << csv;
  } else {
    nfg::io::write_file(o.out, csv);
  }
  return kExitOk;
}

// ---- oracle-check --------------------------------------------------------------

struct OracleOpts {
  std::vector<std::string> families{"thermal", "coherent", "squeezed", "tmsv"};
  bool json_out = false;
};

double cm_overlap(const nfg::oracle::CmDescription& a, const nfg::oracle::CmDescription& b) {
  auto make = [](const nfg::oracle::CmDescription& d) {
    nfg::io::StateFile f{d.modes, 0, d.cm, d.mean};
    return make_state(f, false);
  };
  const auto ra = make(a);
  const auto rb = make(b);
  double v = 0;
  check(nfg_overlap(ra.get(), rb.get(), &v, nullptr));
  return v;
}

int cmd_oracle(const OracleOpts& o) {
  std::vector<nfg::oracle::OracleCase> cases;
  try {
    cases = nfg::oracle::oracle_cases(o.families);
  } catch (const std::invalid_argument& e) {
    throw nfg::io::ParseError(e.what());
  }
  constexpr double kTolerance = 1e-6;
  bool all_ok = true;
  json rows = json::array();
  if (!o.json_out) std::printf("%-40s %6s %24s %24s %12s %s\n", "case", "cutoff", "fock", "covariance", "rel_error", "ok");
  for (const auto& c : cases) {
    const double cm = cm_overlap(c.rho, c.sigma);
    const double rel = std::abs(cm - c.fock_overlap) / std::abs(cm);
    const bool ok = rel < kTolerance && c.trace_deficit < 1e-10;
    all_ok = all_ok && ok;
    if (o.json_out) {
      rows.push_back({{"family", c.family},
                      {"case", c.label},
                      {"cutoff", c.cutoff},
                      {"fock_overlap", c.fock_overlap},
                      {"cm_overlap", cm},
                      {"relative_error", rel},
                      {"trace_deficit", c.trace_deficit},
                      {"ok", ok}});
    } else {
      std::printf("%-40s %6d %24s %24s %12.3e %s\n", c.label.c_str(), c.cutoff, format_double(c.fock_overlap).c_str(),
                  format_double(cm).c_str(), rel, ok ? "yes" : "NO");
    }
  }
  if (o.json_out) std::cout << json{{"cases", rows}, {"all_ok", all_ok}}.dump(2) << "\n";
  return all_ok ? kExitOk : kExitDomain;
}

// ---- standard-form -------------------------------------------------------------

int cmd_standard_form(const std::string& path, bool json_out, bool allow_unphysical) {
  const auto s = load_state(path, allow_unphysical);
  nfg_standard_form p{};
  check(nfg_standard_form_of(s.get(), &p));
  if (json_out) {
    std::cout << json{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}}.dump(2) << "\n";
  } else {
    print_kv("a", p.a);
    print_kv("b", p.b);
    print_kv("c", p.c);
    print_kv("d", p.d);
  }
  return kExitOk;
}

// ---- make-state ----------------------------------------------------------------

struct MakeStateOpts {
  std::string family;
  double n_bar = 0;
  double mu = 0;
  double r = 0;
  std::string out;
};

int cmd_make_state(const MakeStateOpts& o) {
  nfg_state* raw = nullptr;
  if (o.family == "ssts") {
    check(nfg_state_ssts(o.n_bar, o.mu, &raw));
  } else {
    check(nfg_state_tmsv(o.r, &raw));
  }
  const StatePtr s(raw);
  const std::string text = nfg::io::format_state(to_file(s.get()));
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    nfg::io::write_file(o.out, text);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fidelity-based Gaussian correlation measure for bipartite Gaussian states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nfg_version()));
  bool allow_unphysical = false;
  app.add_flag("--allow-unphysical", allow_unphysical, "Skip the uncertainty-principle check when loading states");

  ValidateOpts vo;
  auto* validate = app.add_subcommand("validate", "Check physicality and print symplectic eigenvalues");
  validate->add_option("state", vo.state, "State file (JSON)")->required();
  validate->add_option("--tol", vo.tol, "Tolerance relative to max|entry|")->check(CLI::NonNegativeNumber);
  validate->add_flag("--json", vo.json_out, "JSON output");

  NfgOpts no;
  auto* nfg_cmd = app.add_subcommand("nfg", "Compute the correlation measure");
  nfg_cmd->add_option("state", no.state, "State file (JSON)")->required();
  nfg_cmd->add_option("--method", no.method, "closed (1+1 modes), numeric, or bound")
      ->check(CLI::IsMember({"closed", "numeric", "bound"}));
  nfg_cmd->add_flag("--json", no.json_out, "JSON output");

  ChannelOpts co;
  auto* channel = app.add_subcommand("channel", "Apply a channel on subsystem B and check monotonicity");
  channel->add_option("state", co.state, "State file (JSON)")->required();
  channel->add_option("channel", co.channel, "Channel file (JSON)")->required();
  channel->add_flag("--compare-closed", co.compare_closed, "Also evaluate the single-mode closed form");
  channel->add_flag("--json", co.json_out, "JSON output");

  SweepOpts so;
  auto* sweep = app.add_subcommand("sweep", "Tabulate the measures over squeezed thermal states as CSV");
  auto* fig = sweep->add_option("--figure", so.figure, "Preset grid 1-4")->check(CLI::Range(1, 4));
  sweep->add_option("--n-bar-min", so.grid.n_bar_min)->excludes(fig);
  sweep->add_option("--n-bar-max", so.grid.n_bar_max)->excludes(fig);
  sweep->add_option("--n-bar-steps", so.grid.n_bar_steps)->excludes(fig);
  sweep->add_option("--mu-min", so.grid.mu_min)->excludes(fig);
  sweep->add_option("--mu-max", so.grid.mu_max)->excludes(fig);
  sweep->add_option("--mu-steps", so.grid.mu_steps)->excludes(fig);
  sweep->add_option("--out", so.out, "Output CSV path (default stdout)");

  OracleOpts oo;
  auto* oracle = app.add_subcommand("oracle-check", "Compare covariance overlaps against truncated Fock sums");
  oracle->add_option("--families", oo.families, "thermal,coherent,squeezed,tmsv")->delimiter(',');
  oracle->add_flag("--json", oo.json_out, "JSON output");

  std::string sf_state;
  bool sf_json = false;
  auto* sf = app.add_subcommand("standard-form", "Print (a, b, c, d) of a (1+1)-mode state");
  sf->add_option("state", sf_state, "State file (JSON)")->required();
  sf->add_flag("--json", sf_json, "JSON output");

  MakeStateOpts mo;
  auto* make = app.add_subcommand("make-state", "Write a squeezed thermal or two-mode squeezed vacuum state file");
  make->add_option("family", mo.family, "ssts or tmsv")->required()->check(CLI::IsMember({"ssts", "tmsv"}));
  make->add_option("--n-bar", mo.n_bar);
  make->add_option("--mu", mo.mu);
  make->add_option("--r", mo.r);
  make->add_option("--out", mo.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitIo;
  }

  try {
    if (*validate) return cmd_validate(vo);
    if (*nfg_cmd) return cmd_nfg(no, allow_unphysical);
    if (*channel) return cmd_channel(co, allow_unphysical);
    if (*sweep) return cmd_sweep(so);
    if (*oracle) return cmd_oracle(oo);
    if (*sf) return cmd_standard_form(sf_state, sf_json, allow_unphysical);
    if (*make) return cmd_make_state(mo);
  } catch (const nfg::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ApiFailure& e) {
    std::cerr << "error: " << nfg_status_string(e.status) << ": " << e.message << "\n";
    return e.status == NFG_ERR_INTERNAL ? kExitIo : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}
