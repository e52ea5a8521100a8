// emwave command-line tool: zero tables, plane-wave mode inspection, cavity
// energy spectra, Jefimenko synthesis, Lorentz boosts, Maxwell residual
// verification, and the acceptance self-test.
//
// Configuration comes from an optional strict JSON document (unknown keys are
// rejected) with command-line flags taking precedence. All emitted numbers go
// through the shortest round-trip formatter, so identical inputs produce
// byte-identical output.
//
// Exit codes: 0 success, 2 config/usage error, 3 numerical non-convergence,
// 4 precondition violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "emwave/cavity.hpp"
#include "emwave/constants.hpp"
#include "emwave/field_io.hpp"
#include "emwave/fields.hpp"
#include "emwave/freespace.hpp"
#include "emwave/jefimenko.hpp"
#include "emwave/nonradiating.hpp"
#include "emwave/selftest.hpp"
#include "emwave/specfun.hpp"

namespace {

using emwave::format_double;
using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitPrecondition = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// strict schema check: every key in `section` must be known
void require_known_keys(const json &section, const std::string &name,
                        const std::set<std::string> &known) {
  if (!section.is_object())
    throw ConfigError("config section '" + name + "' must be an object");
  for (const auto &item : section.items())
    if (!known.count(item.key()))
      throw ConfigError("config: unknown key '" + item.key() +
                        "' in section '" + name + "'");
}

json load_config(const std::string &path_flag) {
  std::string path = path_flag;
  if (path.empty()) {
    if (const char *env = std::getenv("EMWAVE_CONFIG")) path = env;
  }
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception &e) {
    throw ConfigError("config: parse failure in '" + path + "': " + e.what());
  }
  require_known_keys(doc, "<root>",
                     {"units", "zeros", "modes", "spectrum", "jefimenko",
                      "boost", "verify"});
  return doc;
}

emwave::PhysicalConstants constants_for(const std::string &units) {
  if (units == "natural") return emwave::natural_units();
  if (units == "si") return emwave::si_units();
  throw ConfigError("units must be 'natural' or 'si'");
}

std::ostream &open_out(std::ofstream &file, const std::string &out_path) {
  if (out_path.empty()) return std::cout;
  file.open(out_path);
  if (!file) throw ConfigError("cannot open output file '" + out_path + "'");
  return file;
}

json residual_report(const emwave::MaxwellResidual &r,
                     const emwave::SpacetimeGrid &g) {
  return json{{"gauss_E", r.gauss_E},
              {"gauss_B", r.gauss_B},
              {"faraday", r.faraday},
              {"ampere", r.ampere},
              {"grid",
               {{"h", g.h}, {"dt", g.dt}, {"n", g.n}, {"nt", g.nt}}}};
}

// ---------------------------------------------------------------- zeros ----

int run_zeros(int l, std::size_t count, double r0, std::ostream &os) {
  const emwave::ZeroTable t = emwave::bessel_zeros(l, r0, count);
  os << "l,n,k,residual\n";
  for (std::size_t n = 0; n < count; ++n)
    os << l << ',' << (n + 1) << ',' << format_double(t.zeros[n]) << ','
       << format_double(t.residual[n]) << '\n';
  return 0;
}

// ---------------------------------------------------------------- modes ----

int run_modes(const std::string &in_path,
              const emwave::PhysicalConstants &consts, std::ostream &os) {
  std::ifstream in(in_path);
  if (!in) throw ConfigError("modes: cannot open '" + in_path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception &e) {
    throw ConfigError(std::string("modes: parse failure: ") + e.what());
  }
  const auto modes = emwave::modes_from_json(doc);
  auto [trans, longi] = emwave::split_transverse(modes);
  json report = json::array();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    json entry;
    entry["omega"] = modes[i].omega(consts);
    entry["transverse"] = modes[i].is_transverse();
    double longi_norm = 0;
    for (int a = 0; a < 3; ++a) longi_norm += std::norm(longi[i].pol[a]);
    entry["longitudinal_pol_norm"] = std::sqrt(longi_norm);
    if (trans[i].is_transverse() && emwave::norm(trans[i].pol) > 0) {
      const emwave::PlaneWaveMode b = emwave::induced_B(trans[i], consts);
      entry["induced_B_pol_re"] = {b.pol[0].real(), b.pol[1].real(),
                                   b.pol[2].real()};
      entry["induced_B_pol_im"] = {b.pol[0].imag(), b.pol[1].imag(),
                                   b.pol[2].imag()};
    }
    report.push_back(entry);
  }
  os << report.dump(2) << '\n';
  return 0;
}

// ------------------------------------------------------------- spectrum ----

int run_spectrum(double Q, const std::vector<int> &l0_set, std::size_t n_min,
                 std::size_t n_max, double r0,
                 const emwave::PhysicalConstants &consts, bool plot_data,
                 std::ostream &os) {
  const emwave::WCoefficients W = [&] {
    int l_max = 1;
    for (int l : l0_set) l_max = std::max(l_max, l);
    emwave::WCoefficients w = emwave::parametric_w(1, 4.0 * std::numbers::pi);
    w.l_max = l_max;
    w.beta.assign(std::size_t(l_max) + 1, 4.0 * std::numbers::pi);
    return w;
  }();
  const emwave::EnergySpectrum spec =
      emwave::build_spectrum(Q, l0_set, n_min, n_max, r0, consts, W);
  if (plot_data) {
    for (const auto &row : spec.rows)
      os << row.m_label << ' ' << format_double(row.mean_energy) << '\n';
    return 0;
  }
  os << "l0,n,m,k0,mean_energy\n";
  for (const auto &row : spec.rows)
    os << row.l0 << ',' << row.n << ',' << row.m_label << ','
       << format_double(row.k0) << ',' << format_double(row.mean_energy)
       << '\n';
  for (int l0 : l0_set) {
    if (l0 == 1) continue; // ionisation lattice has no spectrum
    const emwave::BalmerTable t =
        emwave::balmer_differences(Q, l0, r0, consts, W, n_min, n_max);
    os << "# differences l0=" << l0 << "\n";
    os << "n0,n1,m0,m1,dU_exact,dU_model,rel_dev_vs_scale\n";
    for (const auto &row : t.rows)
      os << row.n0 << ',' << row.n1 << ',' << row.m0 << ',' << row.m1 << ','
         << format_double(row.dU_exact) << ',' << format_double(row.dU_model)
         << ',' << format_double(row.rel_dev_vs_scale) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------ jefimenko ----

int run_jefimenko(double sigma, double q, double L, std::size_t n,
                  double eval_extent, std::size_t eval_n, double eval_dt,
                  const emwave::PhysicalConstants &consts,
                  const std::string &units, const std::string &out_prefix,
                  std::ostream &os) {
  // the history constructor insists the source has decayed at the support
  // boundary; for a Gaussian that needs roughly extent >= 5.5 sigma
  if (L < 5.5 * sigma)
    throw ConfigError("jefimenko: --extent must be at least 5.5 * --sigma so "
                      "the Gaussian has decayed at the grid boundary");
  // static Gaussian ball source with enough history for every retarded time
  const double h = 2.0 * L / double(n - 1);
  const double reach =
      (std::sqrt(3.0) * (L + eval_extent)) / consts.c + 1.0;
  // last history frame sits past the latest eval time so every retarded
  // lookup is covered (the source is static, so frame placement is free)
  const emwave::SpacetimeGrid sg(emwave::Vec3{-L, -L, -L}, {n, n, n}, h,
                                 reach, 3, eval_dt - 2.0 * reach);
  const double amp = q / (std::pow(2.0 * std::numbers::pi, 1.5) * sigma *
                          sigma * sigma);
  emwave::ScalarField rho =
      emwave::sample_scalar(sg, [&](double, const emwave::Vec3 &x) {
        return emwave::cplx(amp * std::exp(-emwave::dot(x, x) / (2.0 * sigma * sigma)));
      });
  emwave::VectorField3 J(sg);
  const emwave::SourceHistory src(std::move(rho), std::move(J), L);

  const double he = 2.0 * eval_extent / double(eval_n - 1);
  const emwave::SpacetimeGrid eg(
      emwave::Vec3{-eval_extent, -eval_extent, -eval_extent},
      {eval_n, eval_n, eval_n}, he, eval_dt, 3, -eval_dt);
  const emwave::VectorField3 E = emwave::jefimenko_E(src, eg, consts);
  const emwave::VectorField3 B = emwave::jefimenko_B(src, eg, consts);
  const emwave::ScalarField rho_e =
      emwave::sample_scalar(eg, [&](double, const emwave::Vec3 &x) {
        return emwave::cplx(amp * std::exp(-emwave::dot(x, x) / (2.0 * sigma * sigma)));
      });
  const emwave::VectorField3 J_e(eg);
  if (!out_prefix.empty()) {
    emwave::save_vector_field(out_prefix + ".E", E, units);
    emwave::save_vector_field(out_prefix + ".B", B, units);
  }
  os << residual_report(emwave::maxwell_residual(E, B, rho_e, J_e, consts),
                        eg)
            .dump(2)
     << '\n';
  return 0;
}

// ---------------------------------------------------------------- boost ----

int run_boost(const std::vector<double> &beta, const std::string &rho_path,
              const std::string &j_path, const std::string &out_prefix,
              const std::string &units,
              const emwave::PhysicalConstants &consts, std::ostream &os) {
  if (beta.size() != 3)
    throw ConfigError("boost: --velocity needs exactly three components");
  const emwave::BoostParams b(
      emwave::Vec3{beta[0] * consts.c, beta[1] * consts.c,
                   beta[2] * consts.c},
      consts);
  const emwave::ScalarField rho = emwave::load_scalar_field(rho_path);
  const emwave::VectorField3 J = emwave::load_vector_field(j_path);
  const auto [rhoP, JP] = emwave::boost_source(rho, J, b, consts);
  if (!out_prefix.empty()) {
    emwave::save_scalar_field(out_prefix + ".rho", rhoP, units);
    emwave::save_vector_field(out_prefix + ".J", JP, units);
  }
  const auto r = emwave::boosted_curl_identity(rho, J, b, consts);
  os << json{{"identity_residual", r.residual},
             {"curl_prime_max", r.curl_prime_max},
             {"gamma", b.gamma(consts)}}
            .dump(2)
     << '\n';
  return 0;
}

// --------------------------------------------------------------- verify ----

int run_verify(const std::string &e_path, const std::string &b_path,
               const std::string &rho_path, const std::string &j_path,
               const emwave::PhysicalConstants &consts, std::ostream &os) {
  const emwave::VectorField3 E = emwave::load_vector_field(e_path);
  const emwave::VectorField3 B = emwave::load_vector_field(b_path);
  const emwave::ScalarField rho = rho_path.empty()
                                      ? emwave::ScalarField(E.grid)
                                      : emwave::load_scalar_field(rho_path);
  const emwave::VectorField3 J = j_path.empty()
                                     ? emwave::VectorField3(E.grid)
                                     : emwave::load_vector_field(j_path);
  os << residual_report(emwave::maxwell_residual(E, B, rho, J, consts),
                        E.grid)
            .dump(2)
     << '\n';
  return 0;
}

// ------------------------------------------------------------- selftest ----

int run_selftest(std::ostream &os) {
  const auto results = emwave::selftest::run_all();
  int failures = 0;
  for (const auto &r : results) {
    os << '[' << (r.pass ? "PASS" : "FAIL") << "] criterion " << r.id << ": "
       << r.name << " — " << r.detail << '\n';
    os.flush();
    if (!r.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

// helper: pull a scalar config value if present and the flag was not given
template <typename T>
void config_default(const CLI::Option *opt, const json &section,
                    const char *key, T &target) {
  if (opt->count() > 0) return; // flags win
  if (section.contains(key)) target = section.at(key).get<T>();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"numerical electromagnetics toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string units = "natural";
  std::string out_path;
  int threads = 0;
  app.add_option("--config", config_path,
                 "JSON config file (default: $EMWAVE_CONFIG)");
  auto *units_opt =
      app.add_option("--units", units, "unit system: natural | si");
  app.add_option("--out", out_path, "write output here instead of stdout");
  app.add_option("--threads", threads, "worker thread cap (0 = default)");

  // zeros
  auto *zeros = app.add_subcommand("zeros", "zero table of j_l as CSV");
  int z_l = 0;
  std::size_t z_count = 5;
  double z_r0 = 1.0;
  auto *z_l_opt = zeros->add_option("--l", z_l, "angular order");
  auto *z_count_opt = zeros->add_option("--count", z_count, "zero count");
  auto *z_r0_opt = zeros->add_option("--r0", z_r0, "cavity radius");

  // modes
  auto *modes = app.add_subcommand("modes", "inspect plane-wave modes (JSON)");
  std::string m_in;
  auto *m_in_opt =
      modes->add_option("--in", m_in, "mode list JSON file")->required(false);

  // spectrum
  auto *spectrum =
      app.add_subcommand("spectrum", "cavity energy spectrum as CSV");
  double s_Q = 1.0, s_r0 = 1.0;
  std::vector<int> s_l0{0};
  std::size_t s_nmin = 1, s_nmax = 10;
  bool s_plot = false;
  auto *s_Q_opt = spectrum->add_option("--Q", s_Q, "total charge");
  auto *s_r0_opt = spectrum->add_option("--r0", s_r0, "cavity radius");
  auto *s_l0_opt =
      spectrum->add_option("--l0", s_l0, "harmonic orders (repeatable)");
  auto *s_nmin_opt = spectrum->add_option("--n-min", s_nmin, "first zero");
  auto *s_nmax_opt = spectrum->add_option("--n-max", s_nmax, "last zero");
  spectrum->add_flag("--plot-data", s_plot, "emit (m, <U>) pairs only");

  // jefimenko
  auto *jef = app.add_subcommand(
      "jefimenko", "synthesize fields of a static Gaussian ball");
  double j_sigma = 0.5, j_q = 1.0, j_L = 3.0, j_ext = 1.0, j_dt = 0.1;
  std::size_t j_n = 32, j_en = 5;
  auto *j_sigma_opt = jef->add_option("--sigma", j_sigma, "source width");
  auto *j_q_opt = jef->add_option("--q", j_q, "total charge");
  auto *j_L_opt = jef->add_option("--extent", j_L, "source half-extent");
  auto *j_n_opt = jef->add_option("--n", j_n, "source nodes per axis");
  auto *j_en_opt = jef->add_option("--eval-n", j_en, "eval nodes per axis");
  auto *j_ext_opt =
      jef->add_option("--eval-extent", j_ext, "eval half-extent");
  auto *j_dt_opt = jef->add_option("--eval-dt", j_dt, "eval frame spacing");
  std::string j_prefix;
  jef->add_option("--fields-out", j_prefix,
                  "write <prefix>.E and <prefix>.B field files");

  // boost
  auto *boost = app.add_subcommand("boost", "Lorentz-boost a source pair");
  std::vector<double> b_v;
  std::string b_rho, b_j, b_prefix;
  boost->add_option("--velocity", b_v,
                    "boost velocity as fractions of c (3 components)")
      ->expected(3);
  boost->add_option("--rho", b_rho, "charge density field file")->required();
  boost->add_option("--j", b_j, "current density field file")->required();
  boost->add_option("--fields-out", b_prefix,
                    "write <prefix>.rho and <prefix>.J");

  // verify
  auto *verify = app.add_subcommand("verify", "Maxwell residual report");
  std::string v_e, v_b, v_rho, v_j;
  verify->add_option("--e", v_e, "E field file")->required();
  verify->add_option("--b", v_b, "B field file")->required();
  verify->add_option("--rho", v_rho, "charge density field file");
  verify->add_option("--j", v_j, "current density field file");

  // selftest
  auto *selftest =
      app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    const json cfg = load_config(config_path);
    if (units_opt->count() == 0 && cfg.contains("units"))
      units = cfg.at("units").get<std::string>();
    const emwave::PhysicalConstants consts = constants_for(units);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    std::ofstream out_file;
    std::ostream &os = open_out(out_file, out_path);

    if (*zeros) {
      const json sec = cfg.value("zeros", json::object());
      require_known_keys(sec, "zeros", {"l", "count", "r0"});
      config_default(z_l_opt, sec, "l", z_l);
      config_default(z_count_opt, sec, "count", z_count);
      config_default(z_r0_opt, sec, "r0", z_r0);
      return run_zeros(z_l, z_count, z_r0, os);
    }
    if (*modes) {
      const json sec = cfg.value("modes", json::object());
      require_known_keys(sec, "modes", {"in"});
      config_default(m_in_opt, sec, "in", m_in);
      if (m_in.empty()) throw ConfigError("modes: --in is required");
      return run_modes(m_in, consts, os);
    }
    if (*spectrum) {
      const json sec = cfg.value("spectrum", json::object());
      require_known_keys(sec, "spectrum",
                         {"Q", "r0", "l0", "n_min", "n_max"});
      config_default(s_Q_opt, sec, "Q", s_Q);
      config_default(s_r0_opt, sec, "r0", s_r0);
      config_default(s_l0_opt, sec, "l0", s_l0);
      config_default(s_nmin_opt, sec, "n_min", s_nmin);
      config_default(s_nmax_opt, sec, "n_max", s_nmax);
      return run_spectrum(s_Q, s_l0, s_nmin, s_nmax, s_r0, consts, s_plot,
                          os);
    }
    if (*jef) {
      const json sec = cfg.value("jefimenko", json::object());
      require_known_keys(sec, "jefimenko",
                         {"sigma", "q", "extent", "n", "eval_n",
                          "eval_extent", "eval_dt"});
      config_default(j_sigma_opt, sec, "sigma", j_sigma);
      config_default(j_q_opt, sec, "q", j_q);
      config_default(j_L_opt, sec, "extent", j_L);
      config_default(j_n_opt, sec, "n", j_n);
      config_default(j_en_opt, sec, "eval_n", j_en);
      config_default(j_ext_opt, sec, "eval_extent", j_ext);
      config_default(j_dt_opt, sec, "eval_dt", j_dt);
      return run_jefimenko(j_sigma, j_q, j_L, j_n, j_ext, j_en, j_dt, consts,
                           units, j_prefix, os);
    }
    if (*boost)
      return run_boost(b_v, b_rho, b_j, b_prefix, units, consts, os);
    if (*verify) return run_verify(v_e, v_b, v_rho, v_j, consts, os);
    if (*selftest) return run_selftest(os);
    throw ConfigError("no subcommand selected");
  } catch (const ConfigError &e) {
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump()
              << '\n';
    return kExitConfig;
  } catch (const emwave::NumericalError &e) {
    std::cerr << json{{"error", "numerical"}, {"message", e.what()}}.dump()
              << '\n';
    return kExitNumerical;
  } catch (const std::exception &e) {
    std::cerr << json{{"error", "precondition"}, {"message", e.what()}}.dump()
              << '\n';
    return kExitPrecondition;
  }
}
