// stabgeo: batch CLI over the stable-geometry library.
//
// Exit codes: 0 success, 1 verification failure, 2 bad command line,
// 3 model config failure, 4 numerical failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabgeo/config.hpp"
#include "stabgeo/dependence.hpp"
#include "stabgeo/geometry.hpp"
#include "stabgeo/moments.hpp"
#include "stabgeo/onesided.hpp"
#include "stabgeo/report.hpp"
#include "stabgeo/rng.hpp"
#include "stabgeo/simulate.hpp"
#include "stabgeo/specialfn.hpp"

using namespace stabgeo;
using nlohmann::json;

namespace {

Vec parse_vec(const std::string& s) {
  Vec v;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',' || c == ';') {
      if (!cur.empty()) v.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return v;
}

struct Output {
  bool json_format = false;
  std::vector<Report> reports;

  void add(Report r) { reports.push_back(std::move(r)); }
  void flush() const {
    if (json_format) {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      std::cout << arr.dump(2) << "\n";
    } else {
      for (const auto& r : reports) std::cout << to_text(r);
    }
  }
};

// key=value,key=value parameter bag for `moment --params`.
std::map<std::string, std::string> parse_params(const std::string& s) {
  std::map<std::string, std::string> out;
  std::string cur;
  auto commit = [&]() {
    if (cur.empty()) return;
    auto eq = cur.find('=');
    if (eq == std::string::npos) throw InvalidArgument("params entries must look like key=value");
    out[cur.substr(0, eq)] = cur.substr(eq + 1);
    cur.clear();
  };
  for (char c : s + ",") {
    if (c == ',') {
      commit();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

Vec parse_colon_vec(const std::string& s) {
  Vec v;
  std::string cur;
  for (char c : s + ":") {
    if (c == ':') {
      if (!cur.empty()) v.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return v;
}

struct VerifyStats {
  int passed = 0, failed = 0;
};

void verify_line(Output& out, VerifyStats& st, const std::string& name, double formula,
                 const McEstimate& mc, double zmax = 3.0) {
  double z = mc.se > 0 ? (mc.mean - formula) / mc.se : 0.0;
  bool ok = std::fabs(z) < zmax;
  Report r;
  r.operation = std::string(ok ? "PASS " : "FAIL ") + name;
  r.value = formula;
  r.error = 0;
  r.mc = McBlock{mc.mean, mc.se, z, mc.n};
  out.add(std::move(r));
  (ok ? st.passed : st.failed)++;
}

void verify_bound(Output& out, VerifyStats& st, const std::string& name, double lhs, double bound) {
  bool ok = lhs <= bound;
  Report r;
  r.operation = std::string(ok ? "PASS " : "FAIL ") + name;
  r.inputs = json{{"lhs", lhs}, {"bound", bound}};
  r.value = lhs;
  out.add(std::move(r));
  (ok ? st.passed : st.failed)++;
}

int run_verify(const ModelConfig& cfg, const std::string& suite, std::size_t n,
               std::uint64_t seed, Output& out) {
  if (cfg.p.has_value() && std::isinf(*cfg.p))
    throw InvalidArgument("verify: max-stable configs have no Monte Carlo suite");
  const StableModel& m = cfg.model;
  VerifyStats st;
  SphereRule rule = config_sphere_rule(cfg);

  if (m.kind == Kind::Symmetric && (suite == "all" || suite == "moments")) {
    SampleBatch b = sample_vector(m, n, seed);
    double mass = spectral_mass(m, rule);
    for (double frac : {-0.4, 0.3}) {
      double lam = frac * (frac > 0 ? m.alpha : 1.0);
      Estimate f = norm_moment(m, lam, rule);
      verify_line(out, st, "norm-moment lambda=" + format_number(lam), f.value,
                  mc_norm_moment(b, lam, m.alpha, mass));
    }
    {
      Vec u(m.dim, 1.0);
      double lam = 0.3 * m.alpha;
      double f = scalar_moment(m, u, lam);
      verify_line(out, st, "scalar-moment lambda=" + format_number(lam), f,
                  mc_scalar_moment(b, u, lam, m.alpha, gauge(m, u)));
    }
    {
      // characteristic function at three directions, 4/sqrt(n) policy
      CounterRng rng(2718u);
      for (int k = 0; k < 3; ++k) {
        Vec u(m.dim);
        for (int i = 0; i < m.dim; ++i) u[i] = rng.normal(2 * (k * m.dim + i));
        double target = charfun(m, u);
        auto mc = mc_functional(b, [&](const double* r) {
          double t = 0;
          for (int i = 0; i < m.dim; ++i) t += r[i] * u[i];
          return std::cos(t);
        });
        double bound = 4.0 / std::sqrt(static_cast<double>(n));
        verify_bound(out, st, "charfun dir " + std::to_string(k),
                     std::fabs(mc.mean - target), bound);
      }
    }
    if (m.dim == 2) {
      double f = sign_moment_2d(m, 4096);
      auto mc = mc_functional(b, [](const double* r) {
        double s = r[0] * r[1];
        return s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0);
      });
      verify_line(out, st, "sign-moment", f, mc);
      double p = orthant_probability_2d(m, Matrix::identity(2), 4096);
      auto mcq = mc_functional(b, [](const double* r) {
        return (r[0] >= 0 && r[1] >= 0) ? 1.0 : 0.0;
      });
      verify_line(out, st, "orthant-probability", p, mcq);
    }
  }

  if (m.kind == Kind::Symmetric && m.alpha > 1.0 && (suite == "all" || suite == "dependence")) {
    SampleBatch b = sample_vector(m, n, seed ^ 0x9e37u);
    if (m.dim == 2) {
      double slope = regression_coefficient(m);
      // blockwise ratio estimator of the conditional-mean slope
      const int blocks = 32;
      std::vector<double> ratios(blocks);
      std::size_t bs = b.n / blocks;
      for (int blk = 0; blk < blocks; ++blk) {
        double num = 0, den = 0;
        for (std::size_t i = blk * bs; i < (blk + 1) * bs; ++i) {
          double x2 = b.row(i)[1];
          num += b.row(i)[0] * (x2 > 0 ? 1.0 : -1.0);
          den += std::fabs(x2);
        }
        ratios[blk] = num / den;
      }
      double mean = 0;
      for (double r : ratios) mean += r;
      mean /= blocks;
      double var = 0;
      for (double r : ratios) var += (r - mean) * (r - mean);
      var /= (blocks - 1);
      McEstimate est{mean, std::sqrt(var / blocks), b.n};
      verify_line(out, st, "regression-slope", slope, est);

      // covariation ratio identity: E(x1 x2^<p-1>)/E|x2|^p equals the
      // covariation ratio
      double p = 1.0 + (m.alpha - 1.0) / 2.0;
      double ratio = covariation(m, {1, 0}, {0, 1}) / covariation(m, {0, 1}, {0, 1});
      auto num = mc_functional_mom(b, [&](const double* r) {
        return r[0] * signed_pow(r[1], p - 1.0);
      });
      auto den = mc_functional_mom(b, [&](const double* r) {
        return std::pow(std::fabs(r[1]), p);
      });
      double est_ratio = num.mean / den.mean;
      double se = std::fabs(est_ratio) *
                  std::sqrt(std::pow(num.se / num.mean, 2) + std::pow(den.se / den.mean, 2));
      if (se == 0) se = num.se;
      verify_line(out, st, "covariation-ratio", ratio, McEstimate{est_ratio, se, b.n});
    }
  }

  if (m.kind == Kind::OneSided && (suite == "all" || suite == "onesided")) {
    SampleBatch b = sample_onesided(m, n, seed);
    Vec u(m.dim, 0.9);
    double target = laplace(m, u);
    auto mc = mc_functional(b, [&](const double* r) {
      double t = 0;
      for (int i = 0; i < m.dim; ++i) t += r[i] * u[i];
      return std::exp(-t);
    });
    verify_line(out, st, "laplace", target, mc);
    double beta = 0.3 * m.alpha;
    double f = onesided_moment_pos(m, u, beta);
    auto mcp = mc_functional(b, [&](const double* r) {
      double t = 0;
      for (int i = 0; i < m.dim; ++i) t += r[i] * u[i];
      return std::pow(t, beta);
    });
    verify_line(out, st, "onesided-moment-pos", f, mcp);
  }

  Report summary;
  summary.operation = "verify " + suite;
  summary.inputs = json{{"passed", st.passed}, {"failed", st.failed}, {"n", n}, {"seed", seed}};
  summary.value = st.failed == 0 ? 0 : 1;
  out.add(std::move(summary));
  return st.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabgeo: geometric calculus of multivariate stable laws"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_format = false;
  std::string format = "text";
  app.add_option("--format", format, "report format: text | json");
  app.add_flag("--json", json_format, "shorthand for --format json");
  int sphere_level = 0;
  app.add_option("--sphere-level", sphere_level, "override spherical quadrature level");

  std::string model_path, u_str, u1_str, u2_str, x_str, out_path, samples_path, kind_str,
      params_str, mu_str, suite = "all", split_str, sense_str = "min";
  double tval = 0, rval = 0, lambda_val = 0.5, alpha_opt = 0;
  std::size_t nsamples = 1000000;
  std::uint64_t seed_opt = 7;
  int axis = 0, bins = 0;
  bool strong = false;

  auto add_model_arg = [&](CLI::App* sub) {
    sub->add_option("model", model_path, "model config file (JSON)")->required();
  };

  CLI::App* c_validate = app.add_subcommand("validate", "run model diagnostics");
  add_model_arg(c_validate);

  CLI::App* c_gauge = app.add_subcommand("gauge", "evaluate the gauge ||u||_F");
  add_model_arg(c_gauge);
  c_gauge->add_option("--u", u_str, "direction, comma separated")->required();

  CLI::App* c_volume = app.add_subcommand("volume", "volume of the associated star body");
  add_model_arg(c_volume);

  CLI::App* c_density = app.add_subcommand("density", "density by Fourier inversion (d <= 3)");
  add_model_arg(c_density);
  c_density->add_option("--x", x_str, "evaluation point")->required();

  CLI::App* c_moment = app.add_subcommand("moment", "closed-form moments");
  add_model_arg(c_moment);
  std::string moment_kind = "norm";
  c_moment->add_option("--kind", moment_kind, "norm|scalar|mixed|signed|sign|orthant|onesided")
      ->required();
  c_moment->add_option("--params", params_str, "key=value list, vectors colon separated");

  CLI::App* c_cov = app.add_subcommand("covariation", "covariation of <xi,u1> on <xi,u2>");
  add_model_arg(c_cov);
  c_cov->add_option("--u1", u1_str)->required();
  c_cov->add_option("--u2", u2_str)->required();

  CLI::App* c_regress = app.add_subcommand("regress", "regression slope / linearity check");
  add_model_arg(c_regress);
  c_regress->add_option("--axis", axis, "pinned axis for the d >= 3 linearity check");

  CLI::App* c_james = app.add_subcommand("james", "James orthogonality tests");
  add_model_arg(c_james);
  c_james->add_flag("--strong", strong, "strong orthogonality of a block split");
  c_james->add_option("--split", split_str, "d1,d2 block sizes for --strong");

  CLI::App* c_onesided = app.add_subcommand("onesided", "one-sided laplace / cdf / moment");
  std::string os_op = "laplace";
  c_onesided->add_option("op", os_op, "laplace|cdf|moment")->required();
  add_model_arg(c_onesided);
  c_onesided->add_option("--u", u_str, "direction, comma separated")->required();
  double os_beta = 0, os_lambda = std::nan("");
  c_onesided->add_option("--beta", os_beta, "positive moment order");
  c_onesided->add_option("--lambda", os_lambda, "negative moment order parameter");

  CLI::App* c_sim = app.add_subcommand("simulate", "draw seeded samples to CSV");
  add_model_arg(c_sim);
  c_sim->add_option("-n,--n", nsamples, "number of draws");
  c_sim->add_option("--seed", seed_opt, "64-bit seed");
  c_sim->add_option("-o,--out", out_path, "output CSV")->required();

  CLI::App* c_est = app.add_subcommand("estimate", "tail estimate of the spectral measure");
  c_est->add_option("--samples", samples_path, "input CSV")->required();
  c_est->add_option("-t,--threshold", tval, "norm threshold")->required();
  c_est->add_option("-o,--out", out_path, "output model config");
  c_est->add_option("--alpha", alpha_opt, "exponent when the CSV has no header");
  c_est->add_option("--kind", kind_str, "symmetric|one-sided when the CSV has no header");
  c_est->add_option("--bins", bins, "optional angular bins (d = 2)");

  CLI::App* c_port = app.add_subcommand("portfolio", "extremal portfolio direction");
  add_model_arg(c_port);
  c_port->add_option("--mu", mu_str, "expected returns")->required();
  c_port->add_option("-r,--r", rval, "target return")->required();
  c_port->add_option("--lambda", lambda_val, "moment order in (0, alpha)");
  c_port->add_option("--sense", sense_str, "min|max");

  CLI::App* c_verify = app.add_subcommand("verify", "formula vs Monte Carlo suite");
  add_model_arg(c_verify);
  c_verify->add_option("--suite", suite, "all|moments|dependence|onesided");
  c_verify->add_option("-n,--n", nsamples, "Monte Carlo sample count");
  c_verify->add_option("--seed", seed_opt, "64-bit seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (format != "text" && format != "json") {
    std::cerr << "unknown --format value: " << format << "\n";
    return 2;
  }
  Output out;
  out.json_format = json_format || format == "json";

  try {
    auto load = [&](void) {
      ModelConfig cfg = load_model_config(model_path);
      if (sphere_level > 0) cfg.sphere_level = sphere_level;
      return cfg;
    };

    if (c_validate->parsed()) {
      ModelConfig cfg = load();
      Diagnostics d = validate_model(cfg.model);
      Report r;
      r.operation = "validate";
      r.inputs = json{{"model", model_path}};
      r.value = d.ok() ? 0 : 1;
      json notes = json::array();
      for (auto& nmsg : d.notes) notes.push_back(nmsg);
      json errors = json::array();
      for (auto& e : d.errors) errors.push_back(e);
      r.inputs["errors"] = errors;
      r.inputs["notes"] = notes;
      out.add(std::move(r));
    } else if (c_gauge->parsed()) {
      ModelConfig cfg = load();
      Vec u = parse_vec(u_str);
      Report r;
      r.operation = "gauge";
      r.inputs = json{{"u", u}};
      r.value = gauge(cfg.model, u);
      r.formula = "spectral-gauge";
      out.add(std::move(r));
    } else if (c_volume->parsed()) {
      ModelConfig cfg = load();
      Estimate v = volume(cfg.model, config_sphere_rule(cfg));
      out.add(Report{"volume", json{{"model", model_path}}, v.value, v.error, {},
                     "polar-volume"});
    } else if (c_density->parsed()) {
      ModelConfig cfg = load();
      Vec x = parse_vec(x_str);
      Estimate v = density(cfg.model, x, config_sphere_rule(cfg), cfg.radial_level);
      out.add(Report{"density", json{{"x", x}}, v.value, v.error, {}, "fourier-inversion"});
    } else if (c_moment->parsed()) {
      ModelConfig cfg = load();
      auto params = parse_params(params_str);
      SphereRule rule = config_sphere_rule(cfg);
      Report r;
      if (moment_kind == "norm") {
        double lam = std::stod(params.at("lambda"));
        Estimate v = norm_moment(cfg.model, lam, rule);
        r = Report{"moment norm", json{{"lambda", lam}}, v.value, v.error, {}, "norm-moment"};
      } else if (moment_kind == "scalar") {
        double lam = std::stod(params.at("lambda"));
        Vec u = parse_colon_vec(params.at("u"));
        double v = scalar_moment(cfg.model, u, lam);
        r = Report{"moment scalar", json{{"lambda", lam}, {"u", u}}, v, 0, {}, "scalar-moment"};
      } else if (moment_kind == "mixed") {
        double l1 = std::stod(params.at("l1")), l2 = std::stod(params.at("l2"));
        Estimate v = mixed_abs_moment_2d(cfg.model, l1, l2);
        r = Report{"moment mixed", json{{"l1", l1}, {"l2", l2}}, v.value, v.error, {},
                   "mixed-abs-moment"};
      } else if (moment_kind == "signed") {
        double l1 = std::stod(params.at("l1")), l2 = std::stod(params.at("l2"));
        Estimate v = signed_mixed_moment_2d(cfg.model, l1, l2);
        r = Report{"moment signed", json{{"l1", l1}, {"l2", l2}}, v.value, v.error, {},
                   "signed-mixed-moment"};
      } else if (moment_kind == "sign") {
        double v = sign_moment_2d(cfg.model);
        r = Report{"moment sign", {}, v, 0, {}, "sign-moment"};
      } else if (moment_kind == "orthant") {
        Matrix A = Matrix::identity(cfg.model.dim);
        if (params.count("A")) {
          Vec flat = parse_colon_vec(params.at("A"));
          int d = static_cast<int>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
          if (d * d != static_cast<int>(flat.size()))
            throw InvalidArgument("A needs d*d colon-separated entries");
          A = Matrix(d, d);
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) A(i, j) = flat[i * d + j];
        }
        double v = orthant_probability_2d(cfg.model, A);
        r = Report{"moment orthant", {}, v, 0, {}, "orthant-probability"};
      } else if (moment_kind == "onesided") {
        Vec u = parse_colon_vec(params.at("u"));
        double beta = std::stod(params.at("beta"));
        double v = onesided_moment_pos(cfg.model, u, beta);
        r = Report{"moment onesided", json{{"beta", beta}, {"u", u}}, v, 0, {},
                   "onesided-moment"};
      } else {
        throw InvalidArgument("unknown moment kind: " + moment_kind);
      }
      out.add(std::move(r));
    } else if (c_cov->parsed()) {
      ModelConfig cfg = load();
      Vec u1 = parse_vec(u1_str), u2 = parse_vec(u2_str);
      double v = covariation(cfg.model, u1, u2);
      out.add(Report{"covariation", json{{"u1", u1}, {"u2", u2}}, v, 0, {}, "covariation"});
    } else if (c_regress->parsed()) {
      ModelConfig cfg = load();
      if (cfg.model.dim == 2) {
        double v = regression_coefficient(cfg.model);
        out.add(Report{"regress", {}, v, 0, {}, "regression-slope"});
      } else {
        LinearityResult lr = regression_linearity_check(cfg.model, axis);
        Report r{"regress linearity", json{{"axis", axis}, {"a", lr.a}},
                 lr.is_linear ? 1.0 : 0.0, lr.residual, {}, "regression-linearity"};
        out.add(std::move(r));
      }
    } else if (c_james->parsed()) {
      ModelConfig cfg = load();
      if (strong) {
        Vec sp = parse_vec(split_str);
        if (sp.size() != 2) throw InvalidArgument("--split needs d1,d2");
        StrongJamesResult r = strong_james_check(cfg.model, static_cast<int>(sp[0]),
                                                 static_cast<int>(sp[1]));
        out.add(Report{"james strong", json{{"strong", r.strong}, {"weak", r.weak}},
                       r.strong ? 1.0 : 0.0, 0, {}, "strong-james"});
      } else {
        JamesResult r = james_orthogonal_bivariate(cfg.model);
        out.add(Report{"james", json{{"covariation", r.covariation}},
                       r.orthogonal ? 1.0 : 0.0, r.margin, {}, "james-strip"});
      }
    } else if (c_onesided->parsed()) {
      ModelConfig cfg = load();
      Vec u = parse_vec(u_str);
      if (os_op == "laplace") {
        double v = cfg.p.has_value() && !std::isinf(*cfg.p)
                       ? psum_character_expectation(psum_from_core(*cfg.p, cfg.model), u)
                       : laplace(cfg.model, u);
        out.add(Report{"onesided laplace", json{{"u", u}}, v, 0, {}, "laplace-transform"});
      } else if (os_op == "cdf") {
        if (!cfg.p.has_value() || !std::isinf(*cfg.p))
          throw InvalidArgument("cdf is the max-stable character: needs kind p-sum with p = inf");
        std::vector<L1pAtom> atoms;
        for (std::size_t j = 0; j < cfg.model.atoms().directions.size(); ++j)
          atoms.push_back({cfg.model.atoms().directions[j], cfg.model.atoms().weights[j]});
        double v = maxstable_cdf(atoms, u);
        out.add(Report{"onesided cdf", json{{"u", u}}, v, 0, {}, "max-stable-cdf"});
      } else if (os_op == "moment") {
        double v = std::isnan(os_lambda) ? onesided_moment_pos(cfg.model, u, os_beta)
                                         : onesided_moment_neg(cfg.model, u, os_lambda);
        out.add(Report{"onesided moment", json{{"u", u}}, v, 0, {}, "onesided-moment"});
      } else {
        throw InvalidArgument("unknown onesided op: " + os_op);
      }
    } else if (c_sim->parsed()) {
      ModelConfig cfg = load();
      if (cfg.p.has_value() && std::isinf(*cfg.p))
        throw InvalidArgument("simulate: no sampler for max-stable configs");
      SampleBatch b = sample_vector(cfg.model, nsamples, seed_opt);
      double alpha_out = cfg.model.alpha;
      if (cfg.p.has_value()) {
        // p-sum laws: the config stores the core of xi^p; xi = core^{1/p}.
        for (auto& v : b.data) v = std::pow(v, 1.0 / *cfg.p);
        alpha_out = cfg.model.alpha * *cfg.p;
      }
      write_samples_csv(out_path, b, alpha_out, cfg.model.kind);
      out.add(Report{"simulate",
                     json{{"n", nsamples}, {"seed", seed_opt}, {"out", out_path},
                          {"fingerprint", b.fingerprint}},
                     static_cast<double>(nsamples), 0, {}, ""});
    } else if (c_est->parsed()) {
      CsvSamples csv = read_samples_csv(samples_path);
      double alpha = csv.has_header ? csv.alpha : alpha_opt;
      Kind kind = csv.has_header ? csv.kind
                                 : (kind_str == "one-sided" ? Kind::OneSided : Kind::Symmetric);
      TailEstimateOptions opts;
      opts.kind = kind;
      opts.angular_bins = bins;
      SpectralMeasure est = estimate_spectral_from_samples(csv.rows, tval, opts);
      ModelConfig outcfg;
      outcfg.model.alpha = alpha;
      outcfg.model.kind = kind;
      outcfg.model.dim = static_cast<int>(csv.rows.front().size());
      outcfg.model.spectral = std::get<DiscreteAtoms>(est);
      if (!out_path.empty()) {
        if (!(alpha > 0)) throw InvalidArgument("estimate: alpha unknown (no header, no --alpha)");
        save_model_config(out_path, outcfg);
      }
      out.add(Report{"estimate",
                     json{{"threshold", tval},
                          {"atoms", std::get<DiscreteAtoms>(outcfg.model.spectral).weights.size()},
                          {"out", out_path}},
                     total_mass(est), 0, {}, "tail-spectral-estimate"});
    } else if (c_port->parsed()) {
      ModelConfig cfg = load();
      Vec mu = parse_vec(mu_str);
      Sense sense = sense_str == "max" ? Sense::Max : Sense::Min;
      PortfolioResult r = portfolio_direction(cfg.model, mu, rval, lambda_val, sense);
      out.add(Report{"portfolio", json{{"u", r.u}, {"stationarity", r.stationarity}},
                     r.gauge_value, 0, {}, "portfolio-direction"});
    } else if (c_verify->parsed()) {
      ModelConfig cfg = load();
      int rc = run_verify(cfg, suite, nsamples, seed_opt, out);
      out.flush();
      return rc;
    }
    out.flush();
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
