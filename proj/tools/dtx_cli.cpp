#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "dtx/dtx.hpp"
#include "dtx/io/report.hpp"
#include "dtx/io/set_syntax.hpp"
#include "dtx/io/spec_file.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInput = 2;

struct Globals {
  std::vector<std::string> dists;
  std::string format = "table";
  std::uint64_t seed = 42;
  std::size_t n = 100000;
};

struct Loaded {
  std::string path;
  dtx::Cdf cdf;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xF];
  }
  return out;
}

class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Loaded> load_all(const Globals& g, dtx::io::RunReport& report) {
  std::vector<Loaded> out;
  for (const auto& path : g.dists) {
    const std::string text = dtx::io::read_file(path);
    report.inputs.push_back({path, sha256_hex(text)});
    try {
      out.push_back({path, dtx::io::parse_distribution(text)});
    } catch (const dtx::io::spec_error& e) {
      throw input_error(path + ": " + e.what());
    } catch (const dtx::error& e) {
      throw input_error(path + ": " + e.what());
    }
  }
  return out;
}

const dtx::Cdf& one(const std::vector<Loaded>& ds, const char* cmd) {
  if (ds.size() != 1) {
    throw input_error(std::string(cmd) + " needs exactly one --dist, got " + std::to_string(ds.size()));
  }
  return ds.front().cdf;
}

nlohmann::ordered_json num(double v) { return dtx::io::detail::number(v); }

dtx::Dependence parse_dependence(const std::string& s) {
  if (s == "independent") return dtx::Dependence::independent;
  if (s == "comonotone") return dtx::Dependence::comonotone;
  return dtx::Dependence::countermonotone;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and sampled checks for distribution functions with atoms and plateaus", "dtx"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--dist", g.dists, "Distribution file (repeatable)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--seed", g.seed, "Seed for every random stream");
  app.add_option("--n", g.n, "Sample size")->check(CLI::PositiveNumber);

  double x = 0.0, alpha = 0.5, lambda = 1.0;
  std::string set_text, suite = "all", dependence = "independent";
  std::vector<double> grid;
  bool with_transform = false;

  auto* eval = app.add_subcommand("eval", "Print F(x), F(x-) and the jump at x");
  eval->add_option("--x", x)->required();
  auto* quantile = app.add_subcommand("quantile", "Left and right quantiles and the level set {F = alpha}");
  quantile->add_option("--alpha", alpha)->required();
  auto* transform = app.add_subcommand("transform", "F(x-) + lambda * jump at x");
  transform->add_option("--x", x)->required();
  transform->add_option("--lambda", lambda)->required();
  auto* levelset = app.add_subcommand("levelset", "Level set, its measure, and with --lambda the split of {F_lambda <= alpha}");
  levelset->add_option("--alpha", alpha)->required();
  auto* ls_lambda = levelset->add_option("--lambda", lambda);
  auto* measure = app.add_subcommand("measure", "Measure of a union of intervals, e.g. \"(0.25,0.5] U {1}\"");
  measure->add_option("--set", set_text)->required();
  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"analytic", "stochastic", "all"}));
  auto* sample = app.add_subcommand("sample", "Draw X by quantile sampling");
  sample->add_flag("--transform", with_transform, "Also print U = F(X-) + V * jump");
  auto* tcdf = app.add_subcommand("transform-cdf", "P(F_V(X) <= alpha); a second --dist sets the law of X");
  tcdf->add_option("--alpha", alpha)->required();
  auto* copula = app.add_subcommand("copula-check", "Sklar identity on a generated joint sample");
  copula->add_option("--dependence", dependence)
      ->check(CLI::IsMember({"independent", "comonotone", "countermonotone"}));
  copula->add_option("--grid", grid, "Grid values per coordinate")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitInput;
  }

  dtx::io::RunReport report;
  report.seed = g.seed;
  report.n = g.n;
  report.command = "dtx";
  for (int i = 1; i < argc; ++i) report.command += std::string(" ") + argv[i];

  const auto started = std::chrono::steady_clock::now();
  int code = kExitPass;
  try {
    const auto ds = load_all(g, report);
    if (ds.empty()) throw input_error("at least one --dist is required");

    if (*eval) {
      const auto& f = one(ds, "eval");
      report.put("F(x)", num(f.eval(x)));
      report.put("F(x-)", num(f.eval_left(x)));
      report.put("jump", num(f.jump(x)));
    } else if (*quantile) {
      const auto& f = one(ds, "quantile");
      const auto d = dtx::quantile_detail(f, alpha);
      report.put("xi", num(d.xi));
      report.put("eta", num(d.eta));
      report.put("level_set_kind", dtx::to_string(dtx::level_set_kind(d)));
      report.put("level_set", dtx::level_set(f, alpha).to_string());
    } else if (*transform) {
      const auto& f = one(ds, "transform");
      report.put("F_lambda(x)", num(dtx::transform(f, x, lambda)));
      report.put("quantile_range", dtx::quantile_range_of_point(f, x).to_string());
    } else if (*levelset) {
      const auto& f = one(ds, "levelset");
      const auto d = dtx::quantile_detail(f, alpha);
      report.put("level_set_kind", dtx::to_string(dtx::level_set_kind(d)));
      report.put("level_set", dtx::level_set(f, alpha).to_string());
      report.put("measure", num(dtx::measure_level_set(f, alpha)));
      if (*ls_lambda) {
        const auto a = dtx::a_decomposition(f, lambda, alpha);
        report.put("A_plus", a.plus.to_string());
        report.put("A_tilde", a.tilde.to_string());
        report.put("A_minus", a.minus.to_string());
        report.put("A_plus_measure", num(dtx::measure_set(f, a.plus)));
        const auto ns = dtx::null_set(f, lambda);
        report.put("null_set", ns.all().to_string());
        report.put("null_set_measure", num(ns.total_measure));
        report.put("hypothesis_measure", num(ns.hypothesis_measure));
      }
    } else if (*measure) {
      const auto& f = one(ds, "measure");
      const auto parts = dtx::io::parse_interval_union(set_text);
      report.put("measure", num(dtx::measure_set(f, parts)));
    } else if (*verify) {
      const bool prefix = ds.size() > 1;
      if (suite != "analytic") {
        report.streams =
            "X {seed,0}, V {seed,1}; Monte Carlo pairs {seed,10+2k},{seed,11+2k}; "
            "copula V {seed,100+j}; correlation {seed,200},{seed,201}";
      }
      for (const auto& d : ds) {
        std::vector<dtx::CheckResult> rs;
        if (suite != "stochastic") rs = dtx::run_analytic_suite(d.cdf);
        if (suite != "analytic") {
          auto more = dtx::run_stochastic_suite(d.cdf, g.seed, g.n);
          rs.insert(rs.end(), more.begin(), more.end());
        }
        for (auto& r : rs) {
          if (prefix) r.name = d.path + ":" + r.name;
          report.checks.push_back(std::move(r));
        }
      }
    } else if (*sample) {
      const auto& f = one(ds, "sample");
      const dtx::SeededStream xs_stream{g.seed, 0};
      const auto xs = dtx::sample_inverse(f, xs_stream, g.n);
      report.streams = "X {seed,0}";
      std::vector<double> xv(xs.begin(), xs.end());
      report.put("x", xv);
      if (with_transform) {
        report.streams += ", V {seed,1}";
        report.put("u", dtx::distributional_transform(f, xs, xs_stream, xs_stream.next_stream()));
      }
    } else if (*tcdf) {
      if (ds.size() > 2) throw input_error("transform-cdf takes one or two --dist");
      const auto& f = ds.front().cdf;
      const auto& law = ds.back().cdf;
      const auto b = dtx::transform_cdf_exact(f, law, alpha);
      report.put("xi", num(b.xi));
      report.put("beta", num(b.beta));
      report.put("q", num(b.q));
      report.put("c_beta", num(b.c_beta));
      report.put("term_flat", num(b.term_flat));
      report.put("term_atom", num(b.term_atom));
      report.put("term_left", num(b.term_left));
      report.put("total", num(b.total));
      const double est = dtx::estimate_transform_cdf(f, law, alpha, {g.seed, 0}, g.n);
      report.streams = "X {seed,0}, V {seed,1}";
      report.put("monte_carlo", num(est));
      const double se = std::sqrt(b.total * (1.0 - b.total) / static_cast<double>(g.n));
      const double z = se > 0.0 ? std::abs(est - b.total) / se : (est == b.total ? 0.0 : dtx::kInf);
      report.checks.push_back({"monte_carlo_agreement", z < 4.0, z, 4.0, "binomial standard errors"});
    } else if (*copula) {
      if (ds.size() < 2) throw input_error("copula-check needs at least two --dist");
      std::vector<dtx::Cdf> ms;
      for (const auto& d : ds) ms.push_back(d.cdf);
      dtx::CopulaCheckConfig cfg;
      cfg.dependence = parse_dependence(dependence);
      cfg.n = g.n;
      cfg.seed = g.seed;
      cfg.grid = grid;
      report.put("dependence", dependence);
      report.streams = cfg.dependence == dtx::Dependence::independent
                           ? "X_j {seed,j}; V_j {seed,1000+j}"
                           : "X {seed,0}; V_j {seed,1000+j}";
      report.checks = dtx::run_copula_suite(ms, cfg);
    }
    code = report.all_passed() ? kExitPass : kExitCheckFailed;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const dtx::io::spec_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const dtx::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  report.wall_clock_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  std::cout << (g.format == "json" ? dtx::io::render_json(report) : dtx::io::render_table(report));
  return code;
}
