#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "csv.hpp"
#include "ssk.hpp"

namespace stein::cli {

namespace {

namespace fs = std::filesystem;

// Shared by criteria 3-5.
const int kGridP[] = {3, 5, 10, 20};
const double kGridTheta[] = {0.0, 1.0, 5.0, 25.0};

struct Context {
  AcceptanceOptions opts;

  std::size_t n(std::size_t full) const { return opts.fast ? std::max<std::size_t>(full / 100, 2) : full; }
  double sigma(double full) const { return opts.fast ? 6.0 : full; }
  ssk::Simulator sim(int p, double theta, std::uint64_t stream) const {
    return ssk::make_simulator(p, theta, ssk_derive_seed(opts.seed, stream), opts.threads);
  }
};

// Collects sub-check outcomes into one criterion verdict.
class Verdict {
public:
  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed_ = false;
      failures_.push_back(what);
    }
  }
  void note(const std::string& text) { notes_.push_back(text); }

  bool passed() const { return passed_; }
  std::string detail() const {
    std::ostringstream ss;
    const auto& list = passed_ ? notes_ : failures_;
    for (std::size_t i = 0; i < list.size(); ++i)
      ss << (i ? "; " : "") << list[i];
    return ss.str();
  }

private:
  bool passed_ = true;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream ss;
  ss << std::setprecision(prec) << v;
  return ss.str();
}

double z_score(double value, double target, double se) {
  if (se == 0.0)
    return value == target ? 0.0 : INFINITY;
  return (value - target) / se;
}

// ---- criteria --------------------------------------------------------------

Verdict expected_r_table(const Context&) {
  Verdict v;
  const struct { int p; double printed; } table[] = {{10, 2.918}, {17, 3.938}, {26, 4.950}};
  for (const auto& row : table) {
    const double er = ssk::value(ssk_expected_chi_norm, row.p);
    v.check(std::abs(er - row.printed) <= 1e-3,
            "p=" + std::to_string(row.p) + " E(R)=" + fmt(er) + " vs " + fmt(row.printed));
  }
  const double er5 = ssk::value(ssk_expected_chi_norm, 5);
  v.check(std::abs(er5 - 1.880) <= 1e-3, "p=5 E(R)=" + fmt(er5) + " vs 1.880");
  // The printed 1.850 at p = 5 is inconsistent with the Gamma-ratio formula.
  v.check(std::abs(er5 - 1.850) > 1e-3, "p=5 unexpectedly matches printed 1.850");
  v.note("E(R) at p=5,10,17,26 = " + fmt(er5, 5) + ", " +
         fmt(ssk::value(ssk_expected_chi_norm, 10), 5) + ", " +
         fmt(ssk::value(ssk_expected_chi_norm, 17), 5) + ", " +
         fmt(ssk::value(ssk_expected_chi_norm, 26), 5) + "; printed 1.850 at p=5 is off by " +
         fmt(er5 - 1.850, 3));
  return v;
}

Verdict factor_two(const Context& ctx) {
  Verdict v;
  const double k = ctx.sigma(4.0);
  const std::size_t n = ctx.n(10'000'000);
  auto sim = ctx.sim(3, 0.0, 200);
  const auto d = ssk::estimate(ssk_estimate_delta, sim.get(), 1.0, n);
  const double z1 = z_score(d.mean, 1.0, d.std_error);
  const double zh = z_score(d.mean, 0.5, d.std_error);
  v.check(std::abs(z1) <= k, "delta=" + fmt(d.mean) + " is " + fmt(z1, 3) + " se from 1");
  v.check(std::abs(zh) > k, "delta=" + fmt(d.mean) + " within " + fmt(k) + " se of 0.5");

  auto js = ssk::make_estimator(SSK_SHRINK_C, 1.0);
  const auto r = ssk::estimate(ssk_estimate_risk, sim.get(),
                               static_cast<const ssk_estimator*>(js.get()), n);
  const double zr = z_score(r.mean, 2.0, r.std_error);
  v.check(std::abs(zr) <= k, "R(0, delta_1)=" + fmt(r.mean) + " is " + fmt(zr, 3) + " se from 2");
  v.note("delta=" + fmt(d.mean) + " +- " + fmt(d.std_error, 3) + " (z vs 1: " + fmt(z1, 3) +
         ", z vs 0.5: " + fmt(zh, 4) + "), R(0,delta_1)=" + fmt(r.mean) + ", n=" +
         std::to_string(d.n));
  return v;
}

Verdict exact_vs_mc(const Context& ctx) {
  Verdict v;
  const double k = ctx.sigma(4.5);
  const std::size_t n = ctx.n(1'000'000);
  double worst = 0.0;
  int cells = 0;
  std::uint64_t stream = 300;
  for (int p : kGridP)
    for (double theta : kGridTheta)
      for (double c : {1.0, p - 2.0, p - 1.0, 2.0 * (p - 2) - 0.5}) {
        const double exact = ssk::value(ssk_risk_delta_exact, p, theta, c,
                                        static_cast<const ssk_series_control*>(nullptr));
        auto sim = ctx.sim(p, theta, stream++);
        const auto d = ssk::estimate(ssk_estimate_delta, sim.get(), c, n);
        const double z = z_score(d.mean, exact, d.std_error);
        worst = std::max(worst, std::abs(z));
        ++cells;
        v.check(std::abs(z) <= k, "p=" + std::to_string(p) + " theta=" + fmt(theta) +
                                      " c=" + fmt(c) + ": exact " + fmt(exact) + " mc " +
                                      fmt(d.mean) + " (z=" + fmt(z, 3) + ")");
      }
  v.note(std::to_string(cells) + " cells, max |z| = " + fmt(worst, 3) + " (gate " + fmt(k) + ")");
  return v;
}

Verdict dominance(const Context&) {
  Verdict v;
  int checked = 0;
  for (int p : kGridP)
    for (double theta : kGridTheta) {
      const double edge = 2.0 * (p - 2);
      auto delta = [&](double c) {
        return ssk::value(ssk_risk_delta_exact, p, theta, c,
                          static_cast<const ssk_series_control*>(nullptr));
      };
      const std::string at = "p=" + std::to_string(p) + " theta=" + fmt(theta);
      for (int i = 1; i <= 50; ++i) {
        const double c = edge * i / 51.0;
        const double d = delta(c);
        ++checked;
        v.check(d > 0.0, at + " c=" + fmt(c) + " delta=" + fmt(d) + " not > 0");
      }
      v.check(std::abs(delta(0.0)) <= 1e-12, at + " delta(0) != 0");
      v.check(std::abs(delta(edge)) <= 1e-12, at + " delta(2(p-2)) != 0");
      v.check(delta(edge + 0.5) < 0.0, at + " delta(2(p-2)+0.5) not < 0");
    }
  v.note(std::to_string(checked) + " interior constants positive; zero at both edges; negative "
                                   "at 2(p-2)+0.5");
  return v;
}

Verdict optimal_constant(const Context&) {
  Verdict v;
  for (int p : kGridP)
    for (double theta : kGridTheta) {
      const int steps = 2 * (p - 2) * 100;
      double best_c = 0.0, best = -INFINITY;
      for (int i = 0; i <= steps; ++i) {
        const double c = i / 100.0;
        const double d = ssk::value(ssk_risk_delta_exact, p, theta, c,
                                    static_cast<const ssk_series_control*>(nullptr));
        if (d > best) {
          best = d;
          best_c = c;
        }
      }
      v.check(std::abs(best_c - (p - 2)) <= 0.01 + 1e-12,
              "p=" + std::to_string(p) + " theta=" + fmt(theta) + " argmax c=" + fmt(best_c));
    }
  v.note("argmax at c = p - 2 for all 16 (p, theta)");
  return v;
}

Verdict conditional_algebra(const Context& ctx) {
  Verdict v;
  std::mt19937_64 rng(ssk_derive_seed(ctx.opts.seed, 600));
  std::uniform_real_distribution<double> pd(2.0, 50.0), td(0.0, 100.0), u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10'000; ++i) {
    const double p = pd(rng), theta = td(rng);
    const double c = -5.0 + u(rng) * (3.0 * p + 5.0);
    ssk_conditional_breakdown b{};
    ssk::check(ssk_conditional_losses(p, theta, c, &b));
    const double closed = ssk::value(ssk_conditional_delta_closed, p, theta, c);
    // Relative to the magnitude of the terms the direct route subtracts.
    const double scale = std::max({std::abs(closed), b.r_cond_1 + b.r_cond_2, p});
    const double rel = std::abs(b.delta - closed) / scale;
    worst = std::max(worst, rel);
    if (rel > 1e-12)
      v.check(false, "p=" + fmt(p) + " theta=" + fmt(theta) + " c=" + fmt(c) + " rel=" +
                         fmt(rel, 3));
  }
  ssk_conditional_breakdown b{};
  ssk::check(ssk_conditional_losses(3.0, 2.0, 1.0, &b));
  const double closed = ssk::value(ssk_conditional_delta_closed, 3.0, 2.0, 1.0);
  v.check(std::abs(b.delta - 19.0 / 33.0) <= 1e-12 && std::abs(closed - 19.0 / 33.0) <= 1e-12,
          "worked instance: direct " + fmt(b.delta, 17) + ", closed " + fmt(closed, 17));
  v.note("10000 random draws, max rel diff " + fmt(worst, 3) + "; (3,2,1) -> " +
         fmt(closed, 10) + " = 19/33 by both routes");
  return v;
}

Verdict approximation_quality(const Context&) {
  Verdict v;
  auto inv = [](int p, double lambda) {
    return ssk::value(ssk_inv_noncentral_chisq_mean, p, lambda,
                      static_cast<const ssk_series_control*>(nullptr));
  };
  for (int p : {3, 4, 5, 10, 20})
    for (double lambda : {0.0, 1.0, 25.0, 625.0, 1e4}) {
      const double e = inv(p, lambda);
      v.check(e > 1.0 / (lambda + p), "Jensen fails at p=" + std::to_string(p) +
                                          " lambda=" + fmt(lambda));
    }
  auto gap = [&](int p, double lambda) {
    const double e = inv(p, lambda);
    return (e - 1.0 / (lambda + p)) / e;
  };
  const double g_far = gap(5, 1e4);
  const double g_near = gap(3, 0.0);
  v.check(g_far < 0.01, "relative gap at (5, 1e4) = " + fmt(g_far, 4) + " not < 1%");
  v.check(g_near < 0.60, "relative gap at (3, 0) = " + fmt(g_near, 4) + " not < 60%");
  v.note("Jensen holds on 25 grid points; relative gap " + fmt(g_far, 3) + " at (5,1e4), " +
         fmt(g_near, 4) + " at (3,0)");
  return v;
}

Verdict exceedance(const Context& ctx) {
  Verdict v;
  const double k = ctx.sigma(4.0);
  const std::size_t n = ctx.n(1'000'000);
  auto far = ctx.sim(20, 1e4, 800);
  const auto e_far = ssk::estimate(ssk_estimate_exceedance, far.get(), n);
  const double z = z_score(e_far.mean, 0.5, e_far.std_error);
  v.check(std::abs(z) <= k, "P at theta=1e4 is " + fmt(e_far.mean) + " (z=" + fmt(z, 3) + ")");
  auto near = ctx.sim(20, 1.0, 801);
  const auto e_near = ssk::estimate(ssk_estimate_exceedance, near.get(), n);
  v.check(e_near.mean > 0.99, "P at theta=1 is " + fmt(e_near.mean) + ", not > 0.99");
  v.note("P(|X|>=|theta|) = " + fmt(e_far.mean) + " at theta=1e4 (z vs 1/2: " + fmt(z, 3) +
         "), " + fmt(e_near.mean) + " at theta=1");
  return v;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("stein-shrink-accept-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

// Runs the CLI in-process; throws if it does not exit cleanly.
void invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  args.insert(args.begin(), "stein-shrink");
  const int code = run(args, out, err);
  if (code != kExitOk)
    throw std::runtime_error("cli exited " + std::to_string(code) + ": " + err.str());
}

Verdict figure_two(const Context& ctx) {
  Verdict v;
  TempDir tmp;
  const auto csv_path = tmp.path / "cloud.csv";
  invoke({"cloud", "--p", "20", "--theta", "25", "--n", "2000", "--seed",
          std::to_string(ctx.opts.seed), "--threads", std::to_string(ctx.opts.threads),
          "--out", csv_path.string()});
  const auto csv = parse_csv(read_file(csv_path));
  const std::size_t n = csv.rows.size();
  v.check(n == 2000, "cloud has " + std::to_string(n) + " rows");

  const auto cx = csv.column("x1"), cr = csv.column("r");
  double sx = 0, sr2 = 0, sz2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = *csv.number(i, cx), r = *csv.number(i, cr);
    sx += x1;
    sr2 += r * r;
    sz2 += x1 * x1 + r * r;
  }
  const double k = ctx.sigma(4.0);
  const double rn = std::sqrt(static_cast<double>(n));
  const double mx = sx / n, mr2 = sr2 / n, mz2 = sz2 / n;
  // Known sds: X1 ~ N(25,1); R^2 ~ chi^2_19; |Z|^2 ~ chi^2_20(625), variance 2(20 + 2*625).
  const double se_x = 1.0 / rn, se_r2 = std::sqrt(38.0) / rn, se_z2 = std::sqrt(2540.0) / rn;
  v.check(std::abs(mx - 25.0) <= k * se_x, "mean X1 = " + fmt(mx));
  v.check(std::abs(mr2 - 19.0) <= k * se_r2, "mean R^2 = " + fmt(mr2));
  v.check(std::abs(mz2 - 645.0) <= k * se_z2, "mean |Z|^2 = " + fmt(mz2));
  v.note("mean X1 " + fmt(mx) + ", mean R^2 " + fmt(mr2) + ", mean |Z|^2 " + fmt(mz2) +
         " over 2000 points");
  return v;
}

Verdict geometry(const Context&) {
  Verdict v;
  auto ngo = ssk::make_estimator(SSK_NGO);
  double worst = 0.0;
  for (int p : {2, 3, 5, 10, 20, 100})
    for (double theta : {0.25, 1.0, 3.0, 25.0, 400.0}) {
      ssk_geometry_report g{};
      ssk::check(ssk_ngo_projection(p, theta, &g));
      const double ab2 = g.len_ab * g.len_ab;
      const double e6 = std::abs(g.len_bc * g.len_ob - ab2) / ab2;
      const double dot = (g.a.x - g.c_point.x) * g.b.x + (g.a.y - g.c_point.y) * g.b.y;
      const double perp = std::abs(dot) / (std::hypot(g.a.x - g.c_point.x, g.a.y - g.c_point.y) *
                                           g.len_ob);
      ssk_vec2 applied{};
      ssk::check(ssk_apply_z(ngo.get(), g.b, p, &applied));
      const double app = std::hypot(applied.x - g.c_point.x, applied.y - g.c_point.y) /
                         std::max(1.0, g.len_ob);
      worst = std::max({worst, e6, perp, app});
      const std::string at = "p=" + std::to_string(p) + " theta=" + fmt(theta);
      v.check(e6 <= 1e-12, at + " |BC||OB| vs |AB|^2 rel " + fmt(e6, 3));
      v.check(perp <= 1e-12, at + " perpendicularity " + fmt(perp, 3));
      v.check(app <= 1e-12, at + " NGO(B) vs C " + fmt(app, 3));
    }
  v.note("30 configurations, worst relative residual " + fmt(worst, 3));
  return v;
}

Verdict regularised_trend(const Context& ctx) {
  Verdict v;
  const int p = 5;
  const double c = 3.0, a = 10.0;
  const double target = 2.0 * (c * (p - 2) - 0.5 * c * c);
  auto est = ssk::make_estimator(SSK_SHRINK_CA, c, a);
  std::uint64_t stream = 1100;
  for (double theta : {20.0, 40.0, 80.0}) {
    const double scale = a + theta * theta;
    // Pilot run sizes n so that 4 se is a small fraction of the target.
    auto pilot_sim = ctx.sim(p, theta, stream++);
    const std::size_t n0 = 200'000;
    const auto pilot = ssk::estimate(ssk_estimate_delta_for, pilot_sim.get(),
                                     static_cast<const ssk_estimator*>(est.get()), n0);
    const double sd = pilot.std_error * std::sqrt(static_cast<double>(n0));
    const double want_se = 0.025 * (target / scale) / 4.0;
    const auto n_full = static_cast<std::size_t>(std::ceil(std::pow(sd / want_se, 2)));
    const std::size_t n = ctx.n(std::max<std::size_t>(n_full, n0));

    auto sim = ctx.sim(p, theta, stream++);
    const auto d = ssk::estimate(ssk_estimate_delta_for, sim.get(),
                                 static_cast<const ssk_estimator*>(est.get()), n);
    const double scaled = scale * d.mean;
    const double scaled_se = scale * d.std_error;
    const bool in_band = std::abs(scaled - target) <= 0.10 * target;
    const std::string at = "theta=" + fmt(theta) + ": (a+theta^2) delta = " + fmt(scaled) +
                           " +- " + fmt(scaled_se, 3) + " (n=" + std::to_string(d.n) + ")";
    if (ctx.opts.fast) {
      v.check(in_band || std::abs(scaled - target) <= 6.0 * scaled_se, at);
    } else {
      v.check(in_band, at + " outside 10% of " + fmt(target));
      v.check(4.0 * scaled_se < 0.05 * target, at + " resolution 4 se >= 5% of target");
    }
    v.note(at);
  }
  return v;
}

Verdict determinism(const Context& ctx) {
  Verdict v;
  TempDir tmp;
  const std::string seed = std::to_string(ctx.opts.seed);
  const std::string mc_n = ctx.opts.fast ? "200" : "5000";
  const std::vector<std::vector<std::string>> commands = {
      {"cloud", "--p", "20", "--theta", "25", "--n", "2000", "--seed", seed},
      {"cloud", "--p", "7", "--theta", "2.5", "--n", "100000", "--seed", seed},
      {"risk-curve", "--p", "3", "--theta", "0:50:51", "--c", "1", "--mc-n", mc_n, "--seed", seed},
      {"risk-curve", "--p", "10", "--theta", "0,5,25", "--c", "0:16:5", "--mc-n", mc_n, "--seed",
       seed},
      {"exceedance", "--p", "20", "--theta", "1", "--n", "100000", "--seed", seed},
      {"conditional", "--p", "2,3,10.5", "--theta", "0:10:11", "--c", "-1,1,4"},
      {"geometry", "--p", "5", "--theta", "3"},
      {"special", "--p", "2,5,10,17,26"},
  };
  const bool sampled[] = {true, true, true, true, true, false, false, false};

  int compared = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::vector<std::string> texts;
    const std::vector<std::string> thread_settings =
        sampled[i] ? std::vector<std::string>{"1", "1", "3", "0"} : std::vector<std::string>{"", ""};
    for (std::size_t j = 0; j < thread_settings.size(); ++j) {
      const auto path = tmp.path / ("out" + std::to_string(i) + "_" + std::to_string(j) + ".csv");
      auto args = commands[i];
      if (!thread_settings[j].empty()) {
        args.push_back("--threads");
        args.push_back(thread_settings[j]);
      }
      args.push_back("--out");
      args.push_back(path.string());
      invoke(args);
      texts.push_back(read_file(path));
    }
    for (std::size_t j = 1; j < texts.size(); ++j) {
      ++compared;
      v.check(texts[j] == texts[0], commands[i][0] + " output differs between run 0 and run " +
                                        std::to_string(j));
    }
  }
  v.note(std::to_string(commands.size()) + " invocations, " + std::to_string(compared) +
         " byte comparisons across repeat runs and thread counts 1/3/all");
  return v;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& log) {
  const Context ctx{opts};
  struct Entry {
    int id;
    const char* name;
    std::function<Verdict(const Context&)> fn;
  };
  const Entry entries[] = {
      {1, "E(R) table", expected_r_table},
      {2, "factor-2 discriminator", factor_two},
      {3, "exact vs Monte Carlo risk difference", exact_vs_mc},
      {4, "dominance window", dominance},
      {5, "optimal constant", optimal_constant},
      {6, "conditional algebra", conditional_algebra},
      {7, "inverse-moment approximation quality", approximation_quality},
      {8, "exceedance obstruction", exceedance},
      {9, "Z cloud at p=20, theta=25", figure_two},
      {10, "projection geometry", geometry},
      {11, "regularised estimator trend", regularised_trend},
      {12, "determinism", determinism},
  };

  std::vector<CriterionResult> results;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r{e.id, e.name, false, {}};
    try {
      const Verdict verdict = e.fn(ctx);
      r.passed = verdict.passed();
      r.detail = verdict.detail();
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log << (r.passed ? "PASS" : "FAIL") << "  [" << std::setw(2) << r.id << "] " << r.name << " ("
        << std::fixed << std::setprecision(1) << secs << "s): " << std::defaultfloat << r.detail
        << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed)
      return false;
  return true;
}

} // namespace stein::cli
