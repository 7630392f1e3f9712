#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "csv.hpp"
#include "ssk.hpp"
#include "svg.hpp"

namespace stein::cli {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

long long parse_integer(std::string_view text, std::string_view what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos)
      return parts;
    start = pos + 1;
  }
}

// Options shared by the Monte Carlo subcommands.
struct Common {
  std::string out;
  std::string svg;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

void write_outputs(const Common& common, const CsvTable& table,
                   const std::optional<SvgPlot>& plot = std::nullopt) {
  write_file_atomic(common.out, table.str());
  if (plot && !common.svg.empty())
    write_file_atomic(common.svg, plot->render());
}

int to_dimension(long long p) {
  if (p < -1000000 || p > 1000000)
    throw UsageError("dimension out of range");
  return static_cast<int>(p);
}

std::size_t to_count(long long n, std::string_view what) {
  if (n < 0)
    throw UsageError(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(n);
}

// ---- subcommands -----------------------------------------------------------

void cmd_cloud(const Common& c, const std::string& p_text, const std::string& theta_text,
               const std::string& n_text) {
  const int p = to_dimension(parse_integer(p_text, "--p"));
  const double theta = parse_number(theta_text, "--theta");
  const std::size_t n = to_count(parse_integer(n_text, "--n"), "--n");

  auto sim = ssk::make_simulator(p, theta, c.seed, c.threads);
  std::vector<double> x1(n), r(n);
  ssk::check(ssk_simulate_cloud(sim.get(), n, x1.data(), r.data()));

  CsvTable table({"idx", "x1", "r"});
  for (std::size_t i = 0; i < n; ++i)
    table.row().add_int(static_cast<long long>(i)).add(x1[i]).add(r[i]);

  SvgPlot plot;
  plot.title = "Z = (X1, R), p = " + std::to_string(p) + ", theta = " + format_real(theta);
  plot.x_label = "X1";
  plot.y_label = "R";
  plot.equal_aspect = true;
  plot.series.push_back({"observations", x1, r, false});
  const double xi2 = std::sqrt(std::max(p - 1, 0));
  plot.series.push_back({"theta and xi", {theta, theta}, {0.0, xi2}, false});
  write_outputs(c, table, plot);
}

void cmd_risk_curve(const Common& c, const std::string& p_text, const std::string& theta_text,
                    const std::string& c_text, long long mc_n) {
  const int p = to_dimension(parse_integer(p_text, "--p"));
  const auto thetas = parse_value_list(theta_text);
  const auto cs = parse_value_list(c_text);
  if (mc_n < 0 || mc_n == 1)
    throw UsageError("--mc-n must be >= 2");

  CsvTable table({"p", "theta", "c", "delta_exact", "delta_approx", "delta_mc_mean",
                  "delta_mc_stderr"});
  SvgPlot plot;
  plot.title = "Risk improvement over the usual estimator, p = " + std::to_string(p);
  plot.x_label = "theta";
  plot.y_label = "delta";
  for (double cv : cs)
    plot.series.push_back({"C = " + format_real(cv), {}, {}, true});

  std::uint64_t row = 0;
  for (double theta : thetas) {
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const double cv = cs[j];
      const double exact = ssk::value(ssk_risk_delta_exact, p, theta, cv,
                                      static_cast<const ssk_series_control*>(nullptr));
      const double approx = ssk::value(ssk_risk_delta_approx, p, theta, cv);
      table.row().add_int(p).add(theta).add(cv).add(exact).add(approx);
      if (mc_n > 0) {
        auto sim = ssk::make_simulator(p, theta, ssk_derive_seed(c.seed, row), c.threads);
        const auto est = ssk::estimate(ssk_estimate_delta, sim.get(), cv,
                                       static_cast<std::size_t>(mc_n));
        table.add(est.mean).add(est.std_error);
      } else {
        table.add_empty().add_empty();
      }
      plot.series[j].x.push_back(theta);
      plot.series[j].y.push_back(exact);
      ++row;
    }
  }
  write_outputs(c, table, plot);
}

void cmd_conditional(const Common& c, const std::string& p_text, const std::string& theta_text,
                     const std::string& c_text) {
  const auto ps = parse_value_list(p_text);
  const auto thetas = parse_value_list(theta_text);
  const auto cs = parse_value_list(c_text);

  CsvTable table({"p", "theta", "c", "l_plus_1", "l_plus_2", "l_minus_1", "l_minus_2",
                  "delta_direct", "delta_closed"});
  for (double p : ps)
    for (double theta : thetas)
      for (double cv : cs) {
        ssk_conditional_breakdown b{};
        ssk::check(ssk_conditional_losses(p, theta, cv, &b));
        const double closed = ssk::value(ssk_conditional_delta_closed, p, theta, cv);
        table.row().add(p).add(theta).add(cv).add(b.l_plus_1).add(b.l_plus_2).add(b.l_minus_1)
            .add(b.l_minus_2).add(b.delta).add(closed);
      }
  write_outputs(c, table);
}

void cmd_geometry(const Common& c, const std::string& p_text, const std::string& theta_text) {
  const int p = to_dimension(parse_integer(p_text, "--p"));
  const double theta = parse_number(theta_text, "--theta");
  ssk_geometry_report g{};
  ssk::check(ssk_ngo_projection(p, theta, &g));

  CsvTable table({"ax", "ay", "bx", "by", "cx", "cy", "len_ab", "len_ob", "len_bc",
                  "shrink_factor"});
  table.row().add(g.a.x).add(g.a.y).add(g.b.x).add(g.b.y).add(g.c_point.x).add(g.c_point.y)
      .add(g.len_ab).add(g.len_ob).add(g.len_bc).add(g.shrink_factor);

  SvgPlot plot;
  plot.title = "Projection of A on OB, p = " + std::to_string(p);
  plot.x_label = "X1";
  plot.y_label = "R";
  plot.equal_aspect = true;
  plot.segments = {{0, 0, g.b.x, g.b.y, "B"},
                   {g.a.x, g.a.y, g.b.x, g.b.y, ""},
                   {g.a.x, g.a.y, g.c_point.x, g.c_point.y, "C"},
                   {0, 0, g.a.x, g.a.y, "A"}};
  plot.series.push_back({"", {0.0, g.a.x, g.b.x, g.c_point.x}, {0.0, g.a.y, g.b.y, g.c_point.y},
                         false});
  write_outputs(c, table, plot);
}

void cmd_special(const Common& c, const std::string& p_text) {
  const auto ps = parse_int_list(p_text);
  CsvTable table({"p", "e_r_exact", "e_r_asymptotic"});
  for (long long p : ps) {
    const int pi = to_dimension(p);
    table.row().add_int(p).add(ssk::value(ssk_expected_chi_norm, pi))
        .add(ssk::value(ssk_expected_chi_norm_asymptotic, pi));
  }
  write_outputs(c, table);
}

void cmd_exceedance(const Common& c, const std::string& p_text, const std::string& theta_text,
                    const std::string& n_text) {
  const int p = to_dimension(parse_integer(p_text, "--p"));
  const double theta = parse_number(theta_text, "--theta");
  const std::size_t n = to_count(parse_integer(n_text, "--n"), "--n");
  auto sim = ssk::make_simulator(p, theta, c.seed, c.threads);
  const auto est = ssk::estimate(ssk_estimate_exceedance, sim.get(), n);
  CsvTable table({"p", "theta", "prob", "stderr"});
  table.row().add_int(p).add(theta).add(est.mean).add(est.std_error);
  write_outputs(c, table);
}

} // namespace

std::vector<double> parse_value_list(std::string_view text) {
  if (text.empty())
    throw UsageError("empty value list");
  std::vector<double> values;
  for (auto item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      values.push_back(parse_number(parts[0], "value"));
    } else if (parts.size() == 3) {
      const double start = parse_number(parts[0], "range start");
      const double stop = parse_number(parts[1], "range stop");
      const long long count = parse_integer(parts[2], "range count");
      if (count < 2)
        throw UsageError("range count must be >= 2 in '" + std::string(item) + "'");
      for (long long i = 0; i < count; ++i)
        values.push_back(i == count - 1 ? stop
                                        : start + (stop - start) * static_cast<double>(i) /
                                                      static_cast<double>(count - 1));
    } else {
      throw UsageError("expected <value> or <start:stop:count>, got '" + std::string(item) + "'");
    }
  }
  return values;
}

std::vector<long long> parse_int_list(std::string_view text) {
  if (text.empty())
    throw UsageError("empty integer list");
  std::vector<long long> values;
  for (auto item : split(text, ','))
    values.push_back(parse_integer(item, "integer"));
  return values;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shrinkage estimators of a multivariate normal mean: exact risk, "
               "Monte Carlo verification and figure data"};
  app.name(argv.empty() ? "stein-shrink" : argv.front());
  app.require_subcommand(1);

  Common common;
  std::string p_text, theta_text, c_text, n_text;
  long long mc_n = 0;
  AcceptanceOptions accept;

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", common.out, "output CSV")->required(); };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", common.seed, "RNG seed"); };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", common.threads, "worker threads (0: all cores)");
  };
  auto add_svg = [&](CLI::App* sub) { sub->add_option("--svg", common.svg, "optional SVG plot"); };

  auto* cloud = app.add_subcommand("cloud", "sample Z = (X1, R) observations");
  cloud->add_option("--p", p_text, "dimension")->required();
  cloud->add_option("--theta", theta_text, "|theta|")->required();
  cloud->add_option("--n", n_text, "number of points")->required();
  add_seed(cloud), add_out(cloud), add_svg(cloud), add_threads(cloud);

  auto* curve = app.add_subcommand("risk-curve", "exact, approximate and simulated risk improvement");
  curve->add_option("--p", p_text, "dimension (>= 3)")->required();
  curve->add_option("--theta", theta_text, "theta values or start:stop:count")->required();
  curve->add_option("--c", c_text, "shrinkage constants or start:stop:count")->required();
  curve->add_option("--mc-n", mc_n, "paired Monte Carlo replications per row");
  add_seed(curve), add_out(curve), add_svg(curve), add_threads(curve);

  auto* cond = app.add_subcommand("conditional", "two-point conditional risk breakdown");
  cond->add_option("--p", p_text, "dimension(s), real >= 2")->required();
  cond->add_option("--theta", theta_text, "theta value(s)")->required();
  cond->add_option("--c", c_text, "shrinkage constant(s)")->required();
  add_out(cond);

  auto* geom = app.add_subcommand("geometry", "projection construction behind the NGO estimator");
  geom->add_option("--p", p_text, "dimension")->required();
  geom->add_option("--theta", theta_text, "|theta| > 0")->required();
  add_out(geom), add_svg(geom);

  auto* special = app.add_subcommand("special", "exact and asymptotic mean of R");
  special->add_option("--p", p_text, "comma-separated dimensions")->required();
  add_out(special);

  auto* exceed = app.add_subcommand("exceedance", "estimate P(|X| >= |theta|)");
  exceed->add_option("--p", p_text, "dimension")->required();
  exceed->add_option("--theta", theta_text, "|theta|")->required();
  exceed->add_option("--n", n_text, "replications")->required();
  add_seed(exceed), add_out(exceed), add_threads(exceed);

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--seed", accept.seed, "base seed");
  verify->add_flag("--fast", accept.fast, "n / 100 with 6-sigma gates");
  verify->add_option("--threads", accept.threads, "worker threads (0: all cores)");

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty())
      args.pop_back();
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*cloud)
      cmd_cloud(common, p_text, theta_text, n_text);
    else if (*curve)
      cmd_risk_curve(common, p_text, theta_text, c_text, mc_n);
    else if (*cond)
      cmd_conditional(common, p_text, theta_text, c_text);
    else if (*geom)
      cmd_geometry(common, p_text, theta_text);
    else if (*special)
      cmd_special(common, p_text);
    else if (*exceed)
      cmd_exceedance(common, p_text, theta_text, n_text);
    else if (*verify) {
      const auto results = run_acceptance(accept, out);
      return all_passed(results) ? kExitOk : kExitComputation;
    }
  } catch (const UsageError& e) {
    err << app.get_name() << ": " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const ssk::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitOk;
}

} // namespace stein::cli
