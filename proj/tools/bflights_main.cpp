#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bflights/boundary_io.hpp"
#include "bflights/dimension.hpp"
#include "bflights/fractalgen.hpp"
#include "bflights/parallel.hpp"
#include "bflights/report.hpp"
#include "bflights/stats.hpp"
#include "bflights/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bflights;

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

void write_meta(const std::string& csv_path, const json& config) {
  json meta;
  meta["config"] = config;
  save_json_file(meta, csv_path + ".meta.json");
}

struct FlightPlan {
  Boundary boundary;
  json resolved;  // full config + seed, embedded in every output
  EngineConfig engine;
  StartSpec start;
  WhitneyParams whitney{1.0, 4.0, 0};
  WhitneyBox window{};
  bool explicit_window = false;
  int workers = 0;
};

Boundary boundary_from_config(const json& cfg) {
  if (cfg.contains("file")) return load_boundary_file(cfg.at("file").get<std::string>());
  if (!cfg.contains("generator")) throw UsageError("boundary config needs file or generator");
  const json& g = cfg.at("generator");
  const std::string kind = g.at("kind").get<std::string>();
  if (kind == "koch") return koch_generate({g.at("iterations").get<int>()});
  if (kind == "saw") {
    SawConfig sc;
    sc.n_steps = g.at("n_steps").get<std::int64_t>();
    sc.n_pivot_attempts = g.value("n_pivot_attempts", std::int64_t{100000});
    sc.seed = g.at("seed").get<std::uint64_t>();
    return saw_generate(sc);
  }
  if (kind == "line") return line_reference(g.value("d_e", 2));
  throw UsageError("unknown generator kind: " + kind);
}

// Resolves a campaign config file plus CLI overrides into a runnable plan.
FlightPlan resolve_plan(const std::string& config_path, const json& overrides) {
  json cfg = config_path.empty() ? json::object() : load_json_file(config_path);
  for (const auto& [k, v] : overrides.items()) cfg[k] = v;

  if (!cfg.contains("boundary")) throw UsageError("campaign config needs a boundary");
  if (!cfg.contains("seed")) throw UsageError("campaign config needs an explicit seed");

  FlightPlan plan;
  plan.boundary = boundary_from_config(cfg.at("boundary"));
  const Scene probe(plan.boundary);  // for defaults below

  const std::string engine = cfg.value("engine", std::string("wos"));
  plan.engine.engine = engine == "lattice" ? EngineKind::Lattice : EngineKind::Wos;
  if (engine != "lattice" && engine != "wos") throw UsageError("engine must be wos or lattice");

  const double eps = cfg.value("eps", 1.0);
  plan.start.eps = eps;
  plan.start.mode = plan.engine.engine == EngineKind::Lattice
                        ? StartSpec::Mode::LatticeAdjacentUniform
                        : StartSpec::Mode::WhitneyUniform;
  if (cfg.contains("start_mode")) {
    const std::string m = cfg.at("start_mode").get<std::string>();
    if (m == "whitney-uniform") plan.start.mode = StartSpec::Mode::WhitneyUniform;
    else if (m == "lattice-adjacent-uniform") plan.start.mode = StartSpec::Mode::LatticeAdjacentUniform;
    else throw UsageError("unknown start_mode: " + m);
  }

  plan.engine.seed = cfg.at("seed").get<std::uint64_t>();
  plan.engine.n_flights = cfg.value("flights", std::int64_t{100000});
  plan.engine.n_max = cfg.value("n_max", std::int64_t{1000000});
  plan.engine.delta = cfg.value("delta", eps / 100.0);
  plan.engine.r_esc =
      cfg.value("r_esc", probe.finite() ? 4.0 * probe.diameter() : 1e4 * eps);
  plan.workers = cfg.value("workers", 0);

  if (cfg.contains("whitney")) {
    const json& w = cfg.at("whitney");
    plan.whitney.max_depth = w.value("max_depth", 0);
    if (w.contains("origin") && w.contains("side")) {
      const auto& o = w.at("origin");
      plan.window.origin = {o.at(0).get<double>(), o.at(1).get<double>(),
                            o.size() > 2 ? o.at(2).get<double>() : 0.0};
      plan.window.side = w.at("side").get<double>();
      plan.explicit_window = true;
    }
  }
  if (plan.whitney.max_depth == 0) {
    // deep enough that level-eps cubes (side down to eps/5) exist
    const double root = plan.explicit_window
                            ? plan.window.side
                            : (probe.finite() ? 4.0 * probe.bbox().max_extent() : 4.0);
    plan.whitney.max_depth =
        std::min(24, std::max(4, static_cast<int>(std::ceil(std::log2(root / eps * 5.0)))));
  }

  plan.resolved = cfg;
  plan.resolved["resolved"] = {{"delta", plan.engine.delta},
                               {"r_esc", plan.engine.r_esc},
                               {"n_max", plan.engine.n_max},
                               {"flights", plan.engine.n_flights},
                               {"whitney_max_depth", plan.whitney.max_depth}};
  return plan;
}

int cmd_generate(const std::string& family, const json& params, const std::string& out_dir) {
  ensure_dir(out_dir);
  Boundary b;
  if (family == "koch") {
    b = koch_generate({params.at("iterations").get<int>()});
  } else if (family == "saw") {
    SawConfig sc;
    sc.n_steps = params.at("steps").get<std::int64_t>();
    sc.n_pivot_attempts = params.at("attempts").get<std::int64_t>();
    sc.seed = params.at("seed").get<std::uint64_t>();
    b = saw_generate(sc);
  } else {
    b = line_reference(params.at("d_e").get<int>());
  }
  json meta;
  meta["generator"] = params;
  meta["generator"]["kind"] = family;
  save_boundary_file(b, join(out_dir, "boundary.json"), meta);
  std::printf("wrote %s (%zu vertices)\n", join(out_dir, "boundary.json").c_str(),
              b.vertices.size());
  return 0;
}

int cmd_dimension(const std::string& boundary_path, int j_min, int j_max, double wlo, double whi,
                  int workers, const std::string& out_dir) {
  ensure_dir(out_dir);
  const Boundary b = load_boundary_file(boundary_path);
  const Scene scene(b);
  const double diam =
      scene.finite() ? scene.diameter() : 1.0;  // analytic line: unit-window stand-in
  const auto ladder = dyadic_ladder(diam, j_min, j_max);
  const BoxCountSeries series = box_count(b, ladder, workers);

  std::ofstream csv(join(out_dir, "dimension.csv"));
  csv << "eps,count\n";
  for (const auto& [e, n] : series.points) csv << format_double(e) << ',' << n << '\n';

  std::optional<EpsWindow> window;
  if (whi > 0) window = EpsWindow{wlo, whi};
  const DimensionEstimate est = fit_dimension(series, window);

  json doc;
  doc["config"] = {{"boundary", boundary_path}, {"j_min", j_min},       {"j_max", j_max},
                   {"window_lo", wlo},          {"window_hi", whi},     {"diameter", diam}};
  doc["estimate"] = dimension_to_json(est);
  save_json_file(doc, join(out_dir, "dimension.json"));
  write_meta(join(out_dir, "dimension.csv"), doc["config"]);
  std::printf("d = %s +- %s over eps in [%s, %s]\n", format_double(est.d).c_str(),
              format_double(est.stderr_).c_str(), format_double(est.eps_min).c_str(),
              format_double(est.eps_max).c_str());
  return 0;
}

int cmd_whitney(const std::string& boundary_path, int max_depth, int j_min, int j_max,
                bool dump_cubes, int workers, const std::string& out_dir) {
  ensure_dir(out_dir);
  const Scene scene(load_boundary_file(boundary_path));
  const WhitneyBox box = default_whitney_box(scene);
  const auto dec = WhitneyDecomposition::build(scene, box, {1.0, 4.0, max_depth}, workers);
  const double scale = scene.finite() ? scene.diameter() : 1.0;

  std::ofstream csv(join(out_dir, "whitney_levels.csv"));
  csv << "t,count\n";
  std::vector<std::pair<double, std::uint64_t>> counts;
  for (int j = j_min; j <= j_max; ++j) {
    const double t = scale * std::exp2(-j);
    if (t < dec.min_level_t() || t > box.side) continue;
    const auto n = dec.level_cubes(t).cubes.size();
    counts.emplace_back(t, n);
    csv << format_double(t) << ',' << n << '\n';
  }
  json config{{"boundary", boundary_path}, {"max_depth", max_depth}, {"j_min", j_min},
              {"j_max", j_max},            {"root_side", box.side},  {"cubes", dec.cubes().size()}};
  write_meta(join(out_dir, "whitney_levels.csv"), config);

  if (counts.size() >= 4) {
    const DimensionEstimate est =
        fit_dimension_counts(counts, EpsWindow{counts.back().first, counts.front().first},
                             DimensionMethod::Whitney);
    json doc;
    doc["config"] = config;
    doc["estimate"] = dimension_to_json(est);
    save_json_file(doc, join(out_dir, "whitney_dimension.json"));
    std::printf("whitney-method d = %s +- %s\n", format_double(est.d).c_str(),
                format_double(est.stderr_).c_str());
  }
  if (dump_cubes) {
    json cubes = json::array();
    for (const auto& q : dec.cubes()) {
      const Point c = dec.cube_center(q);
      cubes.push_back({{"level", q.level},
                       {"corner", {q.corner[0], q.corner[1], q.corner[2]}},
                       {"side", q.side},
                       {"dist", q.dist},
                       {"center", {c.x, c.y, c.z}}});
    }
    json doc;
    doc["config"] = config;
    doc["cubes"] = std::move(cubes);
    save_json_file(doc, join(out_dir, "whitney_cubes.json"));
  }
  std::printf("%zu whitney cubes, %zu levels written\n", dec.cubes().size(), counts.size());
  return 0;
}

int cmd_flights(const FlightPlan& plan, const std::string& out_dir) {
  ensure_dir(out_dir);
  const Scene scene(plan.boundary);

  std::optional<LatticeAbsorber> absorber;
  std::optional<WhitneyDecomposition> dec;
  StartSampler starts = [&] {
    if (plan.start.mode == StartSpec::Mode::LatticeAdjacentUniform) {
      absorber.emplace(scene);
      return StartSampler::lattice_adjacent(*absorber);
    }
    const WhitneyBox box = plan.explicit_window ? plan.window : default_whitney_box(scene);
    dec.emplace(WhitneyDecomposition::build(scene, box, plan.whitney, plan.workers));
    return StartSampler::whitney_uniform(*dec, plan.start.eps, scene);
  }();

  const std::string csv_path = join(out_dir, "flights.csv");
  FlightCsvWriter writer(csv_path);
  const CampaignSummary summary =
      run_campaign(scene, starts, absorber ? &*absorber : nullptr, plan.engine, plan.workers,
                   [&](int stream, std::span<const FlightRecord> recs) {
                     writer.accept(stream, recs);
                   });
  write_meta(csv_path, plan.resolved);
  std::printf("wrote %s (%lld flights, %lld errors)\n", csv_path.c_str(),
              static_cast<long long>(summary.n_records),
              static_cast<long long>(summary.n_errors));
  return 0;
}

std::vector<FlightRecord> load_flights_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty flights csv");
  std::vector<FlightRecord> out;
  auto side_from = [](const std::string& s) {
    if (s == "L") return SideLabel::Left;
    if (s == "R") return SideLabel::Right;
    return SideLabel::Ambiguous;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    while (true) {
      const std::size_t next = line.find(',', pos);
      f.push_back(line.substr(pos, next - pos));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (f.size() != 7) throw IoError("bad flights csv row: " + line);
    FlightRecord rec;
    rec.n = std::stod(f[2]);
    rec.r = std::stod(f[3]);
    rec.start_side = side_from(f[4]);
    rec.end_side = side_from(f[5]);
    rec.censored = f[6] == "1";
    out.push_back(rec);
  }
  return out;
}

int cmd_fit(const std::string& flights_path, const std::string& kind_name, double wlo, double whi,
            const std::string& estimator_name, bool same_side, double ratio, int bootstrap,
            const std::string& out_dir) {
  ensure_dir(out_dir);
  const TailKind kind = tail_kind_from_string(kind_name);
  const TailEstimator estimator =
      estimator_name == "density" ? TailEstimator::DensityOls : TailEstimator::CcdfOls;

  Accumulator acc({same_side, true}, ratio);
  for (const auto& rec : load_flights_csv(flights_path)) acc.add(rec);
  const CampaignStats stats = acc.finalize();
  const TailHistogram& hist = kind == TailKind::PsiN
                                  ? stats.psi
                                  : (kind == TailKind::ThetaR ? stats.theta : stats.survival);
  TailFit fit = fit_tail(hist, {wlo, whi}, estimator);
  json doc;
  doc["config"] = {{"flights", flights_path}, {"kind", kind_name},   {"window", {wlo, whi}},
                   {"estimator", estimator_name}, {"same_side", same_side}, {"ratio", ratio}};
  doc["counters"] = stats_counters_to_json(stats);
  doc["fit"] = fit_to_json(fit);
  doc["histogram"] = histogram_to_json(hist);
  if (bootstrap > 0) {
    doc["fit"]["bootstrap_stderr"] =
        bootstrap_stderr(hist, {wlo, whi}, estimator, bootstrap, 1234);
  }
  const std::string hist_path = join(out_dir, "hist_" + std::string(to_string(kind)) + ".csv");
  write_histogram_csv(hist, hist_path);
  write_meta(hist_path, doc["config"]);
  save_json_file(doc, join(out_dir, "fit_" + std::string(to_string(kind)) + ".json"));
  std::printf("%s: slope %s, density exponent %s, stderr %s (%llu records in window)\n",
              to_string(kind), format_double(fit.slope).c_str(),
              format_double(fit.density_exponent).c_str(), format_double(fit.stderr_).c_str(),
              static_cast<unsigned long long>(fit.n_used));
  return 0;
}

int cmd_report(const std::string& fit_path, double d, int d_e, double tol,
               const std::string& svg_path, const std::string& out_dir) {
  ensure_dir(out_dir);
  const json doc = load_json_file(fit_path);
  const TailHistogram hist = histogram_from_json(doc.at("histogram"));
  const json& jf = doc.at("fit");
  TailFit fit;
  fit.kind = hist.kind();
  fit.estimator = jf.at("estimator").get<std::string>() == "density-ols"
                      ? TailEstimator::DensityOls
                      : TailEstimator::CcdfOls;
  fit.slope = jf.at("slope").get<double>();
  fit.density_exponent = jf.at("density_exponent").get<double>();
  fit.stderr_ = jf.at("stderr").get<double>();
  fit.window = {jf.at("window").at(0).get<double>(), jf.at("window").at(1).get<double>()};

  const Verdict v = compare(fit, predict(d, d_e), tol);
  json out;
  out["config"] = {{"fit", fit_path}, {"d", d}, {"d_e", d_e}, {"tolerance", tol}};
  out["verdict"] = verdict_to_json(v);
  save_json_file(out, join(out_dir, "verdict.json"));
  if (!svg_path.empty()) {
    write_survival_svg(join(out_dir, svg_path), hist, fit, "tail fit");
    write_meta(join(out_dir, svg_path), out["config"]);
  }
  std::printf("%s: fitted %s vs predicted %s (tol %s + 2se) -> %s\n", v.name.c_str(),
              format_double(v.fitted).c_str(), format_double(v.predicted).c_str(),
              format_double(v.tolerance).c_str(), v.pass ? "pass" : "FAIL");
  return v.pass ? 0 : 1;
}

int cmd_verify(const std::string& preset, VerifyOptions opt) {
  if (!opt.out_dir.empty()) ensure_dir(opt.out_dir);
  const auto results = run_preset(preset, opt);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] criterion %d (%s): %s  [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-passage flight laboratory over fractal boundaries"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_dir = "out";
  app.add_option("--out", out_dir, "output directory")->capture_default_str();

  // generate
  auto* gen = app.add_subcommand("generate", "generate a boundary (saw | koch | line)");
  gen->require_subcommand(1);
  auto* gen_saw = gen->add_subcommand("saw", "pivot-algorithm self-avoiding walk");
  std::int64_t saw_steps = 10000, saw_attempts = 100000;
  std::uint64_t saw_seed = 1;
  gen_saw->add_option("--steps", saw_steps, "walk length");
  gen_saw->add_option("--attempts", saw_attempts, "pivot attempts after burn-in");
  gen_saw->add_option("--seed", saw_seed, "rng seed");
  auto* gen_koch = gen->add_subcommand("koch", "triadic Koch prefractal");
  int koch_iters = 6;
  gen_koch->add_option("--iterations", koch_iters, "koch iterations (<=10)");
  auto* gen_line = gen->add_subcommand("line", "analytic line/plane reference");
  int line_de = 2;
  gen_line->add_option("--de", line_de, "ambient dimension (2 or 3)");

  // dimension
  auto* dim = app.add_subcommand("dimension", "box-counting dimension of a boundary file");
  std::string dim_boundary;
  int dim_jmin = 1, dim_jmax = 10;
  double dim_wlo = 0, dim_whi = 0;
  int workers = 0;
  dim->add_option("--boundary", dim_boundary, "boundary JSON file")->required();
  dim->add_option("--j-min", dim_jmin, "coarsest dyadic level");
  dim->add_option("--j-max", dim_jmax, "finest dyadic level");
  dim->add_option("--window-lo", dim_wlo, "fit window eps lower bound");
  dim->add_option("--window-hi", dim_whi, "fit window eps upper bound");

  // whitney
  auto* whit = app.add_subcommand("whitney", "whitney decomposition level counts");
  std::string whit_boundary;
  int whit_depth = 12, whit_jmin = 2, whit_jmax = 9;
  bool whit_dump = false;
  whit->add_option("--boundary", whit_boundary, "boundary JSON file")->required();
  whit->add_option("--max-depth", whit_depth, "maximum dyadic depth (<=24)");
  whit->add_option("--j-min", whit_jmin, "coarsest level t = diam*2^-j");
  whit->add_option("--j-max", whit_jmax, "finest level");
  whit->add_flag("--dump-cubes", whit_dump, "also dump every cube as JSON");

  // flights
  auto* fl = app.add_subcommand("flights", "run a flight campaign");
  std::string fl_config;
  std::string fl_engine;
  std::int64_t fl_flights = -1, fl_nmax = -1;
  double fl_eps = -1, fl_delta = -1, fl_resc = -1;
  std::int64_t fl_seed = -1;
  fl->add_option("--config", fl_config, "campaign config JSON");
  fl->add_option("--engine", fl_engine, "wos | lattice");
  fl->add_option("--flights", fl_flights, "number of flights");
  fl->add_option("--seed", fl_seed, "master seed");
  fl->add_option("--eps", fl_eps, "start vicinity scale");
  fl->add_option("--delta", fl_delta, "WoS absorption distance");
  fl->add_option("--n-max", fl_nmax, "step cap");
  fl->add_option("--r-esc", fl_resc, "escape radius");

  // fit
  auto* fit = app.add_subcommand("fit", "histogram + tail fit from a flights CSV");
  std::string fit_flights, fit_kind = "theta_r", fit_estimator = "ccdf";
  double fit_wlo = 0, fit_whi = 0, fit_ratio = TailHistogram::kDefaultRatio;
  bool fit_same_side = false;
  int fit_bootstrap = 0;
  fit->add_option("--flights", fit_flights, "flights CSV")->required();
  fit->add_option("--kind", fit_kind, "psi_n | theta_r | survival");
  fit->add_option("--window-lo", fit_wlo, "fit window lower bound")->required();
  fit->add_option("--window-hi", fit_whi, "fit window upper bound")->required();
  fit->add_option("--estimator", fit_estimator, "ccdf | density");
  fit->add_flag("--same-side", fit_same_side, "keep only same-side flights");
  fit->add_option("--ratio", fit_ratio, "geometric bin ratio");
  fit->add_option("--bootstrap", fit_bootstrap, "bootstrap resamples for the exponent CI");

  // report
  auto* rep = app.add_subcommand("report", "compare a fit against the predicted exponents");
  std::string rep_fit, rep_svg;
  double rep_d = 0, rep_tol = 0.1;
  int rep_de = 2;
  rep->add_option("--fit", rep_fit, "fit JSON from the fit subcommand")->required();
  rep->add_option("--d", rep_d, "boundary Minkowski dimension")->required();
  rep->add_option("--de", rep_de, "ambient dimension");
  rep->add_option("--tol", rep_tol, "tolerance");
  rep->add_option("--svg", rep_svg, "also write a log-log SVG (relative to --out)");

  // verify
  auto* ver = app.add_subcommand("verify", "run an acceptance preset end to end");
  std::string ver_preset;
  double ver_flights = 0;
  std::uint64_t ver_seed = 0;
  ver->add_option("--preset", ver_preset, "line2d | plane3d | koch | saw")->required();
  ver->add_option("--flights", ver_flights, "override flight count (accepts 1e6 notation)");
  ver->add_option("--seed", ver_seed, "override master seed");

  int opt_workers = 0;
  app.add_option("--workers", opt_workers, "worker threads (overrides BFLIGHTS_WORKERS)");

  try {
    app.parse(argc, argv);
    workers = opt_workers;

    if (gen->parsed()) {
      if (gen_saw->parsed()) {
        return cmd_generate(
            "saw", {{"steps", saw_steps}, {"attempts", saw_attempts}, {"seed", saw_seed}}, out_dir);
      }
      if (gen_koch->parsed()) return cmd_generate("koch", {{"iterations", koch_iters}}, out_dir);
      return cmd_generate("line", {{"d_e", line_de}}, out_dir);
    }
    if (dim->parsed()) {
      return cmd_dimension(dim_boundary, dim_jmin, dim_jmax, dim_wlo, dim_whi, workers, out_dir);
    }
    if (whit->parsed()) {
      return cmd_whitney(whit_boundary, whit_depth, whit_jmin, whit_jmax, whit_dump, workers,
                         out_dir);
    }
    if (fl->parsed()) {
      json overrides = json::object();
      if (!fl_engine.empty()) overrides["engine"] = fl_engine;
      if (fl_flights >= 0) overrides["flights"] = fl_flights;
      if (fl_seed >= 0) overrides["seed"] = static_cast<std::uint64_t>(fl_seed);
      if (fl_eps >= 0) overrides["eps"] = fl_eps;
      if (fl_delta >= 0) overrides["delta"] = fl_delta;
      if (fl_nmax >= 0) overrides["n_max"] = fl_nmax;
      if (fl_resc >= 0) overrides["r_esc"] = fl_resc;
      if (workers > 0) overrides["workers"] = workers;
      return cmd_flights(resolve_plan(fl_config, overrides), out_dir);
    }
    if (fit->parsed()) {
      return cmd_fit(fit_flights, fit_kind, fit_wlo, fit_whi, fit_estimator, fit_same_side,
                     fit_ratio, fit_bootstrap, out_dir);
    }
    if (rep->parsed()) return cmd_report(rep_fit, rep_d, rep_de, rep_tol, rep_svg, out_dir);
    if (ver->parsed()) {
      VerifyOptions opt;
      opt.seed = ver_seed;
      opt.flights = static_cast<std::int64_t>(ver_flights);
      opt.workers = workers;
      opt.out_dir = out_dir;
      return cmd_verify(ver_preset, opt);
    }
    throw UsageError("no subcommand");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InsufficientDataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
