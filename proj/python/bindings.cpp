#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bflights/boundary_io.hpp"
#include "bflights/dimension.hpp"
#include "bflights/fractalgen.hpp"
#include "bflights/stats.hpp"
#include "bflights/verify.hpp"

namespace py = pybind11;
using namespace bflights;

namespace {

Point to_point(const std::vector<double>& coords) {
  Point p;
  if (coords.size() < 2 || coords.size() > 3) {
    throw DomainError("point needs 2 or 3 coordinates");
  }
  p.x = coords[0];
  p.y = coords[1];
  if (coords.size() == 3) p.z = coords[2];
  return p;
}

std::vector<std::vector<double>> vertices_list(const Boundary& b) {
  std::vector<std::vector<double>> out;
  out.reserve(b.vertices.size());
  const bool three = b.ambient_dim() == 3;
  for (const Point& v : b.vertices) {
    if (three) {
      out.push_back({v.x, v.y, v.z});
    } else {
      out.push_back({v.x, v.y});
    }
  }
  return out;
}

py::dict fit_dict(const TailFit& fit) {
  py::dict d;
  d["kind"] = std::string(to_string(fit.kind));
  d["slope"] = fit.slope;
  d["density_exponent"] = fit.density_exponent;
  d["stderr"] = fit.stderr_;
  d["window"] = py::make_tuple(fit.window.lo, fit.window.hi);
  d["n_used"] = fit.n_used;
  d["n_bins"] = fit.n_bins;
  return d;
}

py::dict hist_dict(const TailHistogram& h) {
  py::dict d;
  d["kind"] = std::string(to_string(h.kind()));
  d["ratio"] = h.ratio();
  d["total"] = h.total();
  d["nonpositive"] = h.nonpositive();
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::vector<double> ccdf;
  if (h.nonempty_bins() > 0) {
    const std::int32_t k0 = h.k_min();
    counts = h.counts();
    for (std::size_t i = 0; i <= counts.size(); ++i) {
      edges.push_back(h.edge(k0 + static_cast<std::int32_t>(i)));
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
      ccdf.push_back(h.ccdf(k0 + static_cast<std::int32_t>(i)));
    }
  }
  d["edges"] = edges;
  d["counts"] = counts;
  d["ccdf"] = ccdf;
  return d;
}

struct PyCampaign {
  CampaignStats stats;
  CampaignSummary summary;
};

PyCampaign run_campaign_py(const Boundary& boundary, const std::string& engine, double eps,
                           double delta, std::int64_t n_max, double r_esc, std::uint64_t seed,
                           std::int64_t flights, bool same_side, int max_depth, int workers) {
  const Scene scene(boundary);
  EngineConfig cfg;
  cfg.engine = engine == "lattice" ? EngineKind::Lattice : EngineKind::Wos;
  if (engine != "lattice" && engine != "wos") throw UsageError("engine must be wos or lattice");
  cfg.delta = delta > 0 ? delta : eps / 100.0;
  cfg.n_max = n_max;
  cfg.r_esc = r_esc > 0 ? r_esc : (scene.finite() ? 4.0 * scene.diameter() : 1e4 * eps);
  cfg.seed = seed;
  cfg.n_flights = flights;

  Accumulator acc({same_side, true});
  PyCampaign out;
  if (cfg.engine == EngineKind::Lattice) {
    const LatticeAbsorber absorber(scene);
    const StartSampler starts = StartSampler::lattice_adjacent(absorber);
    out.summary = run_campaign(scene, starts, &absorber, cfg, workers,
                               [&](int, std::span<const FlightRecord> r) { acc.add_all(r); });
  } else {
    const WhitneyBox box = default_whitney_box(scene);
    int depth = max_depth;
    if (depth <= 0) {
      depth = std::min(
          24, std::max(4, static_cast<int>(std::ceil(std::log2(box.side / eps * 5.0)))));
    }
    const auto dec = WhitneyDecomposition::build(scene, box, {1.0, 4.0, depth}, workers);
    const StartSampler starts = StartSampler::whitney_uniform(dec, eps, scene);
    out.summary = run_campaign(scene, starts, nullptr, cfg, workers,
                               [&](int, std::span<const FlightRecord> r) { acc.add_all(r); });
  }
  out.stats = acc.finalize();
  return out;
}

}  // namespace

PYBIND11_MODULE(_bflights, m) {
  m.doc() = "first-passage Brownian flights over fractal boundaries";

  py::register_exception<InsufficientDataError>(m, "InsufficientDataError");
  static py::exception<Error> base_exc(m, "BflightsError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InsufficientDataError&) {
      throw;  // handled by the registered exception above
    } catch (const Error& e) {
      py::set_error(base_exc, e.what());
    }
  });

  py::class_<Boundary>(m, "Boundary")
      .def_property_readonly("kind", [](const Boundary& b) { return std::string(to_string(b.kind)); })
      .def_property_readonly("ambient_dim", &Boundary::ambient_dim)
      .def("vertices", &vertices_list)
      .def("save", [](const Boundary& b, const std::string& path) { save_boundary_file(b, path); })
      .def("__len__", [](const Boundary& b) { return b.vertices.size(); })
      .def("__repr__", [](const Boundary& b) {
        return "<Boundary " + std::string(to_string(b.kind)) + ", " +
               std::to_string(b.vertices.size()) + " vertices>";
      });

  m.def("load_boundary", [](const std::string& path) { return load_boundary_file(path); });
  m.def("koch", [](int iterations) { return koch_generate({iterations}); }, py::arg("iterations"));
  m.def(
      "saw",
      [](std::int64_t n_steps, std::int64_t attempts, std::uint64_t seed) {
        SawConfig cfg;
        cfg.n_steps = n_steps;
        cfg.n_pivot_attempts = attempts;
        cfg.seed = seed;
        return saw_generate(cfg);
      },
      py::arg("n_steps"), py::arg("attempts") = 100000, py::arg("seed") = 1);
  m.def("line_reference", &line_reference, py::arg("ambient_dim") = 2);

  py::class_<Scene>(m, "Scene")
      .def(py::init<Boundary>())
      .def_property_readonly("dim", &Scene::dim)
      .def_property_readonly("finite", &Scene::finite)
      .def_property_readonly("diameter", [](const Scene& s) { return s.diameter(); })
      .def("distance",
           [](const Scene& s, const std::vector<double>& p) { return s.distance(to_point(p)); })
      .def("side",
           [](const Scene& s, const std::vector<double>& p) {
             return std::string(1, side_char(s.side_of(to_point(p))));
           })
      .def("nearest", [](const Scene& s, const std::vector<double>& p) {
        const NearestResult nr = s.nearest(to_point(p));
        py::dict d;
        d["distance"] = nr.distance;
        d["segment_id"] = nr.segment_id;
        d["closest"] = py::make_tuple(nr.closest.x, nr.closest.y, nr.closest.z);
        return d;
      });

  m.def(
      "box_count",
      [](const Boundary& b, const std::vector<double>& ladder, int workers) {
        const BoxCountSeries s = box_count(b, ladder, workers);
        return s.points;
      },
      py::arg("boundary"), py::arg("ladder"), py::arg("workers") = 0);
  m.def("dyadic_ladder", &dyadic_ladder, py::arg("diameter"), py::arg("j_min"), py::arg("j_max"));
  m.def(
      "fit_dimension",
      [](const std::vector<std::pair<double, std::uint64_t>>& counts, double window_lo,
         double window_hi) {
        std::optional<EpsWindow> w;
        if (window_hi > 0) w = EpsWindow{window_lo, window_hi};
        const DimensionEstimate est = fit_dimension_counts(counts, w, DimensionMethod::Box);
        py::dict d;
        d["d"] = est.d;
        d["stderr"] = est.stderr_;
        d["eps_min"] = est.eps_min;
        d["eps_max"] = est.eps_max;
        d["n_points"] = est.n_points;
        return d;
      },
      py::arg("counts"), py::arg("window_lo") = 0.0, py::arg("window_hi") = 0.0);

  py::class_<WhitneyDecomposition>(m, "WhitneyDecomposition")
      .def_property_readonly("cube_count",
                             [](const WhitneyDecomposition& d) { return d.cubes().size(); })
      .def("level_count",
           [](const WhitneyDecomposition& d, double t) { return d.level_cubes(t).cubes.size(); })
      .def("level_centers", [](const WhitneyDecomposition& d, double t) {
        std::vector<std::pair<double, double>> out;
        for (const auto& q : d.level_cubes(t).cubes) {
          const Point c = d.cube_center(q);
          out.emplace_back(c.x, c.y);
        }
        return out;
      });
  m.def(
      "whitney_decompose",
      [](const Boundary& b, int max_depth, int workers) {
        const Scene scene(b);
        return WhitneyDecomposition::build(scene, default_whitney_box(scene), {1.0, 4.0, max_depth},
                                           workers);
      },
      py::arg("boundary"), py::arg("max_depth") = 12, py::arg("workers") = 0);

  py::class_<PyCampaign>(m, "CampaignResult")
      .def_property_readonly("psi", [](const PyCampaign& c) { return hist_dict(c.stats.psi); })
      .def_property_readonly("theta", [](const PyCampaign& c) { return hist_dict(c.stats.theta); })
      .def_property_readonly("survival",
                             [](const PyCampaign& c) { return hist_dict(c.stats.survival); })
      .def("fit",
           [](const PyCampaign& c, const std::string& kind, double lo, double hi,
              const std::string& estimator) {
             const TailKind k = tail_kind_from_string(kind);
             const TailHistogram& h = k == TailKind::PsiN
                                          ? c.stats.psi
                                          : (k == TailKind::ThetaR ? c.stats.theta
                                                                   : c.stats.survival);
             return fit_dict(fit_tail(h, {lo, hi},
                                      estimator == "density" ? TailEstimator::DensityOls
                                                             : TailEstimator::CcdfOls));
           },
           py::arg("kind"), py::arg("window_lo"), py::arg("window_hi"),
           py::arg("estimator") = "ccdf")
      .def_property_readonly("counters", [](const PyCampaign& c) {
        py::dict d;
        d["n_records"] = c.stats.n_records;
        d["n_censored"] = c.stats.n_censored;
        d["n_side_excluded"] = c.stats.n_side_excluded;
        d["n_used"] = c.stats.n_used;
        d["censored_fraction"] = c.stats.censored_fraction();
        return d;
      });

  m.def("campaign", &run_campaign_py, py::arg("boundary"), py::arg("engine") = "wos",
        py::arg("eps") = 1.0, py::arg("delta") = 0.0, py::arg("n_max") = 1000000,
        py::arg("r_esc") = 0.0, py::arg("seed") = 1, py::arg("flights") = 100000,
        py::arg("same_side") = false, py::arg("max_depth") = 0, py::arg("workers") = 0);

  m.def("predict", [](double d, int d_e) {
    const TailPrediction p = predict(d, d_e);
    py::dict out;
    out["alpha"] = p.alpha;
    out["beta"] = p.beta;
    out["survival_exponent"] = p.survival_exponent;
    return out;
  });

  m.def(
      "level_hit",
      [](const Boundary& b, double eps, double r, std::int64_t n_flights, std::uint64_t seed,
         int max_depth) {
        const Scene scene(b);
        const auto dec = WhitneyDecomposition::build(scene, default_whitney_box(scene),
                                                     {1.0, 4.0, max_depth});
        return level_hit_experiment(dec, scene, eps, r, n_flights, seed);
      },
      py::arg("boundary"), py::arg("eps"), py::arg("r"), py::arg("n_flights") = 100000,
      py::arg("seed") = 1, py::arg("max_depth") = 13);
}
