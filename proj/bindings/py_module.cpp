#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "harmext/distance.hpp"
#include "harmext/graph_potentials.hpp"
#include "harmext/hilbert.hpp"
#include "harmext/pipeline.hpp"
#include "harmext/solver.hpp"

namespace py = pybind11;
using namespace harmext;

namespace {

TrigPoly trig_from_pairs(const std::vector<std::pair<int, cplx>>& coeffs) {
    if (coeffs.empty()) return TrigPoly::zero();
    int kmin = coeffs[0].first, kmax = coeffs[0].first;
    for (const auto& [k, c] : coeffs) {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
    }
    TrigPoly p{kmin, std::vector<cplx>(std::size_t(kmax - kmin + 1), cplx(0.0))};
    for (const auto& [k, c] : coeffs) p.coeffs[std::size_t(k - kmin)] += c;
    return p;
}

py::dict profile_dict(const DistanceProfile& prof) {
    py::dict out;
    out["d_star"] = prof.d_star;
    out["l_star"] = prof.l_star;
    out["curvature_bound"] = prof.curvature_bound;
    out["grid_min_d"] = prof.grid_min_d;
    out["argmin_t"] = prof.argmin_t;
    if (prof.fourier_lower_bound) out["fourier_lower_bound"] = *prof.fourier_lower_bound;
    py::list rows;
    for (const ProfileRow& r : prof.rows) {
        py::dict row;
        row["t"] = r.t;
        row["d"] = r.d;
        row["r0"] = r.r0;
        row["sup_root"] = r.sup_root;
        row["R2"] = r.r2;
        row["kappa"] = r.kappa;
        row["speed"] = r.speed;
        rows.append(row);
    }
    out["rows"] = rows;
    out["warnings"] = prof.warnings;
    return out;
}

}  // namespace

PYBIND11_MODULE(_harmext, m) {
    m.doc() = "Exterior harmonic extension toolkit";

    py::register_exception<Error>(m, "HarmextError");

    py::class_<CurveModel>(m, "CurveModel")
        .def_static(
            "closed_fourier",
            [](const std::vector<std::pair<int, cplx>>& coeffs) {
                const TrigPoly p = trig_from_pairs(coeffs);
                return CurveModel::closed_fourier(p.min_k, p.coeffs);
            },
            py::arg("coeffs"))
        .def_static(
            "open_polynomial",
            [](const std::vector<double>& xc, const std::vector<double>& yc, double lo,
               double hi, bool exterior_left) {
                return CurveModel::open_polynomial(xc, yc, lo, hi, exterior_left);
            },
            py::arg("x_coeffs"), py::arg("y_coeffs"), py::arg("t_lo"), py::arg("t_hi"),
            py::arg("exterior_left") = true)
        .def("position", [](const CurveModel& c, double t) { return c.position(t); })
        .def("speed", &CurveModel::speed)
        .def("closed", &CurveModel::closed)
        .def_property_readonly("t_lo", &CurveModel::t_lo)
        .def_property_readonly("t_hi", &CurveModel::t_hi);

    m.def("frame_at", [](const CurveModel& c, double t) {
        const FrameAt f = frame_at(c, t);
        py::dict out;
        out["point"] = f.point;
        out["tangent"] = f.tangent;
        out["normal"] = f.normal;
        out["speed"] = f.speed;
        out["curvature"] = f.curvature;
        return out;
    });

    m.def("curve_jet", [](const CurveModel& c, double t0, int order) {
        return curve_jet(c, t0, std::size_t(order)).coeffs();
    });

    m.def("collar_width", &collar_width, py::arg("curve"), py::arg("tol") = 1e-9);
    m.def("min_radius_of_curvature", &min_radius_of_curvature);

    py::class_<BoundaryData>(m, "BoundaryData")
        .def_static(
            "from_trig",
            [](const CurveModel& curve, const std::vector<std::pair<int, cplx>>& f,
               const std::vector<std::pair<int, cplx>>& h, int grid_m, bool speed_scaled,
               bool entire) {
                return BoundaryData::from_coefficients(
                    curve, ScalarData::from_trig(trig_from_pairs(f)),
                    ScalarData::from_trig(trig_from_pairs(h)), grid_m, speed_scaled, entire);
            },
            py::arg("curve"), py::arg("f"), py::arg("h"), py::arg("grid_m") = 256,
            py::arg("speed_scaled") = false, py::arg("entire") = false)
        .def_static(
            "from_poly",
            [](const CurveModel& curve, const std::vector<double>& f,
               const std::vector<double>& h, int grid_m) {
                return BoundaryData::from_coefficients(curve, ScalarData::from_poly(Poly{f}),
                                                       ScalarData::from_poly(Poly{h}), grid_m);
            },
            py::arg("curve"), py::arg("f"), py::arg("h"), py::arg("grid_m") = 256)
        .def_static(
            "from_grid",
            [](const CurveModel& curve, const std::vector<double>& f,
               const std::vector<double>& h, bool fit) {
                return BoundaryData::from_grid(curve, f, h, fit);
            },
            py::arg("curve"), py::arg("f"), py::arg("h"), py::arg("fit") = true)
        .def_property_readonly("f_grid", &BoundaryData::f_grid)
        .def_property_readonly("h_grid", &BoundaryData::h_grid);

    m.def("boundary_trace", &boundary_trace);

    m.def("hilbert_transform", [](const CurveModel& c, const std::vector<double>& h) {
        return hilbert_transform(c, h);
    });

    m.def("compatibility", [](const CurveModel& c, const BoundaryData& d) {
        const CompatibilityReport rep = compatibility(c, d);
        py::dict out;
        out["verdict"] = std::string(to_string(rep.verdict));
        out["rho"] = rep.rho;
        out["strip_halfwidth"] = rep.strip_halfwidth;
        out["spectrum"] = rep.spectrum;
        out["note"] = rep.note;
        return out;
    });

    m.def(
        "local_distance",
        [](const CurveModel& c, const BoundaryData& d, double t0, int order) {
            return local_distance(c, d, t0, std::size_t(order));
        },
        py::arg("curve"), py::arg("data"), py::arg("t0"), py::arg("order") = 32);

    m.def(
        "compute_profile",
        [](const CurveModel& c, const BoundaryData& d, int grid, int order) {
            return profile_dict(compute_profile(c, d, {grid, std::size_t(order), 0.01}));
        },
        py::arg("curve"), py::arg("data"), py::arg("grid") = 256, py::arg("order") = 32);

    m.def(
        "extend",
        [](const CurveModel& c, const BoundaryData& d,
           const std::vector<std::array<double, 2>>& points, int order, int lattice,
           double distance_bound) {
            const auto samples = extend_on_grid(c, d, points, {order, lattice, 0.01},
                                                distance_bound);
            py::list out;
            for (const FieldSample& s : samples) {
                py::dict e;
                e["x"] = s.x;
                e["y"] = s.y;
                e["value"] = s.value;
                e["t0"] = s.t0;
                e["err_bound"] = s.err_bound;
                e["certified"] = s.certified;
                e["beyond_distance_bound"] = s.beyond_distance_bound;
                out.append(e);
            }
            return out;
        },
        py::arg("curve"), py::arg("data"), py::arg("points"), py::arg("order") = 24,
        py::arg("lattice") = 128, py::arg("distance_bound") = 0.0);

    m.def(
        "dirichlet_defect",
        [](const std::vector<double>& psi, const std::vector<double>& g,
           const std::vector<double>& h, double x) {
            return dirichlet_defect({Poly{psi}, Poly{g}, Poly{h}}, x);
        },
        py::arg("psi"), py::arg("g"), py::arg("h"), py::arg("x"));
    m.def(
        "neumann_correction",
        [](const std::vector<double>& psi, const std::vector<double>& g,
           const std::vector<double>& h, double x) {
            return neumann_correction({Poly{psi}, Poly{g}, Poly{h}}, x);
        },
        py::arg("psi"), py::arg("g"), py::arg("h"), py::arg("x"));

    m.def("run_job_json", [](const std::string& config_json, const std::string& base_dir) {
        const JobConfig cfg =
            config_from_json(nlohmann::json::parse(config_json), base_dir);
        const RunReport rep = run_job(cfg);
        return py::make_tuple(int(rep.exit_code), rep.body.dump());
    });
}
