#include "harmext/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "harmext/csvio.hpp"
#include "harmext/distance.hpp"
#include "harmext/errors.hpp"
#include "harmext/hilbert.hpp"
#include "harmext/solver.hpp"

namespace harmext {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "harmext 0.1.0";

json json_number(double v) {
    if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
    if (std::isnan(v)) return json("nan");
    return json(v);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool wants(const JobConfig& cfg, Stage s) {
    return std::find(cfg.outputs.begin(), cfg.outputs.end(), s) != cfg.outputs.end();
}

std::vector<std::array<double, 2>> make_points(const JobConfig& cfg) {
    std::vector<std::array<double, 2>> pts;
    if (cfg.points.kind == PointSpec::Kind::Ring) {
        // Ring around the curve centroid (the k = 0 Fourier mode for closed
        // curves, the parameter midpoint for open ones).
        cplx center(0.0);
        if (cfg.curve.closed()) {
            const int j0 = -cfg.curve.min_k();
            if (j0 >= 0 && j0 < int(cfg.curve.fourier_coeffs().size()))
                center = cfg.curve.fourier_coeffs()[std::size_t(j0)];
        } else {
            center = cfg.curve.position(0.5 * (cfg.curve.t_lo() + cfg.curve.t_hi()));
        }
        for (int i = 0; i < cfg.points.count; ++i) {
            const double ang = 2.0 * M_PI * i / cfg.points.count;
            pts.push_back({center.real() + cfg.points.radius * std::cos(ang),
                           center.imag() + cfg.points.radius * std::sin(ang)});
        }
        return pts;
    }
    const CsvTable table = read_csv(cfg.points.csv_path);
    if (table.header != std::vector<std::string>{"x", "y"})
        throw ConfigError("points CSV must have header x,y");
    for (const auto& row : table.rows) pts.push_back({row[0], row[1]});
    return pts;
}

}  // namespace

RunReport run_job(const JobConfig& cfg) {
    RunReport rep;
    rep.body["version"] = kVersion;
    rep.body["config"] = cfg.echo;
    const auto out = cfg.out_dir;

    bool not_analytic = false;

    // compat
    if (wants(cfg, Stage::Compat) || wants(cfg, Stage::Extend)) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const CompatibilityReport comp = compatibility(cfg.curve, cfg.data);
            json cj;
            cj["verdict"] = to_string(comp.verdict);
            cj["rho"] = json_number(comp.rho);
            cj["strip_halfwidth"] = json_number(comp.strip_halfwidth);
            cj["fit_residual"] = json_number(comp.fit_residual);
            cj["note"] = comp.note;
            rep.body["compat"] = cj;
            not_analytic = comp.verdict == CompatVerdict::NotAnalytic;
            if (comp.verdict == CompatVerdict::Inconclusive)
                rep.warnings.push_back("compat: inconclusive decay verdict");

            CsvTable spectrum_table;
            spectrum_table.header = {"k", "mag"};
            for (std::size_t k = 0; k < comp.spectrum.size(); ++k)
                spectrum_table.rows.push_back({double(k), comp.spectrum[k]});
            write_csv(out / "residual_spectrum.csv", spectrum_table);
        } catch (const Error& err) {
            throw StageError("compat", err.what());
        }
        rep.timings["compat"] = seconds_since(t0);
    }

    // analyze
    DistanceProfile prof;
    if (wants(cfg, Stage::Analyze) || wants(cfg, Stage::Extend)) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            prof = compute_profile(cfg.curve, cfg.data,
                                   {cfg.knobs.profile_grid, std::size_t(cfg.knobs.order), 0.01});
            json aj;
            aj["d_star"] = json_number(prof.d_star);
            aj["l_star"] = json_number(prof.l_star);
            aj["curvature_bound"] = json_number(prof.curvature_bound);
            aj["grid_min_d"] = json_number(prof.grid_min_d);
            aj["argmin_t"] = json_number(prof.argmin_t);
            if (prof.fourier_lower_bound)
                aj["fourier_lower_bound"] = json_number(*prof.fourier_lower_bound);
            rep.body["analyze"] = aj;
            for (const std::string& w : prof.warnings) rep.warnings.push_back("analyze: " + w);

            CsvTable table;
            table.header = {"t", "d", "r0", "sup_root", "R2", "kappa", "speed"};
            for (const ProfileRow& r : prof.rows)
                table.rows.push_back({r.t, r.d, r.r0, r.sup_root, r.r2, r.kappa, r.speed});
            write_csv(out / "profile.csv", table);
        } catch (const Error& err) {
            throw StageError("analyze", err.what());
        }
        rep.timings["analyze"] = seconds_since(t0);
    }

    // hilbert
    if (wants(cfg, Stage::Hilbert)) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto hh = hilbert_transform(cfg.curve, cfg.data.h_grid());
            CsvTable table;
            table.header = {"t", "h", "Hh"};
            const int m = cfg.data.grid_size();
            for (int j = 0; j < m; ++j)
                table.rows.push_back({2.0 * M_PI * j / m, cfg.data.h_grid()[std::size_t(j)],
                                      hh[std::size_t(j)]});
            write_csv(out / "hilbert.csv", table);
            double max_abs = 0.0;
            for (double v : hh) max_abs = std::max(max_abs, std::abs(v));
            rep.body["hilbert"]["max_abs"] = json_number(max_abs);
        } catch (const Error& err) {
            throw StageError("hilbert", err.what());
        }
        rep.timings["hilbert"] = seconds_since(t0);
    }

    // extend
    if (wants(cfg, Stage::Extend)) {
        if (not_analytic) {
            rep.warnings.push_back(
                "extend: skipped, the compatibility verdict is NotAnalytic");
            rep.exit_code = ExitCode::NotAnalyticGate;
        } else {
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const auto pts = make_points(cfg);
                const auto samples = extend_on_grid(
                    cfg.curve, cfg.data, pts,
                    {cfg.knobs.extend_order, cfg.knobs.base_lattice, 0.01}, prof.d_star);
                CsvTable table;
                table.header = {"x", "y", "B1", "B2", "t0", "err_bound", "certified"};
                int beyond = 0, certified = 0;
                for (const FieldSample& s : samples) {
                    table.rows.push_back({s.x, s.y, s.value.real(), -s.value.imag(), s.t0,
                                          s.err_bound, s.certified ? 1.0 : 0.0});
                    beyond += s.beyond_distance_bound ? 1 : 0;
                    certified += s.certified ? 1 : 0;
                }
                write_csv(out / "field.csv", table);
                json ej;
                ej["points"] = int(samples.size());
                ej["certified"] = certified;
                ej["beyond_distance_bound"] = beyond;
                rep.body["extend"] = ej;
                if (beyond > 0)
                    rep.warnings.push_back("extend: " + std::to_string(beyond) +
                                           " point(s) lie beyond the guaranteed distance");
            } catch (const Error& err) {
                throw StageError("extend", err.what());
            }
            rep.timings["extend"] = seconds_since(t0);
        }
    }

    rep.body["warnings"] = rep.warnings;
    write_text_atomic(out / "report.json", rep.body.dump(2) + "\n");
    write_text_atomic(out / "timings.json", rep.timings.dump(2) + "\n");
    return rep;
}

}  // namespace harmext
