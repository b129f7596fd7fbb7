#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "harmext/errors.hpp"
#include "harmext/pipeline.hpp"

using namespace harmext;

namespace {

struct CliArgs {
    std::string config_path;
    std::string out_dir;
    std::string points_csv;
};

int run_stage(const CliArgs& args, Stage stage) {
    try {
        JobConfig cfg = load_config(args.config_path);
        cfg.outputs = {stage};
        if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
        if (!args.points_csv.empty()) {
            cfg.points.kind = PointSpec::Kind::Csv;
            cfg.points.csv_path = args.points_csv;
        }
        if (stage == Stage::Extend && cfg.points.kind == PointSpec::Kind::None)
            throw ConfigError("extend requires a point grid (--points or config points)");
        const RunReport rep = run_job(cfg);
        for (const std::string& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
        std::printf("%s\n", rep.body.dump(2).c_str());
        return int(rep.exit_code);
    } catch (const ConfigError& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return int(ExitCode::BadConfig);
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return int(ExitCode::InternalError);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exterior harmonic extension toolkit"};
    app.require_subcommand(1);

    CliArgs args;
    auto add_common = [&](CLI::App* sub, bool with_points) {
        sub->add_option("--config", args.config_path, "job configuration (JSON or TOML)")
            ->required();
        sub->add_option("--out", args.out_dir, "output directory override");
        if (with_points)
            sub->add_option("--points", args.points_csv, "points CSV (header x,y)");
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "distance profile: d(t), d*, collar width, curvature bound");
    add_common(analyze, false);
    CLI::App* hilbert =
        app.add_subcommand("hilbert", "principal-value transform of the h samples");
    add_common(hilbert, false);
    CLI::App* compat =
        app.add_subcommand("compat", "analyticity diagnostic of the residual f - Hh");
    add_common(compat, false);
    CLI::App* extend =
        app.add_subcommand("extend", "evaluate the exterior extension at points");
    add_common(extend, true);

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(analyze)) return run_stage(args, Stage::Analyze);
    if (app.got_subcommand(hilbert)) return run_stage(args, Stage::Hilbert);
    if (app.got_subcommand(compat)) return run_stage(args, Stage::Compat);
    return run_stage(args, Stage::Extend);
}
