// augequiv: fits accuracy surfaces over (real, synthetic) training amounts,
// derives real<->synthetic equivalence tuples, fits the two-parameter
// equivalence law, and reports improvement ratios and conclusion checks.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "augequiv/analysis.hpp"
#include "augequiv/config.hpp"
#include "augequiv/dataset.hpp"
#include "augequiv/equivlaw.hpp"
#include "augequiv/error.hpp"
#include "augequiv/linfit.hpp"
#include "augequiv/surface.hpp"

namespace fs = std::filesystem;
using namespace augequiv;

namespace {

struct Options {
    std::vector<std::string> inputs;
    std::string fixtures;
    std::string preset;
    std::string config_path;
    std::string out_dir = ".";
    std::optional<double> epsilon;
    std::optional<std::string> criterion;
    std::optional<std::string> loss;
    std::optional<std::int64_t> n_base;
    double scale = 1.0;
    std::optional<double> cap;
};

void add_common_flags(CLI::App* cmd, Options& opt, bool with_out) {
    cmd->add_option("--input", opt.inputs, "result table paths (CSV)");
    cmd->add_option("--fixtures", opt.fixtures,
                    "bundled fixture group or file name (e.g. cifar10)");
    cmd->add_option("--preset", opt.preset,
                    "study preset: cifar10, imagenet100, imagenet100_vit, bloodmnist");
    cmd->add_option("--config", opt.config_path, "study config file (key = value)");
    cmd->add_option("--epsilon", opt.epsilon, "log-offset epsilon override");
    cmd->add_option("--criterion", opt.criterion,
                    "model-selection criterion: r2, adjusted_r2 or rmse");
    cmd->add_option("--loss", opt.loss, "law-fit loss space: log or linear");
    cmd->add_option("--cap", opt.cap, "maximum allowed n_syn+/n_base");
    if (with_out) cmd->add_option("--out", opt.out_dir, "output directory");
}

std::vector<ExperimentRecord> load_records(const Options& opt) {
    std::vector<ExperimentRecord> records;
    if (!opt.fixtures.empty()) {
        auto part = load_fixture_group(opt.fixtures);
        records.insert(records.end(), part.begin(), part.end());
    }
    for (const auto& path : opt.inputs) {
        std::ifstream in(path);
        if (!in) throw DataError("cannot read " + path);
        std::vector<ExperimentRecord> part;
        try {
            part = parse_records(in);
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
        records.insert(records.end(), part.begin(), part.end());
    }
    if (records.empty())
        throw DataError("no input records: pass --input and/or --fixtures");
    return records;
}

StudyConfig load_study_config(const Options& opt) {
    StudyConfig config;
    if (!opt.config_path.empty())
        config = load_config_file(opt.config_path);
    else if (!opt.preset.empty())
        config = preset_config(opt.preset);
    else if (!opt.fixtures.empty())
        config = preset_config(opt.fixtures);  // group names double as presets
    else
        throw ConfigError("no study config: pass --preset, --config or --fixtures");
    if (opt.epsilon) config.epsilon = *opt.epsilon;
    if (opt.criterion) config.criterion = criterion_from_string(*opt.criterion);
    if (opt.loss) config.loss = loss_from_string(*opt.loss);
    if (opt.cap) config.ratio_cap = *opt.cap;
    config.validate();
    return config;
}

std::vector<Mode> present_modes(const std::vector<ExperimentRecord>& records,
                                const std::string& dataset_id) {
    std::vector<Mode> modes;
    for (Mode mode : {Mode::ClosedSet, Mode::OpenSet}) {
        for (const auto& r : records) {
            if (r.dataset_id == dataset_id && r.mode == mode) {
                modes.push_back(mode);
                break;
            }
        }
    }
    if (modes.empty())
        throw DataError("no synthetic-augmentation records for dataset " + dataset_id);
    return modes;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
}

std::vector<double> contour_levels(const AccuracySurface& surface) {
    double lo = surface.eval_added(0.0, 0.0);
    double hi = surface.eval_added(4.0 * surface.n_base, 0.0);
    std::vector<double> levels;
    for (int i = 0; i < 8; ++i) levels.push_back(lo + (hi - lo) * (i + 1) / 9.0);
    return levels;
}

void write_contour_svg(const fs::path& dir, const StudyConfig& config,
                       const StudyOutcome& outcome, std::int64_t n_base) {
    AccuracySurface surface = outcome_surface(config, outcome, n_base);
    ContourSet set = contour_grid(surface, default_grid(surface),
                                  contour_levels(surface));
    SvgStyle style;
    style.title = config.dataset_id + " " + to_string(outcome.mode) + " n_base=" +
                  std::to_string(n_base);
    fs::path path = dir / contour_artifact_name(outcome.mode, n_base);
    write_file(path, render_svg(set, style));
    std::cout << path.string() << "\n";
}

int cmd_fit_surface(const Options& opt) {
    auto records = load_records(opt);
    auto config = load_study_config(opt);
    for (Mode mode : present_modes(records, config.dataset_id)) {
        for (const auto& [n_base, ratios] : config.tuple_grid) {
            if (opt.n_base && *opt.n_base != n_base) continue;
            auto points = slice_for_base(records, config.dataset_id, mode, n_base);
            auto sel = select_model(points, config.epsilon, config.criterion);
            std::printf("%s/%s/%lld:", config.dataset_id.c_str(),
                        to_string(mode).c_str(), static_cast<long long>(n_base));
            for (std::size_t i = 0; i < sel.best.subset.size(); ++i)
                std::printf(" %s=%.6g", to_string(sel.best.subset[i]).c_str(),
                            sel.best.coefficients[i]);
            std::printf(" intercept=%.6g adj_r2=%.6g\n", sel.best.intercept,
                        sel.best.adjusted_r2);
        }
    }
    return 0;
}

int cmd_solve_equivalence(const Options& opt) {
    auto records = load_records(opt);
    auto config = load_study_config(opt);
    if (!opt.n_base) throw ConfigError("solve-equivalence needs --n-base");
    for (Mode mode : present_modes(records, config.dataset_id)) {
        auto points = slice_for_base(records, config.dataset_id, mode, *opt.n_base);
        auto sel = select_model(points, config.epsilon, config.criterion);
        auto surface = make_surface(config.dataset_id, mode, *opt.n_base, sel.best,
                                    config.epsilon, points);
        auto solved = solve_equivalent_syn(surface, surface, *opt.n_base,
                                           opt.scale * *opt.n_base, config.ratio_cap);
        if (solved.discarded)
            std::printf("%s r=%.6g: discarded (needs more than %.6g x n_base)\n",
                        to_string(mode).c_str(), opt.scale, config.ratio_cap);
        else
            std::printf("%s r=%.6g: n_syn+ = %.6g (ratio %.6g)\n",
                        to_string(mode).c_str(), opt.scale, solved.n_syn_plus,
                        solved.n_syn_plus / static_cast<double>(*opt.n_base));
    }
    return 0;
}

int cmd_fit_law(const Options& opt) {
    auto records = load_records(opt);
    auto config = load_study_config(opt);
    auto report = run_study(records, config, present_modes(records, config.dataset_id),
                            opt.scale);
    for (const auto& outcome : report.modes)
        std::printf("%s/%s: c1 = %.4f, c2 = %.4f, tau = %.6g, tuples = %d, "
                    "discarded = %d\n",
                    config.dataset_id.c_str(), to_string(outcome.mode).c_str(),
                    outcome.law.c1, outcome.law.c2, outcome.law.tau,
                    outcome.law.n_tuples, outcome.tuples.n_discarded);
    for (const auto& [mode, error] : report.mode_errors)
        std::fprintf(stderr, "%s: %s\n", mode.c_str(), error.c_str());
    return report.modes.empty() ? 2 : 0;
}

int cmd_ir(const Options& opt) {
    auto records = load_records(opt);
    std::set<std::string> datasets;
    for (const auto& r : records) datasets.insert(r.dataset_id);
    if (datasets.size() != 1)
        throw DataError("ir needs records from exactly one dataset");
    if (!opt.n_base) throw ConfigError("ir needs --n-base");
    IRPoint point = compute_ir(records, *datasets.begin(), *opt.n_base, opt.scale);
    if (!point.defined) {
        std::printf("IR undefined (delta_open = 0)\n");
        return 0;
    }
    std::printf("IR = %.2f\n", point.ir);
    return 0;
}

int cmd_contour(const Options& opt) {
    auto records = load_records(opt);
    auto config = load_study_config(opt);
    fs::create_directories(opt.out_dir);
    auto report = run_study(records, config, present_modes(records, config.dataset_id),
                            opt.scale);
    for (const auto& outcome : report.modes)
        for (const auto& fit : outcome.slices) {
            if (opt.n_base && *opt.n_base != fit.n_base) continue;
            write_contour_svg(opt.out_dir, config, outcome, fit.n_base);
        }
    if (report.partial) {
        for (const auto& [mode, error] : report.mode_errors)
            std::fprintf(stderr, "%s: %s\n", mode.c_str(), error.c_str());
    }
    return report.modes.empty() ? 2 : 0;
}

int cmd_report(const Options& opt) {
    auto records = load_records(opt);
    auto config = load_study_config(opt);
    fs::create_directories(opt.out_dir);
    auto report = run_study(records, config, present_modes(records, config.dataset_id),
                            opt.scale);
    fs::path report_path = fs::path(opt.out_dir) / "report.txt";
    write_file(report_path, write_report(report));
    std::cout << report_path.string() << "\n";
    for (const auto& outcome : report.modes)
        for (const auto& fit : outcome.slices)
            write_contour_svg(opt.out_dir, config, outcome, fit.n_base);
    for (const auto& [mode, error] : report.mode_errors)
        std::fprintf(stderr, "%s: %s\n", mode.c_str(), error.c_str());
    return report.modes.empty() ? 2 : 0;
}

int cmd_validate(const Options& opt) {
    if (opt.inputs.empty() && opt.fixtures.empty()) {
        for (const auto& name : fixture_names()) {
            auto records = load_fixture(name);
            std::printf("%s: %zu records ok\n", name.c_str(), records.size());
        }
        return 0;
    }
    auto records = load_records(opt);
    std::printf("%zu records ok\n", records.size());
    return 0;
}

int cmd_fixtures(const std::string& name) {
    if (name.empty()) {
        std::printf("groups:");
        for (const auto& group : fixture_group_names()) std::printf(" %s", group.c_str());
        std::printf("\nfiles:");
        for (const auto& file : fixture_names()) std::printf(" %s", file.c_str());
        std::printf("\n");
        return 0;
    }
    std::fputs(fixture_csv(name).c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equivalence analysis for generative data augmentation"};
    app.require_subcommand(1);

    Options opt;
    std::string fixture_name;

    auto* fit_surface = app.add_subcommand("fit-surface", "fit and print accuracy models");
    add_common_flags(fit_surface, opt, false);
    fit_surface->add_option("--n-base", opt.n_base, "restrict to one base size");

    auto* solve = app.add_subcommand("solve-equivalence",
                                     "solve one real->synthetic equivalence");
    add_common_flags(solve, opt, false);
    solve->add_option("--n-base", opt.n_base, "base training-set size");
    solve->add_option("--scale", opt.scale, "added real amount as a multiple of n_base");

    auto* fit_law_cmd = app.add_subcommand("fit-law", "fit the equivalence law");
    add_common_flags(fit_law_cmd, opt, false);

    auto* ir = app.add_subcommand("ir", "closed-vs-open improvement ratio");
    add_common_flags(ir, opt, false);
    ir->add_option("--n-base", opt.n_base, "base training-set size");
    ir->add_option("--scale", opt.scale, "augmentation scale 1:k");

    auto* contour = app.add_subcommand("contour", "write accuracy contour SVGs");
    add_common_flags(contour, opt, true);
    contour->add_option("--n-base", opt.n_base, "restrict to one base size");

    auto* report = app.add_subcommand("report", "full study report plus contours");
    add_common_flags(report, opt, true);
    report->add_option("--scale", opt.scale, "IR augmentation scale 1:k");

    auto* validate = app.add_subcommand("validate", "parse and validate result tables");
    add_common_flags(validate, opt, false);

    auto* fixtures = app.add_subcommand("fixtures", "list or dump bundled fixtures");
    fixtures->add_option("name", fixture_name, "fixture file to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(fit_surface)) return cmd_fit_surface(opt);
        if (app.got_subcommand(solve)) return cmd_solve_equivalence(opt);
        if (app.got_subcommand(fit_law_cmd)) return cmd_fit_law(opt);
        if (app.got_subcommand(ir)) return cmd_ir(opt);
        if (app.got_subcommand(contour)) return cmd_contour(opt);
        if (app.got_subcommand(report)) return cmd_report(opt);
        if (app.got_subcommand(validate)) return cmd_validate(opt);
        if (app.got_subcommand(fixtures)) return cmd_fixtures(fixture_name);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "augequiv: %s\n", e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "augequiv: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "augequiv: %s\n", e.what());
        return 2;
    }
    return 1;
}
