#include "augequiv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "augequiv/config.hpp"
#include "augequiv/error.hpp"

namespace augequiv {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string subset_name(const std::vector<BasisId>& subset) {
    std::string out;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) out += '+';
        out += to_string(subset[i]);
    }
    return out;
}

}  // namespace

IRPoint compute_ir(const std::vector<ExperimentRecord>& records,
                   const std::string& dataset_id, std::int64_t n_base, double scale) {
    if (!(scale > 0.0)) throw ConfigError("ir: scale must be positive");
    const double added = scale * static_cast<double>(n_base);

    bool have_base = false, have_closed = false, have_open = false;
    double base_sum = 0, closed_sum = 0, open_sum = 0;
    int base_n = 0, closed_n = 0, open_n = 0;
    for (const auto& r : records) {
        if (r.dataset_id != dataset_id || r.n_base != n_base) continue;
        if (r.added_real == 0 && r.added_syn == 0) {
            have_base = true;
            base_sum += r.accuracy;
            ++base_n;
        } else if (r.added_real == 0 &&
                   std::abs(static_cast<double>(r.added_syn) - added) < 0.5) {
            if (r.mode == Mode::ClosedSet) {
                have_closed = true;
                closed_sum += r.accuracy;
                ++closed_n;
            } else if (r.mode == Mode::OpenSet) {
                have_open = true;
                open_sum += r.accuracy;
                ++open_n;
            }
        }
    }
    auto missing = [&](const std::string& what) {
        return DataError("ir: no " + what + " row for " + dataset_id + " at n_base " +
                         std::to_string(n_base) + ", scale 1:" + num(scale));
    };
    if (!have_base) throw missing("baseline");
    if (!have_closed) throw missing("closed_set");
    if (!have_open) throw missing("open_set");

    IRPoint point;
    point.n_base = n_base;
    point.scale = scale;
    double base = base_sum / base_n;
    point.delta_closed = closed_sum / closed_n - base;
    point.delta_open = open_sum / open_n - base;
    point.defined = point.delta_open != 0.0;
    point.ir = point.defined ? point.delta_closed / point.delta_open : 0.0;
    return point;
}

std::vector<BasisId> select_study_subset(
    const std::map<std::int64_t, std::vector<SlicePoint>>& slices, double epsilon,
    Criterion criterion) {
    if (slices.empty()) throw DataError("study selection: no slices");
    // candidate tables are index-aligned across slices (same enumeration)
    std::vector<SelectionResult> per_slice;
    for (const auto& [n_base, points] : slices)
        per_slice.push_back(select_model(points, epsilon, criterion));

    const std::size_t n_candidates = per_slice.front().candidates.size();
    bool have_best = false;
    double best_mean = 0.0;
    std::size_t best_index = 0;
    for (std::size_t c = 0; c < n_candidates; ++c) {
        bool everywhere = true;
        double mean = 0.0;
        for (const auto& sel : per_slice) {
            const CandidateFit& cand = sel.candidates[c];
            if (!cand.admissible) {
                everywhere = false;
                break;
            }
            mean += cand.score;
        }
        if (!everywhere) continue;
        mean /= static_cast<double>(per_slice.size());
        if (!have_best || mean > best_mean + 1e-12) {
            have_best = true;
            best_mean = mean;
            best_index = c;
        }
    }
    if (!have_best)
        throw FitError("study selection: no basis subset is admissible on every slice");
    return per_slice.front().candidates[best_index].subset;
}

namespace {

StudyOutcome run_mode(const std::vector<ExperimentRecord>& records,
                      const StudyConfig& config, Mode mode) {
    std::map<std::int64_t, std::vector<SlicePoint>> slices;
    for (const auto& [n_base, ratios] : config.tuple_grid)
        slices[n_base] = slice_for_base(records, config.dataset_id, mode, n_base);

    StudyOutcome outcome;
    outcome.mode = mode;
    outcome.subset = select_study_subset(slices, config.epsilon, config.criterion);

    std::map<std::int64_t, AccuracySurface> surfaces;
    for (const auto& [n_base, points] : slices) {
        SliceFit fit;
        fit.n_base = n_base;
        fit.per_slice_subset =
            select_model(points, config.epsilon, config.criterion).best.subset;
        fit.model = ols_fit(points, outcome.subset, config.epsilon);
        fit.agrees = fit.per_slice_subset == outcome.subset;
        surfaces.emplace(n_base, make_surface(config.dataset_id, mode, n_base,
                                              fit.model, config.epsilon, points));
        outcome.slices.push_back(std::move(fit));
    }
    outcome.tuples = build_tuples(surfaces, config);
    outcome.law =
        fit_law(outcome.tuples.tuples, compute_tau(config.n_total), config.loss);
    return outcome;
}

}  // namespace

ConclusionReport run_study(const std::vector<ExperimentRecord>& records,
                           const StudyConfig& config, const std::vector<Mode>& modes,
                           double ir_scale) {
    config.validate();
    ConclusionReport report;
    report.config = config;
    report.ir_scale = ir_scale;

    for (Mode mode : modes) {
        if (mode == Mode::RealAug)
            throw ConfigError("run_study: modes must be synthetic-augmentation modes");
        try {
            report.modes.push_back(run_mode(records, config, mode));
        } catch (const Error& e) {
            report.mode_errors[to_string(mode)] = e.what();
            report.partial = true;
        }
    }

    // IR table over every n_base with all three rows present
    std::set<std::int64_t> bases;
    for (const auto& r : records)
        if (r.dataset_id == config.dataset_id) bases.insert(r.n_base);
    for (std::int64_t n_base : bases) {
        try {
            report.ir_table.push_back(compute_ir(records, config.dataset_id, n_base,
                                                 ir_scale));
        } catch (const DataError&) {
            // that n_base has no matched closed/open pair; not an error
        }
    }

    const StudyOutcome* closed = nullptr;
    const StudyOutcome* open = nullptr;
    for (const auto& outcome : report.modes) {
        if (outcome.mode == Mode::ClosedSet) closed = &outcome;
        if (outcome.mode == Mode::OpenSet) open = &outcome;
    }
    for (const auto& outcome : report.modes) {
        Check check;
        check.name = "c2_gt_1 " + to_string(outcome.mode);
        check.applicable = true;
        check.passed = outcome.law.c2 > 1.0;
        check.evidence = "c2 = " + num(outcome.law.c2);
        report.checks.push_back(std::move(check));
    }
    {
        Check check;
        check.name = "closed_c1_lt_open_c1";
        check.applicable = closed != nullptr && open != nullptr;
        if (check.applicable) {
            check.passed = closed->law.c1 < open->law.c1;
            check.evidence = "closed c1 = " + num(closed->law.c1) + ", open c1 = " +
                             num(open->law.c1);
        } else {
            check.evidence = "needs both closed_set and open_set fits";
        }
        report.checks.push_back(std::move(check));
    }

    for (Mode mode : modes) {
        for (double eps : {0.1, 1.0, 10.0}) {
            EpsilonFit fit;
            fit.mode = mode;
            fit.epsilon = eps;
            StudyConfig varied = config;
            varied.epsilon = eps;
            try {
                StudyOutcome outcome = run_mode(records, varied, mode);
                fit.ok = true;
                fit.c1 = outcome.law.c1;
                fit.c2 = outcome.law.c2;
            } catch (const Error& e) {
                fit.error = e.what();
            }
            report.epsilon_sensitivity.push_back(std::move(fit));
        }
    }
    return report;
}

std::string contour_artifact_name(Mode mode, std::int64_t n_base) {
    return "contour_" + to_string(mode) + "_" + std::to_string(n_base) + ".svg";
}

AccuracySurface outcome_surface(const StudyConfig& config, const StudyOutcome& outcome,
                                std::int64_t n_base) {
    for (const auto& fit : outcome.slices) {
        if (fit.n_base != n_base) continue;
        AccuracySurface s;
        s.dataset_id = config.dataset_id;
        s.mode = outcome.mode;
        s.n_base = n_base;
        s.model = fit.model;
        s.epsilon = config.epsilon;
        return s;
    }
    throw DataError("no fitted slice for n_base " + std::to_string(n_base));
}

std::string write_report(const ConclusionReport& report) {
    std::string out;
    out += serialize_config(report.config);
    out += "ir_scale = " + num(report.ir_scale) + "\n";
    out += std::string("partial = ") + (report.partial ? "true" : "false") + "\n";

    for (const auto& outcome : report.modes) {
        out += "\n[study " + to_string(outcome.mode) + "]\n";
        out += "subset = " + subset_name(outcome.subset) + "\n";
        for (const auto& fit : outcome.slices) {
            out += "slice = n_base=" + std::to_string(fit.n_base) +
                   " slice_best=" + subset_name(fit.per_slice_subset) +
                   " agrees=" + (fit.agrees ? "true" : "false") +
                   " adj_r2=" + num(fit.model.adjusted_r2) + "\n";
        }
        for (const auto& t : outcome.tuples.tuples) {
            out += "tuple = n_base=" + std::to_string(t.n_base) + " r=" +
                   num(t.ratio()) + " syn_ratio=" + num(t.syn_ratio()) + "\n";
        }
        out += "discarded = " + std::to_string(outcome.tuples.n_discarded) + "\n";
        out += "skipped = " + std::to_string(outcome.tuples.skipped.size()) + "\n";
        out += "c1 = " + num(outcome.law.c1) + "\n";
        out += "c2 = " + num(outcome.law.c2) + "\n";
        out += "tau = " + num(outcome.law.tau) + "\n";
        out += "rmse = " + num(outcome.law.rmse) + "\n";
        out += "n_tuples = " + std::to_string(outcome.law.n_tuples) + "\n";
        out += "n_zero = " + std::to_string(outcome.law.n_zero) + "\n";
        for (const auto& fit : outcome.slices)
            out += "contour = " + contour_artifact_name(outcome.mode, fit.n_base) + "\n";
    }
    for (const auto& [mode, error] : report.mode_errors) {
        out += "\n[study " + mode + " failed]\n";
        out += "error = " + error + "\n";
    }

    out += "\n[ir]\n";
    out += "columns = n_base,scale,delta_closed,delta_open,ir\n";
    for (const auto& p : report.ir_table) {
        out += "ir = " + std::to_string(p.n_base) + "," + num(p.scale) + "," +
               num(p.delta_closed) + "," + num(p.delta_open) + "," +
               (p.defined ? num(p.ir) : std::string("undefined")) + "\n";
    }

    out += "\n[checks]\n";
    for (const auto& check : report.checks) {
        out += "check = " + check.name + " ";
        out += check.applicable ? (check.passed ? "pass" : "fail")
                                : std::string("not-applicable");
        out += " (" + check.evidence + ")\n";
    }

    out += "\n[epsilon]\n";
    out += "columns = mode,epsilon,c1,c2\n";
    for (const auto& fit : report.epsilon_sensitivity) {
        out += "eps = " + to_string(fit.mode) + "," + num(fit.epsilon) + ",";
        if (fit.ok)
            out += num(fit.c1) + "," + num(fit.c2) + "\n";
        else
            out += "error: " + fit.error + "\n";
    }
    return out;
}

}  // namespace augequiv
