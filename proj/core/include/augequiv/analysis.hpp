#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "augequiv/dataset.hpp"
#include "augequiv/equivlaw.hpp"
#include "augequiv/linfit.hpp"
#include "augequiv/surface.hpp"

namespace augequiv {

/// Closed-vs-open improvement ratio at augmentation scale 1:k.
struct IRPoint {
    std::int64_t n_base = 0;
    double scale = 1.0;
    double delta_closed = 0.0;
    double delta_open = 0.0;
    double ir = 0.0;
    bool defined = false;  // false when delta_open == 0
};

/// Deltas against the shared baseline row. Throws DataError naming any
/// missing row (baseline, closed 1:k, open 1:k).
IRPoint compute_ir(const std::vector<ExperimentRecord>& records,
                   const std::string& dataset_id, std::int64_t n_base, double scale);

struct SliceFit {
    std::int64_t n_base = 0;
    std::vector<BasisId> per_slice_subset;  // what select_model picks alone
    LinearModel model;                      // study subset refit on this slice
    bool agrees = false;                    // per-slice choice == study choice
};

struct StudyOutcome {
    Mode mode = Mode::ClosedSet;
    std::vector<BasisId> subset;  // study-level selection
    std::vector<SliceFit> slices;
    TupleSet tuples;
    EquivalenceLaw law;
};

struct Check {
    std::string name;
    bool applicable = false;
    bool passed = false;
    std::string evidence;  // the numeric values compared
};

struct EpsilonFit {
    Mode mode = Mode::ClosedSet;
    double epsilon = 0.0;
    bool ok = false;
    double c1 = 0.0, c2 = 0.0;
    std::string error;
};

struct ConclusionReport {
    StudyConfig config;
    double ir_scale = 1.0;
    std::vector<StudyOutcome> modes;
    std::map<std::string, std::string> mode_errors;  // mode name -> first hard error
    bool partial = false;
    std::vector<IRPoint> ir_table;
    std::vector<Check> checks;
    std::vector<EpsilonFit> epsilon_sensitivity;
};

/// Chooses one basis subset for a whole study: the candidate admissible on
/// every slice with the highest mean criterion score. Throws FitError when
/// none qualifies.
std::vector<BasisId> select_study_subset(
    const std::map<std::int64_t, std::vector<SlicePoint>>& slices, double epsilon,
    Criterion criterion);

/// Full pipeline per requested mode: slice -> subset selection -> surfaces ->
/// tuples -> law; then the IR table over shared n_base values, conclusion
/// checks, and epsilon-sensitivity refits. A failing mode is recorded and the
/// remaining modes still run (report marked partial).
ConclusionReport run_study(const std::vector<ExperimentRecord>& records,
                           const StudyConfig& config, const std::vector<Mode>& modes,
                           double ir_scale = 1.0);

/// Deterministic relative file name for a study's contour artifact.
std::string contour_artifact_name(Mode mode, std::int64_t n_base);

/// Line-oriented `key = value` report; byte-identical for identical inputs.
std::string write_report(const ConclusionReport& report);

/// Rebuilds one fitted surface of a study outcome (for contour rendering).
/// Throws DataError when n_base is not part of the outcome.
AccuracySurface outcome_surface(const StudyConfig& config, const StudyOutcome& outcome,
                                std::int64_t n_base);

}  // namespace augequiv
