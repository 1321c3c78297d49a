#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "augequiv/dataset.hpp"
#include "augequiv/surface.hpp"

namespace augequiv {

/// One element of the equivalence set E.
struct EquivalenceTuple {
    std::int64_t n_base = 0;
    double n_real_plus = 0.0;
    double n_syn_plus = 0.0;
    std::string source_surface;  // "dataset/mode/n_base"

    double ratio() const { return n_real_plus / static_cast<double>(n_base); }
    double syn_ratio() const { return n_syn_plus / static_cast<double>(n_base); }
};

struct StartOutcome {
    double c1_start = 0.0, c2_start = 0.0;
    double c1 = 0.0, c2 = 0.0;
    double sse = 0.0;
    bool converged = false;
};

/// Fitted n_syn+/n_base = c1^(tau n_base) * (c2^(n_real+/n_base) - 1).
struct EquivalenceLaw {
    double c1 = 0.0;    // > 0
    double c2 = 0.0;    // > 1
    double tau = 0.0;   // fixed, never fitted
    double rmse = 0.0;  // in the fitted loss space
    int n_tuples = 0;   // tuples entering the loss
    int n_zero = 0;     // y = 0 tuples excluded from a log-space loss
    std::vector<StartOutcome> starts;
};

/// tau = 10 / n_total. Throws ConfigError on nonpositive n_total.
double compute_tau(std::int64_t n_total);

struct SolveResult {
    bool discarded = false;   // target unreachable within the ratio cap
    double n_syn_plus = 0.0;  // valid when !discarded
};

/// Solves Acc_syn(n_base, s) = Acc_real(n_base + n_real_plus, 0) for
/// s in [0, ratio_cap * n_base] by bisection (relative tolerance 1e-9).
/// Throws SolveError when the synthetic surface is non-monotone over the
/// bracket and DataError when the target lies below the baseline accuracy.
SolveResult solve_equivalent_syn(const AccuracySurface& real_surface,
                                 const AccuracySurface& syn_surface,
                                 std::int64_t n_base, double n_real_plus,
                                 double ratio_cap);

struct TupleSet {
    std::vector<EquivalenceTuple> tuples;
    int n_discarded = 0;
    std::vector<std::string> skipped;  // non-monotone solves, one note each
};

/// Iterates the configured (n_base, ratio) grid, solving each tuple on the
/// surface for that n_base. Throws DataError when a grid n_base has no surface.
TupleSet build_tuples(const std::map<std::int64_t, AccuracySurface>& surfaces,
                      const StudyConfig& config);

/// Regresses (c1, c2) over the tuple set with tau held fixed, via
/// Gauss-Newton with backtracking from a fixed multi-start grid.
/// Throws DataError with fewer than 3 positive tuples over 2 distinct ratios
/// and FitError when every start diverges.
EquivalenceLaw fit_law(const std::vector<EquivalenceTuple>& tuples, double tau,
                       LossSpace loss = LossSpace::Log);

/// c1^(tau n_base) * (c2^r - 1); exactly 0 at r = 0.
double predict_ratio(const EquivalenceLaw& law, std::int64_t n_base, double r);

}  // namespace augequiv
