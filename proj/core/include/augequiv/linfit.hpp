#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "augequiv/dataset.hpp"

namespace augequiv {

/// The five-element basis set over (n_real, n_syn, epsilon).
enum class BasisId : std::uint8_t { NReal = 0, NSyn, LogReal, LogSyn, LogTotal };

inline constexpr std::array<BasisId, 5> kAllBasisIds = {
    BasisId::NReal, BasisId::NSyn, BasisId::LogReal, BasisId::LogSyn, BasisId::LogTotal};

std::string to_string(BasisId id);
BasisId basis_from_string(const std::string& name);

double basis_value(BasisId id, double n_real, double n_syn, double epsilon);

/// An OLS fit of accuracy against a basis subset plus intercept.
struct LinearModel {
    std::vector<BasisId> subset;        // sorted by BasisId, nonempty
    std::vector<double> coefficients;   // one per subset entry
    double intercept = 0.0;
    double rss = 0.0;
    double r2 = 0.0;
    double adjusted_r2 = 0.0;
    int n_points = 0;

    double predict(double n_real, double n_syn, double epsilon) const;
};

/// True when the model's surface is nondecreasing in n_real and in n_syn over
/// the whole nonnegative quadrant (closed-form check on the coefficients).
bool is_monotone_nondecreasing(const LinearModel& model, double epsilon);

/// Least squares via Householder QR. Throws FitError on a rank-deficient
/// design matrix (naming the collinear columns) or too few points.
LinearModel ols_fit(const std::vector<SlicePoint>& points,
                    const std::vector<BasisId>& subset, double epsilon);

/// Outcome of one of the 31 candidate fits during model selection.
struct CandidateFit {
    std::vector<BasisId> subset;
    double score = 0.0;      // per the selection criterion (higher is better)
    double r2 = 0.0;
    double adjusted_r2 = 0.0;
    double rmse = 0.0;
    bool admissible = false;
    std::string rejection;   // empty when admissible
};

struct SelectionResult {
    LinearModel best;
    std::vector<CandidateFit> candidates;  // all 31, in enumeration order
};

/// Fits all 31 nonempty subsets of the basis, keeps candidates that fit and
/// whose surface is monotone nondecreasing on the quadrant, and returns the
/// admissible model maximizing the criterion. Ties break toward fewer terms,
/// then lexicographic subset order. Throws DataError below 6 points and
/// FitError when no candidate is admissible.
SelectionResult select_model(const std::vector<SlicePoint>& points, double epsilon,
                             Criterion criterion = Criterion::AdjustedR2);

double criterion_score(Criterion criterion, double r2, double adjusted_r2, double rmse);

}  // namespace augequiv
