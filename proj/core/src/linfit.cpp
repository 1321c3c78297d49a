#include "augequiv/linfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "augequiv/error.hpp"

namespace augequiv {

std::string to_string(BasisId id) {
    switch (id) {
        case BasisId::NReal: return "N_REAL";
        case BasisId::NSyn: return "N_SYN";
        case BasisId::LogReal: return "LOG_REAL";
        case BasisId::LogSyn: return "LOG_SYN";
        case BasisId::LogTotal: return "LOG_TOTAL";
    }
    throw ConfigError("invalid basis id");
}

BasisId basis_from_string(const std::string& name) {
    for (BasisId id : kAllBasisIds)
        if (name == to_string(id)) return id;
    throw ParseError("unknown basis term '" + name + "'");
}

double basis_value(BasisId id, double n_real, double n_syn, double epsilon) {
    switch (id) {
        case BasisId::NReal: return n_real;
        case BasisId::NSyn: return n_syn;
        case BasisId::LogReal: return std::log(n_real + epsilon);
        case BasisId::LogSyn: return std::log(n_syn + epsilon);
        case BasisId::LogTotal: return std::log(n_real + n_syn + epsilon);
    }
    throw ConfigError("invalid basis id");
}

double LinearModel::predict(double n_real, double n_syn, double epsilon) const {
    double acc = intercept;
    for (std::size_t i = 0; i < subset.size(); ++i)
        acc += coefficients[i] * basis_value(subset[i], n_real, n_syn, epsilon);
    return acc;
}

namespace {

double coef_of(const LinearModel& model, BasisId id) {
    for (std::size_t i = 0; i < model.subset.size(); ++i)
        if (model.subset[i] == id) return model.coefficients[i];
    return 0.0;
}

// Partial derivative along one axis has the form
//   b_lin + b_log / (x + eps) + b_total / (x + y + eps),  x, y >= 0.
// With m = b_log + min(b_total, 0) it is bounded below by
// b_lin + m / (x + eps), so nonnegativity on the whole quadrant reduces to
// b_lin >= 0 together with (m >= 0 or b_lin + m / eps >= 0).
bool axis_nondecreasing(double b_lin, double b_log, double b_total, double epsilon) {
    double m = b_log + std::min(b_total, 0.0);
    if (b_lin < 0.0) return false;
    return m >= 0.0 || b_lin + m / epsilon >= 0.0;
}

}  // namespace

bool is_monotone_nondecreasing(const LinearModel& model, double epsilon) {
    double b_total = coef_of(model, BasisId::LogTotal);
    return axis_nondecreasing(coef_of(model, BasisId::NReal),
                              coef_of(model, BasisId::LogReal), b_total, epsilon) &&
           axis_nondecreasing(coef_of(model, BasisId::NSyn),
                              coef_of(model, BasisId::LogSyn), b_total, epsilon);
}

LinearModel ols_fit(const std::vector<SlicePoint>& points,
                    const std::vector<BasisId>& subset, double epsilon) {
    const std::size_t n = points.size();
    const std::size_t p = subset.size() + 1;  // + intercept
    if (subset.empty()) throw FitError("ols_fit: empty basis subset");
    if (n < p)
        throw FitError("ols_fit: " + std::to_string(n) + " points cannot determine " +
                       std::to_string(p) + " parameters");

    // Design matrix, column-major; intercept last.
    std::vector<std::vector<double>> a(p, std::vector<double>(n));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j + 1 < p; ++j)
            a[j][i] = basis_value(subset[j], points[i].n_real, points[i].n_syn, epsilon);
        a[p - 1][i] = 1.0;
        y[i] = points[i].accuracy;
    }

    // Householder QR with rank check; R overwrites the top of `a`.
    std::vector<double> col_norm(p);
    for (std::size_t j = 0; j < p; ++j)
        col_norm[j] = std::sqrt(std::inner_product(a[j].begin(), a[j].end(),
                                                   a[j].begin(), 0.0));
    for (std::size_t k = 0; k < p; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += a[k][i] * a[k][i];
        norm = std::sqrt(norm);
        if (norm <= 1e-12 * std::max(1.0, col_norm[k])) {
            std::string name = k + 1 < p ? to_string(subset[k]) : "intercept";
            throw FitError("ols_fit: design matrix is rank deficient at column " +
                           name + " (collinear basis terms)");
        }
        double alpha = a[k][k] > 0.0 ? -norm : norm;
        std::vector<double> v(n - k);
        v[0] = a[k][k] - alpha;
        for (std::size_t i = k + 1; i < n; ++i) v[i - k] = a[k][i];
        double vnorm2 = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
        a[k][k] = alpha;
        for (std::size_t i = k + 1; i < n; ++i) a[k][i] = 0.0;
        if (vnorm2 <= 0.0) continue;
        for (std::size_t j = k + 1; j < p; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i - k] * a[j][i];
            double scale = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < n; ++i) a[j][i] -= scale * v[i - k];
        }
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i) dot += v[i - k] * y[i];
        double scale = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < n; ++i) y[i] -= scale * v[i - k];
    }

    // Back substitution on R beta = Q^T y.
    std::vector<double> beta(p);
    for (std::size_t k = p; k-- > 0;) {
        double s = y[k];
        for (std::size_t j = k + 1; j < p; ++j) s -= a[j][k] * beta[j];
        beta[k] = s / a[k][k];
    }

    LinearModel model;
    model.subset = subset;
    model.coefficients.assign(beta.begin(), beta.end() - 1);
    model.intercept = beta[p - 1];
    model.n_points = static_cast<int>(n);

    double rss = 0.0;
    for (std::size_t i = p; i < n; ++i) rss += y[i] * y[i];
    double mean = 0.0;
    for (const auto& pt : points) mean += pt.accuracy;
    mean /= static_cast<double>(n);
    double tss = 0.0;
    for (const auto& pt : points) tss += (pt.accuracy - mean) * (pt.accuracy - mean);
    model.rss = rss;
    model.r2 = tss > 0.0 ? 1.0 - rss / tss : 1.0;
    std::size_t dof = n - p;  // n - terms - 1
    model.adjusted_r2 =
        dof > 0
            ? 1.0 - (1.0 - model.r2) * static_cast<double>(n - 1) / static_cast<double>(dof)
            : -std::numeric_limits<double>::infinity();
    return model;
}

double criterion_score(Criterion criterion, double r2, double adjusted_r2, double rmse) {
    switch (criterion) {
        case Criterion::R2: return r2;
        case Criterion::AdjustedR2: return adjusted_r2;
        case Criterion::Rmse: return -rmse;
    }
    throw ConfigError("invalid criterion value");
}

namespace {

// All 31 nonempty subsets, smaller subsets first, enumeration order within
// each size following the BasisId order.
std::vector<std::vector<BasisId>> all_basis_subsets() {
    std::vector<std::vector<BasisId>> subsets;
    for (std::size_t k = 1; k <= kAllBasisIds.size(); ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<BasisId> subset;
            for (std::size_t i : idx) subset.push_back(kAllBasisIds[i]);
            subsets.push_back(std::move(subset));
            std::size_t j = k;
            while (j-- > 0) {
                if (idx[j] + (k - j) < kAllBasisIds.size()) {
                    ++idx[j];
                    for (std::size_t l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
                    break;
                }
                if (j == 0) goto next_size;
            }
        }
    next_size:;
    }
    return subsets;
}

}  // namespace

SelectionResult select_model(const std::vector<SlicePoint>& points, double epsilon,
                             Criterion criterion) {
    if (points.size() < 6)
        throw DataError("select_model: " + std::to_string(points.size()) +
                        " points, need at least 6");
    SelectionResult result;
    bool have_best = false;
    double best_score = 0.0;
    for (const auto& subset : all_basis_subsets()) {
        CandidateFit cand;
        cand.subset = subset;
        const std::size_t n = points.size();
        if (n < subset.size() + 2) {
            cand.rejection = "too few points for " + std::to_string(subset.size()) +
                             " terms";
            result.candidates.push_back(std::move(cand));
            continue;
        }
        LinearModel model;
        try {
            model = ols_fit(points, subset, epsilon);
        } catch (const FitError& e) {
            cand.rejection = e.what();
            result.candidates.push_back(std::move(cand));
            continue;
        }
        cand.r2 = model.r2;
        cand.adjusted_r2 = model.adjusted_r2;
        cand.rmse = std::sqrt(model.rss / static_cast<double>(n));
        cand.score = criterion_score(criterion, cand.r2, cand.adjusted_r2, cand.rmse);
        if (!is_monotone_nondecreasing(model, epsilon)) {
            cand.rejection = "surface decreases in a data amount somewhere on the quadrant";
        } else {
            cand.admissible = true;
            // enumeration runs small subsets first, so > with a tolerance
            // implements the fewer-terms-then-enumeration-order tie break
            if (!have_best || cand.score > best_score + 1e-12) {
                have_best = true;
                best_score = cand.score;
                result.best = model;
            }
        }
        result.candidates.push_back(std::move(cand));
    }
    if (!have_best)
        throw FitError("select_model: no admissible candidate model "
                       "(every fit is decreasing in a data amount)");
    return result;
}

}  // namespace augequiv
