#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "augequiv/dataset.hpp"
#include "augequiv/error.hpp"
#include "augequiv/linfit.hpp"

using namespace augequiv;

namespace {

// deterministic xorshift-style generator for the randomized oracles
struct Rng {
    std::uint64_t state;
    double uniform() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

std::vector<ExperimentRecord> cifar_records() {
    auto records = load_fixture("cifar10_real");
    for (const auto& name : {"cifar10_edm", "cifar10_cifake"}) {
        auto part = load_fixture(name);
        records.insert(records.end(), part.begin(), part.end());
    }
    return records;
}

}  // namespace

TEST_CASE("basis terms evaluate their defining expressions") {
    CHECK(basis_value(BasisId::NReal, 7.0, 3.0, 1.0) == 7.0);
    CHECK(basis_value(BasisId::NSyn, 7.0, 3.0, 1.0) == 3.0);
    CHECK(basis_value(BasisId::LogReal, 7.0, 3.0, 1.0) == doctest::Approx(std::log(8.0)));
    CHECK(basis_value(BasisId::LogSyn, 7.0, 3.0, 0.5) == doctest::Approx(std::log(3.5)));
    CHECK(basis_value(BasisId::LogTotal, 7.0, 3.0, 1.0) ==
          doctest::Approx(std::log(11.0)));
    CHECK(basis_from_string("LOG_TOTAL") == BasisId::LogTotal);
    CHECK(to_string(BasisId::NSyn) == "N_SYN");
}

TEST_CASE("fixed two-term fit matches an independent normal-equations solve") {
    // oracle frozen from a hand-expanded Cramer solve of X^T X beta = X^T y
    const std::vector<SlicePoint> pts = {{100, 0, 61.2},   {200, 50, 64.8},
                                         {400, 100, 66.1}, {800, 400, 70.3},
                                         {1600, 900, 74.9}, {3200, 2500, 80.2}};
    const std::vector<BasisId> subset = {BasisId::NReal, BasisId::LogSyn};
    auto model = ols_fit(pts, subset, 1.0);

    CHECK(model.coefficients[0] == doctest::Approx(0.00372007848129905).epsilon(1e-9));
    CHECK(model.coefficients[1] == doctest::Approx(1.07624354487107).epsilon(1e-9));
    CHECK(model.intercept == doctest::Approx(60.4451182683906).epsilon(1e-9));
    CHECK(model.rss == doctest::Approx(3.07417345160297).epsilon(1e-6));
    CHECK(model.r2 == doctest::Approx(0.987543278849204).epsilon(1e-9));
    CHECK(model.adjusted_r2 == doctest::Approx(0.979238798082007).epsilon(1e-9));
    CHECK(model.n_points == 6);

    // independent 3x3 Cramer solve of the normal equations, built in place
    double a[3][3] = {}, b[3] = {};
    for (const auto& p : pts) {
        double row[3] = {p.n_real, std::log(p.n_syn + 1.0), 1.0};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) a[i][j] += row[i] * row[j];
            b[i] += row[i] * p.accuracy;
        }
    }
    auto det3 = [](const double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    double det = det3(a);
    for (int k = 0; k < 3; ++k) {
        double ak[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) ak[i][j] = j == k ? b[i] : a[i][j];
        double beta_k = det3(ak) / det;
        double fitted = k < 2 ? model.coefficients[k] : model.intercept;
        CHECK(fitted == doctest::Approx(beta_k).epsilon(1e-8));
    }
}

TEST_CASE("noiseless fits recover generating coefficients") {
    Rng rng{20240817};
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<BasisId> subset;
        for (BasisId id : kAllBasisIds)
            if (rng.uniform() < 0.5) subset.push_back(id);
        if (subset.empty()) subset.push_back(BasisId::LogTotal);

        std::vector<double> coef;
        for (std::size_t i = 0; i < subset.size(); ++i)
            coef.push_back((rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.range(0.5, 3.0));
        double intercept = rng.range(10.0, 90.0);
        double eps = rng.range(0.5, 2.0);

        std::vector<SlicePoint> pts;
        for (int i = 0; i < 12; ++i) {
            double nr = rng.range(1.0, 2000.0);
            double ns = rng.range(0.0, 1500.0);
            double acc = intercept;
            for (std::size_t j = 0; j < subset.size(); ++j)
                acc += coef[j] * basis_value(subset[j], nr, ns, eps);
            pts.push_back({nr, ns, acc});
        }
        auto model = ols_fit(pts, subset, eps);
        for (std::size_t j = 0; j < subset.size(); ++j)
            CHECK(std::abs(model.coefficients[j] - coef[j]) <=
                  1e-8 * std::abs(coef[j]));
        CHECK(std::abs(model.intercept - intercept) <= 1e-8 * intercept);
        CHECK(model.rss <= 1e-12);
    }
}

TEST_CASE("rank-deficient designs are reported, not solved") {
    // every point has n_syn = 0, so N_SYN is a zero column and LOG_SYN is
    // constant (collinear with the intercept)
    std::vector<SlicePoint> pts;
    for (int i = 1; i <= 8; ++i)
        pts.push_back({100.0 * i, 0.0, 50.0 + i});
    CHECK_THROWS_WITH_AS(
        ols_fit(pts, {BasisId::NReal, BasisId::NSyn}, 1.0),
        doctest::Contains("rank deficient"), FitError);
    CHECK_THROWS_AS(ols_fit(pts, {BasisId::LogSyn}, 1.0), FitError);
    CHECK_THROWS_AS(ols_fit({pts[0], pts[1]}, {BasisId::NReal, BasisId::NSyn}, 1.0),
                    FitError);
}

TEST_CASE("quadrant monotonicity check") {
    LinearModel m;
    m.subset = {BasisId::NReal};
    m.coefficients = {-0.5};
    CHECK_FALSE(is_monotone_nondecreasing(m, 1.0));
    m.coefficients = {0.5};
    CHECK(is_monotone_nondecreasing(m, 1.0));

    // positive log terms only: nondecreasing everywhere
    m.subset = {BasisId::LogReal, BasisId::LogSyn, BasisId::LogTotal};
    m.coefficients = {7.5, 0.5, 3.4};
    CHECK(is_monotone_nondecreasing(m, 1.0));

    // a negative LOG_TOTAL larger than the axis log term fails near zero
    m.coefficients = {0.5, 0.5, -2.0};
    CHECK_FALSE(is_monotone_nondecreasing(m, 1.0));

    // ...unless a linear term compensates at the origin: need b + m/eps >= 0
    m.subset = {BasisId::NReal, BasisId::LogReal, BasisId::LogSyn, BasisId::LogTotal};
    m.coefficients = {2.0, 0.5, 2.1, -2.0};
    CHECK(is_monotone_nondecreasing(m, 1.0));
    CHECK_FALSE(is_monotone_nondecreasing(m, 0.1));
}

TEST_CASE("model selection picks the three-log subset on the reference slice") {
    auto slice = slice_for_base(cifar_records(), "cifar10", Mode::ClosedSet, 5000);
    auto sel = select_model(slice, 1.0, Criterion::AdjustedR2);
    CHECK(sel.best.subset ==
          std::vector<BasisId>{BasisId::LogReal, BasisId::LogSyn, BasisId::LogTotal});
    CHECK(sel.candidates.size() == 31);
    // every candidate carries its scores or a rejection reason
    for (const auto& cand : sel.candidates)
        CHECK((cand.admissible == cand.rejection.empty()));
}

TEST_CASE("selection tie-breaks toward fewer terms") {
    // data generated exactly from a single LOG_REAL term: every superset fits
    // perfectly too, and the singleton must win
    std::vector<SlicePoint> pts;
    for (int i = 0; i < 10; ++i) {
        double nr = 50.0 + 37.0 * i;
        double ns = 20.0 * i;
        pts.push_back({nr, ns, 40.0 + 3.0 * std::log(nr + 1.0)});
    }
    auto sel = select_model(pts, 1.0, Criterion::AdjustedR2);
    CHECK(sel.best.subset == std::vector<BasisId>{BasisId::LogReal});
}

TEST_CASE("selection needs six points and an admissible candidate") {
    std::vector<SlicePoint> five = {{1, 0, 1}, {2, 0, 2}, {3, 0, 3}, {4, 0, 4},
                                    {5, 0, 5}};
    CHECK_THROWS_AS(select_model(five, 1.0, Criterion::AdjustedR2), DataError);

    // strictly decreasing accuracy: no nondecreasing surface can be admissible
    std::vector<SlicePoint> falling;
    for (int i = 0; i < 8; ++i)
        falling.push_back({100.0 + 50.0 * i, 10.0 * i, 90.0 - 2.0 * i});
    CHECK_THROWS_AS(select_model(falling, 1.0, Criterion::AdjustedR2), FitError);
}

TEST_CASE("criterion scores order candidates as documented") {
    CHECK(criterion_score(Criterion::R2, 0.9, 0.8, 1.0) == 0.9);
    CHECK(criterion_score(Criterion::AdjustedR2, 0.9, 0.8, 1.0) == 0.8);
    CHECK(criterion_score(Criterion::Rmse, 0.9, 0.8, 1.0) == -1.0);
}
