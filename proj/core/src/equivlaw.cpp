#include "augequiv/equivlaw.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "augequiv/error.hpp"

namespace augequiv {

double compute_tau(std::int64_t n_total) {
    if (n_total <= 0) throw ConfigError("tau: n_total must be positive");
    return 10.0 / static_cast<double>(n_total);
}

SolveResult solve_equivalent_syn(const AccuracySurface& real_surface,
                                 const AccuracySurface& syn_surface,
                                 std::int64_t n_base, double n_real_plus,
                                 double ratio_cap) {
    if (n_base <= 0) throw ConfigError("solve: n_base must be positive");
    if (!(ratio_cap > 0.0)) throw ConfigError("solve: ratio cap must be positive");

    const double target = real_surface.eval_added(n_real_plus, 0.0);
    auto f = [&](double s) { return syn_surface.eval_added(0.0, s) - target; };

    const double hi0 = ratio_cap * static_cast<double>(n_base);
    // the solve assumes the synthetic axis is nondecreasing; check on a scan
    double prev = f(0.0);
    for (int k = 1; k <= 32; ++k) {
        double cur = f(hi0 * k / 32.0);
        if (cur < prev - 1e-9 * (1.0 + std::abs(prev)))
            throw SolveError("surface " + syn_surface.dataset_id + "/" +
                             to_string(syn_surface.mode) + "/" +
                             std::to_string(syn_surface.n_base) +
                             " is not monotone in the synthetic amount over the "
                             "solve bracket");
        prev = cur;
    }

    double flo = f(0.0);
    if (flo >= 0.0) {
        // baseline already meets the target: with monotone surfaces this only
        // happens through noise at n_real_plus near 0, and the answer is 0
        if (flo > 1e-6 * (1.0 + std::abs(target)))
            throw DataError("solve: target accuracy lies below the baseline of " +
                            syn_surface.dataset_id + "/" + to_string(syn_surface.mode) +
                            "/" + std::to_string(syn_surface.n_base));
        return {false, 0.0};
    }
    if (f(hi0) < 0.0) return {true, 0.0};  // unreachable within the cap

    double lo = 0.0, hi = hi0;
    for (int it = 0; it < 200 && hi - lo > 1e-9 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return {false, 0.5 * (lo + hi)};
}

TupleSet build_tuples(const std::map<std::int64_t, AccuracySurface>& surfaces,
                      const StudyConfig& config) {
    TupleSet out;
    for (const auto& [n_base, ratios] : config.tuple_grid) {
        auto it = surfaces.find(n_base);
        if (it == surfaces.end())
            throw DataError("no fitted surface for grid n_base " +
                            std::to_string(n_base));
        const AccuracySurface& surface = it->second;
        for (double r : ratios) {
            SolveResult solved;
            try {
                solved = solve_equivalent_syn(surface, surface, n_base,
                                              r * static_cast<double>(n_base),
                                              config.ratio_cap);
            } catch (const SolveError& e) {
                out.skipped.push_back(e.what());
                continue;
            }
            if (solved.discarded) {
                ++out.n_discarded;
                continue;
            }
            EquivalenceTuple t;
            t.n_base = n_base;
            t.n_real_plus = r * static_cast<double>(n_base);
            t.n_syn_plus = solved.n_syn_plus;
            t.source_surface = surface.dataset_id + "/" + to_string(surface.mode) +
                               "/" + std::to_string(n_base);
            out.tuples.push_back(std::move(t));
        }
    }
    return out;
}

namespace {

struct LawData {
    std::vector<double> nb, r, y;  // y = n_syn+/n_base
};

double loss_sse(const LawData& d, double tau, double u, double w, LossSpace loss) {
    double c1u = u;  // log c1
    double c2 = 1.0 + std::exp(w);
    double sse = 0.0;
    for (std::size_t i = 0; i < d.y.size(); ++i) {
        if (loss == LossSpace::Log) {
            double m = tau * d.nb[i] * c1u + std::log(std::pow(c2, d.r[i]) - 1.0);
            double e = std::log(d.y[i]) - m;
            sse += e * e;
        } else {
            double m = std::exp(tau * d.nb[i] * c1u) * (std::pow(c2, d.r[i]) - 1.0);
            double e = d.y[i] - m;
            sse += e * e;
        }
    }
    return sse;
}

}  // namespace

EquivalenceLaw fit_law(const std::vector<EquivalenceTuple>& tuples, double tau,
                       LossSpace loss) {
    if (!(tau > 0.0)) throw ConfigError("fit_law: tau must be positive");

    LawData d;
    int n_zero = 0;
    std::set<double> ratios;
    for (const auto& t : tuples) {
        double y = t.syn_ratio();
        if (loss == LossSpace::Log && y <= 0.0) {
            ++n_zero;
            continue;
        }
        d.nb.push_back(static_cast<double>(t.n_base));
        d.r.push_back(t.ratio());
        d.y.push_back(y);
        ratios.insert(t.ratio());
    }
    if (d.y.size() < 3 || ratios.size() < 2)
        throw DataError("fit_law: need at least 3 usable tuples over 2 distinct "
                        "ratios, have " + std::to_string(d.y.size()) + " tuples over " +
                        std::to_string(ratios.size()) + " ratios");

    EquivalenceLaw law;
    law.tau = tau;
    law.n_tuples = static_cast<int>(d.y.size());
    law.n_zero = n_zero;

    const double u_lo = std::log(0.25), u_hi = std::log(4.0);
    const double c2_starts[] = {1.1, 1.5, 2.0, 4.0, 8.0, 16.0, 40.0};
    bool have_best = false;
    double best_sse = 0.0;

    for (int iu = 0; iu < 9; ++iu) {
        double u0 = u_lo + (u_hi - u_lo) * iu / 8.0;
        for (double c2_0 : c2_starts) {
            double u = u0, w = std::log(c2_0 - 1.0);
            bool converged = false;
            for (int it = 0; it < 100; ++it) {
                // Gauss-Newton step on the 2-parameter normal equations
                double jtj00 = 0, jtj01 = 0, jtj11 = 0, jtr0 = 0, jtr1 = 0;
                double c2 = 1.0 + std::exp(w);
                bool bad = false;
                for (std::size_t i = 0; i < d.y.size(); ++i) {
                    double c2r = std::pow(c2, d.r[i]);
                    double du, dw, resid;
                    if (loss == LossSpace::Log) {
                        double m = tau * d.nb[i] * u + std::log(c2r - 1.0);
                        resid = std::log(d.y[i]) - m;
                        du = tau * d.nb[i];
                        dw = d.r[i] * std::pow(c2, d.r[i] - 1.0) * std::exp(w) /
                             (c2r - 1.0);
                    } else {
                        double scale = std::exp(tau * d.nb[i] * u);
                        double m = scale * (c2r - 1.0);
                        resid = d.y[i] - m;
                        du = tau * d.nb[i] * m;
                        dw = scale * d.r[i] * std::pow(c2, d.r[i] - 1.0) * std::exp(w);
                    }
                    if (!std::isfinite(resid) || !std::isfinite(dw)) {
                        bad = true;
                        break;
                    }
                    jtj00 += du * du;
                    jtj01 += du * dw;
                    jtj11 += dw * dw;
                    jtr0 += du * resid;
                    jtr1 += dw * resid;
                }
                if (bad) break;
                double det = jtj00 * jtj11 - jtj01 * jtj01;
                if (std::abs(det) < 1e-300) break;
                double step_u = (jtj11 * jtr0 - jtj01 * jtr1) / det;
                double step_w = (jtj00 * jtr1 - jtj01 * jtr0) / det;
                double s0 = loss_sse(d, tau, u, w, loss);
                double t = 1.0;
                while (t > 1e-12 &&
                       !(loss_sse(d, tau, u + t * step_u, w + t * step_w, loss) <= s0))
                    t *= 0.5;
                u += t * step_u;
                w += t * step_w;
                if (std::abs(t * step_u) + std::abs(t * step_w) < 1e-14) {
                    converged = true;
                    break;
                }
            }
            StartOutcome outcome;
            outcome.c1_start = std::exp(u0);
            outcome.c2_start = c2_0;
            outcome.c1 = std::exp(u);
            outcome.c2 = 1.0 + std::exp(w);
            outcome.sse = loss_sse(d, tau, u, w, loss);
            outcome.converged = converged && std::isfinite(outcome.sse);
            if (std::isfinite(outcome.sse) &&
                (!have_best || outcome.sse < best_sse)) {
                have_best = true;
                best_sse = outcome.sse;
                law.c1 = outcome.c1;
                law.c2 = outcome.c2;
            }
            law.starts.push_back(outcome);
        }
    }
    if (!have_best)
        throw FitError("fit_law: every optimization start diverged");
    law.rmse = std::sqrt(best_sse / static_cast<double>(d.y.size()));
    return law;
}

double predict_ratio(const EquivalenceLaw& law, std::int64_t n_base, double r) {
    if (r == 0.0) return 0.0;
    return std::pow(law.c1, law.tau * static_cast<double>(n_base)) *
           (std::pow(law.c2, r) - 1.0);
}

}  // namespace augequiv
