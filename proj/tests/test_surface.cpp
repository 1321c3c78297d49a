#include <doctest.h>

#include <cmath>

#include "augequiv/dataset.hpp"
#include "augequiv/error.hpp"
#include "augequiv/linfit.hpp"
#include "augequiv/surface.hpp"

using namespace augequiv;

namespace {

AccuracySurface cifar_surface() {
    auto records = load_fixture("cifar10_real");
    auto syn = load_fixture("cifar10_edm");
    records.insert(records.end(), syn.begin(), syn.end());
    auto slice = slice_for_base(records, "cifar10", Mode::ClosedSet, 5000);
    auto sel = select_model(slice, 1.0, Criterion::AdjustedR2);
    return make_surface("cifar10", Mode::ClosedSet, 5000, sel.best, 1.0, slice);
}

}  // namespace

TEST_CASE("surface evaluation wraps the fitted model") {
    LinearModel model;
    model.subset = {BasisId::LogTotal};
    model.coefficients = {4.0};
    model.intercept = 10.0;
    AccuracySurface s = make_surface("d", Mode::ClosedSet, 1000, model, 1.0,
                                     {{1000, 0, 0}, {1000, 500, 0}});
    CHECK(s.eval(1000, 0) == doctest::Approx(10.0 + 4.0 * std::log(1001.0)));
    CHECK(s.eval_added(0, 0) == s.eval(1000, 0));
    CHECK(s.eval_added(200, 300) == s.eval(1200, 300));
    CHECK(s.max_n_real == 1000.0);
    GridSpec g = default_grid(s);
    CHECK(g.x_max == 4000.0);
    CHECK(g.y_max == 4000.0);
    CHECK(g.nx == 256);
}

TEST_CASE("contour vertices re-evaluate to their level") {
    AccuracySurface s = cifar_surface();
    double baseline = s.eval_added(0, 0);
    std::vector<double> levels = {baseline, baseline + 2.0, baseline + 5.0};
    ContourSet set = contour_grid(s, default_grid(s), levels);
    REQUIRE(set.levels.size() == 3);
    int vertices = 0;
    for (const auto& level : set.levels) {
        CHECK_FALSE(level.polylines.empty());
        for (const auto& line : level.polylines)
            for (std::size_t i = 0; i < line.xs.size(); ++i) {
                CHECK(std::abs(s.eval_added(line.xs[i], line.ys[i]) - level.level) <=
                      1e-6);
                ++vertices;
            }
    }
    CHECK(vertices > 50);
}

TEST_CASE("baseline-level contour passes next to the origin") {
    AccuracySurface s = cifar_surface();
    GridSpec g = default_grid(s);
    ContourSet set = contour_grid(s, g, {s.eval_added(0, 0)});
    double cell = (g.x_max - g.x_min) / (g.nx - 1);
    double nearest = 1e30;
    for (const auto& line : set.levels[0].polylines)
        for (std::size_t i = 0; i < line.xs.size(); ++i)
            nearest = std::min(nearest, std::max(line.xs[i], line.ys[i]));
    CHECK(nearest <= cell);
}

TEST_CASE("levels above the surface maximum trace nothing") {
    AccuracySurface s = cifar_surface();
    ContourSet set = contour_grid(s, default_grid(s), {9000.0});
    REQUIRE(set.levels.size() == 1);
    CHECK(set.levels[0].polylines.empty());
}

TEST_CASE("contour grid preconditions") {
    AccuracySurface s = cifar_surface();
    GridSpec g = default_grid(s);
    g.nx = 1;
    CHECK_THROWS_AS(contour_grid(s, g, {80.0}), RenderError);
    g = default_grid(s);
    g.x_max = g.x_min;
    CHECK_THROWS_AS(contour_grid(s, g, {80.0}), RenderError);
}

TEST_CASE("SVG rendering is deterministic and rejects empty sets") {
    AccuracySurface s = cifar_surface();
    double baseline = s.eval_added(0, 0);
    ContourSet set = contour_grid(s, default_grid(s), {baseline + 1.0, baseline + 4.0});
    SvgStyle style;
    style.title = "cifar10 closed_set n_base=5000";
    std::string svg = render_svg(set, style);
    CHECK(svg == render_svg(set, style));
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("added synthetic images") != std::string::npos);

    ContourSet empty = contour_grid(s, default_grid(s), {9000.0});
    CHECK_THROWS_AS(render_svg(empty, style), RenderError);
    CHECK_THROWS_AS(render_svg(ContourSet{}, style), RenderError);
}

TEST_CASE("contour serialization is row-oriented") {
    AccuracySurface s = cifar_surface();
    ContourSet set = contour_grid(s, default_grid(s), {s.eval_added(0, 0) + 2.0});
    std::string text = serialize_contours(set);
    CHECK(text.rfind("level,piece,x,y\n", 0) == 0);
    CHECK(text == serialize_contours(set));
    // one row per vertex plus the header line
    std::size_t rows = 0, vertices = 0;
    for (char c : text) rows += c == '\n';
    for (const auto& line : set.levels[0].polylines) vertices += line.xs.size();
    CHECK(rows == vertices + 1);
}
