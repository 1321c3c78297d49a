#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "augequiv/dataset.hpp"
#include "augequiv/linfit.hpp"

namespace augequiv {

/// A fitted accuracy surface Acc(n_real, n_syn) for one (dataset, mode,
/// n_base) slice. Total on the nonnegative quadrant.
struct AccuracySurface {
    std::string dataset_id;
    Mode mode = Mode::ClosedSet;
    std::int64_t n_base = 0;
    LinearModel model;
    double epsilon = 1.0;
    double max_n_real = 0.0;  // domain bounds seen in the fitted slice
    double max_n_syn = 0.0;

    double eval(double n_real, double n_syn) const;
    /// Evaluation in added-amount axes: x = n_real+, y = n_syn+.
    double eval_added(double n_real_plus, double n_syn_plus) const;
};

AccuracySurface make_surface(const std::string& dataset_id, Mode mode,
                             std::int64_t n_base, const LinearModel& model,
                             double epsilon, const std::vector<SlicePoint>& points);

/// Grid over added amounts (n_real+, n_syn+).
struct GridSpec {
    double x_min = 0.0, x_max = 0.0;  // n_real+ range
    double y_min = 0.0, y_max = 0.0;  // n_syn+ range
    int nx = 256, ny = 256;           // samples per axis, >= 2
};

/// Default grid: [0, 4 n_base] on both added axes.
GridSpec default_grid(const AccuracySurface& surface);

struct Polyline {
    std::vector<double> xs;  // n_real+ coordinates
    std::vector<double> ys;  // n_syn+ coordinates
};

struct ContourLevel {
    double level = 0.0;
    std::vector<Polyline> polylines;  // empty when the level misses the grid
};

struct ContourSet {
    GridSpec grid;
    std::vector<ContourLevel> levels;
};

/// Marching squares over the surface in added-amount axes; every vertex is
/// refined along its grid edge until the surface value matches the level.
ContourSet contour_grid(const AccuracySurface& surface, const GridSpec& grid,
                        const std::vector<double>& levels);

struct SvgStyle {
    int width = 640;
    int height = 480;
    std::string title;
};

/// Standalone deterministic SVG 1.1 document: axes, one labeled <polyline>
/// per traced contour, and a color ramp keyed to the accuracy levels.
/// Throws RenderError on an empty contour set or degenerate axis range.
std::string render_svg(const ContourSet& contours, const SvgStyle& style = {});

/// Contour vertices as delimiter-separated rows `level,piece,x,y`.
std::string serialize_contours(const ContourSet& contours);

}  // namespace augequiv
