#include "augequiv/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

#include "augequiv/error.hpp"

namespace augequiv {

double AccuracySurface::eval(double n_real, double n_syn) const {
    return model.predict(n_real, n_syn, epsilon);
}

double AccuracySurface::eval_added(double n_real_plus, double n_syn_plus) const {
    return eval(static_cast<double>(n_base) + n_real_plus, n_syn_plus);
}

AccuracySurface make_surface(const std::string& dataset_id, Mode mode,
                             std::int64_t n_base, const LinearModel& model,
                             double epsilon, const std::vector<SlicePoint>& points) {
    AccuracySurface s;
    s.dataset_id = dataset_id;
    s.mode = mode;
    s.n_base = n_base;
    s.model = model;
    s.epsilon = epsilon;
    for (const auto& pt : points) {
        s.max_n_real = std::max(s.max_n_real, pt.n_real);
        s.max_n_syn = std::max(s.max_n_syn, pt.n_syn);
    }
    return s;
}

GridSpec default_grid(const AccuracySurface& surface) {
    GridSpec g;
    g.x_max = 4.0 * static_cast<double>(surface.n_base);
    g.y_max = g.x_max;
    return g;
}

namespace {

// A contour vertex lives on one grid edge; the edge identity is the
// deterministic key used to chain segments. axis 0 = edge along x, 1 = along y.
struct EdgeKey {
    int axis, i, j;
    auto operator<=>(const EdgeKey&) const = default;
};

struct Segment {
    EdgeKey a, b;
};

// Locates `level` on the edge between (x0,y0,f0) and (x1,y1,f1) by bisection;
// f is continuous and the endpoint values bracket the level.
std::pair<double, double> refine_on_edge(const AccuracySurface& surface, double level,
                                         double x0, double y0, double f0, double x1,
                                         double y1, double f1) {
    double lo = 0.0, hi = 1.0;
    bool rising = f1 > f0;
    for (int it = 0; it < 80; ++it) {
        double t = 0.5 * (lo + hi);
        double f = surface.eval_added(x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        if (std::abs(f - level) <= 1e-9) {
            lo = hi = t;
            break;
        }
        if ((f < level) == rising)
            lo = t;
        else
            hi = t;
    }
    double t = 0.5 * (lo + hi);
    return {x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

ContourSet contour_grid(const AccuracySurface& surface, const GridSpec& grid,
                        const std::vector<double>& levels) {
    if (grid.nx < 2 || grid.ny < 2)
        throw RenderError("contour grid needs at least 2 samples per axis");
    if (!(grid.x_max > grid.x_min) || !(grid.y_max > grid.y_min))
        throw RenderError("contour grid has a degenerate axis range");

    const int nx = grid.nx, ny = grid.ny;
    auto xs = [&](int i) {
        return grid.x_min + (grid.x_max - grid.x_min) * i / (nx - 1);
    };
    auto ys = [&](int j) {
        return grid.y_min + (grid.y_max - grid.y_min) * j / (ny - 1);
    };
    std::vector<double> f(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            f[static_cast<std::size_t>(j) * nx + i] = surface.eval_added(xs(i), ys(j));
    auto fv = [&](int i, int j) { return f[static_cast<std::size_t>(j) * nx + i]; };

    ContourSet set;
    set.grid = grid;
    for (double level : levels) {
        ContourLevel out;
        out.level = level;

        // Crossing point per cut edge, found lazily.
        std::map<EdgeKey, std::pair<double, double>> vertex;
        auto vertex_at = [&](int axis, int i, int j) {
            EdgeKey key{axis, i, j};
            auto it = vertex.find(key);
            if (it != vertex.end()) return key;
            double x0 = xs(i), y0 = ys(j);
            double x1 = axis == 0 ? xs(i + 1) : x0;
            double y1 = axis == 0 ? y0 : ys(j + 1);
            double f1 = axis == 0 ? fv(i + 1, j) : fv(i, j + 1);
            vertex[key] = refine_on_edge(surface, level, x0, y0, fv(i, j), x1, y1, f1);
            return key;
        };

        std::vector<Segment> segments;
        for (int j = 0; j + 1 < ny; ++j) {
            for (int i = 0; i + 1 < nx; ++i) {
                // strict comparison so a level touching the surface minimum
                // still yields a (degenerate) contour through that point
                int state = (fv(i, j) > level ? 1 : 0) | (fv(i + 1, j) > level ? 2 : 0) |
                            (fv(i + 1, j + 1) > level ? 4 : 0) |
                            (fv(i, j + 1) > level ? 8 : 0);
                if (state == 0 || state == 15) continue;
                EdgeKey bottom{0, i, j}, top{0, i, j + 1};
                EdgeKey left{1, i, j}, right{1, i + 1, j};
                auto emit = [&](EdgeKey a, EdgeKey b) {
                    segments.push_back({vertex_at(a.axis, a.i, a.j),
                                        vertex_at(b.axis, b.i, b.j)});
                };
                switch (state) {
                    case 1: case 14: emit(left, bottom); break;
                    case 2: case 13: emit(bottom, right); break;
                    case 3: case 12: emit(left, right); break;
                    case 4: case 11: emit(right, top); break;
                    case 6: case 9: emit(bottom, top); break;
                    case 7: case 8: emit(top, left); break;
                    case 5: case 10: {
                        // saddle: split on the cell-center value
                        double center = 0.25 * (fv(i, j) + fv(i + 1, j) +
                                                fv(i, j + 1) + fv(i + 1, j + 1));
                        bool high = center > level;
                        if ((state == 5) == high) {
                            emit(left, top);
                            emit(bottom, right);
                        } else {
                            emit(left, bottom);
                            emit(right, top);
                        }
                        break;
                    }
                }
            }
        }

        // Chain segments into polylines: walk from degree-1 vertices first
        // (open curves), then pick up remaining loops, in key order.
        std::map<EdgeKey, std::vector<std::size_t>> touching;
        for (std::size_t s = 0; s < segments.size(); ++s) {
            touching[segments[s].a].push_back(s);
            touching[segments[s].b].push_back(s);
        }
        std::vector<bool> used(segments.size(), false);
        auto walk = [&](std::size_t start, EdgeKey from) {
            Polyline line;
            auto push = [&](EdgeKey key) {
                auto [x, y] = vertex.at(key);
                line.xs.push_back(x);
                line.ys.push_back(y);
            };
            push(from);
            EdgeKey cur = from;
            std::size_t seg = start;
            while (true) {
                used[seg] = true;
                cur = segments[seg].a == cur ? segments[seg].b : segments[seg].a;
                push(cur);
                std::size_t next = segments.size();
                for (std::size_t cand : touching[cur])
                    if (!used[cand] && next == segments.size()) next = cand;
                if (next == segments.size()) break;
                seg = next;
            }
            return line;
        };
        for (const auto& [key, segs] : touching) {
            if (segs.size() != 1) continue;
            if (!used[segs[0]]) out.polylines.push_back(walk(segs[0], key));
        }
        for (const auto& [key, segs] : touching)
            for (std::size_t s : segs)
                if (!used[s]) out.polylines.push_back(walk(s, key));

        set.levels.push_back(std::move(out));
    }
    return set;
}

std::string render_svg(const ContourSet& contours, const SvgStyle& style) {
    const GridSpec& g = contours.grid;
    if (!(g.x_max > g.x_min) || !(g.y_max > g.y_min))
        throw RenderError("cannot render contours over a degenerate axis range");
    bool any = false;
    for (const auto& level : contours.levels) any = any || !level.polylines.empty();
    if (contours.levels.empty() || !any)
        throw RenderError("cannot render an empty contour set");

    const double ml = 70, mr = 20, mt = style.title.empty() ? 20 : 40, mb = 50;
    const double w = style.width, h = style.height;
    const double pw = w - ml - mr, ph = h - mt - mb;
    auto px = [&](double x) { return ml + pw * (x - g.x_min) / (g.x_max - g.x_min); };
    auto py = [&](double y) { return mt + ph * (g.y_max - y) / (g.y_max - g.y_min); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) +
           "\">\n";
    svg += "<rect width=\"" + num(w) + "\" height=\"" + num(h) + "\" fill=\"white\"/>\n";
    if (!style.title.empty())
        svg += "<text x=\"" + num(w / 2) + "\" y=\"24\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"15\">" + style.title +
               "</text>\n";
    // axes
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" +
           num(ml + pw) + "\" y2=\"" + num(mt + ph) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) +
           "\" y2=\"" + num(mt + ph) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double x = g.x_min + (g.x_max - g.x_min) * t / 4.0;
        double y = g.y_min + (g.y_max - g.y_min) * t / 4.0;
        svg += "<line x1=\"" + num(px(x)) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" +
               num(px(x)) + "\" y2=\"" + num(mt + ph + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(px(x)) + "\" y=\"" + num(mt + ph + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">" + num(x) + "</text>\n";
        svg += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(py(y)) + "\" x2=\"" +
               num(ml) + "\" y2=\"" + num(py(y)) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(ml - 8) + "\" y=\"" + num(py(y) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               num(y) + "</text>\n";
    }
    svg += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(h - 10) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
           "added real images</text>\n";
    svg += "<text x=\"14\" y=\"" + num(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 14 " + num(mt + ph / 2) + ")\">"
           "added synthetic images</text>\n";

    double lmin = contours.levels.front().level, lmax = contours.levels.back().level;
    for (const auto& level : contours.levels) {
        lmin = std::min(lmin, level.level);
        lmax = std::max(lmax, level.level);
    }
    for (const auto& level : contours.levels) {
        double t = lmax > lmin ? (level.level - lmin) / (lmax - lmin) : 0.5;
        int rr = static_cast<int>(40 + 200 * t);
        int bb = static_cast<int>(200 - 160 * t);
        char color[16];
        std::snprintf(color, sizeof(color), "#%02x30%02x", rr, bb);
        bool labeled = false;
        for (const auto& line : level.polylines) {
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += color;
            svg += "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < line.xs.size(); ++i) {
                if (i) svg += ' ';
                svg += num(px(line.xs[i])) + "," + num(py(line.ys[i]));
            }
            svg += "\"/>\n";
            if (!labeled && !line.xs.empty()) {
                std::size_t mid = line.xs.size() / 2;
                svg += "<text x=\"" + num(px(line.xs[mid]) + 3) + "\" y=\"" +
                       num(py(line.ys[mid]) - 3) +
                       "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"" +
                       color + "\">" + num(level.level) + "</text>\n";
                labeled = true;
            }
        }
    }
    svg += "</svg>\n";
    return svg;
}

std::string serialize_contours(const ContourSet& contours) {
    std::string out = "level,piece,x,y\n";
    for (const auto& level : contours.levels) {
        for (std::size_t piece = 0; piece < level.polylines.size(); ++piece) {
            const auto& line = level.polylines[piece];
            for (std::size_t i = 0; i < line.xs.size(); ++i) {
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%.10g,%zu,%.10g,%.10g\n", level.level,
                              piece, line.xs[i], line.ys[i]);
                out += buf;
            }
        }
    }
    return out;
}

}  // namespace augequiv
