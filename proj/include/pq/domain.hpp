#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pq::geom {

struct BoundingBox {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

enum class DomainKind { rectangle, disk, annulus, polygon, raster_mask };

inline const char* to_string(DomainKind k) {
    switch (k) {
        case DomainKind::rectangle: return "rectangle";
        case DomainKind::disk: return "disk";
        case DomainKind::annulus: return "annulus";
        case DomainKind::polygon: return "polygon";
        case DomainKind::raster_mask: return "raster-mask";
    }
    return "?";
}

/// Cell raster loaded from a plain-text mask file. Cell (r,c) covers the
/// square [x0 + c*h, x0 + (c+1)*h] x [y0 + r*h, y0 + (r+1)*h].
struct RasterMask {
    int rows = 0, cols = 0;
    double h = 0, x0 = 0, y0 = 0;
    std::vector<std::uint8_t> cells;  // row-major, row 0 at y0

    bool at(int r, int c) const {
        if (r < 0 || r >= rows || c < 0 || c >= cols) return false;
        return cells[static_cast<std::size_t>(r) * cols + c] != 0;
    }
    bool contains(double x, double y) const {
        const int c = static_cast<int>(std::floor((x - x0) / h));
        const int r = static_cast<int>(std::floor((y - y0) / h));
        return at(r, c);
    }
};

/// Planar base domain D.  Immutable after construction; membership and
/// boundary distance are exact closed forms for analytic shapes.
class PlanarDomain {
public:
    static PlanarDomain rectangle(double x0, double x1, double y0, double y1) {
        if (!(x0 < x1 && y0 < y1)) throw std::invalid_argument("rectangle: need x0 < x1 and y0 < y1");
        PlanarDomain d;
        d.kind_ = DomainKind::rectangle;
        d.p_ = {x0, x1, y0, y1};
        d.box_ = pad_box({x0, x1, y0, y1});
        return d;
    }

    static PlanarDomain disk(double cx, double cy, double r) {
        if (!(r > 0)) throw std::invalid_argument("disk: radius must be positive");
        PlanarDomain d;
        d.kind_ = DomainKind::disk;
        d.p_ = {cx, cy, r};
        d.box_ = pad_box({cx - r, cx + r, cy - r, cy + r});
        return d;
    }

    static PlanarDomain annulus(double cx, double cy, double r_in, double r_out) {
        if (!(0 < r_in && r_in < r_out))
            throw std::invalid_argument("annulus: need 0 < inner radius < outer radius");
        PlanarDomain d;
        d.kind_ = DomainKind::annulus;
        d.p_ = {cx, cy, r_in, r_out};
        d.box_ = pad_box({cx - r_out, cx + r_out, cy - r_out, cy + r_out});
        return d;
    }

    static PlanarDomain polygon(std::vector<std::array<double, 2>> vertices) {
        if (vertices.size() < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
        if (!is_simple(vertices)) throw std::invalid_argument("polygon: must be simple (non-self-intersecting)");
        PlanarDomain d;
        d.kind_ = DomainKind::polygon;
        d.verts_ = std::move(vertices);
        double x0 = d.verts_[0][0], x1 = x0, y0 = d.verts_[0][1], y1 = y0;
        for (const auto& v : d.verts_) {
            x0 = std::min(x0, v[0]); x1 = std::max(x1, v[0]);
            y0 = std::min(y0, v[1]); y1 = std::max(y1, v[1]);
        }
        d.box_ = pad_box({x0, x1, y0, y1});
        return d;
    }

    static PlanarDomain raster(RasterMask mask) {
        if (mask.rows <= 0 || mask.cols <= 0 || mask.h <= 0)
            throw std::invalid_argument("raster: rows, cols and h must be positive");
        if (mask.cells.size() != static_cast<std::size_t>(mask.rows) * mask.cols)
            throw std::invalid_argument("raster: cell count mismatch");
        PlanarDomain d;
        d.kind_ = DomainKind::raster_mask;
        d.box_ = pad_box({mask.x0, mask.x0 + mask.cols * mask.h, mask.y0, mask.y0 + mask.rows * mask.h});
        d.raster_ = std::move(mask);
        return d;
    }

    /// Mask file: first line "rows cols h x0 y0", then `rows` lines of 0/1
    /// characters (row 0 is the bottom row, at y0).
    static PlanarDomain raster_from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("raster: cannot open mask file " + path);
        RasterMask m;
        in >> m.rows >> m.cols >> m.h >> m.x0 >> m.y0;
        if (!in) throw std::invalid_argument("raster: malformed header in " + path);
        m.cells.assign(static_cast<std::size_t>(m.rows) * m.cols, 0);
        std::string line;
        std::getline(in, line);
        for (int r = 0; r < m.rows; ++r) {
            if (!std::getline(in, line) || static_cast<int>(line.size()) < m.cols)
                throw std::invalid_argument("raster: short row " + std::to_string(r) + " in " + path);
            for (int c = 0; c < m.cols; ++c)
                m.cells[static_cast<std::size_t>(r) * m.cols + c] = line[c] == '1' ? 1 : 0;
        }
        return raster(std::move(m));
    }

    DomainKind kind() const { return kind_; }
    const BoundingBox& bounding_box() const { return box_; }
    const RasterMask& raster_mask() const { return raster_; }

    /// Strict interior membership.
    bool inside(double x, double y) const {
        switch (kind_) {
            case DomainKind::rectangle:
                return x > p_[0] && x < p_[1] && y > p_[2] && y < p_[3];
            case DomainKind::disk: {
                const double dx = x - p_[0], dy = y - p_[1];
                return dx * dx + dy * dy < p_[2] * p_[2];
            }
            case DomainKind::annulus: {
                const double r = std::hypot(x - p_[0], y - p_[1]);
                return r > p_[2] && r < p_[3];
            }
            case DomainKind::polygon:
                return polygon_contains(x, y);
            case DomainKind::raster_mask:
                return raster_.contains(x, y);
        }
        return false;
    }

    bool has_analytic_distance() const { return kind_ != DomainKind::raster_mask; }

    /// Exact Euclidean distance to the boundary for analytic shapes
    /// (meaningful for points inside; outside points get a nonpositive or
    /// unsigned value depending on the shape, callers only use it inside).
    double boundary_distance(double x, double y) const {
        switch (kind_) {
            case DomainKind::rectangle:
                return std::min(std::min(x - p_[0], p_[1] - x), std::min(y - p_[2], p_[3] - y));
            case DomainKind::disk:
                return p_[2] - std::hypot(x - p_[0], y - p_[1]);
            case DomainKind::annulus: {
                const double r = std::hypot(x - p_[0], y - p_[1]);
                return std::min(r - p_[2], p_[3] - r);
            }
            case DomainKind::polygon: {
                double d = std::numeric_limits<double>::infinity();
                const std::size_t nv = verts_.size();
                for (std::size_t i = 0; i < nv; ++i) {
                    const auto& a = verts_[i];
                    const auto& b = verts_[(i + 1) % nv];
                    d = std::min(d, segment_distance(x, y, a[0], a[1], b[0], b[1]));
                }
                return d;
            }
            case DomainKind::raster_mask:
                throw std::logic_error("raster-mask domains have no analytic boundary distance");
        }
        return 0;
    }

    std::string describe() const {
        std::ostringstream os;
        os << to_string(kind_);
        for (double v : p_) os << ' ' << v;
        if (kind_ == DomainKind::polygon) os << ' ' << verts_.size() << "-gon";
        return os.str();
    }

private:
    static BoundingBox pad_box(BoundingBox b) {
        const double pad = 1e-9 * (1.0 + std::max(b.width(), b.height()));
        return {b.x0 - pad, b.x1 + pad, b.y0 - pad, b.y1 + pad};
    }

    bool polygon_contains(double x, double y) const {
        // even-odd crossing rule
        bool in = false;
        const std::size_t nv = verts_.size();
        for (std::size_t i = 0, j = nv - 1; i < nv; j = i++) {
            const double xi = verts_[i][0], yi = verts_[i][1];
            const double xj = verts_[j][0], yj = verts_[j][1];
            if ((yi > y) != (yj > y)) {
                const double xc = xj + (y - yj) / (yi - yj) * (xi - xj);
                if (x < xc) in = !in;
            }
        }
        return in;
    }

    static double segment_distance(double x, double y, double ax, double ay, double bx, double by) {
        const double vx = bx - ax, vy = by - ay;
        const double wx = x - ax, wy = y - ay;
        const double vv = vx * vx + vy * vy;
        double t = vv > 0 ? (wx * vx + wy * vy) / vv : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        return std::hypot(wx - t * vx, wy - t * vy);
    }

    static bool segments_cross(const std::array<double, 2>& a, const std::array<double, 2>& b,
                               const std::array<double, 2>& c, const std::array<double, 2>& d) {
        auto orient = [](const std::array<double, 2>& p, const std::array<double, 2>& q,
                         const std::array<double, 2>& r) {
            return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
        };
        const double o1 = orient(a, b, c), o2 = orient(a, b, d);
        const double o3 = orient(c, d, a), o4 = orient(c, d, b);
        return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
    }

    static bool is_simple(const std::vector<std::array<double, 2>>& v) {
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                // skip adjacent edges (shared endpoint)
                if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
                if (segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
            }
        }
        return true;
    }

    DomainKind kind_ = DomainKind::rectangle;
    std::array<double, 4> p_{};  // shape parameters
    std::vector<std::array<double, 2>> verts_;
    RasterMask raster_;
    BoundingBox box_;
};

}  // namespace pq::geom
