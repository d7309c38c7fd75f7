#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pq/domain.hpp"
#include "pq/weight.hpp"

namespace pq::geom {

using NodeMask = std::vector<std::uint8_t>;

/// Uniform grid on the absolute lattice h*Z^2.  A lattice node is an
/// interior node when it lies strictly inside the domain and at boundary
/// distance >= h (so every node has room for its Dirichlet stencil).
/// Geometry objects are immutable after construction.
struct Grid {
    PlanarDomain domain;
    double h = 0;
    int i0 = 0, j0 = 0;  // lattice index offset of the covering box
    int nx = 0, ny = 0;  // covering box dimensions in nodes
    std::vector<std::int32_t> node_at;      // nx*ny cells -> interior index or -1
    std::vector<std::array<int, 2>> ij;     // interior index -> lattice (i,j)
    std::vector<double> dist;               // d_Omega per interior node

    int n() const { return static_cast<int>(ij.size()); }
    double x(int k) const { return ij[k][0] * h; }
    double y(int k) const { return ij[k][1] * h; }

    int cell(int i, int j) const {
        const int ci = i - i0, cj = j - j0;
        if (ci < 0 || ci >= nx || cj < 0 || cj >= ny) return -1;
        return cj * nx + ci;
    }
    /// Interior index of lattice node (i,j), or -1.
    int node(int i, int j) const {
        const int c = cell(i, j);
        return c < 0 ? -1 : node_at[c];
    }
    /// Neighbors in +x,-x,+y,-y order; -1 means Dirichlet-zero exterior.
    std::array<int, 4> neighbors(int k) const {
        const int i = ij[k][0], j = ij[k][1];
        return {node(i + 1, j), node(i - 1, j), node(i, j + 1), node(i, j - 1)};
    }
};

namespace detail {

/// One-dimensional squared distance transform (Felzenszwalb-Huttenlocher).
/// Parabolas with infinite offset are skipped; an all-infinite line stays
/// infinite.
inline void edt_1d(const std::vector<double>& f, std::vector<double>& d, int n) {
    static constexpr double INF = std::numeric_limits<double>::infinity();
    int first = 0;
    while (first < n && f[first] == INF) ++first;
    if (first == n) {
        std::fill(d.begin(), d.begin() + n, INF);
        return;
    }
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = first;
    z[0] = -INF;
    z[1] = INF;
    auto intersect = [&](int q, int p) {
        return ((f[q] + q * double(q)) - (f[p] + p * double(p))) / (2.0 * q - 2.0 * p);
    };
    for (int q = first + 1; q < n; ++q) {
        if (f[q] == INF) continue;
        double s = intersect(q, v[k]);
        while (s <= z[k]) {
            --k;
            s = intersect(q, v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = INF;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const double dq = q - double(v[k]);
        d[q] = dq * dq + f[v[k]];
    }
}

/// Exact squared Euclidean distance (in lattice steps) to the source set
/// over an nx*ny box.  source[c] true marks distance-zero cells.
inline std::vector<double> edt_squared(const std::vector<std::uint8_t>& source, int nx, int ny) {
    static constexpr double INF = std::numeric_limits<double>::infinity();
    std::vector<double> g(static_cast<std::size_t>(nx) * ny);
    std::vector<double> col(ny), dcol(ny);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) col[j] = source[static_cast<std::size_t>(j) * nx + i] ? 0.0 : INF;
        edt_1d(col, dcol, ny);
        for (int j = 0; j < ny; ++j) g[static_cast<std::size_t>(j) * nx + i] = dcol[j];
    }
    std::vector<double> row(nx), drow(nx), out(g.size());
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) row[i] = g[static_cast<std::size_t>(j) * nx + i];
        edt_1d(row, drow, nx);
        for (int i = 0; i < nx; ++i) out[static_cast<std::size_t>(j) * nx + i] = drow[i];
    }
    return out;
}

/// 8-connected chamfer distance (two-pass), steps h and h*sqrt(2).
inline std::vector<double> chamfer(const std::vector<std::uint8_t>& source, int nx, int ny, double h) {
    static constexpr double BIG = std::numeric_limits<double>::max() / 4;
    const double w1 = h, w2 = h * std::sqrt(2.0);
    std::vector<double> d(static_cast<std::size_t>(nx) * ny, BIG);
    auto at = [&](int i, int j) -> double& { return d[static_cast<std::size_t>(j) * nx + i]; };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (source[static_cast<std::size_t>(j) * nx + i]) at(i, j) = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            double v = at(i, j);
            if (i > 0) v = std::min(v, at(i - 1, j) + w1);
            if (j > 0) v = std::min(v, at(i, j - 1) + w1);
            if (i > 0 && j > 0) v = std::min(v, at(i - 1, j - 1) + w2);
            if (i + 1 < nx && j > 0) v = std::min(v, at(i + 1, j - 1) + w2);
            at(i, j) = v;
        }
    for (int j = ny - 1; j >= 0; --j)
        for (int i = nx - 1; i >= 0; --i) {
            double v = at(i, j);
            if (i + 1 < nx) v = std::min(v, at(i + 1, j) + w1);
            if (j + 1 < ny) v = std::min(v, at(i, j + 1) + w1);
            if (i + 1 < nx && j + 1 < ny) v = std::min(v, at(i + 1, j + 1) + w2);
            if (i > 0 && j + 1 < ny) v = std::min(v, at(i - 1, j + 1) + w2);
            at(i, j) = v;
        }
    return d;
}

}  // namespace detail

/// Discretizes the domain on the lattice h*Z^2.  Interior nodes are the
/// lattice points strictly inside D with boundary distance >= h; d_Omega is
/// the exact Euclidean distance for analytic shapes and the 8-connected
/// chamfer transform for raster masks.  Throws "degenerate grid" when no
/// interior node survives.
inline Grid build_grid(const PlanarDomain& domain, double h) {
    if (!(h > 0)) throw std::invalid_argument("build_grid: spacing must be positive");
    const BoundingBox& bb = domain.bounding_box();

    Grid g;
    g.domain = domain;
    g.h = h;
    g.i0 = static_cast<int>(std::floor(bb.x0 / h)) - 1;
    g.j0 = static_cast<int>(std::floor(bb.y0 / h)) - 1;
    const int i1 = static_cast<int>(std::ceil(bb.x1 / h)) + 1;
    const int j1 = static_cast<int>(std::ceil(bb.y1 / h)) + 1;
    g.nx = i1 - g.i0 + 1;
    g.ny = j1 - g.j0 + 1;
    const std::size_t ncell = static_cast<std::size_t>(g.nx) * g.ny;
    g.node_at.assign(ncell, -1);

    const double eps = 1e-12 * (1.0 + h);
    std::vector<std::uint8_t> inside_cell(ncell, 0);
    for (int j = g.j0; j <= j1; ++j)
        for (int i = g.i0; i <= i1; ++i)
            if (domain.inside(i * h, j * h))
                inside_cell[static_cast<std::size_t>(j - g.j0) * g.nx + (i - g.i0)] = 1;

    std::vector<double> dvals(ncell, 0.0);
    if (domain.has_analytic_distance()) {
        for (int j = g.j0; j <= j1; ++j)
            for (int i = g.i0; i <= i1; ++i) {
                const std::size_t c = static_cast<std::size_t>(j - g.j0) * g.nx + (i - g.i0);
                if (inside_cell[c]) dvals[c] = domain.boundary_distance(i * h, j * h);
            }
    } else {
        std::vector<std::uint8_t> outside(ncell);
        for (std::size_t c = 0; c < ncell; ++c) outside[c] = inside_cell[c] ? 0 : 1;
        dvals = detail::chamfer(outside, g.nx, g.ny, h);
    }

    for (int j = g.j0; j <= j1; ++j)
        for (int i = g.i0; i <= i1; ++i) {
            const std::size_t c = static_cast<std::size_t>(j - g.j0) * g.nx + (i - g.i0);
            if (!inside_cell[c] || dvals[c] + eps < h) continue;
            g.node_at[c] = static_cast<std::int32_t>(g.ij.size());
            g.ij.push_back({i, j});
            g.dist.push_back(dvals[c]);
        }

    if (g.ij.empty())
        throw std::invalid_argument("degenerate grid: no interior node at spacing h=" + std::to_string(h));
    return g;
}

/// (phi, phi_x, phi_y, lap) at a point; total on R^2.
inline WeightEval eval_weight(const Weight& w, double x, double y) { return w.eval(x, y); }

/// Mask of interior nodes with |lap phi| <= tau.
inline NodeMask zero_set(const Weight& w, const Grid& g, double tau) {
    if (!(tau >= 0)) throw std::invalid_argument("zero_set: tolerance must be >= 0");
    NodeMask m(g.n(), 0);
    for (int k = 0; k < g.n(); ++k)
        if (std::abs(w.eval(g.x(k), g.y(k)).lap) <= tau) m[k] = 1;
    return m;
}

/// Exact Euclidean distance (physical units) from every interior node to
/// the given mask; infinity when the mask is empty.
inline std::vector<double> mask_distance_field(const Grid& g, const NodeMask& mask) {
    if (static_cast<int>(mask.size()) != g.n())
        throw std::invalid_argument("mask_distance_field: mask size mismatch");
    const std::size_t ncell = static_cast<std::size_t>(g.nx) * g.ny;
    std::vector<std::uint8_t> src(ncell, 0);
    bool any = false;
    for (int k = 0; k < g.n(); ++k)
        if (mask[k]) {
            src[static_cast<std::size_t>(g.ij[k][1] - g.j0) * g.nx + (g.ij[k][0] - g.i0)] = 1;
            any = true;
        }
    std::vector<double> out(g.n(), std::numeric_limits<double>::infinity());
    if (!any) return out;
    const std::vector<double> d2 = detail::edt_squared(src, g.nx, g.ny);
    for (int k = 0; k < g.n(); ++k) {
        const std::size_t c = static_cast<std::size_t>(g.ij[k][1] - g.j0) * g.nx + (g.ij[k][0] - g.i0);
        out[k] = g.h * std::sqrt(d2[c]);
    }
    return out;
}

/// Nested neighborhoods U_j = {nodes within widths[j] of the mask}.
/// widths must be strictly decreasing and each > h.
inline std::vector<NodeMask> shrink_neighborhoods(const NodeMask& mask, const Grid& g,
                                                  const std::vector<double>& widths) {
    for (std::size_t j = 0; j < widths.size(); ++j) {
        if (!(widths[j] > g.h))
            throw std::invalid_argument("unresolvable neighborhood: width " + std::to_string(widths[j]) +
                                        " must exceed grid spacing " + std::to_string(g.h));
        if (j > 0 && !(widths[j] < widths[j - 1]))
            throw std::invalid_argument("shrink_neighborhoods: widths must be strictly decreasing");
    }
    const std::vector<double> dist = mask_distance_field(g, mask);
    std::vector<NodeMask> out;
    out.reserve(widths.size());
    for (double wj : widths) {
        NodeMask u(g.n(), 0);
        for (int k = 0; k < g.n(); ++k)
            if (dist[k] <= wj) u[k] = 1;
        out.push_back(std::move(u));
    }
    return out;
}

inline int mask_count(const NodeMask& m) {
    int c = 0;
    for (auto v : m) c += v != 0;
    return c;
}

/// Smallest Laplacian value of the weight over the grid nodes (subharmonicity spot check).
inline double min_laplacian_on_grid(const Weight& w, const Grid& g) {
    double lo = std::numeric_limits<double>::infinity();
    for (int k = 0; k < g.n(); ++k) lo = std::min(lo, w.eval(g.x(k), g.y(k)).lap);
    return lo;
}

}  // namespace pq::geom
