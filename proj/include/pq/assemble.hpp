#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pq/grid.hpp"
#include "pq/sparse.hpp"

namespace pq::spectral {

using geom::Grid;
using geom::NodeMask;
using geom::Weight;
using Complex = std::complex<double>;

/// 5-point Dirichlet Laplacian plus the diagonal potential m * lap(phi),
/// optionally restricted to a node mask (nodes outside are Dirichlet zero).
inline CsrMatrix<double> assemble_nonmagnetic(const Grid& g, const Weight& w, double m,
                                              const NodeMask* mask = nullptr) {
    if (!(m >= 0)) throw std::invalid_argument("assemble_nonmagnetic: multiplier must be >= 0");
    if (mask && static_cast<int>(mask->size()) != g.n())
        throw std::invalid_argument("assemble_nonmagnetic: mask size mismatch");

    std::vector<int> local(g.n(), -1);
    std::vector<int> nodes;
    for (int k = 0; k < g.n(); ++k)
        if (!mask || (*mask)[k]) {
            local[k] = static_cast<int>(nodes.size());
            nodes.push_back(k);
        }
    const int n = static_cast<int>(nodes.size());
    if (n == 0) throw std::invalid_argument("assemble_nonmagnetic: empty node set");

    const double ih2 = 1.0 / (g.h * g.h);
    TripletBuilder<double> tb(n);
    for (int r = 0; r < n; ++r) {
        const int k = nodes[r];
        tb.add(r, r, 4.0 * ih2 + m * w.eval(g.x(k), g.y(k)).lap);
        for (int nb : g.neighbors(k)) {
            if (nb < 0 || local[nb] < 0) continue;  // Dirichlet-zero exterior
            tb.add(r, local[nb], -ih2);
        }
    }
    return tb.build();
}

/// Plain 5-point Dirichlet Laplacian on a mask.
inline CsrMatrix<double> laplacian(const Grid& g, const NodeMask* mask = nullptr) {
    static const Weight zero = Weight::polynomial({});
    return assemble_nonmagnetic(g, zero, 0.0, mask);
}

/// Weighted quadratic-form pair: A = 4 Dz* W Dz with forward-difference
/// Wirtinger derivative and Dirichlet-zero padding; M = diagonal weight at
/// nodes.  Weights use exp(2m*chi) with chi = phi - min(phi over nodes),
/// computed from the constant-free part of phi so that phi and phi + c give
/// bit-identical pencils.
struct GeneralizedPencil {
    CsrMatrix<Complex> A;
    std::vector<double> M;
    double h = 0;
};

inline GeneralizedPencil assemble_magnetic_form(const Grid& g, const Weight& w, double m) {
    if (!(m >= 0)) throw std::invalid_argument("assemble_magnetic_form: multiplier must be >= 0");

    double ref = std::numeric_limits<double>::infinity();
    for (int k = 0; k < g.n(); ++k) ref = std::min(ref, w.varying(g.x(k), g.y(k)));

    const double half = 0.5 * g.h;
    auto site_exponent = [&](int i, int j) {
        // staggered midpoint of the forward stencil cell
        return 2.0 * m * (w.varying(i * g.h + half, j * g.h + half) - ref);
    };
    auto node_exponent = [&](int k) { return 2.0 * m * (w.varying(g.x(k), g.y(k)) - ref); };

    // every lattice site whose forward stencil {p, p+ex, p+ey} touches an
    // interior node, enumerated exactly once
    struct Site {
        int idx[3];
        double expo;
    };
    std::vector<Site> sites;
    double emax = 0.0;
    for (int k = 0; k < g.n(); ++k) emax = std::max(emax, node_exponent(k));
    for (int aj = g.j0; aj < g.j0 + g.ny; ++aj)
        for (int ai = g.i0; ai < g.i0 + g.nx; ++ai) {
            const int na = g.node(ai, aj);
            const int nx = g.node(ai + 1, aj);
            const int ny = g.node(ai, aj + 1);
            if (na < 0 && nx < 0 && ny < 0) continue;
            const double e = site_exponent(ai, aj);
            emax = std::max(emax, e);
            sites.push_back({{na, nx, ny}, e});
        }
    if (emax > 700.0)
        throw std::invalid_argument(
            "dynamic range exceeded: max weight exponent " + std::to_string(emax) +
            " > 700; reduce the multiplier m or truncate the domain");

    GeneralizedPencil p;
    p.h = g.h;
    const int n = g.n();
    TripletBuilder<Complex> tb(n);
    const double inv2h = 1.0 / (2.0 * g.h);
    const Complex coef[3] = {Complex(-1.0, 1.0) * inv2h, Complex(1.0, 0.0) * inv2h,
                             Complex(0.0, -1.0) * inv2h};
    for (const Site& s : sites) {
        const double wgt = 4.0 * std::exp(s.expo);
        for (int u = 0; u < 3; ++u) {
            if (s.idx[u] < 0) continue;
            for (int v = 0; v < 3; ++v) {
                if (s.idx[v] < 0) continue;
                tb.add(s.idx[u], s.idx[v], wgt * conj_of(coef[u]) * coef[v]);
            }
        }
    }
    p.A = tb.build();
    p.M.resize(n);
    for (int k = 0; k < n; ++k) p.M[k] = std::exp(node_exponent(k));
    return p;
}

/// (u* A u) / (u* M u); requires u != 0.
inline double rayleigh_quotient(const std::vector<Complex>& u, const GeneralizedPencil& p) {
    if (static_cast<int>(u.size()) != p.A.n)
        throw std::invalid_argument("rayleigh_quotient: dimension mismatch");
    if (norm2(u) == 0.0) throw std::invalid_argument("rayleigh_quotient: zero vector");
    const std::vector<Complex> au = p.A.multiply(u);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < p.A.n; ++k) {
        num += real_part(conj_of(u[k]) * au[k]);
        den += p.M[k] * abs2(u[k]);
    }
    return num / den;
}

template <typename T>
inline double rayleigh_quotient(const std::vector<T>& u, const CsrMatrix<T>& a,
                                const std::vector<double>* mdiag = nullptr) {
    if (static_cast<int>(u.size()) != a.n) throw std::invalid_argument("rayleigh_quotient: dimension mismatch");
    if (norm2(u) == 0.0) throw std::invalid_argument("rayleigh_quotient: zero vector");
    const std::vector<T> au = a.multiply(u);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < a.n; ++k) {
        num += real_part(conj_of(u[k]) * au[k]);
        den += (mdiag ? (*mdiag)[k] : 1.0) * abs2(u[k]);
    }
    return num / den;
}

}  // namespace pq::spectral
