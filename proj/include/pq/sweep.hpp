#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "pq/assemble.hpp"
#include "pq/eigensolver.hpp"
#include "pq/parallel.hpp"

namespace pq::spectral {

struct SweepRow {
    double m = 0;
    double lambda0 = 0, lambda_mag = 0;   // nonmagnetic / magnetic smallest eigenvalues
    double res0 = 0, res_mag = 0;
    int iters0 = 0, iters_mag = 0;
    bool conv0 = false, conv_mag = false;
};

struct SpectralSweep {
    std::vector<SweepRow> rows;  // sorted by m
    double h = 0;
    std::string domain_id, weight_id;
};

/// One row per multiplier: lambda0 for -Lap + m*lap(phi) and lambda for the
/// weighted Wirtinger pencil.  Rows are independent (and may run
/// concurrently); results are assembled in input order.
inline SpectralSweep sweep_spectra(const geom::PlanarDomain& domain, const geom::Weight& weight,
                                   const std::vector<double>& m_list, double h,
                                   const EigenOptions& opt = {}) {
    if (m_list.empty()) throw std::invalid_argument("sweep_spectra: empty multiplier list");
    for (std::size_t i = 0; i < m_list.size(); ++i) {
        if (!(m_list[i] >= 0)) throw std::invalid_argument("sweep_spectra: multipliers must be >= 0");
        if (i > 0 && !(m_list[i] > m_list[i - 1]))
            throw std::invalid_argument("sweep_spectra: multipliers must be strictly increasing");
    }
    const geom::Grid grid = geom::build_grid(domain, h);

    SpectralSweep sweep;
    sweep.h = h;
    sweep.domain_id = domain.describe();
    sweep.weight_id = weight.describe();
    sweep.rows.resize(m_list.size());

    par::parallel_for(m_list.size(), [&](std::size_t i) {
        SweepRow row;
        row.m = m_list[i];
        {
            const CsrMatrix<double> a = assemble_nonmagnetic(grid, weight, row.m);
            const EigenResult r = smallest_eigenvalue(a, nullptr, opt);
            row.lambda0 = r.lambda;
            row.res0 = r.residual;
            row.iters0 = r.iterations;
            row.conv0 = r.converged;
        }
        {
            const GeneralizedPencil p = assemble_magnetic_form(grid, weight, row.m);
            const EigenResult r = smallest_eigenvalue(p, opt);
            row.lambda_mag = r.lambda;
            row.res_mag = r.residual;
            row.iters_mag = r.iterations;
            row.conv_mag = r.converged;
        }
        sweep.rows[i] = row;
    });
    return sweep;
}

/// RFC-4180 CSV with LF line endings and '.' decimal separator.
inline std::string to_csv(const SpectralSweep& s) {
    std::string out = "m,lambda_nonmagnetic,lambda_magnetic,residual_nm,residual_m,iters_nm,iters_m,h\n";
    char buf[256];
    for (const SweepRow& r : s.rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%.17g\n", r.m, r.lambda0,
                      r.lambda_mag, r.res0, r.res_mag, r.iters0, r.iters_mag, s.h);
        out += buf;
    }
    return out;
}

}  // namespace pq::spectral
