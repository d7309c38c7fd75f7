#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pq::geom {

enum class WeightFamily { polynomial, harmonic_linear, radial_flat, table_of_terms };

inline const char* to_string(WeightFamily f) {
    switch (f) {
        case WeightFamily::polynomial: return "polynomial";
        case WeightFamily::harmonic_linear: return "harmonic-linear";
        case WeightFamily::radial_flat: return "radial-flat";
        case WeightFamily::table_of_terms: return "table-of-terms";
    }
    return "?";
}

/// phi and its exact first derivatives and Laplacian at a point.
struct WeightEval {
    double phi = 0, phi_x = 0, phi_y = 0, lap = 0;
};

struct MonomialTerm {
    double coef = 0;
    int px = 0, py = 0;
};

namespace detail {
inline double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}
}  // namespace detail

/// Subharmonic weight phi given by exact closed forms; never differentiated
/// numerically.  The additive constant of phi is tracked separately so that
/// the normalization phi - min(phi) used by the spectral assembly is
/// bit-identical for phi and phi + c (the rescaling that leaves first
/// eigenvalues unchanged).
class Weight {
public:
    static Weight polynomial(std::vector<MonomialTerm> terms, bool subharmonic = false) {
        return from_terms(WeightFamily::polynomial, std::move(terms), subharmonic);
    }

    static Weight table_of_terms(std::vector<MonomialTerm> terms, bool subharmonic = false) {
        return from_terms(WeightFamily::table_of_terms, std::move(terms), subharmonic);
    }

    /// a + b x + c y (harmonic, Laplacian identically zero).
    static Weight harmonic_linear(double a, double b, double c) {
        Weight w;
        w.family_ = WeightFamily::harmonic_linear;
        w.terms_ = {{b, 1, 0}, {c, 0, 1}};
        w.constant_ = a;
        w.subharmonic_ = true;
        return w;
    }

    /// Radial weight whose Laplacian is amplitude * (max(0, r - r0))^2:
    /// identically flat on the disk |z| <= r0, subharmonic everywhere.
    static Weight radial_flat(double r0, double amplitude = 1.0, double offset = 0.0) {
        if (!(r0 > 0)) throw std::invalid_argument("radial-flat: r0 must be positive");
        Weight w;
        w.family_ = WeightFamily::radial_flat;
        w.r0_ = r0;
        w.amp_ = amplitude;
        w.constant_ = offset;
        w.subharmonic_ = amplitude >= 0;
        return w;
    }

    WeightFamily family() const { return family_; }
    bool subharmonic() const { return subharmonic_; }
    double constant_term() const { return constant_; }

    /// Same varying part, different additive constant.
    Weight plus_constant(double c) const {
        Weight w = *this;
        w.constant_ += c;
        return w;
    }

    /// (phi, phi_x, phi_y, lap), all exact per the family closed form.
    WeightEval eval(double x, double y) const {
        WeightEval e = eval_varying(x, y);
        e.phi += constant_;
        return e;
    }

    /// phi minus its additive constant.  Bit-identical for w and
    /// w.plus_constant(c); the spectral normalization works off this.
    double varying(double x, double y) const { return eval_varying(x, y).phi; }

    std::string describe() const {
        std::ostringstream os;
        os << to_string(family_);
        if (family_ == WeightFamily::radial_flat) {
            os << " r0=" << r0_ << " amp=" << amp_ << " offset=" << constant_;
        } else {
            for (const auto& t : terms_) os << " (" << t.coef << ",x^" << t.px << ",y^" << t.py << ")";
            if (constant_ != 0) os << " +" << constant_;
        }
        return os.str();
    }

private:
    static Weight from_terms(WeightFamily fam, std::vector<MonomialTerm> terms, bool subharmonic) {
        Weight w;
        w.family_ = fam;
        w.subharmonic_ = subharmonic;
        for (const auto& t : terms) {
            if (t.px < 0 || t.py < 0) throw std::invalid_argument("weight: negative exponent");
            if (t.px == 0 && t.py == 0)
                w.constant_ += t.coef;
            else
                w.terms_.push_back(t);
        }
        return w;
    }

    WeightEval eval_varying(double x, double y) const {
        using detail::ipow;
        WeightEval e;
        if (family_ == WeightFamily::radial_flat) {
            const double r = std::hypot(x, y);
            if (r <= r0_) return e;  // flat zone: all zero
            const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;
            const double q = r0_, q2 = q * q, q4 = q2 * q2;
            e.phi = amp_ * (r4 / 16.0 - (2.0 * q / 9.0) * r3 + (q2 / 4.0) * r2 - (13.0 / 144.0) * q4 -
                            (q4 / 12.0) * std::log(r / q));
            const double dphi_dr = amp_ * (r3 / 4.0 - (2.0 * q / 3.0) * r2 + (q2 / 2.0) * r - q4 / (12.0 * r));
            e.phi_x = dphi_dr * x / r;
            e.phi_y = dphi_dr * y / r;
            const double t = r - q;
            e.lap = amp_ * t * t;
            return e;
        }
        for (const auto& t : terms_) {
            const double mono = t.coef * ipow(x, t.px) * ipow(y, t.py);
            e.phi += mono;
            if (t.px >= 1) e.phi_x += t.coef * t.px * ipow(x, t.px - 1) * ipow(y, t.py);
            if (t.py >= 1) e.phi_y += t.coef * t.py * ipow(x, t.px) * ipow(y, t.py - 1);
            if (t.px >= 2) e.lap += t.coef * t.px * (t.px - 1) * ipow(x, t.px - 2) * ipow(y, t.py);
            if (t.py >= 2) e.lap += t.coef * t.py * (t.py - 1) * ipow(x, t.px) * ipow(y, t.py - 2);
        }
        return e;
    }

    WeightFamily family_ = WeightFamily::polynomial;
    std::vector<MonomialTerm> terms_;
    double constant_ = 0;
    double r0_ = 0, amp_ = 0;  // radial-flat parameters
    bool subharmonic_ = false;
};

/// phi_z = (phi_x - i phi_y)/2 as required by the Wirtinger calculus.
inline std::pair<double, double> wirtinger_dz(const WeightEval& e) {
    return {0.5 * e.phi_x, -0.5 * e.phi_y};
}

}  // namespace pq::geom
