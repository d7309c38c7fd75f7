#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace pq::spectral {

template <typename T>
struct is_complex : std::false_type {};
template <typename S>
struct is_complex<std::complex<S>> : std::true_type {};

template <typename T>
inline double real_part(const T& v) {
    if constexpr (is_complex<T>::value)
        return v.real();
    else
        return v;
}

template <typename T>
inline double imag_part(const T& v) {
    if constexpr (is_complex<T>::value)
        return v.imag();
    else
        return 0.0;
}

template <typename T>
inline double abs2(const T& v) {
    const double re = real_part(v), im = imag_part(v);
    return re * re + im * im;
}

template <typename T>
inline T conj_of(const T& v) {
    if constexpr (is_complex<T>::value)
        return std::conj(v);
    else
        return v;
}

/// Overflow-safe Euclidean norm (scaled accumulation, LAPACK nrm2 style).
template <typename T>
inline double norm2(const std::vector<T>& v) {
    double scale = 0.0;
    for (const T& x : v) scale = std::max({scale, std::abs(real_part(x)), std::abs(imag_part(x))});
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double acc = 0.0;
    for (const T& x : v) {
        const double re = real_part(x) / scale, im = imag_part(x) / scale;
        acc += re * re + im * im;
    }
    return scale * std::sqrt(acc);
}

template <typename T>
inline T dot(const std::vector<T>& a, const std::vector<T>& b) {
    T acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += conj_of(a[i]) * b[i];
    return acc;
}

/// Hermitian sparse operator in compressed sparse row layout.
template <typename T>
struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr;  // size n+1
    std::vector<int> col;
    std::vector<T> val;

    std::size_t nnz() const { return val.size(); }

    void multiply(const T* x, T* y) const {
        for (int r = 0; r < n; ++r) {
            T acc{};
            for (int p = row_ptr[r]; p < row_ptr[r + 1]; ++p) acc += val[p] * x[col[p]];
            y[r] = acc;
        }
    }

    std::vector<T> multiply(const std::vector<T>& x) const {
        std::vector<T> y(n);
        multiply(x.data(), y.data());
        return y;
    }

    std::vector<T> diagonal() const {
        std::vector<T> d(n, T{});
        for (int r = 0; r < n; ++r)
            for (int p = row_ptr[r]; p < row_ptr[r + 1]; ++p)
                if (col[p] == r) d[r] += val[p];
        return d;
    }

    T entry(int r, int c) const {
        for (int p = row_ptr[r]; p < row_ptr[r + 1]; ++p)
            if (col[p] == c) return val[p];
        return T{};
    }

    bool same_pattern(const CsrMatrix& o) const {
        return n == o.n && row_ptr == o.row_ptr && col == o.col;
    }
};

template <typename T>
inline bool operator==(const CsrMatrix<T>& a, const CsrMatrix<T>& b) {
    return a.same_pattern(b) && a.val == b.val;
}

/// Entry-wise exact Hermitian symmetry check (A == A*).
template <typename T>
inline bool is_hermitian(const CsrMatrix<T>& a) {
    for (int r = 0; r < a.n; ++r)
        for (int p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p)
            if (a.entry(a.col[p], r) != conj_of(a.val[p])) return false;
    return true;
}

/// Accumulates (row, col, value) triplets into CSR.  Duplicates are summed
/// in insertion order, which keeps conjugate-paired assembly exactly
/// Hermitian in floating point.
template <typename T>
class TripletBuilder {
public:
    explicit TripletBuilder(int n) : n_(n) {}

    void add(int r, int c, T v) {
        if (r < 0 || r >= n_ || c < 0 || c >= n_) throw std::out_of_range("triplet index out of range");
        trips_.push_back({r, c, v});
    }

    CsrMatrix<T> build() const {
        std::vector<std::size_t> order(trips_.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (trips_[a].r != trips_[b].r) return trips_[a].r < trips_[b].r;
            return trips_[a].c < trips_[b].c;
        });
        CsrMatrix<T> m;
        m.n = n_;
        std::vector<int> rows;
        int last_r = -1, last_c = -1;
        for (std::size_t idx : order) {
            const auto& t = trips_[idx];
            if (t.r == last_r && t.c == last_c) {
                m.val.back() += t.v;
            } else {
                rows.push_back(t.r);
                m.col.push_back(t.c);
                m.val.push_back(t.v);
                last_r = t.r;
                last_c = t.c;
            }
        }
        m.row_ptr.assign(n_ + 1, 0);
        for (int r : rows) m.row_ptr[r + 1]++;
        for (int i = 0; i < n_; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
        return m;
    }

private:
    struct Trip {
        int r, c;
        T v;
    };
    int n_;
    std::vector<Trip> trips_;
};

}  // namespace pq::spectral
