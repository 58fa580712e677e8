#include "morsekit/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace morsekit {

std::vector<double> symmetric_eigenvalues(const SymMatrix& m) {
    const std::size_t n = m.size();
    SymMatrix a = m;
    // symmetrize defensively against caller-side rounding
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = a(j, i) = v;
        }

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    for (int sweep = 0; sweep < 64 && off_norm() > 1e-15 * scale * n; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

bool solve_linear(SymMatrix a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) return false;

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(perm[r], col)) > std::abs(a(perm[piv], col))) piv = r;
        std::swap(perm[col], perm[piv]);
        const double p = a(perm[col], col);
        if (std::abs(p) < 1e-14 * scale) return false;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(perm[r], col) / p;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a(perm[r], c) -= f * a(perm[col], c);
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[perm[i]];
        for (std::size_t c = i + 1; c < n; ++c) s -= a(perm[i], c) * x[c];
        x[i] = s / a(perm[i], i);
    }
    return true;
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dist2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Box Box::cube(std::size_t m, double l, double h) {
    Box b;
    b.lo.assign(m, l);
    b.hi.assign(m, h);
    return b;
}

bool Box::contains(std::span<const double> p, double tol) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
    return true;
}

double Box::max_width() const {
    double w = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) w = std::max(w, hi[i] - lo[i]);
    return w;
}

Box Box::scaled_about_center(double factor) const {
    Box b = *this;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        const double c = 0.5 * (lo[i] + hi[i]);
        const double half = 0.5 * (hi[i] - lo[i]) * factor;
        b.lo[i] = c - half;
        b.hi[i] = c + half;
    }
    return b;
}

}  // namespace morsekit
