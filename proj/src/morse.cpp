#include "morsekit/morse.hpp"

#include "morsekit/errors.hpp"
#include "morsekit/report.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace morsekit::morse {

Morsification::Morsification(germ::PolynomialGerm b, std::vector<double> quad,
                             std::vector<double> lin)
    : base(std::move(b)), quadratic_coeffs(std::move(quad)), linear_coeffs(std::move(lin)) {
    const std::size_t m = base.n_vars();
    if (quadratic_coeffs.empty()) quadratic_coeffs.assign(m, 1.0);
    if (linear_coeffs.empty()) linear_coeffs.assign(m, 0.0);
    if (quadratic_coeffs.size() != m || linear_coeffs.size() != m)
        throw DimensionMismatch("morsification coefficient vectors must have length " +
                                std::to_string(m));
}

RealizedGerm::RealizedGerm(const germ::PolynomialGerm& base, std::vector<double> quad,
                           std::vector<double> lin, double s)
    : n_vars_(base.n_vars()) {
    for (const auto& t : base.terms())
        terms_.push_back({to_double(t.coefficient), t.exponents});
    for (std::size_t i = 0; i < n_vars_; ++i) {
        const double cq = s * quad[i];
        if (cq != 0.0) {
            std::vector<unsigned> e(n_vars_, 0);
            e[i] = 2;
            terms_.push_back({cq, std::move(e)});
        }
        const double cl = s * lin[i];
        if (cl != 0.0) {
            std::vector<unsigned> e(n_vars_, 0);
            e[i] = 1;
            terms_.push_back({cl, std::move(e)});
        }
    }
    // merge duplicates so e.g. x^2 + s*x^2 evaluates once
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.e < b.e; });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().e == t.e)
            merged.back().c += t.c;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return t.c == 0.0; });
    terms_ = std::move(merged);
}

namespace {

double ipow(double x, unsigned e) {
    double r = 1.0;
    while (e != 0) {
        if (e & 1u) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

}  // namespace

double RealizedGerm::value(std::span<const double> x) const {
    double s = 0.0;
    for (const auto& t : terms_) {
        double v = t.c;
        for (std::size_t i = 0; i < n_vars_; ++i)
            if (t.e[i] != 0) v *= ipow(x[i], t.e[i]);
        s += v;
    }
    return s;
}

std::vector<double> RealizedGerm::gradient(std::span<const double> x) const {
    std::vector<double> g(n_vars_, 0.0);
    for (const auto& t : terms_) {
        for (std::size_t i = 0; i < n_vars_; ++i) {
            if (t.e[i] == 0) continue;
            double v = t.c * t.e[i];
            for (std::size_t j = 0; j < n_vars_; ++j) {
                const unsigned e = (j == i) ? t.e[j] - 1 : t.e[j];
                if (e != 0) v *= ipow(x[j], e);
            }
            g[i] += v;
        }
    }
    return g;
}

SymMatrix RealizedGerm::hessian(std::span<const double> x) const {
    SymMatrix h(n_vars_);
    for (const auto& t : terms_) {
        for (std::size_t i = 0; i < n_vars_; ++i) {
            for (std::size_t j = i; j < n_vars_; ++j) {
                const unsigned fi = t.e[i];
                const unsigned fj = (j == i) ? (fi > 0 ? fi - 1 : 0) : t.e[j];
                if (fi == 0 || fj == 0) continue;
                double v = t.c * fi * fj;
                for (std::size_t k = 0; k < n_vars_; ++k) {
                    unsigned e = t.e[k];
                    if (k == i) --e;
                    if (k == j) --e;
                    if (e != 0) v *= ipow(x[k], e);
                }
                h(i, j) += v;
            }
        }
    }
    for (std::size_t i = 0; i < n_vars_; ++i)
        for (std::size_t j = 0; j < i; ++j) h(i, j) = h(j, i);
    return h;
}

RealizedGerm realize(const Morsification& m, double s) {
    return RealizedGerm(m.base, m.quadratic_coeffs, m.linear_coeffs, s);
}

namespace {

// Newton refinement of one seed; nullopt on divergence. Iterates until the
// step stalls at machine precision rather than stopping at grad_tol, so that
// seeds draining into a degenerate zero (where the gradient is flat and
// convergence only linear) contract below the dedup radius instead of
// littering the neighborhood with spurious near-critical points.
std::optional<std::vector<double>> refine_seed(const RealizedGerm& fs, std::vector<double> x,
                                               const Box& box, const SolverOptions& opts) {
    const double runaway = 8.0 * std::max(box.max_width(), 1.0);
    for (int it = 0; it < opts.max_iterations; ++it) {
        const auto g = fs.gradient(x);
        const SymMatrix h = fs.hessian(x);
        std::vector<double> rhs(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = -g[i];
        std::vector<double> dx;
        if (!solve_linear(h, std::move(rhs), dx)) break;  // singular: judge x as-is
        if (norm2(dx) > runaway) return std::nullopt;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
        if (norm2(x) > 16.0 * runaway) return std::nullopt;
        if (norm2(dx) <= 1e-14 * std::max(1.0, norm2(x))) break;  // stationary
    }
    if (norm2(fs.gradient(x)) > opts.grad_tol) return std::nullopt;
    if (!box.contains(x, 1e-9 * std::max(box.max_width(), 1.0))) return std::nullopt;
    return x;
}

std::vector<std::vector<double>> solve_gradient_zeros(const RealizedGerm& fs, const Box& box,
                                                      int grid, const SolverOptions& opts) {
    const std::size_t m = fs.n_vars();
    if (box.dim() != m) throw DimensionMismatch("box dimension != germ variables");
    for (std::size_t i = 0; i < m; ++i)
        if (!(box.lo[i] < box.hi[i])) throw ParseError("empty box");
    if (grid < 8) throw ParseError("grid_per_axis must be >= 8");

    // Candidates from Newton on every cell-center seed of the grid lattice.
    struct Candidate {
        std::vector<double> x;
        double gnorm;
    };
    std::vector<Candidate> found;
    std::vector<int> idx(m, 0);
    std::vector<double> seed(m);
    bool done = false;
    while (!done) {
        for (std::size_t i = 0; i < m; ++i)
            seed[i] = box.lo[i] + (idx[i] + 0.5) * (box.hi[i] - box.lo[i]) / grid;
        if (auto r = refine_seed(fs, seed, box, opts)) {
            Candidate c;
            c.x = std::move(*r);
            c.gnorm = norm2(fs.gradient(c.x));
            found.push_back(std::move(c));
        }
        // odometer
        std::size_t d = 0;
        while (d < m && ++idx[d] == grid) idx[d++] = 0;
        done = (d == m);
    }

    // Dedup: points closer than dedup_radius merge, keeping the smaller
    // gradient norm.
    std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
        if (a.gnorm != b.gnorm) return a.gnorm < b.gnorm;
        return a.x < b.x;
    });
    std::vector<std::vector<double>> unique;
    for (auto& c : found) {
        bool dup = false;
        for (const auto& u : unique)
            if (dist2(c.x, u) <= opts.dedup_radius) {
                dup = true;
                break;
            }
        if (!dup) unique.push_back(std::move(c.x));
    }
    std::sort(unique.begin(), unique.end());
    return unique;
}

}  // namespace

std::vector<std::vector<double>> locate_gradient_zeros(const RealizedGerm& fs, const Box& box,
                                                       int grid_per_axis,
                                                       const SolverOptions& opts) {
    return solve_gradient_zeros(fs, box, grid_per_axis, opts);
}

unsigned morse_index(const SymMatrix& hessian, double degeneracy_tol_rel) {
    const auto eig = symmetric_eigenvalues(hessian);
    double scale = 0.0;
    for (double e : eig) scale = std::max(scale, std::abs(e));
    const double tol = degeneracy_tol_rel * scale;
    unsigned idx = 0;
    for (double e : eig) {
        if (std::abs(e) <= tol || scale == 0.0)
            throw DegenerateCritical("Hessian eigenvalue " + report::format_short(e) +
                                     " inside the degeneracy band (scale " +
                                     report::format_short(scale) + ")");
        if (e < 0.0) ++idx;
    }
    return idx;
}

std::vector<CriticalPoint> find_critical_points(const RealizedGerm& fs, const Box& box,
                                                int grid_per_axis, const SolverOptions& opts) {
    const auto locations = solve_gradient_zeros(fs, box, grid_per_axis, opts);
    std::vector<CriticalPoint> out;
    out.reserve(locations.size());
    for (const auto& x : locations) {
        CriticalPoint cp;
        cp.location = x;
        cp.value = fs.value(x);
        const SymMatrix h = fs.hessian(x);
        cp.hessian_eigenvalues = symmetric_eigenvalues(h);
        double scale = 0.0;
        for (double e : cp.hessian_eigenvalues) scale = std::max(scale, std::abs(e));
        const double tol = opts.degeneracy_tol_rel * scale;
        unsigned idx = 0;
        for (double e : cp.hessian_eigenvalues) {
            if (scale == 0.0 || std::abs(e) <= tol) {
                std::ostringstream loc;
                for (std::size_t i = 0; i < x.size(); ++i)
                    loc << (i ? "," : "") << report::format_short(x[i]);
                throw DegenerateCritical("f_s is not Morse at (" + loc.str() +
                                         "): eigenvalue " + report::format_short(e) +
                                         " within degeneracy tolerance");
            }
            if (e < 0.0) ++idx;
        }
        cp.morse_index = idx;
        out.push_back(std::move(cp));
    }
    return out;
}

std::string MorseVector::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(indices[i]);
    }
    return s + ")";
}

std::pair<MorseVector, MorseVector> morse_vectors(std::span<const CriticalPoint> points) {
    MorseVector all, zeros;
    for (const auto& p : points) all.indices.push_back(p.morse_index);
    std::sort(all.indices.begin(), all.indices.end());
    for (unsigned i : all.indices)
        if (i == 0) zeros.indices.push_back(i);
    return {std::move(all), std::move(zeros)};
}

std::string critical_points_csv(std::span<const CriticalPoint> points) {
    const std::size_t m = points.empty() ? 0 : points.front().location.size();
    report::Csv csv;
    std::vector<std::string> cols;
    for (std::size_t i = 0; i < m; ++i) cols.push_back("x" + std::to_string(i + 1));
    cols.push_back("value");
    cols.push_back("index");
    for (std::size_t i = 0; i < m; ++i) cols.push_back("eig" + std::to_string(i + 1));
    if (m != 0) csv.header(cols);
    for (const auto& p : points) {
        for (double x : p.location) csv.cell(x);
        csv.cell(p.value);
        csv.cell(static_cast<long long>(p.morse_index));
        for (double e : p.hessian_eigenvalues) csv.cell(e);
        csv.end_row();
    }
    return csv.str();
}

}  // namespace morsekit::morse
