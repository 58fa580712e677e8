#include "morsekit/fiber.hpp"

#include "morsekit/errors.hpp"
#include "morsekit/report.hpp"
#include "morsekit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace morsekit::fiber {

namespace {

morse::RealizedGerm as_realized(const germ::PolynomialGerm& f) {
    const std::size_t m = f.n_vars();
    return morse::RealizedGerm(f, std::vector<double>(m, 0.0), std::vector<double>(m, 0.0), 0.0);
}

std::vector<double> random_direction(Rng& rng, std::size_t m) {
    std::vector<double> v(m);
    double n = 0.0;
    do {
        for (auto& x : v) x = rng.normal();
        n = norm2(v);
    } while (n < 1e-12);
    for (auto& x : v) x /= n;
    return v;
}

// Sampled transversality of {f = target} against the sphere of radius delta:
// project boundary seeds onto the level set while staying on the sphere and
// reject when the tangential gradient collapses at an intersection point.
bool boundary_transverse(const germ::PolynomialGerm& f, double delta, double target,
                         std::uint64_t seed) {
    const std::size_t m = f.n_vars();
    const double scale = std::max(1.0, std::abs(target));
    if (m == 1) {
        const double a[1] = {delta}, b[1] = {-delta};
        return std::abs(f.evaluate(a) - target) > 1e-9 * scale &&
               std::abs(f.evaluate(b) - target) > 1e-9 * scale;
    }
    Rng rng(split_seed(seed, 0xb07d));
    for (int k = 0; k < 128; ++k) {
        auto p = random_direction(rng, m);
        for (auto& x : p) x *= delta;
        for (int it = 0; it < 40; ++it) {
            const double r = f.evaluate(p) - target;
            auto v = f.gradient(p);
            double vp = 0.0;
            for (std::size_t i = 0; i < m; ++i) vp += v[i] * p[i] / delta;
            std::vector<double> vt(m);
            for (std::size_t i = 0; i < m; ++i) vt[i] = v[i] - vp * p[i] / delta;
            const double nt = norm2(vt), nv = norm2(v);
            if (std::abs(r) <= 1e-9 * scale) {
                if (nt < 1e-4 * nv || nv == 0.0) return false;  // tangency
                break;
            }
            if (nt * nt < 1e-30) break;  // cannot move along the boundary
            for (std::size_t i = 0; i < m; ++i) p[i] -= r * vt[i] / (nt * nt);
            const double np = norm2(p);
            for (auto& x : p) x *= delta / np;
        }
    }
    return true;
}

}  // namespace

MilnorData choose_milnor_data(const germ::PolynomialGerm& f, Sign sign, std::uint64_t seed) {
    const std::size_t m = f.n_vars();
    const auto f0 = as_realized(f);
    morse::SolverOptions opts;

    double delta = 0.0;
    for (double d = 1.0; d >= 1.0 / 4096.0; d /= 2.0) {
        auto zeros = morse::locate_gradient_zeros(f0, Box::cube(m, -d, d), 16, opts);
        bool foreign = false;
        for (const auto& z : zeros) {
            const double r = norm2(z);
            if (r <= d && r > std::max(1e-6 * d, 1e-9)) {
                foreign = true;
                break;
            }
        }
        if (!foreign) {
            delta = d;
            break;
        }
    }
    if (delta == 0.0)
        throw NotIsolated("critical points of f accumulate at the origin: no ball radius in "
                          "{1, 1/2, ..., 2^-12} isolates it");

    const double sgn = sign_value(sign);
    for (double c = 0.5; c >= 1.0 / 512.0; c /= 2.0) {
        const double eps = std::min(c * delta * delta, 1.0);
        const double eta = eps / 2.0;
        if (boundary_transverse(f, delta, sgn * eta, seed))
            return MilnorData{delta, eps, eta, sign};
    }
    throw DomainError("no epsilon with fibers transverse to the boundary sphere was found");
}

FiberSample sample_fiber(const germ::PolynomialGerm& f, const MilnorData& md,
                         std::size_t n_points, std::uint64_t seed) {
    const std::size_t m = f.n_vars();
    const double target = sign_value(md.sign) * md.eta;
    const double tol = 1e-10;
    FiberSample out;
    out.eta = md.eta;
    out.tolerance = tol;

    const std::size_t chunk = 4096;
    const std::size_t budget = std::max<std::size_t>(400 * n_points, 100000);
    std::size_t draws = 0;
    for (std::size_t shard = 0; out.points.size() < n_points && draws < budget; ++shard) {
        Rng rng(split_seed(seed, shard));
        for (std::size_t i = 0; i < chunk && out.points.size() < n_points && draws < budget;
             ++i, ++draws) {
            auto p = random_direction(rng, m);
            const double r = md.delta * std::pow(rng.uniform(), 1.0 / static_cast<double>(m));
            for (auto& x : p) x *= r;

            if (std::abs(f.evaluate(p) - target) >= 0.1 * md.eta) continue;

            bool ok = false;
            for (int it = 0; it < 40; ++it) {
                const double res = f.evaluate(p) - target;
                if (std::abs(res) <= tol) {
                    ok = true;
                    break;
                }
                const auto g = f.gradient(p);
                const double g2 = std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
                if (g2 < 1e-30) break;
                for (std::size_t j = 0; j < m; ++j) p[j] -= res * g[j] / g2;
            }
            if (ok && norm2(p) <= md.delta) out.points.push_back(std::move(p));
        }
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

}  // namespace

int count_components(const FiberSample& fs, double link_radius) {
    const std::size_t n = fs.points.size();
    if (n == 0) return 0;  // EmptyFiber
    UnionFind uf(n);
    const double r2 = link_radius * link_radius;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d2 = 0.0;
            const auto& a = fs.points[i];
            const auto& b = fs.points[j];
            for (std::size_t k = 0; k < a.size(); ++k) {
                const double d = a[k] - b[k];
                d2 += d * d;
            }
            if (d2 <= r2) uf.unite(static_cast<int>(i), static_cast<int>(j));
        }
    }
    int c = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (uf.find(static_cast<int>(i)) == static_cast<int>(i)) ++c;
    return c;
}

double suggest_link_radius(const FiberSample& fs) {
    const std::size_t n = fs.points.size();
    if (n <= 1) return 1e-12;

    // Prim MST edge lengths.
    std::vector<double> best(n, 1e300);
    std::vector<char> used(n, 0);
    std::vector<double> edges;
    edges.reserve(n - 1);
    std::size_t cur = 0;
    used[0] = 1;
    for (std::size_t step = 0; step + 1 < n; ++step) {
        const auto& p = fs.points[cur];
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double d = dist2(p, fs.points[j]);
            if (d < best[j]) best[j] = d;
        }
        double m = 1e300;
        std::size_t nxt = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (!used[j] && best[j] < m) {
                m = best[j];
                nxt = j;
            }
        edges.push_back(m);
        used[nxt] = 1;
        cur = nxt;
    }
    std::sort(edges.begin(), edges.end());

    const double wmax = edges.back();
    if (wmax <= 0.0) return 1e-12;  // all points coincide
    const double median = edges[edges.size() / 2];
    const double floor = 1e-15 * std::max(1.0, wmax);

    // Topmost >= 3x multiplicative gap at separation scale splits clusters.
    for (std::size_t i = edges.size() - 1; i-- > 0;) {
        const double lo = std::max(edges[i], floor);
        const double hi = edges[i + 1];
        if (hi >= 3.0 * lo && hi > 2.0 * median) return std::sqrt(lo * hi);
    }
    return 1.5 * wmax;  // no gap: single component
}

int top_homology_rank(const morse::Morsification& m, double s, const Box& box,
                      int grid_per_axis) {
    const auto fs = morse::realize(m, s);
    const auto points = morse::find_critical_points(fs, box, grid_per_axis);
    const auto [all, zeros] = morse::morse_vectors(points);
    (void)all;
    return static_cast<int>(zeros.size());
}

QuadraticBetti betti_quadratic(unsigned m, unsigned lambda) {
    if (m == 0) throw DomainError("betti_quadratic: m must be positive");
    if (lambda > m)
        throw DomainError("betti_quadratic: lambda " + std::to_string(lambda) +
                          " out of range [0, " + std::to_string(m) + "]");
    if (lambda == m) return QuadraticBetti{BettiDatum{0, 0}, true};
    return QuadraticBetti{BettiDatum{(m - 1) - lambda, 1}, false};
}

std::string fiber_csv(const FiberSample& fs) {
    report::Csv csv;
    const std::size_t m = fs.points.empty() ? 0 : fs.points.front().size();
    std::vector<std::string> cols;
    for (std::size_t i = 0; i < m; ++i) cols.push_back("x" + std::to_string(i + 1));
    if (m != 0) csv.header(cols);
    for (const auto& p : fs.points) {
        for (double x : p) csv.cell(x);
        csv.end_row();
    }
    return csv.str();
}

std::string component_report(const FiberSample& fs, double link_radius, int components) {
    std::ostringstream out;
    out << "points:      " << fs.points.size() << "\n";
    out << "eta:         " << report::format_short(fs.eta) << "\n";
    out << "tolerance:   " << report::format_short(fs.tolerance) << "\n";
    out << "link_radius: " << report::format_short(link_radius) << "\n";
    out << "components:  " << components << "\n";
    if (fs.points.empty()) out << "flag:        EmptyFiber\n";
    return out.str();
}

}  // namespace morsekit::fiber
