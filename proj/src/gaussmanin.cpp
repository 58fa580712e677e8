#include "morsekit/gaussmanin.hpp"

#include "morsekit/errors.hpp"
#include "morsekit/germ.hpp"
#include "morsekit/report.hpp"
#include "morsekit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace morsekit::gaussmanin {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kSeriesRelTol = 1e-15;
constexpr unsigned kSeriesMaxTerms = 100000;
}  // namespace

HypergeometricParams::HypergeometricParams(Rational a_, Rational b_, Rational c_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (denominator(c) == 1 && c <= 0)
        throw DomainError("hypergeometric parameter c = " + rational_to_string(c) +
                          " is a non-positive integer");
}

Rational pochhammer(const Rational& q, unsigned l) {
    Rational r = 1;
    for (unsigned i = 0; i < l; ++i) r *= q + static_cast<int>(i);
    return r;
}

double hyp2f1(const HypergeometricParams& p, double z) {
    if (std::abs(z) >= 1.0)
        throw DomainError("hyp2f1: |z| = " + report::format_short(std::abs(z)) + " >= 1");
    const double a = to_double(p.a), b = to_double(p.b), c = to_double(p.c);
    double term = 1.0, sum = 1.0;
    for (unsigned l = 0; l < kSeriesMaxTerms; ++l) {
        term *= (a + l) * (b + l) / ((c + l) * (1.0 + l)) * z;
        sum += term;
        if (std::abs(term) < kSeriesRelTol * std::abs(sum)) return sum;
    }
    if (std::abs(z) > 0.95)
        throw NoConvergence("hyp2f1: term cap hit at |z| = " + report::format_short(std::abs(z)));
    return sum;
}

double hyp_ode_residual(const HypergeometricParams& p, double z) {
    if (std::abs(z) >= 1.0) throw DomainError("hyp_ode_residual: |z| >= 1");
    if (z == 0.0) return 0.0;  // c F'(0) - ab F(0) = 0 exactly
    const double a = to_double(p.a), b = to_double(p.b), c = to_double(p.c);
    // F, F', F'' summed term-wise: T_{l+1} = T_l (a+l)(b+l)/((c+l)(1+l)).
    double T = 1.0, F = 0.0, F1 = 0.0, F2 = 0.0;
    double zl = 1.0;              // z^l
    const double zi = 1.0 / z;    // grid callers keep z away from 0
    for (unsigned l = 0; l < kSeriesMaxTerms; ++l) {
        const double tl = T * zl;
        F += tl;
        F1 += l * tl * zi;
        F2 += static_cast<double>(l) * (l - 1.0) * tl * zi * zi;
        if (l > 2 && std::abs(tl) < kSeriesRelTol * std::abs(F) &&
            std::abs(l * tl * zi) < kSeriesRelTol * std::max(1.0, std::abs(F1)))
            break;
        T *= (a + l) * (b + l) / ((c + l) * (1.0 + l));
        zl *= z;
    }
    // Residual relative to the largest contributing term: the three pieces
    // can individually reach 1e9 (small c), where an absolute residual would
    // only measure cancellation noise.
    const double t2 = z * (1.0 - z) * F2;
    const double t1 = (c - (a + b + 1.0) * z) * F1;
    const double t0 = a * b * F;
    const double scale = std::max({std::abs(t2), std::abs(t1), std::abs(t0), 1.0});
    return std::abs(t2 + t1 - t0) / scale;
}

double eq1_residual(int k, double x, double t) {
    if (k < 2) throw DomainError("eq1_residual: k must be >= 2");
    if (t <= 0.0) throw DomainError("eq1_residual: t must be positive");
    if (x == 0.0) throw DomainError("eq1_residual: x must be nonzero");
    const double xk = std::pow(x, k);
    const double z = xk / t;
    if (!(z > 0.0 && z < 1.0))
        throw DomainError("eq1_residual: x^k/t = " + report::format_short(z) +
                          " outside (0, 1)");

    // u     = sum_l x^{kl+1} / (t^{l+1} (kl+1))
    // u_x   = sum_l x^{kl}   / t^{l+1}
    // u_xx  = sum_l k l x^{kl-1} / t^{l+1}
    double ux = 0.0, uxx = 0.0;
    double p = 1.0 / t;  // x^{kl} / t^{l+1}
    for (unsigned l = 0; l < kSeriesMaxTerms; ++l) {
        ux += p;
        uxx += k * static_cast<double>(l) * p / x;
        if (l > 2 && p < kSeriesRelTol * ux) break;
        p *= z;
    }
    return std::abs((t - xk) * uxx - k * std::pow(x, k - 1) * ux);
}

double ball_volume(int d, double eta) {
    if (eta <= 0.0) throw DomainError("ball_volume: eta must be positive");
    const double hd = 0.5 * d;
    return std::pow(kPi, hd) / std::tgamma(hd + 1.0) * std::pow(eta, hd);
}

double closed_form_u(int m, int lambda, double eta, double t) {
    if (lambda < 0 || lambda >= m) throw DomainError("closed_form_u: lambda out of [0, m)");
    if (t == eta) throw PoleError("closed_form_u: pole at t = eta");
    const int n = m - 1;
    return 2.0 * kPi * ball_volume(n - lambda - 1, eta) / (t - eta);
}

double unit_sphere_area(int d) {
    if (d < 1) throw DomainError("unit_sphere_area: d must be >= 1");
    return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

PeriodEstimate quadratic_period(int m, int lambda, double eta, double t, std::size_t n_samples,
                                std::uint64_t seed) {
    if (lambda < 0 || lambda >= m) throw DomainError("quadratic_period: lambda out of [0, m)");
    if (!(t > eta && eta > 0.0)) throw DomainError("quadratic_period: need t > eta > 0");
    if (n_samples == 0) throw DomainError("quadratic_period: need at least one sample");

    // The generator cycle lives in the positive-definite subspace.
    const int d = m - lambda;
    std::vector<germ::Monomial> terms;
    for (int i = 0; i < m; ++i) {
        germ::Monomial mono;
        mono.exponents.assign(m, 0);
        mono.exponents[i] = 2;
        mono.coefficient = (i < d) ? 1 : -1;
        terms.push_back(std::move(mono));
    }
    const germ::PolynomialGerm f(m, std::move(terms));
    const double r = std::sqrt(eta);

    if (d == 1) {
        // Zero-sphere: two points, enumerated exactly.
        std::vector<double> p(m, 0.0);
        p[0] = r;
        double v = 1.0 / (t - f.evaluate(p));
        p[0] = -r;
        v += 1.0 / (t - f.evaluate(p));
        return PeriodEstimate{v, 0.0, 2};
    }

    // Angular central Gaussian proposal: Gaussian draws with one stretched
    // axis, normalized to the sphere. The density is known exactly, so the
    // weighted mean is unbiased for the surface integral and carries a real
    // n^{-1/2} error bar.
    const double aniso = 1.35;
    const double log_cd = std::lgamma(0.5 * d) - std::log(2.0) - 0.5 * d * std::log(kPi);
    const double cd_over_det = std::exp(log_cd) / aniso;
    const double rpow = std::pow(eta, 0.5 * (d - 1));
    const double inv_a2 = 1.0 / (aniso * aniso);

    double sum = 0.0, sumsq = 0.0;
    std::vector<double> g(d), p(m, 0.0);
    const std::size_t chunk = 65536;
    std::size_t done = 0;
    for (std::size_t shard = 0; done < n_samples; ++shard) {
        Rng rng(split_seed(seed, shard));
        const std::size_t n_here = std::min(chunk, n_samples - done);
        for (std::size_t i = 0; i < n_here; ++i) {
            double nrm = 0.0;
            do {
                for (int j = 0; j < d; ++j) g[j] = rng.normal();
                g[0] *= aniso;
                nrm = norm2(g);
            } while (nrm < 1e-12);
            for (int j = 0; j < d; ++j) p[j] = r * g[j] / nrm;
            const double w0 = g[0] / nrm;  // first sphere coordinate
            const double quad = w0 * w0 * inv_a2 + (1.0 - w0 * w0);
            const double q = cd_over_det * std::pow(quad, -0.5 * d);
            const double phi = 1.0 / (t - f.evaluate(p));
            const double v = rpow * phi / q;
            sum += v;
            sumsq += v * v;
        }
        done += n_here;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    double se = 0.0;
    if (n_samples > 1) {
        const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
        se = std::sqrt(var / n);
    }
    return PeriodEstimate{mean, se, n_samples};
}

double RationalCoeff::operator()(double t) const {
    auto horner = [t](const std::vector<double>& p) {
        double v = 0.0;
        for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
        return v;
    };
    return horner(num) / horner(den);
}

DifferentialOperator::DifferentialOperator(std::vector<Term> t) : terms(std::move(t)) {
    if (terms.empty()) throw DomainError("differential operator needs at least one term");
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.order < b.order; });
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (terms[i].order == terms[i - 1].order)
            throw DomainError("differential operator orders must be distinct");
}

unsigned DifferentialOperator::max_order() const { return terms.back().order; }

std::string DifferentialOperator::to_string(const std::string& var) const {
    std::ostringstream out;
    for (std::size_t i = terms.size(); i-- > 0;) {
        const auto& term = terms[i];
        if (i + 1 != terms.size()) out << " + ";
        out << "(";
        for (std::size_t j = term.coeff.num.size(); j-- > 0;) {
            if (term.coeff.num[j] == 0.0 && term.coeff.num.size() > 1) continue;
            out << report::format_short(term.coeff.num[j]);
            if (j > 0) out << "*" << var << (j > 1 ? "^" + std::to_string(j) : "");
            out << (j > 0 ? " " : "");
        }
        out << ")";
        if (term.coeff.den != std::vector<double>{1.0}) out << "/den";
        if (term.order > 0) {
            out << " D_" << var;
            if (term.order > 1) out << "^" << term.order;
        }
    }
    return out.str();
}

DifferentialOperator DifferentialOperator::d_t() {
    return DifferentialOperator({{1u, RationalCoeff::constant(1.0)}});
}

DifferentialOperator DifferentialOperator::shifted_euler(double eta) {
    return DifferentialOperator({
        {0u, RationalCoeff::constant(1.0)},
        {1u, RationalCoeff::poly({-eta, 1.0})},
    });
}

DifferentialOperator xk_operator(int k, double t) {
    if (k < 2) throw DomainError("xk_operator: k must be >= 2");
    std::vector<double> lead(static_cast<std::size_t>(k) + 1, 0.0);
    lead[0] = t;
    lead[static_cast<std::size_t>(k)] = -1.0;  // t - x^k
    std::vector<double> sub(static_cast<std::size_t>(k), 0.0);
    sub[static_cast<std::size_t>(k) - 1] = -static_cast<double>(k);  // -k x^{k-1}
    return DifferentialOperator({
        {1u, RationalCoeff::poly(std::move(sub))},
        {2u, RationalCoeff::poly(std::move(lead))},
    });
}

DifferentialOperator xk_operator_verbatim(int k, double t) {
    if (k < 2) throw DomainError("xk_operator_verbatim: k must be >= 2");
    const double kd = k;
    // order 2: 2 x^{k-3} (x^k/t - 1) = ((2/t) x^{2k} - 2 x^k) / x^3
    std::vector<double> n2(static_cast<std::size_t>(2 * k) + 1, 0.0);
    n2[static_cast<std::size_t>(2 * k)] = 2.0 / t;
    n2[static_cast<std::size_t>(k)] = -2.0;
    // order 1: -((k+1)/k t / x^2 - (2k+1)/k x^{k-2}) = (-(k+1)t/k + (2k+1)/k x^k) / x^2
    std::vector<double> n1(static_cast<std::size_t>(k) + 1, 0.0);
    n1[0] = -(kd + 1.0) * t / kd;
    n1[static_cast<std::size_t>(k)] = (2.0 * kd + 1.0) / kd;
    // order 0: -t/(k x)
    return DifferentialOperator({
        {0u, RationalCoeff{{-t / kd}, {0.0, 1.0}}},
        {1u, RationalCoeff{std::move(n1), {0.0, 0.0, 1.0}}},
        {2u, RationalCoeff{std::move(n2), {0.0, 0.0, 0.0, 1.0}}},
    });
}

GMSystemDescriptor xk_system(int k, double t) {
    return GMSystemDescriptor{xk_operator(k, t), (k % 2 == 0) ? 1u : 2u,
                              (k % 2 == 0) ? "D/SD" : "D/SD + D/SD"};
}

GMSystemDescriptor quadratic_system(double eta) {
    return GMSystemDescriptor{DifferentialOperator::shifted_euler(eta), 1u, "D/D_t D"};
}

double annihilator_residual(const DifferentialOperator& op, const SampledFunction& f,
                            double pole) {
    const std::size_t n = f.t.size();
    if (n != f.u.size()) throw DomainError("annihilator_residual: grid/value size mismatch");
    if (n < 9) throw DomainError("annihilator_residual: need at least 9 grid points");
    const double h = f.t[1] - f.t[0];
    if (h <= 0.0) throw DomainError("annihilator_residual: grid must be increasing");
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::abs((f.t[i + 1] - f.t[i]) - h) > 1e-9 * h)
            throw DomainError("annihilator_residual: grid must be uniform");
    if (op.max_order() > 2)
        throw DomainError("annihilator_residual: stencils support orders <= 2");
    for (double t : f.t)
        if (std::abs(t - pole) < 10.0 * h)
            throw PoleProximity("grid point " + report::format_short(t) + " within 10h of " +
                                report::format_short(pole));

    double umax = 0.0;
    for (double u : f.u) umax = std::max(umax, std::abs(u));
    if (umax == 0.0) return 0.0;

    double res = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double r = 0.0;
        for (const auto& term : op.terms) {
            double du = 0.0;
            switch (term.order) {
                case 0: du = f.u[i]; break;
                case 1: du = (f.u[i + 1] - f.u[i - 1]) / (2.0 * h); break;
                case 2: du = (f.u[i + 1] - 2.0 * f.u[i] + f.u[i - 1]) / (h * h); break;
            }
            r += term.coeff(f.t[i]) * du;
        }
        res = std::max(res, std::abs(r));
    }
    return res / umax;
}

std::vector<double> default_annihilator_grid(double eta) {
    std::vector<double> t(65);
    const double lo = eta + 2.5, hi = eta + 4.5;
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = lo + (hi - lo) * static_cast<double>(i) / (t.size() - 1);
    return t;
}

EtaScalingFit eta_scaling_fit(int m, int lambda, std::span<const double> etas, double t_offset,
                              std::size_t n_samples, std::uint64_t seed) {
    if (etas.size() < 2) throw DomainError("eta_scaling_fit: need at least two eta values");
    EtaScalingFit fit;
    const int n = m - 1;
    fit.printed_exponent = 0.5 * (n - 1);
    fit.geometric_exponent = 0.5 * n;

    std::vector<double> x, y, w;
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const double eta = etas[i];
        const auto p = quadratic_period(m, lambda, eta, eta + t_offset, n_samples,
                                        split_seed(seed, i));
        fit.rows.push_back({eta, p.value, p.std_error});
        x.push_back(std::log(eta));
        y.push_back(std::log(p.value));
        const double sigma_log = p.std_error / p.value;
        w.push_back(1.0 / (sigma_log * sigma_log));
    }
    double sw = 0.0, swx = 0.0, swy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
    }
    const double xbar = swx / sw, ybar = swy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
        sxy += w[i] * (x[i] - xbar) * (y[i] - ybar);
    }
    fit.alpha = sxy / sxx;
    const double se = std::sqrt(1.0 / sxx);
    fit.ci95_width = 2.0 * 1.959963984540054 * se;
    return fit;
}

}  // namespace morsekit::gaussmanin
