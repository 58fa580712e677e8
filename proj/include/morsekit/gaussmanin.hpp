#pragma once

#include "morsekit/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace morsekit::gaussmanin {

// Parameters of the Gauss hypergeometric series F(a, b; c, z);
// c must not be a non-positive integer.
struct HypergeometricParams {
    Rational a, b, c;

    HypergeometricParams(Rational a_, Rational b_, Rational c_);
};

// (q)_l = q (q+1) ... (q+l-1), exact.
Rational pochhammer(const Rational& q, unsigned l);

// Series sum with term recurrence until |term| < 1e-15 |sum| or 1e5 terms.
// Throws DomainError for |z| >= 1 and NoConvergence when the term cap is hit
// with |z| > 0.95.
double hyp2f1(const HypergeometricParams& p, double z);

// Residual of the hypergeometric equation
//   z(1-z) u'' + (c - (a+b+1) z) u' - a b u
// on the series, with derivatives summed term-wise and the result scaled by
// the largest contributing term. ~1e-15 for in-domain z.
double hyp_ode_residual(const HypergeometricParams& p, double z);

// Residual of the x-ODE satisfied by u(x,t) = x F(1, 1/k; 1+1/k, x^k/t) / t,
//   (t - x^k) u_xx - k x^{k-1} u_x,
// with u_x, u_xx summed term-wise from the differentiated series.
// Preconditions: t > 0, x != 0, 0 < x^k/t < 1 (DomainError otherwise).
double eq1_residual(int k, double x, double t);

// V_d(eta) = pi^{d/2} / Gamma(d/2 + 1) * eta^{d/2}; d may be negative
// (V_{-1} arises for the zero-sphere cycle).
double ball_volume(int d, double eta);

// u_n(t, eta) = 2 pi V_{n - lambda - 1}(eta) / (t - eta) with n = m - 1.
// Throws PoleError at t == eta.
double closed_form_u(int m, int lambda, double eta, double t);

struct PeriodEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

// Monte Carlo estimate of the period integral over the generator cycle of
// the quadratic form with lambda negative squares in m variables: the sphere
// of radius sqrt(eta) in the positive-definite coordinate subspace. Points
// come from normalized Gaussian draws with a mildly anisotropic covariance
// (angular central Gaussian importance sampling), so the estimate carries a
// genuine n^{-1/2} standard error. The zero-sphere case (subspace dimension
// one) is enumerated exactly.
PeriodEstimate quadratic_period(int m, int lambda, double eta, double t, std::size_t n_samples,
                                std::uint64_t seed);

// Surface area of the unit (d-1)-sphere in R^d.
double unit_sphere_area(int d);

// Coefficient c(t) = num(t)/den(t) of one operator term.
struct RationalCoeff {
    std::vector<double> num{0.0};
    std::vector<double> den{1.0};

    double operator()(double t) const;
    static RationalCoeff constant(double c) { return {{c}, {1.0}}; }
    static RationalCoeff poly(std::vector<double> p) { return {std::move(p), {1.0}}; }
};

// Univariate operator sum_j c_j(t) D_t^j; orders distinct, at least one term.
struct DifferentialOperator {
    struct Term {
        unsigned order;
        RationalCoeff coeff;
    };
    std::vector<Term> terms;

    explicit DifferentialOperator(std::vector<Term> t);
    unsigned max_order() const;
    std::string to_string(const std::string& var = "t") const;

    // D_t
    static DifferentialOperator d_t();
    // (t - eta) D_t + 1, the validated annihilator of c/(t - eta).
    static DifferentialOperator shifted_euler(double eta);
};

// Candidate annihilator of the x^k period section u(x, t):
//   (t - x^k) D_xx - k x^{k-1} D_x   (variable x, parameter t).
DifferentialOperator xk_operator(int k, double t);
// The historically printed form of the same operator, with the chain-rule
// slip left in; kept so tests can demonstrate that it fails to annihilate u.
DifferentialOperator xk_operator_verbatim(int k, double t);

struct GMSystemDescriptor {
    DifferentialOperator op;
    unsigned multiplicity = 1;  // 1 or 2 for catalog germs
    std::string printed_form;   // the textbook presentation of the module
};

GMSystemDescriptor xk_system(int k, double t);
GMSystemDescriptor quadratic_system(double eta);

// u sampled on a uniform grid.
struct SampledFunction {
    std::vector<double> t;
    std::vector<double> u;
};

// max over interior grid points of |sum_j c_j(t) D^j u| / max|u|, derivatives
// by second-order central differences (orders <= 2). Grid must be uniform
// with >= 9 points; throws PoleProximity when any grid point is within 10h of
// the pole.
double annihilator_residual(const DifferentialOperator& op, const SampledFunction& f, double pole);

// Default arbitration grid for annihilator reports: 65 uniform points on
// [eta + 2.5, eta + 4.5] (10h well clear of the pole, h^2 truncation ~1.5e-4).
std::vector<double> default_annihilator_grid(double eta);

// eta-scaling arbitration: fits period ~ eta^alpha over the given etas at
// fixed t = eta + t_offset and reports the distance of alpha to both the
// printed exponent (n-1)/2 and the geometric n/2. Asserts nothing.
struct EtaScalingRow {
    double eta, period, std_error;
};
struct EtaScalingFit {
    std::vector<EtaScalingRow> rows;
    double alpha = 0.0;
    double ci95_width = 0.0;
    double printed_exponent = 0.0;    // (n-1)/2
    double geometric_exponent = 0.0;  // n/2
};
EtaScalingFit eta_scaling_fit(int m, int lambda, std::span<const double> etas, double t_offset,
                              std::size_t n_samples, std::uint64_t seed);

}  // namespace morsekit::gaussmanin
