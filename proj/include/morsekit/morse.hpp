#pragma once

#include "morsekit/germ.hpp"
#include "morsekit/linalg.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace morsekit::morse {

// f_s(x) = f(x) + sum_i s*q_i*x_i^2 + sum_i s*l_i*x_i.
// q = (1,...,1), l = 0 is the plain morsification of the main construction;
// per-variable q covers the general quadratic perturbation and l covers the
// second-construction example x^2 + s x.
struct Morsification {
    germ::PolynomialGerm base;
    std::vector<double> quadratic_coeffs;
    std::vector<double> linear_coeffs;  // empty means zero

    Morsification(germ::PolynomialGerm b, std::vector<double> quad = {},
                  std::vector<double> lin = {});
};

// A realized f_s: the base germ plus the constant-free perturbation, with
// exact term-wise gradient and Hessian evaluated in doubles. Immutable.
class RealizedGerm {
public:
    RealizedGerm(const germ::PolynomialGerm& base, std::vector<double> quad,
                 std::vector<double> lin, double s);

    std::size_t n_vars() const { return n_vars_; }
    double value(std::span<const double> x) const;
    std::vector<double> gradient(std::span<const double> x) const;
    SymMatrix hessian(std::span<const double> x) const;

private:
    std::size_t n_vars_;
    struct Term {
        double c;
        std::vector<unsigned> e;
    };
    std::vector<Term> terms_;
};

RealizedGerm realize(const Morsification& m, double s);

struct CriticalPoint {
    std::vector<double> location;
    double value = 0.0;
    std::vector<double> hessian_eigenvalues;  // ascending
    unsigned morse_index = 0;
};

struct SolverOptions {
    // Morse points exit in a handful of steps via the stationarity test; the
    // cap only matters for degenerate zeros, where Newton contracts linearly
    // at rate (k-2)/(k-1) and needs the longer leash to fall below the dedup
    // radius (so that non-Morse inputs are detected rather than scattered).
    int max_iterations = 250;
    double grad_tol = 1e-10;
    double dedup_radius = 1e-6;
    double degeneracy_tol_rel = 1e-8;  // relative to the largest |eigenvalue|
};

// Dense grid seeding + Newton on grad f_s = 0 (exact Jacobian = Hessian).
// Diverging seeds are dropped; located points are deduplicated (keeping the
// smaller-gradient representative), Morse-classified and sorted
// lexicographically. Throws DegenerateCritical when f_s is not Morse at a
// located point.
std::vector<CriticalPoint> find_critical_points(const RealizedGerm& fs, const Box& box,
                                                int grid_per_axis,
                                                const SolverOptions& opts = {});

// Newton zero-finding of the gradient without the Morse classification;
// used where degenerate points must be located rather than rejected
// (isolated-singularity checks).
std::vector<std::vector<double>> locate_gradient_zeros(const RealizedGerm& fs, const Box& box,
                                                       int grid_per_axis,
                                                       const SolverOptions& opts = {});

// Count of eigenvalues < -tol with tol = degeneracy_tol_rel * max|eig|;
// throws DegenerateCritical when any eigenvalue lies inside [-tol, tol].
unsigned morse_index(const SymMatrix& hessian, double degeneracy_tol_rel = 1e-8);

// Sorted multiset of Morse indices.
struct MorseVector {
    std::vector<unsigned> indices;

    std::size_t size() const { return indices.size(); }
    bool operator==(const MorseVector&) const = default;
    std::string to_string() const;
};

// (lambda_s, lambda_{0,s}): all indices sorted, and the index-zero part.
std::pair<MorseVector, MorseVector> morse_vectors(std::span<const CriticalPoint> points);

// CSV columns: x1..xm,value,index,eig1..eigm
std::string critical_points_csv(std::span<const CriticalPoint> points);

}  // namespace morsekit::morse
