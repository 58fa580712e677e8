#pragma once

#include "morsekit/germ.hpp"
#include "morsekit/morse.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace morsekit::fiber {

enum class Sign { positive, negative };

inline double sign_value(Sign s) { return s == Sign::positive ? 1.0 : -1.0; }

// (delta, epsilon, eta, sign) fixing a Milnor fibration: ball radius delta,
// half-interval (0, epsilon] (resp. [-epsilon, 0)), chosen regular value
// sign*eta with 0 < eta <= epsilon.
struct MilnorData {
    double delta = 0.0;
    double epsilon = 0.0;
    double eta = 0.0;
    Sign sign = Sign::positive;
};

struct FiberSample {
    std::vector<std::vector<double>> points;
    double eta = 0.0;
    double tolerance = 0.0;  // |f(p) - sign*eta| <= tolerance for every point
};

struct BettiDatum {
    unsigned degree = 0;
    unsigned rank = 0;
};

// Heuristic realization of the fibration existence statement: delta from the
// grid {1, 1/2, 1/4, ...} (largest value for which the only gradient zero of
// f in B_delta is the origin), epsilon = min(c*delta^2, 1) with c halved
// until sampled fibers are transverse to the boundary sphere, eta = eps/2.
// Throws NotIsolated when foreign critical points persist at every grid
// radius.
MilnorData choose_milnor_data(const germ::PolynomialGerm& f, Sign sign,
                              std::uint64_t seed = 424242ULL);

// Rejection-samples the ball, keeps |f - sign*eta| < 0.1*eta, Newton-projects
// along grad f onto the level set to 1e-10, discards points leaving B_delta.
// An empty result is a legal output (empty fiber).
FiberSample sample_fiber(const germ::PolynomialGerm& f, const MilnorData& md,
                         std::size_t n_points, std::uint64_t seed);

// Connected components of the link_radius-neighbor graph (union-find).
// Returns 0 for an empty sample.
int count_components(const FiberSample& fs, double link_radius);

// Radius choice for count_components: geometric midpoint of the widest >= 3x
// multiplicative gap in the MST edge-length profile; when no such gap exists
// the sample is one component and 1.5x the largest MST edge is returned.
double suggest_link_radius(const FiberSample& fs);

// |lambda_{0,s}| of the realized morsification: the number of Morse-index-zero
// critical points, which equals the rank of the top homology of the positive
// Milnor fiber of the base germ. DegenerateCritical propagates.
int top_homology_rank(const morse::Morsification& m, double s, const Box& box, int grid_per_axis);

struct QuadraticBetti {
    BettiDatum top;
    // lambda == m: the positive fiber is empty and the Betti table does not
    // apply; top is reported as rank 0 at degree 0.
    bool empty_positive_fiber = false;
};

// Top Betti datum of the positive Milnor fiber of a nondegenerate quadratic
// form in m variables with lambda negative squares: degree (m-1)-lambda,
// rank 1 (the Betti polynomial is 1 + u^{(m-1)-lambda}).
QuadraticBetti betti_quadratic(unsigned m, unsigned lambda);

std::string fiber_csv(const FiberSample& fs);
std::string component_report(const FiberSample& fs, double link_radius, int components);

}  // namespace morsekit::fiber
