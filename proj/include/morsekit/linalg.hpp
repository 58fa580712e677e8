#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace morsekit {

// Dense symmetric matrix, row-major, desk scale (m <= 4 in practice).
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const std::vector<double>& data() const { return a_; }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> symmetric_eigenvalues(const SymMatrix& m);

// Solves a x = b by Gaussian elimination with partial pivoting.
// Returns false when the pivot collapses (singular to working precision).
bool solve_linear(SymMatrix a, std::vector<double> b, std::vector<double>& x);

double norm2(std::span<const double> v);
double dist2(std::span<const double> a, std::span<const double> b);

// Axis-aligned box.
struct Box {
    std::vector<double> lo, hi;

    static Box cube(std::size_t m, double l, double h);
    std::size_t dim() const { return lo.size(); }
    bool contains(std::span<const double> p, double tol = 0.0) const;
    double max_width() const;
    Box scaled_about_center(double factor) const;
};

}  // namespace morsekit
