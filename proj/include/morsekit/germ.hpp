#pragma once

#include "morsekit/linalg.hpp"
#include "morsekit/rational.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace morsekit::germ {

// One term c * prod x_i^{e_i}. Zero coefficients are never stored.
struct Monomial {
    std::vector<unsigned> exponents;
    Rational coefficient;

    unsigned total_degree() const;
    bool operator==(const Monomial& o) const {
        return exponents == o.exponents && coefficient == o.coefficient;
    }
};

// Weight vector w with entries in (0, 1]; doubles as the plaintext message
// of the encryption scheme.
struct WeightVector {
    std::vector<Rational> weights;

    WeightVector() = default;
    explicit WeightVector(std::vector<Rational> w);

    std::size_t size() const { return weights.size(); }
    bool operator==(const WeightVector&) const = default;
    std::string to_string() const;
    static WeightVector parse(const std::string& text);  // "1/4,1/2" or "1/4 1/2"
};

// Exact polynomial map germ f: (R^m, 0) -> (R, 0). Terms are kept in graded
// lexicographic order so equality is structural; construction merges
// duplicate exponent vectors, drops zero terms and rejects a constant term.
class PolynomialGerm {
public:
    PolynomialGerm(std::size_t n_vars, std::vector<Monomial> terms);

    std::size_t n_vars() const { return n_vars_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    unsigned degree() const;

    bool operator==(const PolynomialGerm& o) const {
        return n_vars_ == o.n_vars_ && terms_ == o.terms_;
    }

    double evaluate(std::span<const double> x) const;
    std::vector<double> gradient(std::span<const double> x) const;
    SymMatrix hessian(std::span<const double> x) const;

    // Exact derivative germs (rational coefficients). d/dx_i may be a zero
    // polynomial, which PolynomialGerm cannot hold, hence the term list.
    std::vector<Monomial> derivative_terms(std::size_t var) const;

    std::string to_string() const;

private:
    std::size_t n_vars_;
    std::vector<Monomial> terms_;
    // Double image of the exact terms; filled once at construction so the
    // numeric hot paths never touch big rationals.
    struct NumTerm {
        double c;
        std::vector<unsigned> e;
    };
    std::vector<NumTerm> num_terms_;

    void check_dim(std::span<const double> x) const;
};

bool is_quasi_homogeneous(const PolynomialGerm& f, const WeightVector& w);

// Germ text format:
//   line 1: "vars m"
//   then:   "coeff e1 e2 ... em"   (coeff is "p/q" or an integer)
//   optional: "weights w1 ... wm"
// '#' starts a comment; constant terms are rejected.
struct ParsedGerm {
    PolynomialGerm germ;
    std::optional<WeightVector> weights;
};
ParsedGerm parse_germ(std::istream& in, const std::string& origin = "<stream>");
ParsedGerm parse_germ_file(const std::string& path);
std::string format_germ(const PolynomialGerm& f, const std::optional<WeightVector>& w = std::nullopt);

}  // namespace morsekit::germ
