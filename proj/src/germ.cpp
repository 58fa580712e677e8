#include "morsekit/germ.hpp"

#include "morsekit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace morsekit::germ {

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

// Graded lexicographic: total degree first, then the exponent vector.
bool exponent_less(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da < db;
    return a < b;
}

}  // namespace

unsigned Monomial::total_degree() const {
    return std::accumulate(exponents.begin(), exponents.end(), 0u);
}

WeightVector::WeightVector(std::vector<Rational> w) : weights(std::move(w)) {
    for (const auto& q : weights)
        if (q <= 0 || q > 1)
            throw ParseError("weight " + rational_to_string(q) + " outside (0, 1]");
}

std::string WeightVector::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i) s += ',';
        s += rational_to_string(weights[i]);
    }
    return s;
}

WeightVector WeightVector::parse(const std::string& text) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::vector<Rational> w;
    std::string tok;
    while (in >> tok) w.push_back(parse_rational(tok));
    if (w.empty()) throw ParseError("empty weight vector");
    return WeightVector(std::move(w));
}

PolynomialGerm::PolynomialGerm(std::size_t n_vars, std::vector<Monomial> terms)
    : n_vars_(n_vars) {
    if (n_vars == 0) throw ParseError("germ needs at least one variable");
    for (const auto& t : terms)
        if (t.exponents.size() != n_vars)
            throw DimensionMismatch("monomial exponent vector length " +
                                    std::to_string(t.exponents.size()) + " != vars " +
                                    std::to_string(n_vars));

    std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) {
        return exponent_less(a.exponents, b.exponents);
    });
    for (auto& t : terms) {
        if (!terms_.empty() && terms_.back().exponents == t.exponents)
            terms_.back().coefficient += t.coefficient;
        else
            terms_.push_back(std::move(t));
    }
    std::erase_if(terms_, [](const Monomial& t) { return t.coefficient == 0; });
    if (terms_.empty()) throw ParseError("zero germ: f(0) = 0 needs at least one nonzero term");
    for (const auto& t : terms_)
        if (t.total_degree() == 0)
            throw ParseError("constant term violates f(0) = 0");

    num_terms_.reserve(terms_.size());
    for (const auto& t : terms_) num_terms_.push_back({to_double(t.coefficient), t.exponents});
}

unsigned PolynomialGerm::degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.total_degree());
    return d;
}

void PolynomialGerm::check_dim(std::span<const double> x) const {
    if (x.size() != n_vars_)
        throw DimensionMismatch("point dimension " + std::to_string(x.size()) + " != vars " +
                                std::to_string(n_vars_));
}

double PolynomialGerm::evaluate(std::span<const double> x) const {
    check_dim(x);
    double s = 0.0;
    for (const auto& t : num_terms_) {
        double v = t.c;
        for (std::size_t i = 0; i < n_vars_; ++i)
            if (t.e[i] != 0) v *= ipow(x[i], t.e[i]);
        s += v;
    }
    return s;
}

std::vector<double> PolynomialGerm::gradient(std::span<const double> x) const {
    check_dim(x);
    std::vector<double> g(n_vars_, 0.0);
    for (const auto& t : num_terms_) {
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

SymMatrix PolynomialGerm::hessian(std::span<const double> x) const {
    check_dim(x);
    SymMatrix h(n_vars_);
    for (const auto& t : num_terms_) {
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

std::vector<Monomial> PolynomialGerm::derivative_terms(std::size_t var) const {
    std::vector<Monomial> out;
    for (const auto& t : terms_) {
        if (t.exponents[var] == 0) continue;
        Monomial d;
        d.coefficient = t.coefficient * t.exponents[var];
        d.exponents = t.exponents;
        d.exponents[var] -= 1;
        out.push_back(std::move(d));
    }
    return out;
}

std::string PolynomialGerm::to_string() const {
    static const char* names[] = {"x", "y", "z", "w"};
    std::string s;
    for (std::size_t k = terms_.size(); k-- > 0;) {
        const auto& t = terms_[k];
        std::string mono;
        for (std::size_t i = 0; i < n_vars_; ++i) {
            if (t.exponents[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += (n_vars_ <= 4) ? names[i] : ("x" + std::to_string(i + 1));
            if (t.exponents[i] > 1) mono += "^" + std::to_string(t.exponents[i]);
        }
        const Rational& c = t.coefficient;
        if (!s.empty()) s += (c > 0) ? " + " : " - ";
        else if (c < 0) s += "-";
        const Rational a = abs(c);
        if (a != 1 || mono.empty()) {
            s += rational_to_string(a);
            if (!mono.empty()) s += "*";
        }
        s += mono;
    }
    return s;
}

bool is_quasi_homogeneous(const PolynomialGerm& f, const WeightVector& w) {
    if (w.size() != f.n_vars())
        throw DimensionMismatch("weight vector length " + std::to_string(w.size()) +
                                " != vars " + std::to_string(f.n_vars()));
    for (const auto& t : f.terms()) {
        Rational s = 0;
        for (std::size_t i = 0; i < w.size(); ++i) s += w.weights[i] * t.exponents[i];
        if (s != 1) return false;
    }
    return true;
}

ParsedGerm parse_germ(std::istream& in, const std::string& origin) {
    std::string line;
    std::size_t n_vars = 0;
    std::vector<Monomial> terms;
    std::optional<WeightVector> weights;
    std::size_t lineno = 0;

    auto fail = [&](const std::string& msg) {
        throw ParseError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;

        if (head == "vars") {
            if (n_vars != 0) fail("duplicate vars line");
            long long m = 0;
            if (!(ls >> m) || m <= 0) fail("vars needs a positive integer");
            n_vars = static_cast<std::size_t>(m);
        } else if (head == "weights") {
            if (n_vars == 0) fail("weights before vars");
            std::vector<Rational> w;
            std::string tok;
            while (ls >> tok) w.push_back(parse_rational(tok));
            if (w.size() != n_vars) fail("weights length != vars");
            weights = WeightVector(std::move(w));
        } else {
            if (n_vars == 0) fail("term before vars line");
            Monomial t;
            t.coefficient = parse_rational(head);
            long long e = 0;
            while (ls >> e) {
                if (e < 0) fail("negative exponent");
                t.exponents.push_back(static_cast<unsigned>(e));
            }
            if (t.exponents.size() != n_vars) fail("term needs one exponent per variable");
            if (t.total_degree() == 0) fail("constant term rejected (f(0) = 0)");
            terms.push_back(std::move(t));
        }
    }
    if (n_vars == 0) throw ParseError(origin + ": missing vars line");
    if (terms.empty()) throw ParseError(origin + ": no terms");
    return ParsedGerm{PolynomialGerm(n_vars, std::move(terms)), std::move(weights)};
}

ParsedGerm parse_germ_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open germ file '" + path + "'");
    return parse_germ(in, path);
}

std::string format_germ(const PolynomialGerm& f, const std::optional<WeightVector>& w) {
    std::ostringstream out;
    out << "vars " << f.n_vars() << "\n";
    for (const auto& t : f.terms()) {
        out << rational_to_string(t.coefficient);
        for (unsigned e : t.exponents) out << ' ' << e;
        out << "\n";
    }
    if (w) {
        out << "weights";
        for (const auto& q : w->weights) out << ' ' << rational_to_string(q);
        out << "\n";
    }
    return out.str();
}

}  // namespace morsekit::germ
