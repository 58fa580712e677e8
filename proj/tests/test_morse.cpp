#include "morsekit/morse.hpp"

#include "morsekit/errors.hpp"
#include "morsekit/rng.hpp"

#include "doctest.h"

#include <bit>
#include <cmath>

using namespace morsekit;
using germ::Monomial;
using germ::PolynomialGerm;
using morse::Morsification;

namespace {

Monomial mono(std::vector<unsigned> e, Rational c) { return Monomial{std::move(e), std::move(c)}; }

PolynomialGerm x4_minus_y2() {
    return PolynomialGerm(2, {mono({4, 0}, 1), mono({0, 2}, -1)});
}

// Sum of +/- x_i^2 for a sign pattern encoded in bits.
PolynomialGerm quadratic_form(std::size_t m, unsigned negatives_mask) {
    std::vector<Monomial> terms;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<unsigned> e(m, 0);
        e[i] = 2;
        terms.push_back(mono(std::move(e), (negatives_mask >> i) & 1u ? -1 : 1));
    }
    return PolynomialGerm(m, std::move(terms));
}

}  // namespace

TEST_CASE("realize: quadratic and linear perturbations") {
    const Morsification m(x4_minus_y2(), {2.0, 0.0});
    const auto fs = morse::realize(m, 1.0);
    const PolynomialGerm expect(2, {mono({4, 0}, 1), mono({0, 2}, -1), mono({2, 0}, 2)});
    Rng rng(split_seed(kDefaultSeed, 21));
    for (int i = 0; i < 25; ++i) {
        const std::vector<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(fs.value(x) == doctest::Approx(expect.evaluate(x)).epsilon(1e-14));
        const auto g1 = fs.gradient(x), g2 = expect.gradient(x);
        CHECK(g1[0] == doctest::Approx(g2[0]).epsilon(1e-14));
        CHECK(g1[1] == doctest::Approx(g2[1]).epsilon(1e-14));
    }

    // s = 0 is the identity perturbation
    const auto f0 = morse::realize(m, 0.0);
    for (int i = 0; i < 10; ++i) {
        const std::vector<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(f0.value(x) == m.base.evaluate(x));
    }

    // x^2 with the linear term: f_s = x^2 + s x
    const Morsification lin(PolynomialGerm(1, {mono({2}, 1)}), {0.0}, {1.0});
    const auto fl = morse::realize(lin, 1.0);
    const double p[] = {0.7};
    CHECK(fl.value(p) == doctest::Approx(0.7 * 0.7 + 0.7));
}

TEST_CASE("find_critical_points: the x^4 - y^2 morsification family") {
    const Morsification m(x4_minus_y2(), {2.0, 0.0});
    const Box box = Box::cube(2, -2.0, 2.0);

    SUBCASE("s = 1: one critical point at the origin with index one") {
        const auto pts = morse::find_critical_points(morse::realize(m, 1.0), box, 32);
        REQUIRE(pts.size() == 1);
        CHECK(std::abs(pts[0].location[0]) < 1e-8);
        CHECK(std::abs(pts[0].location[1]) < 1e-8);
        CHECK(pts[0].morse_index == 1);
    }
    SUBCASE("s = -1: three points from the analytic solve of 4x^3 - 4x = 0") {
        const auto pts = morse::find_critical_points(morse::realize(m, -1.0), box, 32);
        REQUIRE(pts.size() == 3);
        // sorted lexicographically: (-1,0), (0,0), (1,0)
        CHECK(pts[0].location[0] == doctest::Approx(-1.0).epsilon(1e-8));
        CHECK(pts[0].morse_index == 1);
        CHECK(std::abs(pts[1].location[0]) < 1e-8);
        CHECK(pts[1].morse_index == 2);
        CHECK(pts[2].location[0] == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(pts[2].morse_index == 1);
        CHECK(pts[0].value == doctest::Approx(-1.0).epsilon(1e-9));
    }
}

TEST_CASE("find_critical_points: x^2 + s x has its minimum at -s/2") {
    const Morsification m(PolynomialGerm(1, {mono({2}, 1)}), {0.0}, {1.0});
    const auto pts = morse::find_critical_points(morse::realize(m, 1.0), Box::cube(1, -2, 2), 32);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].location[0] == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(pts[0].morse_index == 0);
}

TEST_CASE("morse_index: signature counting and the degeneracy guard") {
    SymMatrix pos(3), mixed(3), paperex(2), zero1(1);
    for (int i = 0; i < 3; ++i) pos(i, i) = 2.0;
    mixed(0, 0) = 2.0;
    mixed(1, 1) = 2.0;
    mixed(2, 2) = -2.0;
    paperex(0, 0) = 4.0;
    paperex(1, 1) = -2.0;
    CHECK(morse::morse_index(pos) == 0);
    CHECK(morse::morse_index(mixed) == 1);
    CHECK(morse::morse_index(paperex) == 1);
    CHECK_THROWS_AS((void)morse::morse_index(zero1), DegenerateCritical);

    SymMatrix nearly(2);
    nearly(0, 0) = 1.0;
    nearly(1, 1) = 1e-12;  // inside the relative band
    CHECK_THROWS_AS((void)morse::morse_index(nearly), DegenerateCritical);
}

TEST_CASE("morse_vectors: lambda_s and the index-zero part") {
    auto mk = [](std::vector<unsigned> idx) {
        std::vector<morse::CriticalPoint> pts;
        for (unsigned i : idx) {
            morse::CriticalPoint p;
            p.morse_index = i;
            pts.push_back(p);
        }
        return pts;
    };
    {
        const auto [all, zeros] = morse::morse_vectors(mk({1}));
        CHECK(all.indices == std::vector<unsigned>{1});
        CHECK(zeros.indices.empty());
    }
    {
        const auto [all, zeros] = morse::morse_vectors(mk({0}));
        CHECK(all.indices == std::vector<unsigned>{0});
        CHECK(zeros.indices == std::vector<unsigned>{0});
    }
    {
        const auto [all, zeros] = morse::morse_vectors(mk({2, 1, 1}));
        CHECK(all.indices == std::vector<unsigned>{1, 1, 2});
        CHECK(zeros.indices.empty());
        CHECK(zeros.size() <= all.size());
    }
}

TEST_CASE("quadratic forms: one critical point, index = negative squares") {
    for (std::size_t m = 1; m <= 4; ++m) {
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            const Morsification mor(quadratic_form(m, mask), std::vector<double>(m, 0.0));
            const auto pts =
                morse::find_critical_points(morse::realize(mor, 0.0), Box::cube(m, -1, 1), 8);
            REQUIRE(pts.size() == 1);
            CHECK(norm2(pts[0].location) < 1e-9);
            CHECK(pts[0].morse_index == static_cast<unsigned>(std::popcount(mask)));
        }
    }
}

TEST_CASE("sum of (-1)^index is stable under grid refinement") {
    auto euler = [](const std::vector<morse::CriticalPoint>& pts) {
        int s = 0;
        for (const auto& p : pts) s += (p.morse_index % 2 == 0) ? 1 : -1;
        return s;
    };
    const Box box2 = Box::cube(2, -2, 2);
    const Morsification mx(x4_minus_y2(), {2.0, 0.0});
    for (double s : {0.4, 1.0, -0.7}) {
        const auto fs = morse::realize(mx, s);
        const int e1 = euler(morse::find_critical_points(fs, box2, 16));
        const int e2 = euler(morse::find_critical_points(fs, box2, 32));
        CHECK(e1 == e2);
    }
    const PolynomialGerm sum3(3, {mono({2, 0, 0}, 1), mono({0, 2, 0}, 1), mono({0, 0, 2}, 1)});
    const Morsification ms(sum3);
    const auto fs = morse::realize(ms, 0.5);
    CHECK(euler(morse::find_critical_points(fs, Box::cube(3, -2, 2), 8)) ==
          euler(morse::find_critical_points(fs, Box::cube(3, -2, 2), 16)));
}

TEST_CASE("box perturbation by 5% keeps the critical set") {
    const Morsification m(x4_minus_y2(), {2.0, 0.0});
    const auto fs = morse::realize(m, -0.8);
    const Box box = Box::cube(2, -2, 2);
    const auto base = morse::find_critical_points(fs, box, 32);
    for (double f : {0.95, 1.05}) {
        const auto perturbed = morse::find_critical_points(fs, box.scaled_about_center(f), 32);
        REQUIRE(perturbed.size() == base.size());
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK(dist2(base[i].location, perturbed[i].location) < 1e-8);
    }
}

TEST_CASE("degenerate morsifications are rejected") {
    // s = 0 leaves x^4 - y^2 non-Morse at the origin.
    const Morsification m(x4_minus_y2(), {2.0, 0.0});
    CHECK_THROWS_AS(
        (void)morse::find_critical_points(morse::realize(m, 0.0), Box::cube(2, -2, 2), 16),
        DegenerateCritical);
    // ... but locate_gradient_zeros still reports the location.
    const auto zeros =
        morse::locate_gradient_zeros(morse::realize(m, 0.0), Box::cube(2, -2, 2), 16);
    REQUIRE(zeros.size() == 1);
    CHECK(norm2(zeros[0]) < 1e-6);
}

TEST_CASE("solver preconditions") {
    const Morsification m(x4_minus_y2(), {2.0, 0.0});
    const auto fs = morse::realize(m, 1.0);
    CHECK_THROWS_AS((void)morse::find_critical_points(fs, Box::cube(2, -2, 2), 7), ParseError);
    CHECK_THROWS_AS((void)morse::find_critical_points(fs, Box::cube(2, 2, -2), 16), ParseError);
}

TEST_CASE("critical point CSV layout") {
    const Morsification m(x4_minus_y2(), {2.0, 0.0});
    const auto pts = morse::find_critical_points(morse::realize(m, 1.0), Box::cube(2, -2, 2), 16);
    const auto csv = morse::critical_points_csv(pts);
    CHECK(csv.rfind("x1,x2,value,index,eig1,eig2\n", 0) == 0);
    CHECK(csv.find(",1,") != std::string::npos);  // the index column
}
