// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria exercise the library directly and the CLI where the
// deliverable is a report artifact.

#include "morsekit/crypto.hpp"
#include "morsekit/errors.hpp"
#include "morsekit/fiber.hpp"
#include "morsekit/gaussmanin.hpp"
#include "morsekit/germ.hpp"
#include "morsekit/morse.hpp"
#include "morsekit/report.hpp"
#include "morsekit/rng.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace morsekit;
namespace gm = morsekit::gaussmanin;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
int g_failures = 0;

void verdict(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string src(const std::string& rel) { return std::string(MORSEKIT_SOURCE_DIR) + "/" + rel; }

germ::PolynomialGerm load_germ(const std::string& rel) {
    return germ::parse_germ_file(src(rel)).germ;
}

std::string fmt(const char* spec, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// ---- criterion 1: Monte Carlo period vs closed form -------------------------

void criterion1() {
    bool ok = true;
    std::ostringstream detail;
    detail << "period vs 4pi/(t-1):";
    for (int i = 0; i < 3; ++i) {
        const double t = (i == 0) ? 1.5 : (i == 1) ? 2.0 : 4.0;
        const auto t0 = std::chrono::steady_clock::now();
        const auto p = gm::quadratic_period(3, 0, 1.0, t, 1000000,
                                            split_seed(kDefaultSeed, 100 + i));
        const double dt = seconds_since(t0);
        const double ref = 4.0 * kPi / (t - 1.0);
        const double z = (p.value - ref) / p.std_error;
        ok = ok && std::abs(z) <= 3.0 && dt < 10.0;
        detail << " t=" << t << " z=" << fmt("%+.2f", z) << " (" << fmt("%.2f", dt) << "s)";
    }
    verdict(1, ok, detail.str());
}

// ---- criterion 2: eta-scaling arbitration artifact ---------------------------

std::map<std::string, std::string> files_by_suffix(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        const std::string name = e.path().filename().string();
        const auto dot = name.find('.');
        if (dot == std::string::npos) continue;
        const std::string suffix = name.substr(dot + 1);
        if (suffix == "manifest") continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream body;
        body << in.rdbuf();
        out[suffix] = body.str();
    }
    return out;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MORSEKIT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

void criterion2() {
    const fs::path dir = fs::temp_directory_path() / "mk_accept_eta";
    fs::remove_all(dir);
    const int rc = run_cli("eta-scaling --samples 200000 --out " + dir.string());
    bool ok = (rc == 0);
    double ci = 1e9, alpha = 0.0, d_printed = 1e9, d_geom = 1e9;
    if (ok) {
        const auto files = files_by_suffix(dir);
        ok = files.count("csv") != 0;
        if (ok) {
            const std::string& csv = files.at("csv");
            auto grab = [&](const std::string& key, double& dst) {
                const auto at = csv.find(key);
                if (at == std::string::npos) return false;
                dst = std::atof(csv.c_str() + at + key.size());
                return true;
            };
            ok = grab("# alpha = ", alpha) && grab("# ci95_width = ", ci) &&
                 grab("# alpha_minus_printed_(n-1)/2 = ", d_printed) &&
                 grab("# alpha_minus_geometric_n/2 = ", d_geom);
            ok = ok && csv.find("eta,period,stderr") == 0 && ci < 0.05;
        }
    }
    verdict(2, ok,
            "eta-scaling artifact: alpha=" + fmt("%.4f", alpha) + " ci95=" + fmt("%.4f", ci) +
                " dist:(n-1)/2=" + fmt("%+.3f", d_printed) + " n/2=" + fmt("%+.3f", d_geom) +
                " (no exponent asserted)");
}

// ---- criterion 3: hypergeometric engine --------------------------------------

void criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst_log = 0.0, worst_ode = 0.0, worst_eq1 = 0.0;

    gm::HypergeometricParams p112(1, 1, 2);
    for (int i = 1; i <= 9; ++i) {
        const double z = 0.1 * i;
        const double ref = -std::log1p(-z) / z;
        worst_log = std::max(worst_log, std::abs(gm::hyp2f1(p112, z) - ref) / std::abs(ref));
    }
    ok = ok && worst_log <= 1e-10;

    Rng rng(split_seed(kDefaultSeed, 0x0de));
    for (int i = 0; i < 20; ++i) {
        gm::HypergeometricParams p(Rational(1 + (rng.bits() % 300), 100),
                                   Rational(1 + (rng.bits() % 300), 100),
                                   Rational(1 + (rng.bits() % 300), 100));
        worst_ode = std::max(worst_ode, gm::hyp_ode_residual(p, 0.05 + 0.85 * rng.uniform()));
    }
    ok = ok && worst_ode <= 1e-8;

    for (int k : {2, 3, 4}) {
        const double xs[] = {0.2, 0.35, 0.5, 0.65, 0.8};
        const double ts[] = {1.1, 1.5, 2.0, 3.0, 5.0};
        for (int j = 0; j < 5; ++j)
            worst_eq1 = std::max(worst_eq1, gm::eq1_residual(k, xs[j], ts[j]));
    }
    ok = ok && worst_eq1 <= 1e-8;

    const double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    verdict(3, ok,
            "hypergeometric engine: log-identity rel " + fmt("%.1e", worst_log) +
                ", Gauss ODE " + fmt("%.1e", worst_ode) + ", x^k ODE " + fmt("%.1e", worst_eq1) +
                " (" + fmt("%.2f", dt) + "s)");
}

// ---- criterion 4: Morse correctness ------------------------------------------

void criterion4() {
    bool ok = true;
    std::string note;
    for (std::size_t m = 1; m <= 4 && ok; ++m) {
        for (unsigned mask = 0; mask < (1u << m) && ok; ++mask) {
            std::vector<germ::Monomial> terms;
            for (std::size_t i = 0; i < m; ++i) {
                std::vector<unsigned> e(m, 0);
                e[i] = 2;
                terms.push_back(germ::Monomial{std::move(e), ((mask >> i) & 1u) ? -1 : 1});
            }
            const morse::Morsification mor(germ::PolynomialGerm(m, std::move(terms)),
                                           std::vector<double>(m, 0.0));
            const auto pts =
                morse::find_critical_points(morse::realize(mor, 0.0), Box::cube(m, -1, 1), 8);
            ok = pts.size() == 1 && norm2(pts[0].location) < 1e-9 &&
                 pts[0].morse_index == static_cast<unsigned>(std::popcount(mask));
            if (!ok) note = "quadratic form m=" + std::to_string(m) + " mask=" +
                            std::to_string(mask);
        }
    }

    const morse::Morsification mx(load_germ("catalog/germs/x4my2.germ"), {2.0, 0.0});
    const Box box = Box::cube(2, -2, 2);
    if (ok) {
        const auto plus = morse::find_critical_points(morse::realize(mx, 1.0), box, 32);
        ok = plus.size() == 1 && norm2(plus[0].location) < 1e-8 && plus[0].morse_index == 1;
        if (!ok) note = "x^4-y^2+2x^2";
    }
    if (ok) {
        const auto minus = morse::find_critical_points(morse::realize(mx, -1.0), box, 32);
        ok = minus.size() == 3 && std::abs(minus[0].location[0] + 1.0) < 1e-8 &&
             minus[0].morse_index == 1 && norm2(minus[1].location) < 1e-8 &&
             minus[1].morse_index == 2 && std::abs(minus[2].location[0] - 1.0) < 1e-8 &&
             minus[2].morse_index == 1;
        if (!ok) note = "x^4-y^2-2x^2";
    }
    verdict(4, ok,
            ok ? "all 30 sign patterns (m<=4) + the x^4-y^2 morsification pair"
               : "failed at " + note);
}

// ---- criterion 5: fiber components for x^k -----------------------------------

void criterion5() {
    bool ok = true;
    std::ostringstream detail;
    detail << "x^k components:";
    for (unsigned k = 2; k <= 6 && ok; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto f = load_germ("catalog/germs/x" + std::to_string(k) +
                                 (k == 2 ? std::string("py2.germ") : std::string(".germ")));
        (void)f;
        const auto fk = (k == 2) ? germ::PolynomialGerm(1, {germ::Monomial{{2u}, 1}})
                                 : load_germ("catalog/germs/x" + std::to_string(k) + ".germ");
        const auto md = fiber::choose_milnor_data(fk, fiber::Sign::positive);
        const auto sample = fiber::sample_fiber(fk, md, 10000, split_seed(kDefaultSeed, k));
        const double r = fiber::suggest_link_radius(sample);
        const int c = fiber::count_components(sample, r);
        const int c3 = fiber::count_components(sample, 3.0 * r);
        const double dt = seconds_since(t0);
        const int expect = (k % 2 == 0) ? 2 : 1;
        ok = sample.points.size() == 10000 && c == expect && c3 == c && dt < 5.0;
        detail << " k=" << k << ":" << c << (c3 == c ? "" : "(no plateau)") << "("
               << fmt("%.1f", dt) << "s)";
    }
    verdict(5, ok, detail.str());
}

// ---- criterion 6: top homology via morsification ------------------------------

void criterion6() {
    bool ok = true;
    const morse::Morsification m2(load_germ("catalog/germs/x2py2.germ"));
    const morse::Morsification m3(load_germ("catalog/germs/sum3sq.germ"));
    const morse::Morsification mx(load_germ("catalog/germs/x4my2.germ"), {2.0, 0.0});
    for (int i = 1; i <= 8 && ok; ++i) {
        const double s = i / 8.0;  // sampled s in (0, s0]
        ok = fiber::top_homology_rank(m2, s, Box::cube(2, -2, 2), 16) == 1 &&
             fiber::top_homology_rank(m3, s, Box::cube(3, -2, 2), 10) == 1 &&
             fiber::top_homology_rank(mx, s, Box::cube(2, -2, 2), 24) == 0;
    }
    verdict(6, ok, "rank 1 for x^2+y^2 and sum of three squares, 0 for x^4-y^2, "
                   "constant over 8 sampled s in (0, 1]");
}

// ---- criterion 7: annihilator discrimination ----------------------------------

void criterion7() {
    const double eta = 1.0;
    gm::SampledFunction u;
    u.t = gm::default_annihilator_grid(eta);
    for (double t : u.t)
        u.u.push_back(gm::quadratic_period(3, 0, eta, t, 20000, kDefaultSeed).value);
    const double res_se =
        gm::annihilator_residual(gm::DifferentialOperator::shifted_euler(eta), u, eta);
    const double res_dt = gm::annihilator_residual(gm::DifferentialOperator::d_t(), u, eta);
    const bool ok = res_se <= 1e-3 && res_dt >= 1e-2;
    verdict(7, ok,
            "(t-eta)D_t+1 residual " + fmt("%.1e", res_se) + " <= 1e-3, D_t residual " +
                fmt("%.1e", res_dt) + " >= 1e-2; verdict row in gm-check report");
}

// ---- criterion 8: crypto roundtrip --------------------------------------------

void criterion8() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto catalog = crypto::GermCatalog::load(src("catalog/default.cat"));
    std::size_t done = 0, good = 0;
    Rng rng(split_seed(kDefaultSeed, 0xc8));
    for (const auto scheme : {crypto::Scheme::construction1, crypto::Scheme::construction2}) {
        for (int key = 0; key < 200; ++key) {
            const auto& entry = catalog.entries()[key % catalog.entries().size()];
            const auto kp = crypto::keygen(entry, scheme, rng);
            const auto c = crypto::encrypt(scheme, kp.pk, entry.message, catalog);
            ++done;
            try {
                if (crypto::decrypt(scheme, kp.sk, c, catalog) == entry.message) ++good;
            } catch (const DecryptionError&) {
            }
        }
    }
    const double dt = seconds_since(t0);
    const bool ok = done == 400 && good == done && dt < 30.0;
    verdict(8, ok,
            "Dec(Enc(m)) = m for " + std::to_string(good) + "/" + std::to_string(done) +
                " keys, both constructions (" + fmt("%.1f", dt) + "s)");
}

// ---- criterion 9: CCA harness ---------------------------------------------------

void criterion9() {
    const auto catalog = crypto::GermCatalog::load(src("catalog/cca.cat"));
    auto guess = crypto::make_attacker("guess");
    const auto rg =
        crypto::cca_experiment(*guess, crypto::Scheme::construction1, catalog, 10000,
                               split_seed(kDefaultSeed, 0xcca));
    auto re = crypto::make_attacker("reencrypt");
    const auto rr = crypto::cca_experiment(*re, crypto::Scheme::construction1, catalog, 1000,
                                           split_seed(kDefaultSeed, 0xccb));
    const bool ok = std::abs(rg.success_rate - 0.5) <= 0.02 && rr.success_rate >= 0.99;
    verdict(9, ok,
            "guess " + fmt("%.4f", rg.success_rate) + " (|.-0.5| <= 0.02), reencrypt " +
                fmt("%.4f", rr.success_rate) + " advantage " + fmt("%.3f", rr.advantage));
}

// ---- criterion 10: CLI determinism ----------------------------------------------

void criterion10() {
    const std::string germ_x4 = src("catalog/germs/x4my2.germ");
    const std::string germ_x2 = src("catalog/germs/x2.germ");
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"analyze", "analyze --germ " + germ_x4},
        {"morsify", "morsify --germ " + germ_x4 + " --s 1 --quad 2 0 --box -2 2 --grid 32"},
        {"fiber", "fiber --germ " + germ_x2 + " --samples 2000 --components"},
        {"gm-check", "gm-check --samples 50000"},
        {"eta-scaling", "eta-scaling --samples 20000"},
        {"crypto-demo",
         "crypto-demo --catalog " + src("catalog/default.cat") + " --scheme 1 --message 1/4,1/2"},
        {"cca-run",
         "cca-run --catalog " + src("catalog/cca.cat") + " --attacker oracle --trials 200"},
    };
    bool ok = true;
    std::string note = "byte-identical CSV bodies for:";
    for (const auto& [name, args] : commands) {
        const fs::path d1 = fs::temp_directory_path() / ("mk_det1_" + name);
        const fs::path d2 = fs::temp_directory_path() / ("mk_det2_" + name);
        fs::remove_all(d1);
        fs::remove_all(d2);
        const int r1 = run_cli(args + " --seed 7 --out " + d1.string());
        const int r2 = run_cli(args + " --seed 7 --out " + d2.string());
        bool same = (r1 == 0 && r2 == 0);
        if (same) {
            const auto f1 = files_by_suffix(d1);
            const auto f2 = files_by_suffix(d2);
            same = !f1.empty() && f1.count("csv") && f1 == f2;
        }
        ok = ok && same;
        note += " " + name + (same ? "" : "(MISMATCH)");
    }
    verdict(10, ok, note);
}

}  // namespace

int main() {
    std::printf("acceptance suite (seed %llu)\n",
                static_cast<unsigned long long>(kDefaultSeed));
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures != 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
