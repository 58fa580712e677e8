#pragma once

#include "morsekit/fiber.hpp"
#include "morsekit/germ.hpp"
#include "morsekit/morse.hpp"
#include "morsekit/rng.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace morsekit::crypto {

enum class Scheme { construction1 = 1, construction2 = 2 };

// Morsification-parameter domain an entry is valid on. The main-theorem
// hypothesis does not hold for every germ on the full symmetric interval
// (x^4 - y^2 changes its critical-point count at s = 0), so each entry
// declares where its rank key is stable.
enum class SDomain { symmetric, positive };

struct CatalogEntry {
    germ::WeightVector message;
    germ::PolynomialGerm germ;
    morse::Morsification morsification;
    unsigned rank_k = 0;
    double s0 = 1.0;
    Box box;
    int grid = 32;
    SDomain s_domain = SDomain::symmetric;
    std::string germ_path;  // provenance, for reports
};

// Catalog of quasi-homogeneous germs keyed by weight-vector messages.
// Loading validates the scheme hypothesis: rank keys pairwise distinct,
// messages unique and quasi-homogeneous for their germ, and each stored
// rank_k equal to |lambda_s| - |lambda_{0,s}| at probe values of s.
class GermCatalog {
public:
    explicit GermCatalog(std::vector<CatalogEntry> entries);
    static GermCatalog load(const std::string& path);

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry& entry_for_message(const germ::WeightVector& m) const;
    const CatalogEntry* entry_for_rank(unsigned k) const;

private:
    std::vector<CatalogEntry> entries_;
};

struct KeyPair {
    double pk = 0.0;          // the morsification parameter s
    morse::MorseVector sk;    // lambda_s
};

// Construction 1 ciphertext: locations of the Morse-index-zero critical
// points of f_pk, sorted lexicographically.
struct Ciphertext1 {
    std::vector<std::vector<double>> points;

    std::size_t size() const { return points.size(); }
    bool operator==(const Ciphertext1&) const = default;
};

// Construction 2 ciphertext: the index-zero part lambda_{0,s} itself.
struct Ciphertext2 {
    morse::MorseVector lambda_zero;

    std::size_t size() const { return lambda_zero.size(); }
    bool operator==(const Ciphertext2&) const = default;
};

using AnyCiphertext = std::variant<Ciphertext1, Ciphertext2>;
std::string serialize(const AnyCiphertext& c);
std::size_t ciphertext_size(const AnyCiphertext& c);

struct EncryptOptions {
    // Keep only index-zero critical points with positive critical value.
    // Off by default; exposed for the second-construction table experiment.
    bool filter_positive_critical_value = false;
};

// Deterministic core: secret key at a prescribed s.
KeyPair keygen_at(const CatalogEntry& entry, double s);
// Draws pk from the entry's domain ([-s0, s0] or (0, s0] per s_domain;
// construction 2 always draws from (0, s0]), retrying a degenerate draw up
// to 16 times.
KeyPair keygen(const CatalogEntry& entry, Scheme scheme, Rng& rng);

Ciphertext1 encrypt1(double pk, const germ::WeightVector& m, const GermCatalog& catalog,
                     const EncryptOptions& opts = {});
germ::WeightVector decrypt1(const morse::MorseVector& sk, const Ciphertext1& c,
                            const GermCatalog& catalog);

Ciphertext2 encrypt2(double pk, const germ::WeightVector& m, const GermCatalog& catalog,
                     const EncryptOptions& opts = {});
germ::WeightVector decrypt2(const morse::MorseVector& sk, const Ciphertext2& c,
                            const GermCatalog& catalog);

AnyCiphertext encrypt(Scheme scheme, double pk, const germ::WeightVector& m,
                      const GermCatalog& catalog, const EncryptOptions& opts = {});
germ::WeightVector decrypt(Scheme scheme, const morse::MorseVector& sk, const AnyCiphertext& c,
                           const GermCatalog& catalog);

// ---- chosen-ciphertext game -------------------------------------------------

// Decryption oracle handed to the attacker; nullopt encodes a decryption
// error. Throws ProtocolViolation on the challenge ciphertext.
using Oracle = std::function<std::optional<germ::WeightVector>(const AnyCiphertext&)>;

struct GameView {
    Scheme scheme;
    double pk;
    const GermCatalog& catalog;
    germ::WeightVector m0, m1;
    AnyCiphertext challenge;
    EncryptOptions opts;
};

class Attacker {
public:
    virtual ~Attacker() = default;
    virtual std::string name() const = 0;
    // Returns the guessed bit b'.
    virtual int run(const GameView& view, const Oracle& oracle, Rng& rng) = 0;
};

// Built-ins: "guess" (coin flip), "reencrypt" (encrypts both candidates under
// pk and compares), "oracle" (learns |sk| from a decryption query on a dummy
// ciphertext and inverts the rank formula).
std::unique_ptr<Attacker> make_attacker(const std::string& name);

struct GameResult {
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    double advantage = 0.0;  // |rate - 1/2| * 2
    std::vector<std::string> transcript;  // one line per oracle query
};

// Runs the four-step experiment `trials` times with per-trial seeds:
// keygen, attacker picks (m0, m1) [built-ins take the first two catalog
// messages, which must have equal length], random bit, challenge, oracle
// access excluding the challenge, guess.
GameResult cca_experiment(Attacker& attacker, Scheme scheme, const GermCatalog& catalog,
                          std::size_t trials, std::uint64_t seed,
                          const EncryptOptions& opts = {});

}  // namespace morsekit::crypto
