#include "morsekit/crypto.hpp"

#include "morsekit/errors.hpp"
#include "morsekit/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace morsekit::crypto {

namespace {

// k as decryption computes it: |lambda_s| - |lambda_{0,s}|.
unsigned rank_at(const CatalogEntry& e, double s) {
    const auto fs = morse::realize(e.morsification, s);
    const auto pts = morse::find_critical_points(fs, e.box, e.grid);
    const auto [all, zeros] = morse::morse_vectors(pts);
    return static_cast<unsigned>(all.size() - zeros.size());
}

}  // namespace

GermCatalog::GermCatalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw ParseError("catalog has no entries");
    for (const auto& e : entries_) {
        if (e.message.size() != e.germ.n_vars())
            throw ParseError("catalog: message length != germ variables for " + e.germ_path);
        if (!germ::is_quasi_homogeneous(e.germ, e.message))
            throw ParseError("catalog: germ " + e.germ_path +
                             " is not quasi-homogeneous for its message " +
                             e.message.to_string());
        if (!(e.s0 > 0.0)) throw ParseError("catalog: s0 must be positive for " + e.germ_path);
        if (e.box.dim() != e.germ.n_vars())
            throw ParseError("catalog: box dimension != germ variables for " + e.germ_path);
    }
    for (std::size_t i = 0; i < entries_.size(); ++i)
        for (std::size_t j = i + 1; j < entries_.size(); ++j) {
            if (entries_[i].rank_k == entries_[j].rank_k)
                throw ParseError("catalog: rank keys must be pairwise distinct (hypothesis); " +
                                 std::to_string(entries_[i].rank_k) + " repeats");
            if (entries_[i].message == entries_[j].message)
                throw ParseError("catalog: duplicate message " + entries_[i].message.to_string());
        }
    // rank_k must be what Dec computes on the entry's own morsification.
    for (const auto& e : entries_) {
        std::vector<double> probes = {0.35 * e.s0, 0.85 * e.s0};
        if (e.s_domain == SDomain::symmetric) probes.push_back(-0.6 * e.s0);
        for (double s : probes) {
            const unsigned k = rank_at(e, s);
            if (k != e.rank_k)
                throw ParseError("catalog: rank key " + std::to_string(e.rank_k) + " for " +
                                 e.germ_path + " but |lambda_s|-|lambda_0,s| = " +
                                 std::to_string(k) + " at s = " + report::format_short(s));
        }
    }
}

GermCatalog GermCatalog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open catalog '" + path + "'");
    const auto dir = std::filesystem::path(path).parent_path();

    std::vector<CatalogEntry> entries;
    struct Pending {
        std::string germ_path;
        std::optional<germ::ParsedGerm> parsed;
        std::optional<germ::WeightVector> message;
        std::optional<double> s0;
        std::optional<Box> box;
        std::optional<unsigned> rank_k;
        std::vector<double> quad, lin;
        int grid = 32;
        SDomain domain = SDomain::symmetric;
    };
    std::optional<Pending> cur;

    auto flush = [&] {
        if (!cur) return;
        if (!cur->parsed) throw ParseError("catalog entry without germ file");
        if (!cur->message) {
            if (cur->parsed->weights)
                cur->message = cur->parsed->weights;
            else
                throw ParseError("catalog entry for " + cur->germ_path +
                                 " needs a message (no weights in germ file)");
        }
        if (!cur->s0) throw ParseError("catalog entry for " + cur->germ_path + " needs s0");
        if (!cur->box) throw ParseError("catalog entry for " + cur->germ_path + " needs box");
        if (!cur->rank_k)
            throw ParseError("catalog entry for " + cur->germ_path + " needs rank_k");
        CatalogEntry e{*cur->message,
                       cur->parsed->germ,
                       morse::Morsification(cur->parsed->germ, cur->quad, cur->lin),
                       *cur->rank_k,
                       *cur->s0,
                       *cur->box,
                       cur->grid,
                       cur->domain,
                       cur->germ_path};
        entries.push_back(std::move(e));
        cur.reset();
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        auto fail = [&](const std::string& msg) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + msg);
        };
        if (key == "germ") {
            flush();
            cur.emplace();
            std::string rel;
            if (!(ls >> rel)) fail("germ needs a file path");
            cur->germ_path = rel;
            cur->parsed = germ::parse_germ_file((dir / rel).string());
        } else if (!cur) {
            fail("'" + key + "' before any germ line");
        } else if (key == "message") {
            std::string rest;
            std::getline(ls, rest);
            cur->message = germ::WeightVector::parse(rest);
        } else if (key == "s0") {
            double v;
            if (!(ls >> v)) fail("s0 needs a number");
            cur->s0 = v;
        } else if (key == "rank_k") {
            long long v;
            if (!(ls >> v) || v < 0) fail("rank_k needs a non-negative integer");
            cur->rank_k = static_cast<unsigned>(v);
        } else if (key == "box") {
            std::vector<double> vals;
            double v;
            while (ls >> v) vals.push_back(v);
            const std::size_t m = cur->parsed->germ.n_vars();
            Box b;
            if (vals.size() == 2) {
                b = Box::cube(m, vals[0], vals[1]);
            } else if (vals.size() == 2 * m) {
                for (std::size_t i = 0; i < m; ++i) {
                    b.lo.push_back(vals[2 * i]);
                    b.hi.push_back(vals[2 * i + 1]);
                }
            } else {
                fail("box needs 'lo hi' or per-axis bounds");
            }
            cur->box = std::move(b);
        } else if (key == "quad" || key == "linear") {
            std::vector<double> vals;
            double v;
            while (ls >> v) vals.push_back(v);
            if (vals.size() != cur->parsed->germ.n_vars())
                fail(key + " needs one coefficient per variable");
            (key == "quad" ? cur->quad : cur->lin) = std::move(vals);
        } else if (key == "grid") {
            int v;
            if (!(ls >> v)) fail("grid needs an integer");
            cur->grid = v;
        } else if (key == "s_domain") {
            std::string v;
            ls >> v;
            if (v == "symmetric")
                cur->domain = SDomain::symmetric;
            else if (v == "positive")
                cur->domain = SDomain::positive;
            else
                fail("s_domain must be 'symmetric' or 'positive'");
        } else {
            fail("unknown catalog key '" + key + "'");
        }
    }
    flush();
    return GermCatalog(std::move(entries));
}

const CatalogEntry& GermCatalog::entry_for_message(const germ::WeightVector& m) const {
    for (const auto& e : entries_)
        if (e.message == m) return e;
    throw UnknownMessage("message " + m.to_string() + " not in catalog");
}

const CatalogEntry* GermCatalog::entry_for_rank(unsigned k) const {
    for (const auto& e : entries_)
        if (e.rank_k == k) return &e;
    return nullptr;
}

std::string serialize(const AnyCiphertext& c) {
    std::string s;
    if (std::holds_alternative<Ciphertext1>(c)) {
        s = "C1[";
        const auto& pts = std::get<Ciphertext1>(c).points;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) s += ';';
            for (std::size_t j = 0; j < pts[i].size(); ++j) {
                if (j) s += ' ';
                s += report::format_double(pts[i][j]);
            }
        }
        s += ']';
    } else {
        s = "C2" + std::get<Ciphertext2>(c).lambda_zero.to_string();
    }
    return s;
}

std::size_t ciphertext_size(const AnyCiphertext& c) {
    return std::holds_alternative<Ciphertext1>(c) ? std::get<Ciphertext1>(c).size()
                                                  : std::get<Ciphertext2>(c).size();
}

KeyPair keygen_at(const CatalogEntry& entry, double s) {
    const auto fs = morse::realize(entry.morsification, s);
    const auto pts = morse::find_critical_points(fs, entry.box, entry.grid);
    auto [all, zeros] = morse::morse_vectors(pts);
    (void)zeros;
    return KeyPair{s, std::move(all)};
}

namespace {

double draw_s(const CatalogEntry& entry, Scheme scheme, Rng& rng) {
    const bool positive =
        scheme == Scheme::construction2 || entry.s_domain == SDomain::positive;
    if (positive) return entry.s0 * (1.0 - rng.uniform());  // (0, s0]
    return entry.s0 * (2.0 * rng.uniform() - 1.0);          // [-s0, s0)
}

}  // namespace

KeyPair keygen(const CatalogEntry& entry, Scheme scheme, Rng& rng) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        const double s = draw_s(entry, scheme, rng);
        try {
            return keygen_at(entry, s);
        } catch (const DegenerateCritical&) {
            // resample
        }
    }
    throw DegenerateCritical("keygen: 16 consecutive draws hit degenerate morsifications");
}

namespace {

std::vector<morse::CriticalPoint> index_zero_points(const CatalogEntry& entry, double pk,
                                                    const EncryptOptions& opts) {
    const auto fs = morse::realize(entry.morsification, pk);
    auto pts = morse::find_critical_points(fs, entry.box, entry.grid);
    std::erase_if(pts, [&](const morse::CriticalPoint& p) {
        if (p.morse_index != 0) return true;
        if (opts.filter_positive_critical_value && !(p.value > 0.0)) return true;
        return false;
    });
    return pts;
}

}  // namespace

Ciphertext1 encrypt1(double pk, const germ::WeightVector& m, const GermCatalog& catalog,
                     const EncryptOptions& opts) {
    const auto& entry = catalog.entry_for_message(m);
    Ciphertext1 c;
    for (auto& p : index_zero_points(entry, pk, opts)) c.points.push_back(std::move(p.location));
    return c;
}

germ::WeightVector decrypt1(const morse::MorseVector& sk, const Ciphertext1& c,
                            const GermCatalog& catalog) {
    if (c.size() > sk.size())
        throw DecryptionError("ciphertext has " + std::to_string(c.size()) +
                              " points but the secret key only " + std::to_string(sk.size()) +
                              " indices");
    const unsigned k = static_cast<unsigned>(sk.size() - c.size());
    const CatalogEntry* e = catalog.entry_for_rank(k);
    if (!e) throw DecryptionError("no catalog germ with rank key " + std::to_string(k));
    return e->message;
}

Ciphertext2 encrypt2(double pk, const germ::WeightVector& m, const GermCatalog& catalog,
                     const EncryptOptions& opts) {
    const auto& entry = catalog.entry_for_message(m);
    Ciphertext2 c;
    c.lambda_zero.indices.assign(index_zero_points(entry, pk, opts).size(), 0u);
    return c;
}

germ::WeightVector decrypt2(const morse::MorseVector& sk, const Ciphertext2& c,
                            const GermCatalog& catalog) {
    for (unsigned i : c.lambda_zero.indices)
        if (i != 0) throw DecryptionError("construction-2 ciphertext with nonzero index");
    if (c.size() > sk.size())
        throw DecryptionError("lambda_0 longer than the secret key vector");
    const unsigned k = static_cast<unsigned>(sk.size() - c.size());
    const CatalogEntry* e = catalog.entry_for_rank(k);
    if (!e) throw DecryptionError("no catalog germ with rank key " + std::to_string(k));
    return e->message;
}

AnyCiphertext encrypt(Scheme scheme, double pk, const germ::WeightVector& m,
                      const GermCatalog& catalog, const EncryptOptions& opts) {
    if (scheme == Scheme::construction1) return encrypt1(pk, m, catalog, opts);
    return encrypt2(pk, m, catalog, opts);
}

germ::WeightVector decrypt(Scheme scheme, const morse::MorseVector& sk, const AnyCiphertext& c,
                           const GermCatalog& catalog) {
    if (scheme == Scheme::construction1) return decrypt1(sk, std::get<Ciphertext1>(c), catalog);
    return decrypt2(sk, std::get<Ciphertext2>(c), catalog);
}

// ---- attackers --------------------------------------------------------------

namespace {

struct GuessAttacker final : Attacker {
    std::string name() const override { return "guess"; }
    int run(const GameView&, const Oracle&, Rng& rng) override { return rng.coin() ? 1 : 0; }
};

struct ReencryptAttacker final : Attacker {
    std::string name() const override { return "reencrypt"; }
    int run(const GameView& view, const Oracle&, Rng&) override {
        // Enc is deterministic given pk, so matching the challenge against a
        // re-encryption of the first candidate distinguishes perfectly.
        const auto c0 = encrypt(view.scheme, view.pk, view.m0, view.catalog, view.opts);
        return serialize(c0) == serialize(view.challenge) ? 0 : 1;
    }
};

struct OracleAttacker final : Attacker {
    std::string name() const override { return "oracle"; }
    int run(const GameView& view, const Oracle& oracle, Rng& rng) override {
        const std::size_t challenge_size = ciphertext_size(view.challenge);
        // Learn |sk| from one decryption of a dummy ciphertext whose size
        // differs from the challenge (so the query is always legal).
        for (std::size_t sz = 0; sz <= 4; ++sz) {
            if (sz == challenge_size) continue;
            AnyCiphertext dummy;
            if (view.scheme == Scheme::construction1) {
                Ciphertext1 c;
                const std::size_t m = view.catalog.entries().front().germ.n_vars();
                for (std::size_t i = 0; i < sz; ++i)
                    c.points.push_back(std::vector<double>(m, 9e9 + static_cast<double>(i)));
                dummy = std::move(c);
            } else {
                Ciphertext2 c;
                c.lambda_zero.indices.assign(sz, 0u);
                dummy = std::move(c);
            }
            const auto answer = oracle(dummy);
            if (!answer) continue;
            const auto& entry = view.catalog.entry_for_message(*answer);
            const std::size_t sk_len = entry.rank_k + sz;
            if (sk_len < challenge_size) continue;
            const unsigned k_star = static_cast<unsigned>(sk_len - challenge_size);
            const auto& entry0 = view.catalog.entry_for_message(view.m0);
            return entry0.rank_k == k_star ? 0 : 1;
        }
        return rng.coin() ? 1 : 0;
    }
};

}  // namespace

std::unique_ptr<Attacker> make_attacker(const std::string& name) {
    if (name == "guess") return std::make_unique<GuessAttacker>();
    if (name == "reencrypt") return std::make_unique<ReencryptAttacker>();
    if (name == "oracle") return std::make_unique<OracleAttacker>();
    throw ParseError("unknown attacker '" + name + "' (guess|reencrypt|oracle)");
}

GameResult cca_experiment(Attacker& attacker, Scheme scheme, const GermCatalog& catalog,
                          std::size_t trials, std::uint64_t seed, const EncryptOptions& opts) {
    if (catalog.entries().size() < 2)
        throw DomainError("cca_experiment: catalog needs at least two messages");
    const CatalogEntry& e0 = catalog.entries()[0];
    const CatalogEntry& e1 = catalog.entries()[1];
    if (e0.message.size() != e1.message.size())
        throw DomainError("cca_experiment: candidate messages must have equal length (got " +
                          std::to_string(e0.message.size()) + " and " +
                          std::to_string(e1.message.size()) + ")");

    // The key parameter must be admissible for both candidate entries.
    CatalogEntry domain = e0;
    domain.s0 = std::min(e0.s0, e1.s0);
    domain.s_domain = (e0.s_domain == SDomain::positive || e1.s_domain == SDomain::positive)
                          ? SDomain::positive
                          : SDomain::symmetric;

    GameResult result;
    result.trials = trials;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng(split_seed(seed, trial));

        double s = 0.0;
        for (int attempt = 0;; ++attempt) {
            s = draw_s(domain, scheme, rng);
            try {
                (void)keygen_at(e0, s);
                (void)keygen_at(e1, s);
                break;
            } catch (const DegenerateCritical&) {
                if (attempt >= 15)
                    throw DegenerateCritical("cca_experiment: no usable key after 16 draws");
            }
        }

        const int b = rng.coin() ? 1 : 0;
        const CatalogEntry& chosen = (b == 0) ? e0 : e1;
        const KeyPair key = keygen_at(chosen, s);
        const AnyCiphertext challenge = encrypt(scheme, s, chosen.message, catalog, opts);

        std::size_t queries = 0;
        Oracle oracle = [&](const AnyCiphertext& c) -> std::optional<germ::WeightVector> {
            if (serialize(c) == serialize(challenge))
                throw ProtocolViolation("attacker queried the challenge ciphertext");
            ++queries;
            std::ostringstream lg;
            lg << "trial=" << trial << " query=" << serialize(c) << " answer=";
            try {
                const auto m = decrypt(scheme, key.sk, c, catalog);
                lg << m.to_string();
                result.transcript.push_back(lg.str());
                return m;
            } catch (const DecryptionError& err) {
                lg << "error(" << err.what() << ")";
                result.transcript.push_back(lg.str());
                return std::nullopt;
            }
        };

        GameView view{scheme, s, catalog, e0.message, e1.message, challenge, opts};
        const int guess = attacker.run(view, oracle, rng);
        if (guess == b) ++result.successes;
    }
    result.success_rate = trials ? static_cast<double>(result.successes) / trials : 0.0;
    result.advantage = std::abs(result.success_rate - 0.5) * 2.0;
    return result;
}

}  // namespace morsekit::crypto
