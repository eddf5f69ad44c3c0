#ifndef DRINFELD_CENSUS_HPP
#define DRINFELD_CENSUS_HPP

#include <drinfeld/drinfeld_module.hpp>
#include <drinfeld/error.hpp>
#include <drinfeld/finite_field.hpp>
#include <drinfeld/galois.hpp>
#include <drinfeld/groups.hpp>
#include <drinfeld/parallel.hpp>
#include <drinfeld/rank1.hpp>
#include <drinfeld/rational.hpp>
#include <drinfeld/sieve.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace drinfeld::census {

using Json = nlohmann::ordered_json;

enum class Mode { Rank1, Rank2, Bounds, Sieve, GroupTables };
enum class Format { Json, Csv, Table };

inline const char* mode_name(Mode m) {
    switch (m) {
    case Mode::Rank1: return "rank1";
    case Mode::Rank2: return "rank2";
    case Mode::Bounds: return "bounds";
    case Mode::Sieve: return "sieve";
    case Mode::GroupTables: return "group-tables";
    }
    return "?";
}

inline Mode parse_mode(const std::string& s) {
    for (Mode m : {Mode::Rank1, Mode::Rank2, Mode::Bounds, Mode::Sieve, Mode::GroupTables})
        if (s == mode_name(m)) return m;
    throw Error(Errc::ConfigError, "unknown mode '" + s + "'");
}

inline const char* format_name(Format f) {
    return f == Format::Json ? "json" : f == Format::Csv ? "csv" : "table";
}

inline Format parse_format(const std::string& s) {
    for (Format f : {Format::Json, Format::Csv, Format::Table})
        if (s == format_name(f)) return f;
    throw Error(Errc::ConfigError, "unknown format '" + s + "'");
}

struct RunConfig {
    std::uint32_t p = 0;
    unsigned e = 1;
    Mode mode = Mode::Rank1;
    unsigned L = 1;
    std::vector<std::string> S{"T"};
    unsigned D = 2;
    std::uint64_t seed = 0;
    std::string cache_dir;  ///< empty: no persistent cache
    Format format = Format::Json;
    bool both_orientations = false;
    std::optional<std::string> uniform_a;
    std::optional<unsigned> K;  ///< sieve cutoff, default floor(L/2)
    unsigned workers = 1;

    std::uint32_t q() const {
        std::uint64_t v = 1;
        for (unsigned i = 0; i < e; ++i) v *= p;
        return static_cast<std::uint32_t>(v);
    }
};

/// "P" or "P^E" with decimal P, E.
inline std::pair<std::uint32_t, unsigned> parse_q(const std::string& text) {
    const auto caret = text.find('^');
    auto number = [&](const std::string& s) -> std::uint64_t {
        if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos)
            throw Error(Errc::ConfigError, "malformed q '" + text + "'");
        return std::stoull(s);
    };
    const std::uint64_t p = number(text.substr(0, caret));
    const std::uint64_t e = caret == std::string::npos ? 1 : number(text.substr(caret + 1));
    if (e == 0) throw Error(Errc::ConfigError, "exponent of q must be positive");
    if (!detail::is_prime_u64(p)) throw Error(Errc::NonPrimeP, std::to_string(p) + " is not prime");
    return {static_cast<std::uint32_t>(p), static_cast<unsigned>(e)};
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        const auto b = cur.find_first_not_of(' '), e = cur.find_last_not_of(' ');
        if (b == std::string::npos) throw Error(Errc::ConfigError, "empty entry in prime list");
        out.push_back(cur.substr(b, e - b + 1));
    }
    return out;
}

inline std::vector<PrimeIdeal> parse_primes(const FieldCtx& f, const std::vector<std::string>& gens) {
    std::vector<PrimeIdeal> out;
    for (const auto& g : gens) out.push_back(make_prime(f, poly::parse(f, g)));
    check_distinct(out);
    return out;
}

inline std::string rat(const Rational& r) { return to_string(r); }

// ---- cache -----------------------------------------------------------------------------

inline constexpr int kCacheSchema = 1;

/// Append-only JSON-lines store of (key, value) pairs for one (q, mode). Entries are
/// immutable: the first line for a key wins and later duplicates are ignored. Lines that do
/// not parse (a write cut short) or carry another schema version are skipped.
class ResultCache {
public:
    ResultCache() = default;

    ResultCache(const std::filesystem::path& dir, const std::string& stem) {
        std::filesystem::create_directories(dir);
        path_ = dir / (stem + ".jsonl");
        bool needs_newline = false;
        if (std::ifstream in{path_, std::ios::binary}) {
            std::string line;
            while (std::getline(in, line)) {
                auto j = Json::parse(line, nullptr, false);
                if (j.is_discarded() || !j.is_object() || j.value("schema", -1) != kCacheSchema || !j.contains("key") ||
                    !j.contains("value") || !j["key"].is_string())
                    continue;
                entries_.emplace(j["key"].get<std::string>(), j["value"]);
            }
            in.clear();
            in.seekg(0, std::ios::end);
            if (in.tellg() > 0) {
                in.seekg(-1, std::ios::end);
                needs_newline = in.get() != '\n';
            }
        }
        out_.open(path_, std::ios::app | std::ios::binary);
        if (!out_) throw Error(Errc::ConfigError, "cannot open cache file " + path_.string());
        if (needs_newline) out_ << '\n';
    }

    bool enabled() const noexcept { return out_.is_open(); }

    std::optional<Json> get(const std::string& key) const {
        std::lock_guard lock(mu_);
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void put(const std::string& key, const Json& value) {
        std::lock_guard lock(mu_);
        if (!entries_.emplace(key, value).second || !out_.is_open()) return;
        Json line;
        line["schema"] = kCacheSchema;
        line["key"] = key;
        line["value"] = value;
        out_ << line.dump() << '\n';
        out_.flush();
    }

private:
    std::filesystem::path path_;
    std::map<std::string, Json> entries_;
    mutable std::mutex mu_;
    std::ofstream out_;
};

inline ResultCache open_cache(const RunConfig& cfg) {
    if (cfg.cache_dir.empty()) return {};
    return ResultCache(cfg.cache_dir, "q" + std::to_string(cfg.q()) + "_" + mode_name(cfg.mode));
}

// ---- reports ---------------------------------------------------------------------------

/// JSON document plus a flat table (header + rows) for csv / table output.
struct Report {
    Json json;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string render(const Report& r, Format format) {
    std::ostringstream out;
    if (format == Format::Json) {
        out << r.json.dump(2) << '\n';
        return out.str();
    }
    if (format == Format::Csv) {
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
            out << '\n';
        };
        line(r.header);
        for (const auto& row : r.rows) line(row);
        return out.str();
    }
    std::vector<std::size_t> width(r.header.size(), 0);
    for (std::size_t i = 0; i < r.header.size(); ++i) width[i] = r.header[i].size();
    for (const auto& row : r.rows)
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "  " : "") << cells[i];
            if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size(), ' ');
        }
        out << '\n';
    };
    line(r.header);
    for (const auto& row : r.rows) line(row);
    return out.str();
}

inline Json config_json(const RunConfig& cfg) {
    Json j;
    j["q"] = cfg.q();
    j["p"] = cfg.p;
    j["e"] = cfg.e;
    j["mode"] = mode_name(cfg.mode);
    j["L"] = cfg.L;
    j["S"] = cfg.S;
    j["D"] = cfg.D;
    j["seed"] = cfg.seed;
    j["both_sieve_orientations"] = cfg.both_orientations;
    j["uniform_a"] = cfg.uniform_a ? Json(*cfg.uniform_a) : Json(nullptr);
    j["K"] = cfg.K ? Json(*cfg.K) : Json(nullptr);
    return j;
}

// ---- rank 1 ----------------------------------------------------------------------------

inline Json rank1_census_json(const Rank1Census& c) {
    Json j;
    j["q"] = c.q;
    j["L"] = c.L;
    j["box_size"] = c.box_size;
    Json tally = Json::object();
    for (const auto& [t, n] : c.tally) tally[std::to_string(t)] = n;
    j["tally"] = tally;
    j["nonsurjective"] = c.nonsurjective;
    j["ratio_num"] = to_string(numerator(c.ratio));
    j["ratio_den"] = to_string(denominator(c.ratio));
    return j;
}

inline Rank1Census rank1_census_from_json(const Json& j) {
    Rank1Census c;
    c.q = j.at("q").get<std::uint32_t>();
    c.L = j.at("L").get<unsigned>();
    c.box_size = j.at("box_size").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("tally").items()) c.tally[static_cast<std::uint32_t>(std::stoul(k))] = v.get<std::uint64_t>();
    c.nonsurjective = j.at("nonsurjective").get<std::uint64_t>();
    c.ratio = Rational(BigInt(j.at("ratio_num").get<std::string>()), BigInt(j.at("ratio_den").get<std::string>()));
    return c;
}

inline Report run_rank1(const RunConfig& cfg, ResultCache& cache) {
    if (cfg.L == 0 || cfg.L > kMaxRank1L) throw Error(Errc::ConfigError, "rank1 mode needs 1 <= L <= 12");
    const auto f = make_field(cfg.p, cfg.e);
    const std::uint32_t q = f->q();
    Report r;
    r.json["config"] = config_json(cfg);
    std::optional<Rational> bound;
    if (q >= 3) bound = cor11_bound(q);
    r.json["bound"] = bound ? Json(rat(*bound)) : Json(nullptr);
    Json series = Json::array();
    bool monotone = true, bound_holds = true;
    Rational prev;
    r.header = {"q", "L", "box_size", "nonsurjective", "ratio", "formula", "agreement", "bound", "bound_satisfied",
                "non_increasing"};
    for (unsigned L = 1; L <= cfg.L; ++L) {
        const std::string key = "L=" + std::to_string(L);
        Rank1Census c;
        if (auto hit = cache.get(key)) {
            c = rank1_census_from_json(*hit);
        } else {
            c = rank1_census(*f, L, cfg.workers);
            cache.put(key, rank1_census_json(c));
        }
        Json row = rank1_census_json(c);
        std::optional<BigInt> formula;
        if (q >= 3) formula = theorem_main1_count(q, L);
        const bool agree = formula && *formula == c.nonsurjective;
        const bool satisfied = !bound || c.ratio >= *bound;
        row["formula"] = formula ? Json(to_string(*formula)) : Json(nullptr);
        row["agreement"] = agree;
        row["bound_satisfied"] = satisfied;
        if (L >= 2) bound_holds = bound_holds && satisfied;
        std::optional<bool> non_inc;
        if (L >= 3) {
            non_inc = c.ratio <= prev;
            monotone = monotone && *non_inc;
        }
        row["non_increasing"] = non_inc ? Json(*non_inc) : Json(nullptr);
        prev = c.ratio;
        series.push_back(row);
        r.rows.push_back({std::to_string(q), std::to_string(L), std::to_string(c.box_size),
                          std::to_string(c.nonsurjective), rat(c.ratio), formula ? to_string(*formula) : "",
                          formula ? (agree ? "yes" : "no") : "", bound ? rat(*bound) : "",
                          satisfied ? "yes" : "no", non_inc ? (*non_inc ? "yes" : "no") : ""});
    }
    r.json["series"] = series;
    r.json["monotone"] = monotone;
    r.json["bound_holds"] = bound_holds;
    return r;
}

// ---- rank 2 ----------------------------------------------------------------------------

inline constexpr std::uint64_t kMaxRank2Box = 1000000;

/// Frobenius class keys memoised per (P, g1 mod P, g2 mod P, l): every instance sharing the
/// same residues reuses one torsion computation.
class FrobeniusMemo {
public:
    explicit FrobeniusMemo(const FieldCtx& f) : f_(&f) {}

    std::vector<std::uint32_t> operator()(const ReducedModule& red, const PrimeIdeal& ell) {
        Key key{poly::to_index(*f_, red.prime.gen), red.gbar, poly::to_index(*f_, ell.gen)};
        {
            std::lock_guard lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        auto keys = frobenius_class_keys(red, ell);
        std::lock_guard lock(mu_);
        return memo_.emplace(std::move(key), std::move(keys)).first->second;
    }

private:
    using Key = std::tuple<std::uint64_t, std::vector<Elem>, std::uint64_t>;
    const FieldCtx* f_;
    std::mutex mu_;
    std::map<Key, std::vector<std::uint32_t>> memo_;
};

inline std::string bits_string(const boost::dynamic_bitset<>& b) {
    std::string s(b.size(), '0');
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b.test(i)) s[i] = '1';
    return s;
}

inline Json evidence_json(const DrinfeldModule& phi, const PrimeIdeal& ell, unsigned D, const GaloisVerdict& v) {
    Json j;
    j["g1"] = poly::to_string(phi.g(1));
    j["g2"] = poly::to_string(phi.g(2));
    j["ell"] = poly::to_string(ell.gen);
    j["D"] = D;
    Json primes = Json::array();
    for (const auto& p : v.primes_used) primes.push_back(poly::to_string(p));
    j["primes_used"] = primes;
    j["subgroup_order"] = v.subgroup_order;
    j["class_coverage"] = bits_string(v.class_coverage);
    j["obstructions"] = v.obstructions;
    j["mod_l_verdict"] = verdict_name(v.mod_l);
    j["verdict"] = verdict_name(v.verdict);
    return j;
}

inline Report run_rank2(const RunConfig& cfg, ResultCache& cache) {
    const auto fp = make_field(cfg.p, cfg.e);
    const FieldCtx& f = *fp;
    const std::uint32_t q = f.q();
    if (q < 4) throw Error(Errc::QTooSmall, "rank2 mode requires q >= 4");
    if (cfg.L == 0) throw Error(Errc::ConfigError, "rank2 mode needs L >= 1");
    if (cfg.S.empty()) throw Error(Errc::ConfigError, "rank2 mode needs a nonempty S");
    const auto S = parse_primes(f, cfg.S);
    for (const auto& l : S)
        if (l.degree > 2) throw Error(Errc::ConfigError, "rank2 mode supports deg l <= 2");
    std::uint64_t side = 1;
    for (unsigned i = 0; i < cfg.L; ++i) {
        side *= q;
        if (side > kMaxRank2Box) throw Error(Errc::BoxTooLarge, "rank-2 box exceeds 10^6 pairs");
    }
    const std::uint64_t box = side * (side - 1);
    if (box > kMaxRank2Box) throw Error(Errc::BoxTooLarge, "rank-2 box exceeds 10^6 pairs");
    for (const auto& l : S) sl2_lattice(residue_field(fp, l));  // surfaces GroupTooLarge before the sweep

    FrobeniusMemo memo(f);
    FrobeniusClassFn classes = [&memo](const ReducedModule& red, const PrimeIdeal& ell) { return memo(red, ell); };
    // Instances in canonical order: g1 code outer, g2 code inner, then l in S order.
    std::vector<Json> evidence(box * S.size());
    parallel_for(box, cfg.workers, [&](std::size_t i) {
        const std::uint64_t c1 = i / (side - 1), c2 = i % (side - 1) + 1;
        const DrinfeldModule phi = DrinfeldModule::rank2(fp, poly::from_index(f, c1), poly::from_index(f, c2));
        for (std::size_t k = 0; k < S.size(); ++k) {
            const std::string key = "g1=" + poly::to_string(phi.g(1)) + ";g2=" + poly::to_string(phi.g(2)) +
                                    ";ell=" + poly::to_string(S[k].gen) + ";D=" + std::to_string(cfg.D);
            if (auto hit = cache.get(key)) {
                evidence[i * S.size() + k] = *hit;
                continue;
            }
            Json j = evidence_json(phi, S[k], cfg.D, l_adic_verdict(phi, S[k], cfg.D, classes));
            cache.put(key, j);
            evidence[i * S.size() + k] = std::move(j);
        }
    });

    auto degree_of_code = [&](std::uint64_t c) {
        unsigned d = 0;
        while (c >= q) {
            c /= q;
            ++d;
        }
        return d;
    };
    std::vector<std::uint64_t> per_ell(S.size(), 0), per_ell_mod(S.size(), 0);
    std::vector<std::uint64_t> und_by_L(cfg.L + 1, 0), box_by_L(cfg.L + 1, 0);
    std::uint64_t joint = 0;
    Report r;
    r.header = {"g1", "g2", "ell", "verdict", "mod_l_verdict", "subgroup_order", "obstructions", "class_coverage",
                "primes_used"};
    Json instances = Json::array();
    for (std::uint64_t i = 0; i < box; ++i) {
        const std::uint64_t c1 = i / (side - 1), c2 = i % (side - 1) + 1;
        bool all = true;
        for (std::size_t k = 0; k < S.size(); ++k) {
            const Json& j = evidence[i * S.size() + k];
            const bool ok = j["verdict"] == "ContainsSL2";
            per_ell[k] += ok;
            per_ell_mod[k] += j["mod_l_verdict"] == "ContainsSL2";
            all = all && ok;
            std::string primes;
            for (const auto& p : j["primes_used"]) primes += (primes.empty() ? "" : ";") + p.get<std::string>();
            r.rows.push_back({j["g1"], j["g2"], j["ell"], j["verdict"], j["mod_l_verdict"],
                              std::to_string(j["subgroup_order"].get<std::uint64_t>()),
                              std::to_string(j["obstructions"].get<std::uint64_t>()), j["class_coverage"], primes});
            instances.push_back(j);
        }
        joint += all;
        const unsigned deg = std::max(degree_of_code(c1), degree_of_code(c2));
        for (unsigned Lp = deg + 1; Lp <= cfg.L; ++Lp) {
            ++box_by_L[Lp];
            und_by_L[Lp] += !all;
        }
    }

    r.json["config"] = config_json(cfg);
    r.json["box_size"] = box;
    Json ells = Json::array();
    for (std::size_t k = 0; k < S.size(); ++k) {
        Json e;
        const Rational frac(per_ell[k], box), b = cor48_bound(q, S[k].degree);
        e["ell"] = poly::to_string(S[k].gen);
        e["contains_sl2"] = per_ell[k];
        e["undetermined"] = box - per_ell[k];
        e["mod_l_contains_sl2"] = per_ell_mod[k];
        e["fraction"] = rat(frac);
        e["cor48_bound"] = rat(b);
        e["meets_bound"] = frac >= b;
        ells.push_back(e);
    }
    r.json["per_ell"] = ells;
    const Rational joint_frac(joint, box), main2 = cor_main2_bound(q, S);
    r.json["joint"] = {{"contains_sl2", joint},
                       {"fraction", rat(joint_frac)},
                       {"main2_bound", rat(main2)},
                       {"meets_bound", joint_frac >= main2}};
    Json series = Json::array();
    bool non_increasing = true;
    Rational prev;
    for (unsigned Lp = 1; Lp <= cfg.L; ++Lp) {
        const Rational frac(und_by_L[Lp], box_by_L[Lp]);
        if (Lp > 1) non_increasing = non_increasing && frac <= prev;
        prev = frac;
        series.push_back(
            {{"L", Lp}, {"box_size", box_by_L[Lp]}, {"undetermined", und_by_L[Lp]}, {"fraction", rat(frac)}});
    }
    r.json["undetermined_series"] = series;
    r.json["series_non_increasing"] = non_increasing;
    r.json["instances"] = instances;
    return r;
}

// ---- bounds ----------------------------------------------------------------------------

inline Report run_bounds(const RunConfig& cfg) {
    const auto fp = make_field(cfg.p, cfg.e);
    const auto S = parse_primes(*fp, cfg.S);
    const BoundReport b = bound_report(fp->q(), S);
    Report r;
    r.json["config"] = config_json(cfg);
    r.json["q"] = b.q;
    Json s = Json::array(), c48 = Json::object();
    r.header = {"quantity", "ell", "value"};
    for (std::size_t i = 0; i < S.size(); ++i) {
        const auto name = poly::to_string(S[i].gen);
        s.push_back(name);
        c48[name] = rat(b.cor48[i]);
        r.rows.push_back({"cor48", name, rat(b.cor48[i])});
    }
    r.json["S"] = s;
    r.json["cor48"] = c48;
    r.json["main2"] = rat(b.main2);
    r.json["main3"] = rat(b.main3);
    r.rows.push_back({"main2", "", rat(b.main2)});
    r.rows.push_back({"main3", "", rat(b.main3)});
    return r;
}

// ---- sieve -----------------------------------------------------------------------------

/// Sieve report over the rank-2 box deg < L. For each GL_2 class C seen at a prime P != l of
/// degree <= K, X_C is the set of pairs whose reductions avoid Omega_{P,C} at every such P, and
/// a_P = 1 - alpha_{P,C}; the check evaluates #X_C * L(K) <= q^(2(m0+1)).
inline Report run_sieve(const RunConfig& cfg) {
    const auto fp = make_field(cfg.p, cfg.e);
    const FieldCtx& f = *fp;
    const std::uint32_t q = f.q();
    if (cfg.L == 0) throw Error(Errc::ConfigError, "sieve mode needs L >= 1");
    if (cfg.S.empty()) throw Error(Errc::ConfigError, "sieve mode needs l in S");
    const auto S = parse_primes(f, cfg.S);
    const PrimeIdeal& ell = S.front();
    const unsigned K = cfg.K ? *cfg.K : cfg.L / 2;
    std::uint64_t side = 1;
    for (unsigned i = 0; i < cfg.L; ++i) {
        side *= q;
        if (side > kMaxRank2Box) throw Error(Errc::BoxTooLarge, "sieve box exceeds 10^6 pairs");
    }
    const std::uint64_t box = side * (side - 1);
    if (box > kMaxRank2Box) throw Error(Errc::BoxTooLarge, "sieve box exceeds 10^6 pairs");
    std::vector<Orientation> orients{Orientation::Theorem};
    if (cfg.both_orientations) orients.push_back(Orientation::Inverted);

    Report r;
    r.json["config"] = config_json(cfg);
    r.json["K"] = K;
    r.json["ell"] = poly::to_string(ell.gen);
    r.json["box_size"] = box;
    auto l_values = [&](const SieveParams& params) {
        Json j = Json::object();
        for (auto o : orients) j[orientation_name(o)] = rat(large_sieve_L(f, params, o));
        return j;
    };
    std::vector<PrimeIdeal> sieving;
    for (auto& p : primes_up_to(f, K))
        if (!(p == ell)) sieving.push_back(p);
    {
        SieveParams ones{K, {}};
        for (const auto& p : sieving) ones.a[poly::to_index(f, p.gen)] = Rational(1);
        r.json["all_ones"] = l_values(ones);
    }
    if (cfg.uniform_a) {
        const Rational a = parse_rational(*cfg.uniform_a);
        SieveParams params{K, {}};
        for (const auto& p : primes_up_to(f, K)) params.a[poly::to_index(f, p.gen)] = a;
        Json u = l_values(params);
        u["a"] = rat(a);
        r.json["uniform"] = u;
    }

    std::vector<OmegaCensus> omegas;
    for (const auto& p : sieving) omegas.push_back(omega_census(fp, p, ell, cfg.workers));
    Json om = Json::array();
    for (const auto& c : omegas) {
        const auto fl = residue_field(fp, ell);
        Json rows = Json::array();
        for (const auto& row : c.rows)
            rows.push_back({{"class_id", omega_class_id(row)},
                            {"charpoly", mat2::charpoly_string(*fl, row.trace, row.det)},
                            {"det", row.det},
                            {"count", row.count}});
        om.push_back({{"p", poly::to_string(c.p.gen)}, {"total", c.total}, {"rows", rows}});
    }
    r.json["omega"] = om;

    // Residues of every box polynomial modulo each sieving prime.
    std::vector<std::vector<Elem>> residues(sieving.size(), std::vector<Elem>(side));
    for (std::size_t k = 0; k < sieving.size(); ++k) {
        const auto res = residue_field(fp, sieving[k]);
        for (std::uint64_t c = 0; c < side; ++c) residues[k][c] = to_residue(*res, poly::from_index(f, c));
    }
    std::map<std::uint32_t, bool> keys;
    for (const auto& c : omegas)
        for (const auto& row : c.rows) keys[row.key] = true;
    const auto fl = residue_field(fp, ell);
    Json checks = Json::array();
    bool all_hold = true;
    {
        // C = empty class: X is the whole box and every a_P = 1.
        const SieveCheck chk = sieve_bound_check(f, BigInt(box), SieveParams{K, {}}, cfg.L);
        all_hold = all_hold && chk.holds;
        r.json["full_box"] = {{"x_count", box}, {"rhs", to_string(chk.rhs)}, {"m0", chk.m0}, {"holds", chk.holds}};
    }
    for (const auto& [key, unused] : keys) {
        SieveParams params{K, {}};
        for (const auto& c : omegas) params.a[poly::to_index(f, c.p.gen)] = 1 - c.alpha(key);
        std::uint64_t x = 0;
        for (std::uint64_t c1 = 0; c1 < side; ++c1)
            for (std::uint64_t c2 = 1; c2 < side; ++c2) {
                bool avoids = true;
                for (std::size_t k = 0; k < omegas.size() && avoids; ++k) {
                    const auto n = omegas[k].residue_size;
                    const auto& pk = omegas[k].pair_keys[std::size_t(residues[k][c1]) * n + residues[k][c2]];
                    avoids = !(pk && *pk == key);
                }
                x += avoids;
            }
        Json j;
        j["class_key"] = key;
        j["charpoly"] = mat2::charpoly_string(*fl, mat2::key_trace(*fl, key), mat2::key_det(*fl, key));
        j["scalar"] = mat2::key_scalar(key);
        j["x_count"] = x;
        for (auto o : orients) {
            const SieveCheck chk = sieve_bound_check(f, BigInt(x), params, cfg.L, o);
            Json side_j;
            side_j["L"] = rat(large_sieve_L(f, params, o));
            side_j["lhs"] = rat(chk.lhs_exact);
            side_j["rhs"] = to_string(chk.rhs);
            side_j["m0"] = chk.m0;
            side_j["holds"] = chk.holds;
            j[orientation_name(o)] = side_j;
            if (o == Orientation::Theorem) all_hold = all_hold && chk.holds;
        }
        checks.push_back(j);
    }
    r.json["classes"] = checks;
    r.json["all_hold"] = all_hold;

    r.header = {"p", "ell", "class_id", "charpoly", "det", "count"};
    for (const auto& c : omegas)
        for (const auto& row : c.rows)
            r.rows.push_back({poly::to_string(c.p.gen), poly::to_string(ell.gen), omega_class_id(row),
                              mat2::charpoly_string(*fl, row.trace, row.det), std::to_string(row.det),
                              std::to_string(row.count)});
    return r;
}

// ---- group tables ----------------------------------------------------------------------

inline Report run_group_tables(const RunConfig& cfg) {
    const auto fp = make_field(cfg.p, cfg.e);
    const auto S = parse_primes(*fp, cfg.S);
    Report r;
    r.json["config"] = config_json(cfg);
    r.header = {"ell", "class_id", "size", "rep", "charpoly"};
    Json tables = Json::array();
    for (const auto& l : S) {
        const auto fl = residue_field(fp, l);
        const auto table = class_table(fl);
        Json t;
        t["ell"] = poly::to_string(l.gen);
        t["field_order"] = fl->q();
        t["group_order"] = table->group_order();
        t["class_count"] = table->class_count();
        Json cls = Json::array();
        for (std::size_t i = 0; i < table->class_count(); ++i) {
            const auto& c = table->classes()[i];
            const auto cp = mat2::charpoly_string(*fl, mat2::trace(*fl, c.rep), mat2::det(*fl, c.rep));
            cls.push_back({{"id", i}, {"size", c.size}, {"rep", mat2::to_string(c.rep)}, {"charpoly", cp}});
            r.rows.push_back({poly::to_string(l.gen), std::to_string(i), std::to_string(c.size), mat2::to_string(c.rep), cp});
        }
        t["classes"] = cls;
        const std::uint64_t n = fl->q();
        if (n * (n * n - 1) <= Sl2SubgroupLattice::kMaxOrder) {
            const auto lattice = sl2_lattice(fl);
            Json subs = Json::array();
            for (const auto& e : lattice->entries()) subs.push_back({{"order", e.order}, {"conjugates", e.conjugates}});
            t["subgroup_classes"] = subs;
        } else {
            t["subgroup_classes"] = nullptr;
        }
        tables.push_back(t);
    }
    r.json["tables"] = tables;
    return r;
}

inline Report run(const RunConfig& cfg) {
    make_field(cfg.p, cfg.e);  // validates q before a cache file is created
    switch (cfg.mode) {
    case Mode::Rank1: {
        auto cache = open_cache(cfg);
        return run_rank1(cfg, cache);
    }
    case Mode::Rank2: {
        auto cache = open_cache(cfg);
        return run_rank2(cfg, cache);
    }
    case Mode::Bounds: return run_bounds(cfg);
    case Mode::Sieve: return run_sieve(cfg);
    case Mode::GroupTables: return run_group_tables(cfg);
    }
    throw Error(Errc::ConfigError, "unknown mode");
}

} // namespace drinfeld::census

#endif // DRINFELD_CENSUS_HPP
