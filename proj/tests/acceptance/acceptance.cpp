// Acceptance runner: `acceptance` runs every criterion, `acceptance N` runs criterion N.
// Each criterion prints one [PASS]/[FAIL] line; the exit status is nonzero if any failed.

#include <drinfeld/drinfeld.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace drinfeld;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

FqPoly P(const FieldCtx& f, const char* s) { return poly::parse(f, s); }

std::string str(const Rational& r) { return to_string(r); }

// 1. Rank-1 census ratio against the limiting lower bound, and monotonicity.
Outcome criterion_rank1_bound() {
    Outcome o{true, ""};
    std::ostringstream d;
    for (auto [p, e] : {std::pair{3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}}) {
        const auto f = make_field(p, e);
        const auto rep = rank1_report(*f, 8);
        const Rational bound = cor11_bound(f->q());
        d << "q=" << f->q() << " bound " << str(bound) << " ratios";
        for (std::size_t i = 1; i < rep.rows.size(); ++i) d << ' ' << str(rep.rows[i].census.ratio);
        std::vector<unsigned> below, rising;
        for (std::size_t i = 1; i < rep.rows.size(); ++i) {
            if (rep.rows[i].census.ratio < bound) below.push_back(i + 1);
            if (i >= 2 && rep.rows[i].census.ratio > rep.rows[i - 1].census.ratio) rising.push_back(i + 1);
        }
        if (!below.empty()) {
            d << " [below bound at L=";
            for (auto L : below) d << L << (L == below.back() ? "]" : ",");
        }
        if (!rising.empty()) {
            d << " [increase at L=";
            for (auto L : rising) d << L << (L == rising.back() ? "]" : ",");
        }
        d << "; ";
        o.pass = o.pass && rep.bound_holds && rep.monotone && below.empty() && rising.empty();
    }
    o.detail = d.str();
    return o;
}

// 2. Hand fixtures at q = 5, cross-checked by per-polynomial defect evaluation.
Outcome criterion_rank1_fixtures() {
    const auto f = make_field(5, 1);
    const auto c1 = rank1_census(*f, 1), c2 = rank1_census(*f, 2);
    std::map<std::uint32_t, std::uint64_t> direct;
    for (std::uint64_t code = 1; code < 25; ++code) ++direct[defect(*f, poly::from_index(*f, code)).defect];
    const std::map<std::uint32_t, std::uint64_t> expected{{1, 14}, {2, 5}, {4, 5}};
    const bool ok = c1.nonsurjective == 0 && c2.nonsurjective == 10 && c2.tally == expected && direct == expected;
    std::ostringstream d;
    d << "L=1 nonsurjective " << c1.nonsurjective << ", L=2 nonsurjective " << c2.nonsurjective << " tally {";
    for (const auto& [k, v] : c2.tally) d << k << ':' << v << ' ';
    d << "}";
    return {ok, d.str()};
}

// 3. Closed-form count reported next to the census for every (q, L); divergences listed.
Outcome criterion_reconciliation() {
    bool complete = true;
    std::ostringstream d;
    std::size_t rows = 0, diverge = 0;
    for (auto [p, e] : {std::pair{3u, 1u}, {2u, 2u}, {5u, 1u}}) {
        census::RunConfig cfg;
        cfg.p = p;
        cfg.e = e;
        cfg.L = 8;
        census::ResultCache none;
        const auto r = census::run_rank1(cfg, none);
        const auto& series = r.json["series"];
        complete = complete && series.size() == 8;
        d << "q=" << cfg.q() << " diverges at L=";
        bool any = false;
        for (const auto& row : series) {
            ++rows;
            complete = complete && row.contains("formula") && row["formula"].is_string() &&
                       row.contains("nonsurjective") && row.contains("agreement");
            const bool agree = row["formula"] == std::to_string(row["nonsurjective"].get<std::uint64_t>());
            complete = complete && row["agreement"] == agree;
            if (!agree) {
                ++diverge;
                d << (any ? "," : "") << row["L"].get<unsigned>() << " (" << row["formula"].get<std::string>()
                  << " vs " << row["nonsurjective"].get<std::uint64_t>() << ")";
                any = true;
            }
        }
        if (!any) d << "none";
        d << "; ";
    }
    return {complete, std::to_string(rows) + " rows, " + std::to_string(diverge) + " divergences: " + d.str()};
}

// 4. SL_2 class tables and the class-coverage criterion on random generating sets.
Outcome criterion_groups() {
    bool ok = true;
    std::ostringstream d;
    std::mt19937_64 rng(4);
    for (auto [p, e, order, classes] : {std::tuple{2u, 2u, 60u, 5u}, {5u, 1u, 120u, 9u}}) {
        const auto base = make_field(p, e);
        const auto fl = residue_field(base, make_prime(*base, poly::variable(*base)));
        const auto& t = *class_table(fl);
        std::uint64_t total = 0;
        for (const auto& c : t.classes()) total += c.size;
        ok = ok && t.group_order() == order && t.class_count() == classes && total == order;
        const auto gl2 = gl2_elements(*fl);
        int counterexamples = 0, covering = 0;
        for (int it = 0; it < 500; ++it) {
            std::vector<Mat2> gens;
            const int n = 1 + static_cast<int>(rng() % 3);
            for (int k = 0; k < n; ++k) gens.push_back(gl2[rng() % gl2.size()]);
            const auto H = generated_subgroup(*fl, gens);
            std::set<std::uint32_t> met;
            for (const auto& m : H)
                if (mat2::det(*fl, m) == 1) met.insert(t.classify(m));
            if (met.size() == t.class_count()) {
                ++covering;
                counterexamples += !contains_sl2(H, t);
            }
        }
        ok = ok && counterexamples == 0;
        d << "|SL2(F" << fl->q() << ")|=" << t.group_order() << " classes " << t.class_count() << ", " << covering
          << "/500 covering sets, " << counterexamples << " counterexamples; ";
    }
    return {ok, d.str()};
}

// 5. det(Frobenius) equals the Frobenius scalar on the determinant module.
Outcome criterion_det_compat() {
    const auto f = make_field(5, 1);
    const auto ell = make_prime(*f, P(*f, "T"));
    const auto fl = residue_field(f, ell);
    const auto pp = make_prime(*f, P(*f, "T-1"));
    int fixed_ok = 0, random_ok = 0;
    for (Elem g1 = 0; g1 < 5; ++g1)
        for (Elem g2 = 1; g2 < 5; ++g2) {
            const Mat2 m = frobenius_matrix(from_residues(f, pp, {g1, g2}), ell);
            fixed_ok += mat2::det(*fl, m) == rank1_frobenius_scalar(from_residues(f, pp, {f->neg(g2)}), ell);
        }
    std::mt19937_64 rng(5);
    auto primes = primes_up_to(*f, 2);
    std::erase(primes, ell);
    int sampled = 0;
    while (sampled < 50) {
        const auto phi = DrinfeldModule::rank2(f, poly::from_index(*f, rng() % 625), poly::from_index(*f, 1 + rng() % 624));
        const auto& p = primes[rng() % primes.size()];
        if (!reduce_mod(phi, p).good) continue;
        ++sampled;
        random_ok += det_compatibility_check(phi, p, ell);
    }
    return {fixed_ok == 20 && random_ok == 50, std::to_string(fixed_ok) + "/20 residue pairs over (T-1), " +
                                                    std::to_string(random_ok) + "/50 random instances"};
}

// 6. Frobenius characteristic polynomial does not depend on the torsion basis.
Outcome criterion_basis_independence() {
    const auto f = make_field(5, 1);
    const auto ell = make_prime(*f, P(*f, "T"));
    const auto fl = residue_field(f, ell);
    auto primes = primes_up_to(*f, 2);
    std::erase(primes, ell);
    std::mt19937_64 rng(6);
    int ok = 0, n = 0;
    while (n < 20) {
        const auto phi = DrinfeldModule::rank2(f, poly::from_index(*f, rng() % 125), poly::from_index(*f, 1 + rng() % 124));
        const auto& p = primes[rng() % primes.size()];
        if (!reduce_mod(phi, p).good) continue;
        ++n;
        const Mat2 a = frobenius_matrix(phi, p, ell), b = frobenius_matrix(phi, p, ell, rng());
        ok += mat2::trace(*fl, a) == mat2::trace(*fl, b) && mat2::det(*fl, a) == mat2::det(*fl, b);
    }
    return {ok == 20, std::to_string(ok) + "/20 shuffled bases preserve the characteristic polynomial"};
}

// 7. The Omega census partitions the residue pairs.
Outcome criterion_omega_partition() {
    bool ok = true;
    std::ostringstream d;
    for (auto [p, e] : {std::pair{2u, 2u}, {5u, 1u}}) {
        const auto f = make_field(p, e);
        const auto primes = primes_up_to(*f, 1);
        int pairs = 0;
        for (const auto& ell : primes)
            for (const auto& pp : primes) {
                if (pp == ell) continue;
                const auto c = omega_census(f, pp, ell);
                std::uint64_t sum = 0;
                for (const auto& r : c.rows) sum += r.count;
                ok = ok && sum == std::uint64_t(c.residue_size) * (c.residue_size - 1);
                ++pairs;
            }
        d << "q=" << f->q() << ": " << pairs << " (P, l) pairs; ";
    }
    return {ok, d.str()};
}

// 8. Rank-2 density against 1 - 1/q, with the Undetermined series proxy.
Outcome criterion_rank2_density() {
    census::RunConfig cfg;
    cfg.p = 5;
    cfg.mode = census::Mode::Rank2;
    cfg.L = 2;
    cfg.D = 2;
    cfg.workers = default_workers();
    census::ResultCache none;
    const auto r = census::run_rank2(cfg, none);
    const auto& e = r.json["per_ell"][0];
    const std::uint64_t hits = e["contains_sl2"], box = r.json["box_size"];
    const Rational frac(hits, box);
    const bool meets = frac >= Rational(4, 5);
    const bool series_ok = r.json["series_non_increasing"];
    std::ostringstream d;
    d << "ContainsSL2 " << hits << "/" << box << " = " << str(frac) << " vs 4/5 (mod-l certified "
      << e["mod_l_contains_sl2"].get<std::uint64_t>() << "); Undetermined series";
    for (const auto& s : r.json["undetermined_series"]) d << " L=" << s["L"] << ":" << s["fraction"].get<std::string>();
    d << (series_ok ? " non-increasing" : " increasing");
    return {meets && series_ok, d.str()};
}

// 9. Large sieve fixtures and the sieve inequality on the q = 5, L = 2 box.
Outcome criterion_sieve() {
    const auto f = make_field(5, 1);
    bool ones = true;
    for (unsigned K = 0; K <= 4; ++K) {
        SieveParams params{K, {}};
        for (const auto& g : enumerate_monic_irreducibles(*f, std::max(K, 1u))) params.a[poly::to_index(*f, g)] = 1;
        ones = ones && large_sieve_L(*f, params) == 1;
    }
    SieveParams half{1, {}};
    for (const auto& g : enumerate_monic_irreducibles(*f, 1)) half.a[poly::to_index(*f, g)] = Rational(1, 2);
    const Rational l6 = large_sieve_L(*f, half);
    census::RunConfig cfg;
    cfg.p = 5;
    cfg.mode = census::Mode::Sieve;
    cfg.L = 2;
    cfg.K = 1;
    cfg.workers = default_workers();
    const auto r = census::run_sieve(cfg);
    const bool holds = r.json["all_hold"];
    std::ostringstream d;
    d << "all-ones L(K)=1 for K<=4: " << (ones ? "yes" : "no") << "; a=1/2, K=1: L=" << str(l6) << "; "
      << r.json["classes"].size() << " class checks on the L=2 box, all hold: " << (holds ? "yes" : "no");
    return {ones && l6 == 6 && holds, d.str()};
}

// 10. Closed-form bound evaluators.
Outcome criterion_bounds() {
    const auto f5 = make_field(5, 1);
    const auto f4 = make_field(2, 2);
    const auto primes = primes_up_to(*f5, 3);
    std::mt19937_64 rng(10);
    int agree = 0;
    for (int it = 0; it < 100; ++it) {
        std::vector<PrimeIdeal> S;
        for (const auto& p : primes)
            if (rng() % 12 == 0 && S.size() < 12) S.push_back(p);
        Rational prod = 1;
        for (const auto& l : S) prod *= 1 - Rational(BigInt(1), ipow(5, l.degree));
        agree += cor_main2_bound(5, S) == prod;
    }
    const std::vector<PrimeIdeal> T5{make_prime(*f5, P(*f5, "T"))}, T4{make_prime(*f4, P(*f4, "T"))};
    const Rational m2 = cor_main2_bound(5, T5), m3 = cor_main3_bound(5, T5), m34 = cor_main3_bound(4, T4);
    const bool ok = agree == 100 && m2 == Rational(4, 5) && m3 == Rational(19, 30) && m34 == Rational(3, 4);
    return {ok, std::to_string(agree) + "/100 product matches; q=5 main2 " + str(m2) + ", main3 " + str(m3) +
                    "; q=4 main3 " + str(m34)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

// 11. Byte-identical CLI output across repeated runs and cold/warm caches.
Outcome criterion_reproducibility() {
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("ddcensus_accept_" + std::to_string(rd()));
    fs::create_directories(dir);
    auto cli = [&](const std::string& args, const std::string& out) {
        const std::string cmd = std::string("\"") + DDCENSUS_PATH + "\" " + args + " > \"" + (dir / out).string() + "\"";
        return std::system(cmd.c_str()) == 0;
    };
    bool ran = true, same = true;
    std::ostringstream d;
    const std::vector<std::pair<std::string, std::string>> configs{
        {"rank2", "--q 5 --mode rank2 --L 1 --S T,T-1 --frob-deg-cap 2"},
        {"rank1", "--q 5 --mode rank1 --L 5"},
        {"sieve", "--q 2^2 --mode sieve --L 2 --both-sieve-orientations"},
    };
    for (const auto& [name, args] : configs) {
        const std::string cache = "--cache-dir \"" + (dir / ("cache_" + name)).string() + "\"";
        ran = ran && cli(args + " --workers 1", name + "_a.json") && cli(args + " --workers 2", name + "_b.json");
        ran = ran && cli(args + " " + cache, name + "_cold.json") && cli(args + " " + cache, name + "_warm.json");
        const std::string a = slurp(dir / (name + "_a.json"));
        const bool ok = !a.empty() && a == slurp(dir / (name + "_b.json")) && a == slurp(dir / (name + "_cold.json")) &&
                        a == slurp(dir / (name + "_warm.json"));
        same = same && ok;
        d << name << " " << a.size() << " bytes " << (ok ? "identical" : "DIFFER") << "; ";
    }
    fs::remove_all(dir);
    return {ran && same, d.str()};
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {"rank-1 ratio >= limiting bound, non-increasing, q in {3,4,5,7}, L 2..8", criterion_rank1_bound},
        {"rank-1 hand fixtures at q=5", criterion_rank1_fixtures},
        {"closed-form vs census reconciliation report, q in {3,4,5}, L <= 8", criterion_reconciliation},
        {"SL2 class tables and class-coverage check", criterion_groups},
        {"determinant compatibility at q=5, l=(T)", criterion_det_compat},
        {"Frobenius char poly independent of torsion basis", criterion_basis_independence},
        {"Omega census partitions residue pairs, q in {4,5}", criterion_omega_partition},
        {"rank-2 ContainsSL2 fraction >= 4/5 at q=5, L=2, S={T}, D=2", criterion_rank2_density},
        {"large sieve fixtures and sieve inequality", criterion_sieve},
        {"bound evaluators", criterion_bounds},
        {"reproducible CLI output, cold and warm cache", criterion_reproducibility},
    };
    std::vector<std::size_t> selected;
    if (argc > 1) {
        const int n = std::atoi(argv[1]);
        if (n < 1 || n > static_cast<int>(criteria.size())) {
            std::cerr << "usage: acceptance [1-" << criteria.size() << "]\n";
            return 2;
        }
        selected.push_back(static_cast<std::size_t>(n - 1));
    } else {
        for (std::size_t i = 0; i < criteria.size(); ++i) selected.push_back(i);
    }
    int failed = 0;
    for (auto i : selected) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] criterion %02zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", selected.size(), failed);
    return failed ? 1 : 0;
}
