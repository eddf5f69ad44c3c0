#include <drinfeld/census.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

int exit_code(const drinfeld::Error& e) { return drinfeld::is_resource_limit(e.code()) ? 3 : 2; }

} // namespace

int main(int argc, char** argv) {
    using namespace drinfeld;
    using namespace drinfeld::census;

    CLI::App app{"Density censuses for Drinfeld modules over F_q[T]"};
    std::string q_text, mode_text = "rank1", s_text = "T", format_text = "json", uniform_a;
    unsigned K = 0;
    RunConfig cfg;
    cfg.workers = default_workers();
    app.add_option("--q", q_text, "field size as P or P^E")->required();
    app.add_option("--mode", mode_text, "rank1 | rank2 | bounds | sieve | group-tables");
    app.add_option("--L", cfg.L, "coefficient degree bound: deg < L");
    app.add_option("--S", s_text, "comma-separated monic prime generators, e.g. \"T,T-1\"");
    app.add_option("--frob-deg-cap", cfg.D, "largest degree of Frobenius primes sampled");
    app.add_option("--seed", cfg.seed, "seed echoed into reports");
    app.add_option("--cache-dir", cfg.cache_dir, "directory for the JSON-lines result cache");
    app.add_option("--format", format_text, "json | csv | table");
    app.add_flag("--both-sieve-orientations", cfg.both_orientations, "also evaluate L(K) with a/(1-a)");
    auto* ua = app.add_option("--uniform-a", uniform_a, "sieve: evaluate L(K) with every a_P equal to this rational");
    auto* k_opt = app.add_option("--K", K, "sieve: degree cutoff (default floor(L/2))");
    app.add_option("--workers", cfg.workers, "worker threads");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::tie(cfg.p, cfg.e) = parse_q(q_text);
        cfg.mode = parse_mode(mode_text);
        cfg.format = parse_format(format_text);
        cfg.S = s_text.empty() ? std::vector<std::string>{} : split_list(s_text);
        if (*ua) cfg.uniform_a = uniform_a;
        if (*k_opt) cfg.K = K;
        if (const char* env = std::getenv("DD_CACHE_DIR")) cfg.cache_dir = env;
        if (cfg.workers == 0) cfg.workers = 1;
        const Report report = run(cfg);
        std::cout << render(report, cfg.format);
        return 0;
    } catch (const Error& e) {
        std::cerr << "ddcensus: " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "ddcensus: internal error: " << e.what() << '\n';
        return 1;
    }
}
