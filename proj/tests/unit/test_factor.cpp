#include <drinfeld/factor.hpp>
#include <drinfeld/finite_field.hpp>

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace drinfeld;

namespace {

FqPoly P(const FieldCtx& f, const char* s) { return poly::parse(f, s); }

/// Irreducibility by trial division over all monic polynomials of degree <= deg/2.
bool irreducible_by_trial(const FieldCtx& f, const FqPoly& a) {
    const auto n = static_cast<unsigned>(a.degree());
    if (n < 1) return false;
    for (unsigned d = 1; 2 * d <= n; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= f.q();
        for (std::uint64_t k = 0; k < count; ++k)
            if (poly::rem(f, a, poly::monic_from_index(f, d, k)).is_zero()) return false;
    }
    return true;
}

} // namespace

TEST_CASE("factorisation fixtures over F5", "[factor]") {
    const auto f = make_field(5, 1);
    auto fa = factor(*f, P(*f, "T^2+4"));
    CHECK(fa.lead == 1);
    REQUIRE(fa.factors.size() == 2);
    CHECK(fa.factors[0] == std::pair{P(*f, "T+1"), 1u});
    CHECK(fa.factors[1] == std::pair{P(*f, "T+4"), 1u});
    fa = factor(*f, P(*f, "2*T^2"));
    CHECK(fa.lead == 2);
    REQUIRE(fa.factors.size() == 1);
    CHECK(fa.factors[0] == std::pair{P(*f, "T"), 2u});
    fa = factor(*f, P(*f, "T^2+1"));
    REQUIRE(fa.factors.size() == 2);
    CHECK(fa.factors[0].first == P(*f, "T+2"));
    CHECK(fa.factors[1].first == P(*f, "T+3"));
    CHECK_THROWS_AS(factor(*f, FqPoly{}), Error);
}

TEST_CASE("factor round-trips and yields irreducible factors", "[factor]") {
    std::mt19937_64 rng(99);
    for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {2u, 2u}, {3u, 2u}, {7u, 1u}}) {
        const auto f = make_field(p, e);
        for (int it = 0; it < 60; ++it) {
            // Products of random factors, some repeated, to exercise the squarefree split.
            FqPoly a = poly::constant(*f, Elem(1 + rng() % (f->q() - 1)));
            const int parts = 1 + rng() % 4;
            for (int k = 0; k < parts; ++k) {
                std::vector<Elem> c(2 + rng() % 3);
                for (auto& x : c) x = f->random_element(rng);
                c.back() = 1;
                FqPoly g = poly::make(*f, c);
                const unsigned mult = 1 + rng() % (p == 2 ? 4 : 3);
                for (unsigned m = 0; m < mult; ++m) a = poly::mul(*f, a, g);
            }
            const auto fa = factor(*f, a);
            FqPoly back = poly::constant(*f, fa.lead);
            for (const auto& [g, m] : fa.factors) {
                CHECK(g.lead() == 1);
                if (g.degree() <= 6) CHECK(irreducible_by_trial(*f, g));
                for (unsigned k = 0; k < m; ++k) back = poly::mul(*f, back, g);
            }
            CHECK(back == a);
        }
    }
}

TEST_CASE("Ben-Or test agrees with trial division", "[factor]") {
    for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
        const auto f = make_field(p, e);
        for (unsigned d = 1; d <= 4; ++d) {
            std::uint64_t count = 1;
            for (unsigned i = 0; i < d; ++i) count *= f->q();
            for (std::uint64_t k = 0; k < count; ++k) {
                const auto g = poly::monic_from_index(*f, d, k);
                CHECK(is_irreducible(*f, g) == irreducible_by_trial(*f, g));
            }
        }
    }
}

TEST_CASE("irreducible enumeration counts match the necklace formula", "[factor]") {
    const auto f5 = make_field(5, 1);
    CHECK(enumerate_monic_irreducibles(*f5, 1).size() == 5);
    CHECK(enumerate_monic_irreducibles(*f5, 2).size() == 15);
    const auto f4 = make_field(2, 2);
    CHECK(enumerate_monic_irreducibles(*f4, 2).size() == 10);
    for (auto [p, e, d] : {std::tuple{2u, 1u, 8u}, {3u, 1u, 5u}, {7u, 1u, 3u}, {2u, 3u, 3u}}) {
        const auto f = make_field(p, e);
        const auto all = enumerate_monic_irreducibles(*f, d);
        for (unsigned k = 1; k <= d; ++k) {
            std::size_t n = 0;
            for (const auto& g : all) n += g.degree() == static_cast<std::ptrdiff_t>(k);
            CHECK(BigInt(n) == count_monic_irreducibles(f->q(), k));
        }
        for (std::size_t i = 1; i < all.size(); ++i) CHECK(poly::canonical_less(all[i - 1], all[i]));
    }
    try {
        enumerate_monic_irreducibles(*make_field(2, 5), 8);
        FAIL("expected RangeTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::RangeTooLarge);
    }
}

TEST_CASE("squarefree enumeration", "[factor]") {
    const auto f = make_field(5, 1);
    CHECK(enumerate_monic_squarefree(*f, 0).empty());
    CHECK(enumerate_monic_squarefree(*f, 1).size() == 5);
    CHECK(enumerate_monic_squarefree(*f, 2).size() == 25);
    // Monic squarefree of degree n number q^n - q^(n-1) for n >= 2.
    const auto sq3 = enumerate_monic_squarefree(*f, 3);
    CHECK(sq3.size() == 5 + 20 + 100);
    std::set<std::uint64_t> seen;
    for (const auto& m : sq3) {
        CHECK(m.lead() == 1);
        CHECK(poly::gcd(*f, m, poly::derivative(*f, m)).degree() == 0);
        seen.insert(poly::to_index(*f, m));
    }
    CHECK(seen.size() == sq3.size());
}

TEST_CASE("roots of polynomials over finite fields", "[factor]") {
    const auto f = make_field(5, 1);
    CHECK(poly::roots(*f, P(*f, "T^2+1")) == std::vector<Elem>{2, 3});
    CHECK(poly::roots(*f, P(*f, "T^2+2")).empty());
    CHECK(poly::roots(*f, P(*f, "T^5+4*T")).size() == 5);
}
