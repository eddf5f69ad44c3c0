#include <drinfeld/finite_field.hpp>
#include <drinfeld/twisted.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace drinfeld;

namespace {

/// Action of a twisted polynomial over a table field: x -> sum c_i x^(q^i).
Elem act(const TableFieldRing& r, const TwistedPoly<Elem>& a, Elem x) {
    Elem acc = 0;
    for (const auto& c : a.coeffs) {
        acc = r.add(acc, r.mul(c, x));
        x = r.frob(x);
    }
    return acc;
}

} // namespace

TEST_CASE("tau alpha = alpha^q tau", "[twisted]") {
    const auto f = make_field(5, 1);
    const auto res = residue_field(f, make_prime(*f, poly::parse(*f, "T^2+2")));
    const TableFieldRing r(*res, 5, to_residue(*res, poly::variable(*f)));
    for (Elem a = 1; a < 25; ++a) {
        const auto lhs = twisted::mul(r, twisted::tau_pow(r, 1), twisted::constant(r, a));
        REQUIRE(lhs.coeffs.size() == 2);
        CHECK(lhs.coeffs[0] == 0);
        CHECK(lhs.coeffs[1] == res->pow(a, 5));
    }
}

TEST_CASE("multiplication is composition of the additive action", "[twisted]") {
    std::mt19937_64 rng(3);
    const auto f = make_field(2, 2);
    const auto res = residue_field(f, make_prime(*f, poly::parse(*f, "T^3+T+1")));
    const TableFieldRing r(*res, 4, to_residue(*res, poly::variable(*f)));
    auto rnd = [&](std::size_t len) {
        std::vector<Elem> c(len);
        for (auto& x : c) x = res->random_element(rng);
        return twisted::make(r, c);
    };
    for (int it = 0; it < 100; ++it) {
        const auto a = rnd(1 + rng() % 4), b = rnd(1 + rng() % 4);
        const auto ab = twisted::mul(r, a, b);
        if (!a.is_zero() && !b.is_zero()) CHECK(ab.degree() == a.degree() + b.degree());
        for (int k = 0; k < 5; ++k) {
            const Elem x = res->random_element(rng);
            CHECK(act(r, ab, x) == act(r, a, act(r, b, x)));
            CHECK(act(r, twisted::add(r, a, b), x) == res->add(act(r, a, x), act(r, b, x)));
        }
    }
}

TEST_CASE("twisted multiplication over A", "[twisted]") {
    const auto f = make_field(5, 1);
    const RingA r(*f);
    const auto T = poly::variable(*f);
    // (T + tau)^2 = T^2 + (T^5 + T) tau + tau^2.
    const auto carlitz = twisted::make(r, {T, poly::constant(*f, 1)});
    const auto sq = twisted::mul(r, carlitz, carlitz);
    REQUIRE(sq.coeffs.size() == 3);
    CHECK(sq.coeffs[0] == poly::parse(*f, "T^2"));
    CHECK(sq.coeffs[1] == poly::parse(*f, "T^5+T"));
    CHECK(sq.coeffs[2] == poly::constant(*f, 1));
    CHECK(twisted::evaluate_at(r, carlitz, poly::parse(*f, "T^2")) == sq);
    CHECK(twisted::evaluate_at(r, carlitz, poly::constant(*f, 3)) == twisted::constant(r, poly::constant(*f, 3)));
}
