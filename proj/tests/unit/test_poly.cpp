#include <drinfeld/finite_field.hpp>
#include <drinfeld/poly.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace drinfeld;

namespace {

FqPoly P(const FieldCtx& f, const char* s) { return poly::parse(f, s); }

} // namespace

TEST_CASE("polynomial arithmetic fixtures over F5", "[poly]") {
    const auto f = make_field(5, 1);
    CHECK(poly::gcd(*f, P(*f, "T^2+4"), P(*f, "T+4")) == P(*f, "T+4"));
    auto [qq, r] = poly::divmod(*f, P(*f, "T^3"), P(*f, "T"));
    CHECK(qq == P(*f, "T^2"));
    CHECK(r.is_zero());
    CHECK(poly::eval(*f, P(*f, "T^2+1"), Elem(2)) == 0);
    CHECK(FqPoly{}.degree() == FqPoly::kZeroDegree);
    CHECK_THROWS_AS(poly::divmod(*f, P(*f, "T"), FqPoly{}), Error);
}

TEST_CASE("parse and print are canonical inverses", "[poly]") {
    const auto f = make_field(5, 1);
    for (const char* s : {"0", "1", "T", "T^2+3*T+1", "4*T^5+T", "2"}) CHECK(poly::to_string(P(*f, s)) == s);
    CHECK(poly::to_string(P(*f, "T-1")) == "T+4");
    CHECK(poly::to_string(P(*f, "T^2-2*T")) == "T^2+3*T");
    for (const char* bad : {"T+T", "1*T", "T^1", "T+T^2", "5*T", "0*T", "T^2+", "+T", "x", "T^0"})
        CHECK_THROWS_AS(P(*f, bad), Error);
}

TEST_CASE("division identity and gcd properties on random inputs", "[poly]") {
    std::mt19937_64 rng(17);
    for (auto [p, e] : {std::pair{5u, 1u}, {2u, 2u}, {3u, 2u}}) {
        const auto f = make_field(p, e);
        auto rnd = [&](int maxdeg) {
            std::vector<Elem> c(rng() % (maxdeg + 1) + 1);
            for (auto& x : c) x = f->random_element(rng);
            return poly::make(*f, c);
        };
        for (int it = 0; it < 200; ++it) {
            const FqPoly a = rnd(8), b = rnd(5);
            if (b.is_zero()) continue;
            auto [qq, r] = poly::divmod(*f, a, b);
            CHECK(poly::add(*f, poly::mul(*f, qq, b), r) == a);
            CHECK((r.is_zero() || r.degree() < b.degree()));
            const FqPoly g = poly::gcd(*f, a, b);
            CHECK(poly::rem(*f, a, g).is_zero());
            CHECK(poly::rem(*f, b, g).is_zero());
            CHECK(g.lead() == 1);
            const Elem x = f->random_element(rng);
            CHECK(poly::eval(*f, poly::mul(*f, a, b), x) == f->mul(poly::eval(*f, a, x), poly::eval(*f, b, x)));
        }
    }
}

TEST_CASE("index codes enumerate polynomials canonically", "[poly]") {
    const auto f = make_field(5, 1);
    for (std::uint64_t n = 0; n < 125; ++n) CHECK(poly::to_index(*f, poly::from_index(*f, n)) == n);
    CHECK(poly::from_index(*f, 0).is_zero());
    CHECK(poly::from_index(*f, 7) == P(*f, "T+2"));
}
