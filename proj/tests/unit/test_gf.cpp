#include <drinfeld/finite_field.hpp>
#include <drinfeld/gf.hpp>

#include <catch_amalgamated.hpp>

#include <set>

using namespace drinfeld;

TEST_CASE("prime field F5 uses the smallest generator", "[gf]") {
    const auto f = make_field(5, 1);
    CHECK(f->q() == 5);
    CHECK(f->generator() == 2);
    CHECK(f->dlog(1) == 0);
    CHECK(f->dlog(4) == 2);
    CHECK(f->dlog(3) == 3);
    CHECK(f->order(2) == 4);
    CHECK(f->order(4) == 2);
}

TEST_CASE("make_field rejects composite p and oversized q", "[gf]") {
    CHECK_THROWS_AS(make_field(4, 1), Error);
    try {
        make_field(4, 1);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonPrimeP);
    }
    try {
        make_field(2, 7);
        FAIL("expected UnsupportedSize");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnsupportedSize);
    }
}

TEST_CASE("F4 has a degree-2 modulus and a generator of order 3", "[gf]") {
    const auto f = make_field(2, 2);
    CHECK(f->q() == 4);
    CHECK(f->modulus().size() == 3);
    CHECK(f->order(f->generator()) == 3);
}

TEST_CASE("field axioms hold exhaustively for small fields", "[gf]") {
    for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {2u, 3u}, {3u, 2u}, {5u, 2u}, {7u, 1u}}) {
        const auto f = make_field(p, e);
        const auto q = f->q();
        INFO("q = " << q);
        for (Elem a = 0; a < q; ++a) {
            CHECK(f->add(a, f->neg(a)) == 0);
            if (a) {
                CHECK(f->mul(a, f->inv(a)) == 1);
                CHECK(f->exp(f->dlog(a)) == a);
            }
            CHECK(f->pow(a, q) == a);
            CHECK(f->pow(f->pth_root(a), p) == a);
            for (Elem b = 0; b < q; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                for (Elem c = 0; c < q; c += 3) {
                    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                }
            }
        }
        // p * 1 = 0 and the multiplicative group is cyclic of order q - 1.
        Elem s = 0;
        for (unsigned i = 0; i < p; ++i) s = f->add(s, 1);
        CHECK(s == 0);
        CHECK(f->order(f->generator()) == q - 1);
    }
}

TEST_CASE("residue fields of F_q[T] have relative Frobenius x -> x^q", "[gf]") {
    const auto base = make_field(5, 1);
    const auto p = make_prime(*base, poly::parse(*base, "T^2+2"));
    const auto res = residue_field(base, p);
    CHECK(res->q() == 25);
    for (Elem a = 0; a < 25; ++a) CHECK(res->frobenius(a) == res->pow(a, 5));
    // T mod P is a root of T^2 + 2.
    const Elem t = to_residue(*res, poly::variable(*base));
    CHECK(res->add(res->mul(t, t), res->from_int(2)) == 0);
    for (Elem a = 0; a < 25; ++a) CHECK(to_residue(*res, from_residue(*res, a)) == a);
}

TEST_CASE("moebius function", "[gf]") {
    CHECK(moebius_int(1) == 1);
    CHECK(moebius_int(4) == 0);
    CHECK(moebius_int(6) == 1);
    CHECK(moebius_int(7) == -1);
    CHECK(moebius_int(30) == -1);
}
