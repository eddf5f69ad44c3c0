#include <drinfeld/ext_field.hpp>
#include <drinfeld/finite_field.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace drinfeld;

namespace {

/// All elements of a small F_{q^m}, by enumerating coefficient vectors.
std::vector<ExtElem> all_elements(const ExtFieldCtx& ext) {
    std::vector<ExtElem> out;
    const std::uint32_t q = ext.base().q();
    std::uint64_t n = 1;
    for (unsigned i = 0; i < ext.degree(); ++i) n *= q;
    for (std::uint64_t k = 0; k < n; ++k) {
        ExtElem a(ext.degree());
        std::uint64_t t = k;
        for (auto& c : a) {
            c = static_cast<Elem>(t % q);
            t /= q;
        }
        out.push_back(a);
    }
    return out;
}

} // namespace

TEST_CASE("roots of x^q - x and x^2 + 1", "[ext]") {
    const auto f = make_field(5, 1);
    const auto e1 = ext_field(f, 1), e2 = ext_field(f, 2);
    const auto xq = lift(*e1, poly::parse(*f, "T^5+4*T"));
    CHECK(roots_of_qpoly(*e1, xq).size() == 5);
    const auto r1 = roots_of_qpoly(*e1, lift(*e1, poly::parse(*f, "T^2+1")));
    REQUIRE(r1.size() == 2);
    CHECK(r1[0] == e1->embed(2));
    CHECK(r1[1] == e1->embed(3));
    const auto r2 = roots_of_qpoly(*e2, lift(*e2, poly::parse(*f, "T^2+1")));
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == e2->embed(2));
    CHECK(r2[1] == e2->embed(3));
    // An irreducible quadratic splits in F_25 but not in F_5.
    CHECK(roots_of_qpoly(*e1, lift(*e1, poly::parse(*f, "T^2+2"))).empty());
    CHECK(roots_of_qpoly(*e2, lift(*e2, poly::parse(*f, "T^2+2"))).size() == 2);
}

TEST_CASE("extension arithmetic is a field with Frobenius x -> x^q", "[ext]") {
    std::mt19937_64 rng(5);
    for (auto [p, e, m] : {std::tuple{5u, 1u, 6u}, {2u, 2u, 5u}, {3u, 1u, 12u}, {7u, 1u, 3u}, {2u, 1u, 40u}}) {
        const auto f = make_field(p, e);
        const auto ext = ext_field(f, m);
        CHECK(is_irreducible(*f, ext->modulus()));
        for (int it = 0; it < 30; ++it) {
            const auto a = ext->random_element(rng), b = ext->random_element(rng), c = ext->random_element(rng);
            CHECK(ext->mul(a, ext->add(b, c)) == ext->add(ext->mul(a, b), ext->mul(a, c)));
            CHECK(ext->mul(ext->mul(a, b), c) == ext->mul(a, ext->mul(b, c)));
            CHECK(ext->frobenius(a) == ext->pow(a, BigInt(f->q())));
            CHECK(ext->frobenius_pow(a, m) == a);
            CHECK(ext->frobenius(ext->mul(a, b)) == ext->mul(ext->frobenius(a), ext->frobenius(b)));
            if (!ext->is_zero(a)) CHECK(ext->mul(a, ext->inv(a)) == ext->one());
        }
    }
    CHECK_THROWS_AS(ext_field(make_field(5, 1), 257), Error);
}

TEST_CASE("additive kernels agree with brute-force zero counts", "[ext]") {
    std::mt19937_64 rng(11);
    const auto f = make_field(3, 1);
    const auto ext = ext_field(f, 4);
    const auto elems = all_elements(*ext);
    for (int it = 0; it < 20; ++it) {
        // c0 x + c1 x^3 + c2 x^9 with random coefficients in F_81.
        std::vector<ExtElem> c{ext->random_element(rng), ext->random_element(rng), ext->random_element(rng)};
        if (it % 4 == 0) c[0] = ext->zero();
        const auto basis = additive_kernel(*ext, c);
        std::size_t zeros = 0;
        for (const auto& x : elems) zeros += ext->is_zero(eval_additive(*ext, c, x));
        std::size_t expect = 1;
        for (std::size_t i = 0; i < basis.size(); ++i) expect *= 3;
        CHECK(zeros == expect);
        for (const auto& v : basis) CHECK(ext->is_zero(eval_additive(*ext, c, v)));
    }
    // x^(q^m) - x vanishes on the whole field.
    std::vector<ExtElem> full(5, ext->zero());
    full[0] = ext->from_int(-1);
    full[4] = ext->one();
    CHECK(additive_kernel(*ext, full).size() == 4);
}

TEST_CASE("residue fields embed compatibly", "[ext]") {
    const auto f = make_field(5, 1);
    const auto P = make_prime(*f, poly::parse(*f, "T^2+2"));
    const auto res = residue_field(f, P);
    const auto ext = ext_field(f, 4);
    const ResidueEmbedding emb(*ext, *res);
    for (Elem a = 0; a < 25; ++a)
        for (Elem b = 0; b < 25; ++b) {
            CHECK(emb(res->mul(a, b)) == ext->mul(emb(a), emb(b)));
            CHECK(emb(res->add(a, b)) == ext->add(emb(a), emb(b)));
        }
}
