#ifndef DRINFELD_FACTOR_HPP
#define DRINFELD_FACTOR_HPP

#include <drinfeld/error.hpp>
#include <drinfeld/gf.hpp>
#include <drinfeld/poly.hpp>
#include <drinfeld/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace drinfeld {

/// Fields that know their size and can be sampled; needed for root finding and splitting.
template <class F>
concept FiniteField = Field<F> && requires(const F& f, std::mt19937_64& rng) {
    { f.characteristic() } -> std::convertible_to<std::uint32_t>;
    { f.cardinality() } -> std::convertible_to<BigInt>;
    { f.prime_degree() } -> std::convertible_to<unsigned>;
    { f.random_element(rng) } -> std::convertible_to<typename F::value_type>;
};

struct Factorization {
    Elem lead = 0;
    /// Distinct monic irreducibles with multiplicities, in canonical order.
    std::vector<std::pair<FqPoly, unsigned>> factors;
};

namespace poly {

template <Field F>
PolyOf<F> powmod_big(const F& f, PolyOf<F> base, const BigInt& n, const PolyOf<F>& m) {
    PolyOf<F> r = rem(f, constant(f, f.one()), m);
    base = rem(f, base, m);
    const std::size_t bits = n == 0 ? 0 : msb(n) + 1;
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(f, r, r, m);
        if (bit_test(n, static_cast<unsigned>(i))) r = mulmod(f, r, base, m);
    }
    return r;
}

template <FiniteField F>
PolyOf<F> random_poly(const F& f, std::size_t len, std::mt19937_64& rng) {
    std::vector<typename F::value_type> c;
    c.reserve(len);
    for (std::size_t i = 0; i < len; ++i) c.push_back(f.random_element(rng));
    return make(f, std::move(c));
}

/// Splits a monic squarefree f whose irreducible factors all have degree d (Cantor-Zassenhaus;
/// trace splitting in characteristic 2). Output factors are monic, unsorted.
template <FiniteField F>
void equal_degree_split(const F& f, const PolyOf<F>& g, unsigned d, std::mt19937_64& rng,
                        std::vector<PolyOf<F>>& out) {
    const auto n = static_cast<std::size_t>(g.degree());
    if (n == d) {
        out.push_back(g);
        return;
    }
    const BigInt qd = pow(f.cardinality(), d);
    const PolyOf<F> one = constant(f, f.one());
    for (;;) {
        auto a = random_poly(f, n, rng);
        if (a.degree() < 1) continue;
        PolyOf<F> b;
        if (f.characteristic() == 2) {
            // Absolute trace of a into F_2: sum of a^(2^i), i < d * [F:F_2].
            const unsigned k = d * f.prime_degree();
            b = a;
            PolyOf<F> t = a;
            for (unsigned i = 1; i < k; ++i) {
                t = mulmod(f, t, t, g);
                b = add(f, b, t);
            }
        } else {
            b = sub(f, powmod_big(f, a, (qd - 1) / 2, g), one);
        }
        auto h = gcd(f, b, g);
        if (h.degree() <= 0 || h.degree() == g.degree()) continue;
        equal_degree_split(f, h, d, rng, out);
        equal_degree_split(f, quo(f, g, h), d, rng, out);
        return;
    }
}

/// Distinct roots of a nonzero polynomial in the field, sorted by f.less.
template <FiniteField F>
std::vector<typename F::value_type> roots(const F& f, const PolyOf<F>& a, std::uint64_t seed = 0) {
    if (a.is_zero()) throw Error(Errc::ZeroPolynomial, "roots of the zero polynomial");
    if (a.degree() < 1) return {};
    auto m = make_monic(f, a);
    auto x = variable(f);
    auto h = powmod_big(f, x, f.cardinality(), m);
    auto g = gcd(f, sub(f, h, x), m);
    std::vector<typename F::value_type> out;
    if (g.degree() < 1) return out;
    std::mt19937_64 rng(seed);
    std::vector<PolyOf<F>> lin;
    equal_degree_split(f, g, 1, rng, lin);
    for (const auto& l : lin) out.push_back(f.neg(l.coeffs[0]));
    std::sort(out.begin(), out.end(), [&f](const auto& u, const auto& v) { return f.less(u, v); });
    return out;
}

} // namespace poly

namespace detail {

inline FqPoly pth_root_poly(const FieldCtx& f, const FqPoly& a) {
    const std::uint32_t p = f.p();
    std::vector<Elem> c;
    for (std::size_t i = 0; i < a.coeffs.size(); i += p) c.push_back(f.pth_root(a.coeffs[i]));
    return poly::make(f, std::move(c));
}

/// Monic input; output (squarefree part, multiplicity) pairs, pairwise coprime.
inline void squarefree_decompose(const FieldCtx& f, const FqPoly& a, unsigned mult,
                                 std::vector<std::pair<FqPoly, unsigned>>& out) {
    if (a.degree() < 1) return;
    auto c = poly::gcd(f, a, poly::derivative(f, a));
    auto w = poly::quo(f, a, c);
    unsigned i = 1;
    while (w.degree() > 0) {
        auto y = poly::gcd(f, w, c);
        auto z = poly::quo(f, w, y);
        if (z.degree() > 0) out.emplace_back(z, i * mult);
        ++i;
        w = y;
        c = poly::quo(f, c, y);
    }
    if (c.degree() > 0) squarefree_decompose(f, pth_root_poly(f, c), mult * f.p(), out);
}

/// Squarefree monic input; output (product of all degree-d factors, d).
inline std::vector<std::pair<FqPoly, unsigned>> distinct_degree(const FieldCtx& f, FqPoly a) {
    std::vector<std::pair<FqPoly, unsigned>> out;
    const auto x = poly::variable(f);
    auto h = x;
    for (unsigned d = 1; 2 * static_cast<std::ptrdiff_t>(d) <= a.degree(); ++d) {
        h = poly::powmod(f, h, f.q(), a);
        auto g = poly::gcd(f, poly::sub(f, h, x), a);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            a = poly::quo(f, a, g);
            h = poly::rem(f, h, a);
        }
    }
    if (a.degree() > 0) out.emplace_back(a, static_cast<unsigned>(a.degree()));
    return out;
}

} // namespace detail

/// Complete factorisation: lead * prod(P^m). Deterministic for a fixed seed and, since the
/// output is sorted, independent of it.
inline Factorization factor(const FieldCtx& f, const FqPoly& a, std::uint64_t seed = 0x5eed) {
    if (a.is_zero()) throw Error(Errc::ZeroPolynomial, "factor of the zero polynomial");
    Factorization r;
    r.lead = a.lead();
    std::vector<std::pair<FqPoly, unsigned>> sqf;
    detail::squarefree_decompose(f, poly::make_monic(f, a), 1, sqf);
    std::mt19937_64 rng(seed);
    for (const auto& [part, mult] : sqf) {
        for (const auto& [block, d] : detail::distinct_degree(f, part)) {
            std::vector<FqPoly> irr;
            poly::equal_degree_split(f, block, d, rng, irr);
            for (auto& p : irr) r.factors.emplace_back(std::move(p), mult);
        }
    }
    std::sort(r.factors.begin(), r.factors.end(),
              [](const auto& u, const auto& v) { return poly::canonical_less(u.first, v.first); });
    return r;
}

/// Ben-Or test: no factor of degree <= n/2.
inline bool is_irreducible(const FieldCtx& f, const FqPoly& a) {
    if (a.degree() < 1) return false;
    if (a.degree() == 1) return true;
    const auto m = poly::make_monic(f, a);
    const auto x = poly::variable(f);
    auto h = x;
    for (std::ptrdiff_t i = 1; 2 * i <= m.degree(); ++i) {
        h = poly::powmod(f, h, f.q(), m);
        if (poly::gcd(f, poly::sub(f, h, x), m).degree() != 0) return false;
    }
    return true;
}

/// Number of monic irreducibles of degree d over F_q (necklace count).
inline BigInt count_monic_irreducibles(std::uint64_t q, unsigned d) {
    BigInt s = 0;
    for (auto j : detail::divisors(d)) s += moebius_int(j) * ipow(q, d / j);
    return s / d;
}

/// Bitmap size limit for the irreducible sieve.
inline constexpr std::uint64_t kSieveLimit = 1ULL << 26;

/// Monic irreducibles of degree 1..d_max in (degree, canonical) order, by sieving out products.
inline std::vector<FqPoly> enumerate_monic_irreducibles(const FieldCtx& f, unsigned d_max) {
    std::vector<FqPoly> out;
    std::vector<std::vector<FqPoly>> by_degree(d_max + 1);
    const std::uint64_t q = f.q();
    for (std::uint64_t size = 1, d = 0; d < d_max; ++d) {
        size *= q;
        if (size > kSieveLimit) throw Error(Errc::RangeTooLarge, "irreducible sieve beyond q^d = 2^26");
    }
    for (unsigned d = 1; d <= d_max; ++d) {
        const std::uint64_t size = detail::upow(q, d);
        std::vector<bool> composite(size, false);
        for (unsigned k = 1; 2 * k <= d; ++k) {
            std::uint64_t cof = detail::upow(q, d - k);
            for (const auto& p : by_degree[k]) {
                for (std::uint64_t n = 0; n < cof; ++n) {
                    auto prod = poly::mul(f, p, poly::monic_from_index(f, d - k, n));
                    composite[poly::to_index(f, prod) - size] = true;
                }
            }
        }
        for (std::uint64_t n = 0; n < size; ++n)
            if (!composite[n]) by_degree[d].push_back(poly::monic_from_index(f, d, n));
        out.insert(out.end(), by_degree[d].begin(), by_degree[d].end());
    }
    return out;
}

/// Visits every monic squarefree M with 1 <= deg M <= K as a product of distinct entries of
/// `primes` (which must be the full output of enumerate_monic_irreducibles(f, >= K)). The visitor
/// receives M and the indices of its prime factors. Visit order is deterministic, not canonical.
inline void for_each_squarefree(const FieldCtx& f, const std::vector<FqPoly>& primes, unsigned K,
                                const std::function<void(const FqPoly&, const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> stack;
    std::function<void(std::size_t, const FqPoly&, unsigned)> rec = [&](std::size_t start, const FqPoly& m,
                                                                           unsigned deg) {
        for (std::size_t i = start; i < primes.size(); ++i) {
            const auto d = static_cast<unsigned>(primes[i].degree());
            if (deg + d > K) break;
            stack.push_back(i);
            auto next = poly::mul(f, m, primes[i]);
            visit(next, stack);
            rec(i + 1, next, deg + d);
            stack.pop_back();
        }
    };
    rec(0, poly::constant(f, f.one()), 0);
}

/// All monic squarefree polynomials with 1 <= deg <= K in canonical order.
inline std::vector<FqPoly> enumerate_monic_squarefree(const FieldCtx& f, unsigned K) {
    if (K == 0) return {};
    const auto primes = enumerate_monic_irreducibles(f, K);
    std::vector<FqPoly> out;
    for_each_squarefree(f, primes, K, [&](const FqPoly& m, const std::vector<std::size_t>&) { out.push_back(m); });
    std::sort(out.begin(), out.end(), poly::canonical_less);
    return out;
}

} // namespace drinfeld

#endif // DRINFELD_FACTOR_HPP
