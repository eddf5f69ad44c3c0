#ifndef DRINFELD_FINITE_FIELD_HPP
#define DRINFELD_FINITE_FIELD_HPP

#include <drinfeld/error.hpp>
#include <drinfeld/factor.hpp>
#include <drinfeld/gf.hpp>
#include <drinfeld/poly.hpp>

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace drinfeld {

inline constexpr std::uint32_t kMaxBaseField = 64;

/// F_{p^e}, 2 <= p^e <= 64. The modulus is the first monic irreducible of degree e over F_p in
/// canonical order; the generator is the smallest element of order q-1. Contexts are cached.
inline FieldPtr make_field(std::uint32_t p, unsigned e) {
    if (!detail::is_prime_u64(p)) throw Error(Errc::NonPrimeP, std::to_string(p) + " is not prime");
    if (e == 0) throw Error(Errc::UnsupportedSize, "exponent must be positive");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= p;
        if (q > kMaxBaseField) throw Error(Errc::UnsupportedSize, "q must not exceed 64");
    }
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, unsigned>, FieldPtr> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{p, e}];
    if (slot) return slot;
    auto fp = FieldCtx::prime_field(p);
    if (e == 1) {
        slot = fp;
        return slot;
    }
    const std::uint64_t count = detail::upow(p, e);
    for (std::uint64_t n = 0; n < count; ++n) {
        auto m = poly::monic_from_index(*fp, e, n);
        if (is_irreducible(*fp, m)) {
            slot = FieldCtx::quotient(fp, m.coeffs);
            return slot;
        }
    }
    throw Error(Errc::NoIrreducibleFound, "no irreducible modulus");
}

/// A nonzero prime ideal of A = F_q[T], given by its monic generator.
struct PrimeIdeal {
    FqPoly gen;
    unsigned degree = 0;

    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) { return a.gen == b.gen; }
};

inline PrimeIdeal make_prime(const FieldCtx& f, const FqPoly& gen) {
    if (gen.degree() < 1 || gen.lead() != 1) throw Error(Errc::NotIrreducible, "prime generator must be monic of positive degree");
    if (!is_irreducible(f, gen)) throw Error(Errc::NotIrreducible, poly::to_string(gen) + " is reducible");
    return {gen, static_cast<unsigned>(gen.degree())};
}

inline std::vector<PrimeIdeal> primes_up_to(const FieldCtx& f, unsigned d_max) {
    std::vector<PrimeIdeal> out;
    for (auto& g : enumerate_monic_irreducibles(f, d_max)) {
        auto d = static_cast<unsigned>(g.degree());
        out.push_back({std::move(g), d});
    }
    return out;
}

/// The residue field A/P as a table field over F_q (so frobenius() is x -> x^q). Cached.
inline FieldPtr residue_field(const FieldPtr& base, const PrimeIdeal& prime) {
    using Key = std::tuple<std::uint32_t, std::uint32_t, std::vector<Elem>, std::vector<Elem>>;
    static std::mutex mu;
    static std::map<Key, FieldPtr> cache;
    Key key{base->p(), base->q(), base->modulus(), prime.gen.coeffs};
    std::lock_guard lock(mu);
    auto& slot = cache[key];
    if (!slot) slot = FieldCtx::quotient(base, prime.gen.coeffs);
    return slot;
}

/// Image of a in A/P, where res was built by residue_field(base, P).
inline Elem to_residue(const FieldCtx& res, const FqPoly& a) {
    const FieldCtx& base = *res.subfield();
    const FqPoly m{res.modulus()};
    auto r = poly::rem(base, a, m);
    return res.from_residue(r.coeffs);
}

/// Lift of a residue class to its canonical representative of degree < deg P.
inline FqPoly from_residue(const FieldCtx& res, Elem a) {
    return poly::make(*res.subfield(), res.residue(a));
}

} // namespace drinfeld

#endif // DRINFELD_FINITE_FIELD_HPP
