#ifndef DRINFELD_RANK1_HPP
#define DRINFELD_RANK1_HPP

#include <drinfeld/error.hpp>
#include <drinfeld/gf.hpp>
#include <drinfeld/parallel.hpp>
#include <drinfeld/poly.hpp>
#include <drinfeld/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace drinfeld {

/// Defect of the adelic image of T + Delta tau: gcd(|d-1|, q-1, k0*), with
/// k0 = dlog(lead Delta) and k0* shifted by (q-1)/2 when q is odd and d is odd.
struct DefectRecord {
    FqPoly delta;
    unsigned d = 0;
    std::uint32_t k0 = 0;
    std::uint32_t k0_star = 0;
    std::uint32_t defect = 1;
};

namespace detail {

inline std::uint32_t k0_star(std::uint32_t q, unsigned d, std::uint32_t k0) {
    if (q % 2 == 0 || d % 2 == 0) return k0;
    return (k0 + (q - 1) / 2) % (q - 1);
}

/// gcd with the convention gcd(x, 0) = x.
inline std::uint32_t defect_value(std::uint32_t q, unsigned d, std::uint32_t k0s) {
    const std::uint64_t dm1 = d >= 1 ? d - 1 : 1;
    return static_cast<std::uint32_t>(std::gcd(std::gcd(dm1, std::uint64_t(q - 1)), std::uint64_t(k0s)));
}

} // namespace detail

inline DefectRecord defect(const FieldCtx& f, const FqPoly& delta) {
    if (delta.is_zero()) throw Error(Errc::ZeroArgument, "defect of Delta = 0");
    DefectRecord r;
    r.delta = delta;
    r.d = static_cast<unsigned>(delta.degree());
    r.k0 = f.dlog(delta.lead());
    r.k0_star = detail::k0_star(f.q(), r.d, r.k0);
    r.defect = detail::defect_value(f.q(), r.d, r.k0_star);
    return r;
}

struct Rank1Census {
    std::uint32_t q = 0;
    unsigned L = 0;
    std::uint64_t box_size = 0;
    std::map<std::uint32_t, std::uint64_t> tally;
    std::uint64_t nonsurjective = 0;
    Rational ratio;
};

inline constexpr unsigned kMaxRank1L = 12;
inline constexpr std::uint64_t kMaxRank1Box = 1ULL << 32;

/// Exhaustive tally of defects over all nonzero Delta with deg Delta < L.
inline Rank1Census rank1_census(const FieldCtx& f, unsigned L, unsigned workers = 1) {
    if (L == 0) throw Error(Errc::ConfigError, "rank1_census needs L >= 1");
    if (L > kMaxRank1L) throw Error(Errc::BoxTooLarge, "rank1_census limited to L <= 12");
    const std::uint64_t q = f.q();
    std::uint64_t box = 1;
    for (unsigned i = 0; i < L; ++i) box *= q;
    if (box > kMaxRank1Box) throw Error(Errc::BoxTooLarge, "rank-1 box exceeds 2^32");
    // Delta runs over the base-q codes 1 .. q^L - 1 (coefficient digits, constant term lowest).
    constexpr std::uint64_t kChunk = 1 << 16;
    const std::uint64_t n_chunks = (box + kChunk - 1) / kChunk;
    std::vector<std::map<std::uint32_t, std::uint64_t>> partial(n_chunks);
    parallel_for(n_chunks, workers, [&](std::size_t i) {
        std::vector<std::uint64_t> local(q, 0);
        const std::uint64_t lo = std::max<std::uint64_t>(1, i * kChunk), hi = std::min(box, (i + 1) * kChunk);
        for (std::uint64_t code = lo; code < hi; ++code) {
            std::uint64_t top = code;
            unsigned d = 0;
            while (top >= q) {
                top /= q;
                ++d;
            }
            const std::uint32_t k0 = f.dlog(static_cast<Elem>(top));
            ++local[detail::defect_value(f.q(), d, detail::k0_star(f.q(), d, k0))];
        }
        for (std::uint32_t t = 1; t < q; ++t)
            if (local[t]) partial[i][t] = local[t];
    });
    Rank1Census c;
    c.q = f.q();
    c.L = L;
    c.box_size = box - 1;
    for (const auto& t : partial)
        for (const auto& [k, v] : t) c.tally[k] += v;
    for (const auto& [k, v] : c.tally)
        if (k > 1) c.nonsurjective += v;
    c.ratio = Rational(c.nonsurjective, c.box_size);
    return c;
}

/// Divisors t of q-1 with 2 <= t <= q-2.
inline std::vector<std::uint32_t> main1_t_range(std::uint32_t q) {
    std::vector<std::uint32_t> ts;
    for (std::uint32_t t = 2; t + 2 <= q; ++t)
        if ((q - 1) % t == 0) ts.push_back(t);
    return ts;
}

/// The displayed closed form for the number of non-surjective Delta, evaluated verbatim
/// (including the q*1 term), with L in place of floor(log_q x).
inline BigInt theorem_main1_count(std::uint32_t q, unsigned L) {
    if (q < 3) throw Error(Errc::UnsupportedSize, "theorem_main1_count needs q >= 3");
    if (L < 1) throw Error(Errc::ConfigError, "theorem_main1_count needs L >= 1");
    BigInt total = 0;
    for (auto t : main1_t_range(q)) {
        BigInt inner = 0;
        for (unsigned i = 1; i <= (L - 1) / t; ++i) {
            std::int64_t s = 0;
            for (auto j : detail::divisors(i)) s += moebius_int(j) * static_cast<std::int64_t>((q - 1) / (t * j));
            inner += ipow(q, std::uint64_t(t) * i + 1) * s;
        }
        total += inner + q;
    }
    for (unsigned i = 1; i <= (L - 1) / (q - 1); ++i) total += ipow(q, std::uint64_t(q - 1) * i + 1);
    return total;
}

/// Lower bound on the limiting non-surjective ratio: sum over t of (q-1)/((q^t-1) t).
inline Rational cor11_bound(std::uint32_t q) {
    if (q < 3) throw Error(Errc::UnsupportedSize, "cor11_bound needs q >= 3");
    Rational s = 0;
    for (auto t : main1_t_range(q)) s += Rational(BigInt(q - 1), (ipow(q, t) - 1) * t);
    return s;
}

struct Rank1Row {
    Rank1Census census;
    std::optional<BigInt> formula;   ///< absent when q < 3
    std::optional<Rational> bound;   ///< absent when q < 3
    bool bound_satisfied = true;
    bool agreement = false;
    /// ratio(L) <= ratio(L-1); meaningful from L = 3 (the sequence is checked from L = 2 on).
    std::optional<bool> non_increasing;
};

struct Rank1Report {
    std::uint32_t q = 0;
    std::vector<Rank1Row> rows;
    bool monotone = true;   ///< non-increasing over L >= 2
    bool bound_holds = true; ///< ratio >= bound for every L >= 2
};

inline Rank1Report rank1_report(const FieldCtx& f, unsigned L_max, unsigned workers = 1) {
    if (L_max > kMaxRank1L) throw Error(Errc::BoxTooLarge, "rank1_report limited to L <= 12");
    Rank1Report rep;
    rep.q = f.q();
    for (unsigned L = 1; L <= L_max; ++L) {
        Rank1Row row;
        row.census = rank1_census(f, L, workers);
        if (f.q() >= 3) {
            row.formula = theorem_main1_count(f.q(), L);
            row.bound = cor11_bound(f.q());
            row.bound_satisfied = row.census.ratio >= *row.bound;
            row.agreement = *row.formula == row.census.nonsurjective;
        }
        if (L >= 3) {
            row.non_increasing = row.census.ratio <= rep.rows.back().census.ratio;
            rep.monotone = rep.monotone && *row.non_increasing;
        }
        if (L >= 2) rep.bound_holds = rep.bound_holds && row.bound_satisfied;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace drinfeld

#endif // DRINFELD_RANK1_HPP
