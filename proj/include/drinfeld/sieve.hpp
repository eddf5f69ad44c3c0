#ifndef DRINFELD_SIEVE_HPP
#define DRINFELD_SIEVE_HPP

#include <drinfeld/drinfeld_module.hpp>
#include <drinfeld/error.hpp>
#include <drinfeld/factor.hpp>
#include <drinfeld/finite_field.hpp>
#include <drinfeld/galois.hpp>
#include <drinfeld/groups.hpp>
#include <drinfeld/mat2.hpp>
#include <drinfeld/parallel.hpp>
#include <drinfeld/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace drinfeld {

/// Degree cutoff K and weights a_P in (0, 1], keyed by the canonical code of the monic
/// generator. Primes missing from the map have a_P = 1.
struct SieveParams {
    unsigned K = 0;
    std::map<std::uint64_t, Rational> a;
};

/// Theorem: factor (1 - a)/a. Inverted: a/(1 - a), with a = 1 contributing 0.
enum class Orientation { Theorem, Inverted };

inline const char* orientation_name(Orientation o) { return o == Orientation::Theorem ? "theorem" : "inverted"; }

/// L(K) = 1 + sum over monic squarefree M, 1 <= deg M <= K, of prod_{P | M} w(a_P).
/// M is built as a product of distinct primes, so its factorisation is never recomputed.
inline Rational large_sieve_L(const FieldCtx& f, const SieveParams& params, Orientation o = Orientation::Theorem) {
    for (const auto& [code, a] : params.a)
        if (a <= 0 || a > 1) throw Error(Errc::ConfigError, "sieve weight a_P must lie in (0, 1]");
    if (params.K == 0) return Rational(1);
    const auto primes = enumerate_monic_irreducibles(f, params.K);
    // Only primes with nonzero weight matter.
    std::vector<std::pair<unsigned, Rational>> weighted;
    for (const auto& p : primes) {
        auto it = params.a.find(poly::to_index(f, p));
        if (it == params.a.end() || it->second == 1) continue;
        const Rational& a = it->second;
        Rational w = o == Orientation::Theorem ? Rational((1 - a) / a) : Rational(a / (1 - a));
        weighted.emplace_back(static_cast<unsigned>(p.degree()), std::move(w));
    }
    Rational total = 1;
    std::function<void(std::size_t, unsigned, const Rational&)> rec = [&](std::size_t start, unsigned deg,
                                                                          const Rational& prod) {
        for (std::size_t i = start; i < weighted.size(); ++i) {
            const unsigned d = deg + weighted[i].first;
            if (d > params.K) continue;
            Rational next = prod * weighted[i].second;
            total += next;
            rec(i + 1, d, next);
        }
    };
    rec(0, 0, Rational(1));
    return total;
}

struct SieveCheck {
    BigInt lhs;  ///< #X * L(K), as an exact rational numerator/denominator pair below
    Rational lhs_exact;
    BigInt rhs;
    unsigned m0 = 0;
    bool holds = false;
};

/// #X * L(K) <= q^(2(m0+1)), m0 = max(log_q x, 2K - 1), with log_q x = L for the box deg < L.
inline SieveCheck sieve_bound_check(const FieldCtx& f, const BigInt& x_count, const SieveParams& params, unsigned L,
                                    Orientation o = Orientation::Theorem) {
    SieveCheck c;
    const Rational lk = large_sieve_L(f, params, o);
    c.lhs_exact = Rational(x_count) * lk;
    c.lhs = numerator(c.lhs_exact) / denominator(c.lhs_exact);
    const int two_k_minus_1 = 2 * static_cast<int>(params.K) - 1;
    c.m0 = static_cast<unsigned>(std::max<int>(static_cast<int>(L), two_k_minus_1));
    c.rhs = ipow(f.q(), 2ULL * (c.m0 + 1));
    c.holds = c.lhs_exact <= Rational(c.rhs);
    return c;
}

struct OmegaRow {
    std::uint32_t key = 0;  ///< GL_2 class key (trace, det, scalar flag)
    Elem trace = 0, det = 0;
    bool scalar = false;
    /// SL_2 class of the matrix in the canonical torsion basis, for det 1. Classes of SL_2 that
    /// fuse in GL_2 can swap under a change of basis, so this refinement is basis dependent.
    std::optional<std::uint32_t> sl2_class;
    std::uint64_t count = 0;
};

struct OmegaCensus {
    PrimeIdeal p, ell;
    std::uint32_t residue_size = 0;
    std::uint64_t total = 0;
    std::vector<OmegaRow> rows;
    /// GL_2 key of Frobenius for residue pair (g1bar, g2bar) at index g1bar * |F_P| + g2bar;
    /// unset for g2bar = 0.
    std::vector<std::optional<std::uint32_t>> pair_keys;

    /// alpha_{P,C} = #Omega_{P,C} / |F_P|^2 for the GL_2 class key C.
    Rational alpha(std::uint32_t key) const {
        std::uint64_t n = 0;
        for (const auto& r : rows)
            if (r.key == key) n += r.count;
        return Rational(n, std::uint64_t(residue_size) * residue_size);
    }
};

inline constexpr std::uint32_t kMaxOmegaResidue = 1U << 8;

/// Tallies the Frobenius class on phi[l] over every (g1bar, g2bar) in F_P^2 with g2bar != 0.
inline OmegaCensus omega_census(const FieldPtr& base, const PrimeIdeal& p, const PrimeIdeal& ell, unsigned workers = 1) {
    if (p == ell) throw Error(Errc::EllEqualsP, "omega_census needs P != l");
    const auto res = residue_field(base, p);
    if (res->q() > kMaxOmegaResidue) throw Error(Errc::FieldTooLarge, "omega_census limited to |F_P| <= 256");
    const auto fl = residue_field(base, ell);
    std::shared_ptr<const ClassTable> table;
    if (fl->q() <= ClassTable::kMaxField) table = class_table(fl);
    const std::uint32_t n = res->q();
    OmegaCensus c;
    c.p = p;
    c.ell = ell;
    c.residue_size = n;
    c.pair_keys.assign(std::size_t(n) * n, std::nullopt);
    std::vector<Mat2> mats(std::size_t(n) * n);
    parallel_for(std::size_t(n) * n, workers, [&](std::size_t i) {
        const Elem g1 = static_cast<Elem>(i / n), g2 = static_cast<Elem>(i % n);
        if (g2 == 0) return;
        mats[i] = frobenius_matrix(from_residues(base, p, {g1, g2}), ell);
    });
    std::map<std::pair<std::uint32_t, std::int64_t>, OmegaRow> rows;
    for (std::size_t i = 0; i < mats.size(); ++i) {
        if (i % n == 0) continue;
        const Mat2& m = mats[i];
        const auto key = mat2::gl2_class_key(*fl, m);
        c.pair_keys[i] = key;
        std::optional<std::uint32_t> sl2;
        if (table && mat2::det(*fl, m) == 1) sl2 = table->classify(m);
        auto& row = rows[{key, sl2 ? std::int64_t(*sl2) : -1}];
        row.key = key;
        row.trace = mat2::trace(*fl, m);
        row.det = mat2::det(*fl, m);
        row.scalar = mat2::is_scalar(m);
        row.sl2_class = sl2;
        ++row.count;
        ++c.total;
    }
    for (auto& [k, r] : rows) c.rows.push_back(r);
    return c;
}

inline std::string omega_class_id(const OmegaRow& r) {
    std::string s = std::to_string(r.key);
    if (r.sl2_class) s += ":" + std::to_string(*r.sl2_class);
    return s;
}

/// CSV with columns p, ell, class_id, charpoly, det, count.
inline std::string omega_csv(const FieldCtx& f, const std::vector<OmegaCensus>& censuses, bool header = true) {
    std::ostringstream out;
    if (header) out << "p,ell,class_id,charpoly,det,count\n";
    for (const auto& c : censuses) {
        const auto fl = residue_field(make_field(f.p(), f.e()), c.ell);
        for (const auto& r : c.rows)
            out << poly::to_string(c.p.gen) << ',' << poly::to_string(c.ell.gen) << ',' << omega_class_id(r) << ','
                << mat2::charpoly_string(*fl, r.trace, r.det) << ',' << r.det << ',' << r.count << '\n';
    }
    return out.str();
}

// ---- closed-form bounds ---------------------------------------------------------------

/// 1 - q^(-deg l).
inline Rational cor48_bound(std::uint32_t q, unsigned deg_ell) { return 1 - Rational(BigInt(1), ipow(q, deg_ell)); }

inline void check_distinct(const std::vector<PrimeIdeal>& S) {
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j)
            if (S[i] == S[j]) throw Error(Errc::ConfigError, "S contains a repeated prime");
}

inline constexpr std::size_t kMaxInclusionExclusion = 24;

/// Inclusion-exclusion 1 + sum_i (-1)^i sum_{distinct l_1..l_i} q^-(deg l_1 + ... + deg l_i),
/// checked against the product prod (1 - q^-deg l).
inline Rational cor_main2_bound(std::uint32_t q, const std::vector<PrimeIdeal>& S) {
    check_distinct(S);
    if (S.size() > kMaxInclusionExclusion) throw Error(Errc::RangeTooLarge, "inclusion-exclusion over more than 24 primes");
    Rational ie = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << S.size()); ++mask) {
        std::uint64_t deg = 0;
        int bits = 0;
        for (std::size_t i = 0; i < S.size(); ++i)
            if (mask >> i & 1U) {
                deg += S[i].degree;
                ++bits;
            }
        Rational term(BigInt(1), ipow(q, deg));
        ie += bits % 2 ? -term : term;
    }
    Rational prod = 1;
    for (const auto& l : S) prod *= cor48_bound(q, l.degree);
    if (ie != prod) throw std::logic_error("inclusion-exclusion disagrees with the product form");
    return ie;
}

/// cor_main2_bound(q, S) - sum_{2 <= t <= q-2, t | q-1} (q-1)/(q^t - 1).
inline Rational cor_main3_bound(std::uint32_t q, const std::vector<PrimeIdeal>& S) {
    const Rational main2 = cor_main2_bound(q, S);
    Rational tsum = 0, inv_sum = 0;
    for (std::uint32_t t = 2; t + 2 <= q; ++t) {
        if ((q - 1) % t) continue;
        tsum += Rational(BigInt(q - 1), ipow(q, t) - 1);
        inv_sum += Rational(BigInt(1), ipow(q, t) - 1);
    }
    const Rational value = main2 - tsum;
    if (S.size() == 1 && S[0].degree == 1 && S[0].gen.coeffs.size() == 2 && S[0].gen.coeffs[0] == 0) {
        const Rational special = Rational(q - 1) * (Rational(BigInt(1), BigInt(q)) - inv_sum);
        if (special != value) throw std::logic_error("specialised main3 form disagrees");
    }
    return value;
}

struct BoundReport {
    std::uint32_t q = 0;
    std::vector<PrimeIdeal> S;
    std::vector<Rational> cor48;  ///< per element of S
    Rational main2, main3;
};

inline BoundReport bound_report(std::uint32_t q, const std::vector<PrimeIdeal>& S) {
    BoundReport r;
    r.q = q;
    r.S = S;
    for (const auto& l : S) r.cor48.push_back(cor48_bound(q, l.degree));
    r.main2 = cor_main2_bound(q, S);
    r.main3 = cor_main3_bound(q, S);
    return r;
}

} // namespace drinfeld

#endif // DRINFELD_SIEVE_HPP
