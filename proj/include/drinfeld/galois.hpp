#ifndef DRINFELD_GALOIS_HPP
#define DRINFELD_GALOIS_HPP

#include <drinfeld/drinfeld_module.hpp>
#include <drinfeld/error.hpp>
#include <drinfeld/finite_field.hpp>
#include <drinfeld/groups.hpp>
#include <drinfeld/mat2.hpp>
#include <drinfeld/torsion.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace drinfeld {

/// Matrix of x -> x^|F_P| on phi[l] for a good rank-2 reduction. A shuffle seed picks a random
/// torsion basis instead of the canonical one; the result is then a conjugate.
inline Mat2 frobenius_matrix(const ReducedModule& red, const PrimeIdeal& ell,
                             std::optional<std::uint64_t> shuffle_seed = std::nullopt) {
    if (red.rank() != 2) throw Error(Errc::UnsupportedSize, "frobenius_matrix expects rank 2");
    TorsionFrame frame(red, ell);
    TorsionBasis basis(frame, 2, shuffle_seed);
    const auto cols = basis.frobenius_columns();
    return {cols[0][0], cols[1][0], cols[0][1], cols[1][1]};
}

inline Mat2 frobenius_matrix(const DrinfeldModule& phi, const PrimeIdeal& p, const PrimeIdeal& ell,
                             std::optional<std::uint64_t> shuffle_seed = std::nullopt) {
    if (p == ell) throw Error(Errc::EllEqualsP, "l coincides with P");
    return frobenius_matrix(reduce_mod(phi, p), ell, shuffle_seed);
}

/// Scalar by which x -> x^|F_P| acts on the one-dimensional psi[l].
inline Elem rank1_frobenius_scalar(const ReducedModule& red, const PrimeIdeal& ell) {
    if (red.rank() != 1) throw Error(Errc::UnsupportedSize, "rank1_frobenius_scalar expects rank 1");
    TorsionFrame frame(red, ell);
    TorsionBasis basis(frame, 1);
    return basis.frobenius_columns()[0][0];
}

inline Elem rank1_frobenius_scalar(const DrinfeldModule& psi, const PrimeIdeal& p, const PrimeIdeal& ell) {
    if (p == ell) throw Error(Errc::EllEqualsP, "l coincides with P");
    return rank1_frobenius_scalar(reduce_mod(psi, p), ell);
}

/// det of the rank-2 Frobenius matrix equals the Frobenius scalar of T - g_2 tau.
inline bool det_compatibility_check(const DrinfeldModule& phi, const PrimeIdeal& p, const PrimeIdeal& ell) {
    const Mat2 m = frobenius_matrix(phi, p, ell);
    const Elem s = rank1_frobenius_scalar(phi.determinant_module(), p, ell);
    const auto fl = residue_field(phi.field_ptr(), ell);
    return mat2::det(*fl, m) == s;
}

enum class Verdict { ContainsSL2, Undetermined };

inline const char* verdict_name(Verdict v) { return v == Verdict::ContainsSL2 ? "ContainsSL2" : "Undetermined"; }

struct GaloisVerdict {
    Verdict verdict = Verdict::Undetermined;
    /// Good primes whose Frobenius classes were used, in sampling order.
    std::vector<FqPoly> primes_used;
    /// Certified lower bound on |Im n SL_2|.
    std::uint64_t subgroup_order = 1;
    /// SL_2 class ids whose GL_2 class was observed among det-1 Frobenius powers.
    boost::dynamic_bitset<> class_coverage;
    /// Proper subgroups of SL_2 (up to conjugacy) still compatible with the evidence.
    std::size_t obstructions = 0;
    /// Verdict of the mod-l step, kept alongside the l-adic verdict.
    Verdict mod_l = Verdict::Undetermined;
};

/// Source of GL_2 class keys (Frobenius and its powers) for a good reduction; lets callers
/// memoise across instances that share residues.
using FrobeniusClassFn = std::function<std::vector<std::uint32_t>(const ReducedModule&, const PrimeIdeal&)>;

inline std::vector<std::uint32_t> frobenius_class_keys(const ReducedModule& red, const PrimeIdeal& ell) {
    const auto fl = residue_field(red.base, ell);
    return power_class_keys(*fl, frobenius_matrix(red, ell));
}

/// Sound lower bound for the mod-l image: Frobenius classes at good P != l, deg P <= D, in
/// canonical order, stopping as soon as containment of SL_2 is certified.
inline GaloisVerdict mod_l_verdict(const DrinfeldModule& phi, const PrimeIdeal& ell, unsigned D,
                                   const FrobeniusClassFn& classes = frobenius_class_keys) {
    if (phi.rank() != 2) throw Error(Errc::UnsupportedSize, "mod_l_verdict expects rank 2");
    const auto fl = residue_field(phi.field_ptr(), ell);
    const auto lattice = sl2_lattice(fl);
    const auto table = class_table(fl);
    GaloisVerdict v;
    std::vector<std::uint32_t> observed;
    Sl2SubgroupLattice::Certificate cert = lattice->certify(observed);
    for (const auto& p : primes_up_to(phi.field(), D)) {
        if (p == ell) continue;
        const auto red = reduce_mod(phi, p);
        if (!red.good) continue;
        const auto keys = classes(red, ell);
        observed.insert(observed.end(), keys.begin(), keys.end());
        v.primes_used.push_back(p.gen);
        cert = lattice->certify(observed);
        if (cert.contains_sl2) break;
    }
    if (v.primes_used.empty()) throw Error(Errc::NoGoodPrimes, "no good primes of degree <= " + std::to_string(D));
    v.verdict = cert.contains_sl2 ? Verdict::ContainsSL2 : Verdict::Undetermined;
    v.mod_l = v.verdict;
    v.subgroup_order = cert.min_order;
    v.obstructions = cert.obstructions;
    v.class_coverage.resize(table->class_count());
    std::sort(observed.begin(), observed.end());
    for (std::size_t i = 0; i < table->class_count(); ++i) {
        const auto key = table->classes()[i].gl2_key;
        if (std::binary_search(observed.begin(), observed.end(), key)) v.class_coverage.set(i);
    }
    return v;
}

/// Lifts a mod-l verdict to the l-adic image: needs q >= 4 and g_2 not in l.
inline GaloisVerdict l_adic_verdict(const DrinfeldModule& phi, const PrimeIdeal& ell, unsigned D,
                                    const FrobeniusClassFn& classes = frobenius_class_keys) {
    if (phi.field().q() < 4) throw Error(Errc::QTooSmall, "l-adic lifting requires q >= 4");
    GaloisVerdict v = mod_l_verdict(phi, ell, D, classes);
    const bool g2_in_ell = poly::rem(phi.field(), phi.g(2), ell.gen).is_zero();
    if (g2_in_ell) v.verdict = Verdict::Undetermined;
    return v;
}

} // namespace drinfeld

#endif // DRINFELD_GALOIS_HPP
