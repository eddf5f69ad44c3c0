#ifndef DRINFELD_DRINFELD_MODULE_HPP
#define DRINFELD_DRINFELD_MODULE_HPP

#include <drinfeld/error.hpp>
#include <drinfeld/finite_field.hpp>
#include <drinfeld/poly.hpp>
#include <drinfeld/twisted.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace drinfeld {

/// phi_T = T + g_1 tau + ... + g_r tau^r with g_i in A = F_q[T], g_r != 0.
class DrinfeldModule {
public:
    DrinfeldModule(FieldPtr f, std::vector<FqPoly> g) : f_(std::move(f)), g_(std::move(g)) {
        if (g_.empty() || g_.back().is_zero()) throw Error(Errc::ZeroArgument, "leading coefficient g_r must be nonzero");
    }

    static DrinfeldModule rank1(FieldPtr f, FqPoly delta) { return DrinfeldModule(std::move(f), {std::move(delta)}); }
    static DrinfeldModule carlitz(const FieldPtr& f) { return rank1(f, poly::constant(*f, f->one())); }
    static DrinfeldModule rank2(FieldPtr f, FqPoly g1, FqPoly g2) {
        return DrinfeldModule(std::move(f), {std::move(g1), std::move(g2)});
    }

    const FieldPtr& field_ptr() const noexcept { return f_; }
    const FieldCtx& field() const noexcept { return *f_; }
    unsigned rank() const noexcept { return static_cast<unsigned>(g_.size()); }
    /// g_i, 1 <= i <= rank.
    const FqPoly& g(unsigned i) const { return g_.at(i - 1); }
    const std::vector<FqPoly>& coefficients() const noexcept { return g_; }

    TwistedPoly<FqPoly> phi_T() const {
        std::vector<FqPoly> c{poly::variable(*f_)};
        c.insert(c.end(), g_.begin(), g_.end());
        return twisted::make(RingA(*f_), std::move(c));
    }

    /// The rank-1 module T + (-1)^(r-1) g_r tau that carries the determinant.
    DrinfeldModule determinant_module() const {
        FqPoly lead = g_.back();
        if (rank() % 2 == 0) lead = poly::neg(*f_, lead);
        return rank1(f_, std::move(lead));
    }

private:
    FieldPtr f_;
    std::vector<FqPoly> g_;
};

/// phi_a as an element of A{tau}.
inline TwistedPoly<FqPoly> phi_a(const DrinfeldModule& m, const FqPoly& a) {
    if (a.is_zero()) throw Error(Errc::ZeroArgument, "phi_0 is not a torsion operator");
    return twisted::evaluate_at(RingA(m.field()), m.phi_T(), a);
}

/// Coefficients c_i of the additive polynomial phi_a(x) = sum c_i x^(q^i), as elements of A.
inline std::vector<FqPoly> torsion_poly(const DrinfeldModule& m, const FqPoly& a) {
    return phi_a(m, a).coeffs;
}

/// Dense x-polynomial of an additive polynomial; only for small degrees.
inline FqPoly additive_to_dense(const FieldCtx& f, const std::vector<Elem>& c) {
    std::vector<Elem> dense;
    std::size_t qi = 1;
    for (std::size_t i = 0; i < c.size(); ++i, qi *= f.q()) {
        if (dense.size() < qi + 1) dense.resize(qi + 1, 0);
        dense[qi] = f.add(dense[qi], c[i]);
    }
    return poly::make(f, std::move(dense));
}

/// phi tensor F_P: coefficient images in A/P.
struct ReducedModule {
    PrimeIdeal prime;
    FieldPtr base;
    FieldPtr residue;
    Elem t_image = 0;
    std::vector<Elem> gbar;
    bool good = false;

    unsigned rank() const noexcept { return static_cast<unsigned>(gbar.size()); }
    TableFieldRing ring() const { return TableFieldRing(*residue, base->q(), t_image); }
    TwistedPoly<Elem> phi_T() const {
        std::vector<Elem> c{t_image};
        c.insert(c.end(), gbar.begin(), gbar.end());
        return twisted::make(ring(), std::move(c));
    }
};

/// Builds the reduction directly from residues (g_1bar, ..., g_rbar) in A/P.
inline ReducedModule from_residues(const FieldPtr& base, const PrimeIdeal& prime, std::vector<Elem> gbar) {
    ReducedModule r;
    r.prime = prime;
    r.base = base;
    r.residue = residue_field(base, prime);
    r.t_image = to_residue(*r.residue, poly::variable(*base));
    r.gbar = std::move(gbar);
    r.good = !r.gbar.empty() && r.gbar.back() != 0;
    return r;
}

inline ReducedModule reduce_mod(const DrinfeldModule& m, const PrimeIdeal& prime) {
    auto res = residue_field(m.field_ptr(), prime);
    std::vector<Elem> gbar;
    for (const auto& g : m.coefficients()) gbar.push_back(to_residue(*res, g));
    return from_residues(m.field_ptr(), prime, std::move(gbar));
}

/// phi_a over A/P.
inline TwistedPoly<Elem> reduced_phi_a(const ReducedModule& red, const FqPoly& a) {
    if (a.is_zero()) throw Error(Errc::ZeroArgument, "phi_0 is not a torsion operator");
    return twisted::evaluate_at(red.ring(), red.phi_T(), a);
}

/// The relation satisfied by pi = tau^(deg P) in End(phi tensor F_P):
///   rank 1: pi = phi_b;  rank 2: pi^2 - phi_a pi + phi_b = 0,
/// with b = eps * P for a unit eps and deg a <= deg P / 2. On l-torsion (l != P) the
/// characteristic polynomial of Frobenius is x - b (rank 1) or x^2 - a x + b (rank 2) mod l.
struct FrobeniusRelation {
    FqPoly a;
    Elem eps = 0;
    FqPoly b;
};

inline FrobeniusRelation frobenius_relation(const ReducedModule& red) {
    if (!red.good) throw Error(Errc::BadReduction, "Frobenius relation needs good reduction");
    const FieldCtx& fq = *red.base;
    const auto ring = red.ring();
    const unsigned d = red.prime.degree;
    const auto phi_p = reduced_phi_a(red, red.prime.gen);
    if (red.rank() == 1) {
        if (phi_p.degree() != static_cast<std::ptrdiff_t>(d)) throw std::logic_error("rank-1 phi_P has wrong degree");
        for (unsigned i = 0; i < d; ++i)
            if (phi_p.coeffs[i] != 0) throw std::logic_error("rank-1 phi_P is not a pure power of tau");
        const Elem lead = phi_p.coeffs[d];
        const Elem eps = red.residue->inv(lead);
        if (eps >= fq.q()) throw std::logic_error("rank-1 Frobenius unit outside F_q");
        return {FqPoly{}, eps, poly::scale(fq, eps, red.prime.gen)};
    }
    if (red.rank() != 2) throw Error(Errc::UnsupportedSize, "Frobenius relation implemented for rank <= 2");
    for (Elem eps = 1; eps < fq.q(); ++eps) {
        // X = tau^(2d) + eps * phi_P must equal phi_a tau^d.
        std::vector<Elem> x(2 * d + 1, 0);
        for (std::size_t i = 0; i < phi_p.coeffs.size(); ++i) x[i] = red.residue->mul(eps, phi_p.coeffs[i]);
        x[2 * d] = red.residue->add(x[2 * d], 1);
        bool ok = true;
        for (unsigned i = 0; i < d && ok; ++i) ok = x[i] == 0;
        if (!ok) continue;
        TwistedPoly<Elem> y = twisted::make(ring, std::vector<Elem>(x.begin() + d, x.end()));
        FqPoly a = from_residue(*red.residue, y.is_zero() ? 0 : y.coeffs[0]);
        if (2 * a.degree() > static_cast<std::ptrdiff_t>(d)) continue;
        TwistedPoly<Elem> phi_of_a = a.is_zero() ? TwistedPoly<Elem>{} : reduced_phi_a(red, a);
        if (!(phi_of_a == y)) continue;
        return {std::move(a), eps, poly::scale(fq, eps, red.prime.gen)};
    }
    throw std::logic_error("no Frobenius relation found");
}

} // namespace drinfeld

#endif // DRINFELD_DRINFELD_MODULE_HPP
