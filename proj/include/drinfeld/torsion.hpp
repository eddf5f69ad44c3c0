#ifndef DRINFELD_TORSION_HPP
#define DRINFELD_TORSION_HPP

#include <drinfeld/drinfeld_module.hpp>
#include <drinfeld/error.hpp>
#include <drinfeld/ext_field.hpp>
#include <drinfeld/finite_field.hpp>
#include <drinfeld/linalg.hpp>
#include <drinfeld/mat2.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace drinfeld {

/// Degree over F_P of the field generated by the l-torsion of a good reduction, read off the
/// Frobenius relation: the order of the companion matrix (rank 2) or of the scalar (rank 1) in
/// GL_r(A/l). The true torsion field degree divides it.
inline unsigned torsion_field_degree(const ReducedModule& red, const FrobeniusRelation& rel, const FieldCtx& fl) {
    if (red.rank() == 1) return static_cast<unsigned>(fl.order(to_residue(fl, rel.b)));
    const Elem t = to_residue(fl, rel.a), n = to_residue(fl, rel.b);
    return static_cast<unsigned>(mat2::order(fl, mat2::companion(fl, t, n)));
}

/// phi[l] over the algebraic closure of F_P, realised inside F_{q^M}. Coordinates are taken
/// with respect to an F_q-basis in reduced echelon form.
class TorsionFrame {
public:
    TorsionFrame(const ReducedModule& red, const PrimeIdeal& ell) : red_(red), ell_(ell) {
        if (!red.good) throw Error(Errc::BadReduction, "bad reduction at " + poly::to_string(red.prime.gen));
        if (ell.gen == red.prime.gen) throw Error(Errc::EllEqualsP, "l coincides with P");
        const FieldCtx& fq = *red.base;
        fl_ = residue_field(red.base, ell);
        rel_ = frobenius_relation(red);
        const unsigned k = torsion_field_degree(red, rel_, *fl_);
        const std::uint64_t m = std::uint64_t(red.prime.degree) * k;
        if (m > ExtFieldCtx::kMaxDegree)
            throw Error(Errc::SplittingFieldTooLarge,
                        "torsion field degree " + std::to_string(m) + " exceeds " + std::to_string(ExtFieldCtx::kMaxDegree));
        ext_ = ext_field(red.base, static_cast<unsigned>(m));
        const ExtFieldCtx& e = *ext_;
        ResidueEmbedding emb(e, *red.residue);
        const auto tors = reduced_phi_a(red, ell.gen);
        std::vector<ExtElem> c;
        for (Elem x : tors.coeffs) c.push_back(emb(x));
        basis_ = additive_kernel(e, c);
        n_ = static_cast<unsigned>(basis_.size());
        if (n_ != red.rank() * ell.degree) throw std::logic_error("torsion dimension mismatch");
        for (const auto& v : basis_) {
            std::size_t p = 0;
            while (v[p] == 0) ++p;
            pivots_.push_back(p);
        }
        phi_t_.push_back(emb(red.t_image));
        for (Elem g : red.gbar) phi_t_.push_back(emb(g));
        t_action_ = Matrix(n_, n_);
        frob_ = Matrix(n_, n_);
        for (unsigned j = 0; j < n_; ++j) {
            auto tv = coords(eval_additive(e, phi_t_, basis_[j]));
            auto fv = coords(e.frobenius_pow(basis_[j], red.prime.degree));
            for (unsigned i = 0; i < n_; ++i) {
                t_action_(i, j) = tv[i];
                frob_(i, j) = fv[i];
            }
        }
        t_powers_.push_back(Matrix::identity(n_));
        for (unsigned i = 1; i < ell.degree; ++i) t_powers_.push_back(linalg::mul(fq, t_powers_.back(), t_action_));
    }

    const ExtFieldCtx& ext() const noexcept { return *ext_; }
    const FieldCtx& base_field() const noexcept { return *red_.base; }
    const FieldCtx& ell_field() const noexcept { return *fl_; }
    const FieldPtr& ell_field_ptr() const noexcept { return fl_; }
    const FrobeniusRelation& relation() const noexcept { return rel_; }
    unsigned dimension() const noexcept { return n_; }
    const std::vector<ExtElem>& basis() const noexcept { return basis_; }
    const Matrix& t_action() const noexcept { return t_action_; }
    /// Coordinates of x -> x^|F_P| on the echelon basis.
    const Matrix& frobenius() const noexcept { return frob_; }
    /// tau-coefficients of phi_T embedded in F_{q^M}.
    const std::vector<ExtElem>& phi_t() const noexcept { return phi_t_; }

    /// Coordinates of a torsion point (assumed to lie in the span).
    std::vector<Elem> coords(const ExtElem& v) const {
        std::vector<Elem> c(n_);
        for (unsigned i = 0; i < n_; ++i) c[i] = v[pivots_[i]];
        return c;
    }

    ExtElem point(const std::vector<Elem>& c) const {
        const ExtFieldCtx& e = *ext_;
        ExtElem v = e.zero();
        for (unsigned i = 0; i < n_; ++i)
            if (c[i] != 0) v = e.add(v, e.scale(c[i], basis_[i]));
        return v;
    }

    /// phi_c acting on coordinates, c in A/l.
    std::vector<Elem> act(Elem c, const std::vector<Elem>& v) const {
        const FieldCtx& fq = *red_.base;
        const auto digits = fl_->residue(c);
        std::vector<Elem> r(n_, 0);
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] == 0) continue;
            auto w = linalg::apply(fq, t_powers_[i], v);
            for (unsigned k = 0; k < n_; ++k) r[k] = fq.add(r[k], fq.mul(digits[i], w[k]));
        }
        return r;
    }

    std::uint64_t code(const std::vector<Elem>& v) const {
        std::uint64_t r = 0;
        for (unsigned i = n_; i-- > 0;) r = r * red_.base->q() + v[i];
        return r;
    }

    std::vector<Elem> decode(std::uint64_t k) const {
        std::vector<Elem> v(n_);
        for (unsigned i = 0; i < n_; ++i) {
            v[i] = static_cast<Elem>(k % red_.base->q());
            k /= red_.base->q();
        }
        return v;
    }

    std::uint64_t point_count() const { return detail::upow(red_.base->q(), n_); }

    /// Coordinates of all torsion points, sorted by the canonical order of the points themselves.
    std::vector<std::vector<Elem>> sorted_points() const {
        std::vector<std::pair<ExtElem, std::uint64_t>> pts;
        for (std::uint64_t k = 0; k < point_count(); ++k) pts.emplace_back(point(decode(k)), k);
        const ExtFieldCtx& e = *ext_;
        std::sort(pts.begin(), pts.end(), [&e](const auto& x, const auto& y) { return e.less(x.first, y.first); });
        std::vector<std::vector<Elem>> out;
        for (const auto& p : pts) out.push_back(decode(p.second));
        return out;
    }

private:
    ReducedModule red_;
    PrimeIdeal ell_;
    FieldPtr fl_;
    FrobeniusRelation rel_;
    ExtFieldPtr ext_;
    unsigned n_ = 0;
    std::vector<ExtElem> basis_;
    std::vector<std::size_t> pivots_;
    std::vector<ExtElem> phi_t_;
    Matrix t_action_, frob_;
    std::vector<Matrix> t_powers_;
};

/// An A/l-basis of phi[l] with a lookup from every torsion point to its coordinates.
class TorsionBasis {
public:
    /// Without a seed: e1 is the first nonzero point in canonical order and e2 the first point
    /// outside the span of e1. With a seed both are drawn at random instead.
    TorsionBasis(const TorsionFrame& frame, unsigned rank, std::optional<std::uint64_t> shuffle_seed = std::nullopt)
        : frame_(&frame), rank_(rank) {
        const FieldCtx& fl = frame.ell_field();
        const std::uint32_t ql = fl.q();
        auto pts = frame.sorted_points();
        if (shuffle_seed) {
            std::mt19937_64 rng(*shuffle_seed);
            for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng() % i]);
        }
        lookup_.assign(frame.point_count(), kUnset);
        auto span_of = [&](const std::vector<std::vector<Elem>>& gens) {
            // Each span element is tagged with sum_i a_i * ql^i for its coefficients a_i.
            std::vector<std::pair<std::uint64_t, std::vector<Elem>>> cur{{0, std::vector<Elem>(frame.dimension(), 0)}};
            std::uint64_t stride = 1;
            for (const auto& g : gens) {
                std::vector<std::pair<std::uint64_t, std::vector<Elem>>> next;
                for (Elem a = 0; a < ql; ++a) {
                    auto ag = frame.act(a, g);
                    for (const auto& [idx, v] : cur) {
                        std::vector<Elem> w(v.size());
                        for (std::size_t k = 0; k < v.size(); ++k) w[k] = frame_->base_field().add(v[k], ag[k]);
                        next.emplace_back(idx + a * stride, std::move(w));
                    }
                }
                cur = std::move(next);
                stride *= ql;
            }
            return cur;
        };
        for (const auto& p : pts) {
            if (gens_.size() == rank_) break;
            const auto c = frame.code(p);
            if (std::all_of(p.begin(), p.end(), [](Elem x) { return x == 0; })) continue;
            bool in_span = false;
            if (!gens_.empty()) {
                for (const auto& [idx, v] : span_of(gens_))
                    if (frame.code(v) == c) in_span = true;
            }
            if (!in_span) gens_.push_back(p);
        }
        for (const auto& [idx, v] : span_of(gens_)) lookup_[frame.code(v)] = idx;
        if (std::find(lookup_.begin(), lookup_.end(), kUnset) != lookup_.end())
            throw std::logic_error("torsion basis does not span");
    }

    const std::vector<std::vector<Elem>>& generators() const noexcept { return gens_; }

    /// Coordinates over A/l of a torsion point given by F_q-coordinates.
    std::vector<Elem> resolve(const std::vector<Elem>& v) const {
        std::uint64_t idx = lookup_[frame_->code(v)];
        const std::uint32_t ql = frame_->ell_field().q();
        std::vector<Elem> out(rank_);
        for (unsigned i = 0; i < rank_; ++i) {
            out[i] = static_cast<Elem>(idx % ql);
            idx /= ql;
        }
        return out;
    }

    /// Matrix of Frobenius: column i holds the coordinates of Frob(e_i).
    std::vector<std::vector<Elem>> frobenius_columns() const {
        std::vector<std::vector<Elem>> cols;
        for (const auto& g : gens_) cols.push_back(resolve(linalg::apply(frame_->base_field(), frame_->frobenius(), g)));
        return cols;
    }

private:
    static constexpr std::uint64_t kUnset = ~std::uint64_t(0);
    const TorsionFrame* frame_;
    unsigned rank_;
    std::vector<std::vector<Elem>> gens_;
    std::vector<std::uint64_t> lookup_;
};

} // namespace drinfeld

#endif // DRINFELD_TORSION_HPP
