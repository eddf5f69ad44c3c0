#ifndef DRINFELD_EXT_FIELD_HPP
#define DRINFELD_EXT_FIELD_HPP

#include <drinfeld/error.hpp>
#include <drinfeld/factor.hpp>
#include <drinfeld/gf.hpp>
#include <drinfeld/linalg.hpp>
#include <drinfeld/poly.hpp>
#include <drinfeld/rational.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace drinfeld {

/// Element of F_{q^m}: coefficient vector of length m over F_q modulo the defining polynomial.
using ExtElem = std::vector<Elem>;

/// F_{q^m} = F_q[x]/(modulus), with modulus the first monic irreducible of degree m in canonical
/// order. Elements are dense residues, so m can exceed what log tables allow.
class ExtFieldCtx {
public:
    using value_type = ExtElem;

    static constexpr unsigned kMaxDegree = 256;

    ExtFieldCtx(FieldPtr base, unsigned m) : base_(std::move(base)), m_(m) {
        if (m == 0) throw Error(Errc::UnsupportedSize, "extension degree must be positive");
        if (m > kMaxDegree) throw Error(Errc::FieldTooLarge, "extension degree above " + std::to_string(kMaxDegree));
        const FieldCtx& f = *base_;
        for (std::uint64_t n = 0;; ++n) {
            auto cand = poly::monic_from_index(f, m, n);
            if (is_irreducible(f, cand)) {
                modulus_ = std::move(cand);
                break;
            }
        }
        // red_[k] = x^(m+k) mod modulus
        red_.assign(m_ > 1 ? m_ - 1 : 0, ExtElem(m_, 0));
        if (!red_.empty()) {
            for (unsigned i = 0; i < m_; ++i) red_[0][i] = f.neg(modulus_.coeffs[i]);
            for (unsigned k = 1; k < red_.size(); ++k) {
                const auto& prev = red_[k - 1];
                auto& cur = red_[k];
                const Elem top = prev[m_ - 1];
                for (unsigned i = m_; i-- > 1;) cur[i] = f.add(prev[i - 1], f.mul(top, red_[0][i]));
                cur[0] = f.mul(top, red_[0][0]);
            }
        }
        ExtElem x(m_, 0);
        if (m_ > 1) x[1] = 1;
        else x[0] = f.neg(modulus_.coeffs[0]);
        const ExtElem xq = pow(x, BigInt(f.q()));
        frob_ = Matrix(m_, m_);
        ExtElem col = one();
        for (unsigned j = 0; j < m_; ++j) {
            for (unsigned i = 0; i < m_; ++i) frob_(i, j) = col[i];
            col = mul(col, xq);
        }
    }

    const FieldCtx& base() const noexcept { return *base_; }
    const FieldPtr& base_ptr() const noexcept { return base_; }
    unsigned degree() const noexcept { return m_; }
    const FqPoly& modulus() const noexcept { return modulus_; }
    /// Matrix of x -> x^q in the power basis (columns are images of basis vectors).
    const Matrix& frobenius_matrix() const noexcept { return frob_; }

    std::uint32_t characteristic() const noexcept { return base_->p(); }
    BigInt cardinality() const { return boost::multiprecision::pow(BigInt(base_->q()), m_); }
    unsigned prime_degree() const noexcept { return base_->e() * m_; }

    ExtElem zero() const { return ExtElem(m_, 0); }
    ExtElem one() const {
        ExtElem r(m_, 0);
        r[0] = 1;
        return r;
    }
    ExtElem embed(Elem c) const {
        ExtElem r(m_, 0);
        r[0] = c;
        return r;
    }
    ExtElem from_int(long long n) const { return embed(base_->from_int(n)); }
    bool is_zero(const ExtElem& a) const noexcept {
        return std::all_of(a.begin(), a.end(), [](Elem c) { return c == 0; });
    }
    bool equal(const ExtElem& a, const ExtElem& b) const noexcept { return a == b; }
    /// Canonical order: compare digit vectors from the top coefficient down.
    bool less(const ExtElem& a, const ExtElem& b) const noexcept {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    }
    /// Lies in F_q.
    bool in_base(const ExtElem& a) const noexcept {
        return std::all_of(a.begin() + 1, a.end(), [](Elem c) { return c == 0; });
    }

    ExtElem add(const ExtElem& a, const ExtElem& b) const {
        ExtElem r(m_);
        for (unsigned i = 0; i < m_; ++i) r[i] = base_->add(a[i], b[i]);
        return r;
    }
    ExtElem sub(const ExtElem& a, const ExtElem& b) const {
        ExtElem r(m_);
        for (unsigned i = 0; i < m_; ++i) r[i] = base_->sub(a[i], b[i]);
        return r;
    }
    ExtElem neg(const ExtElem& a) const {
        ExtElem r(m_);
        for (unsigned i = 0; i < m_; ++i) r[i] = base_->neg(a[i]);
        return r;
    }
    ExtElem scale(Elem c, const ExtElem& a) const {
        ExtElem r(m_);
        for (unsigned i = 0; i < m_; ++i) r[i] = base_->mul(c, a[i]);
        return r;
    }
    ExtElem mul(const ExtElem& a, const ExtElem& b) const {
        const FieldCtx& f = *base_;
        std::vector<Elem> prod(2 * m_ - 1, 0);
        for (unsigned i = 0; i < m_; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < m_; ++j)
                if (b[j] != 0) prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
        }
        ExtElem r(prod.begin(), prod.begin() + m_);
        for (unsigned k = 0; k + 1 < m_; ++k) {
            const Elem c = prod[m_ + k];
            if (c == 0) continue;
            const auto& red = red_[k];
            for (unsigned i = 0; i < m_; ++i) r[i] = f.add(r[i], f.mul(c, red[i]));
        }
        return r;
    }
    ExtElem inv(const ExtElem& a) const {
        if (is_zero(a)) throw Error(Errc::ZeroArgument, "inverse of zero");
        auto r = poly::inverse_mod(*base_, poly::make(*base_, a), modulus_);
        r.coeffs.resize(m_, 0);
        return r.coeffs;
    }
    ExtElem div(const ExtElem& a, const ExtElem& b) const { return mul(a, inv(b)); }
    ExtElem pow(ExtElem a, const BigInt& n) const {
        ExtElem r = one();
        const std::size_t bits = n == 0 ? 0 : msb(n) + 1;
        for (std::size_t i = bits; i-- > 0;) {
            r = mul(r, r);
            if (bit_test(n, static_cast<unsigned>(i))) r = mul(r, a);
        }
        return r;
    }
    /// x -> x^q.
    ExtElem frobenius(const ExtElem& a) const {
        ExtElem r(m_, 0);
        for (unsigned j = 0; j < m_; ++j) {
            if (a[j] == 0) continue;
            for (unsigned i = 0; i < m_; ++i) r[i] = base_->add(r[i], base_->mul(a[j], frob_(i, j)));
        }
        return r;
    }
    /// x -> x^(q^k).
    ExtElem frobenius_pow(ExtElem a, unsigned k) const {
        for (unsigned i = 0; i < k; ++i) a = frobenius(a);
        return a;
    }
    /// Matrix of y -> c*y over F_q.
    Matrix mult_matrix(const ExtElem& c) const {
        Matrix mm(m_, m_);
        ExtElem col = c;
        ExtElem x(m_, 0);
        if (m_ > 1) x[1] = 1;
        else x[0] = base_->neg(modulus_.coeffs[0]);
        for (unsigned j = 0; j < m_; ++j) {
            for (unsigned i = 0; i < m_; ++i) mm(i, j) = col[i];
            col = mul(col, x);
        }
        return mm;
    }

    template <class Rng>
    ExtElem random_element(Rng& rng) const {
        ExtElem r(m_);
        for (auto& c : r) c = base_->random_element(rng);
        return r;
    }

private:
    FieldPtr base_;
    unsigned m_;
    FqPoly modulus_;
    std::vector<ExtElem> red_;
    Matrix frob_;
};

using ExtFieldPtr = std::shared_ptr<const ExtFieldCtx>;

/// Cached F_{q^m}.
inline ExtFieldPtr ext_field(const FieldPtr& base, unsigned m) {
    using Key = std::tuple<std::uint32_t, std::uint32_t, std::vector<Elem>, unsigned>;
    static std::mutex mu;
    static std::map<Key, ExtFieldPtr> cache;
    Key key{base->p(), base->q(), base->modulus(), m};
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto ext = std::make_shared<const ExtFieldCtx>(base, m);
    std::lock_guard lock(mu);
    return cache.emplace(key, ext).first->second;
}

using ExtPoly = Poly<ExtElem>;

/// All roots of f in F_{q^m}, sorted canonically.
inline std::vector<ExtElem> roots_of_qpoly(const ExtFieldCtx& ext, const ExtPoly& f) {
    return poly::roots(ext, f);
}

/// Lifts a polynomial over F_q into F_{q^m}[x].
inline ExtPoly lift(const ExtFieldCtx& ext, const FqPoly& f) {
    std::vector<ExtElem> c;
    c.reserve(f.coeffs.size());
    for (Elem a : f.coeffs) c.push_back(ext.embed(a));
    return {std::move(c)};
}

/// F_q-basis (reduced echelon form) of the kernel of x -> sum_i c[i] x^(q^i) on F_{q^m}.
inline std::vector<ExtElem> additive_kernel(const ExtFieldCtx& ext, const std::vector<ExtElem>& c) {
    const unsigned m = ext.degree();
    Matrix map(m, m);
    for (unsigned j = 0; j < m; ++j) {
        ExtElem v(m, 0);
        v[j] = 1;
        ExtElem acc = ext.zero();
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i > 0) v = ext.frobenius(v);
            if (!ext.is_zero(c[i])) acc = ext.add(acc, ext.mul(c[i], v));
        }
        for (unsigned r = 0; r < m; ++r) map(r, j) = acc[r];
    }
    return linalg::echelon_basis(ext.base(), linalg::nullspace(ext.base(), map));
}

/// Evaluates sum_i c[i] x^(q^i).
inline ExtElem eval_additive(const ExtFieldCtx& ext, const std::vector<ExtElem>& c, ExtElem x) {
    ExtElem acc = ext.zero();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) x = ext.frobenius(x);
        acc = ext.add(acc, ext.mul(c[i], x));
    }
    return acc;
}

/// Embedding of a residue field A/P (built over the same F_q) into F_{q^m}: T maps to the
/// smallest root of P. Requires deg P | m.
class ResidueEmbedding {
public:
    ResidueEmbedding(const ExtFieldCtx& ext, const FieldCtx& res) : ext_(&ext), res_(&res) {
        auto rts = roots_of_qpoly(ext, lift(ext, FqPoly{res.modulus()}));
        if (rts.empty()) throw Error(Errc::UnsupportedSize, "residue field does not embed");
        t_ = rts.front();
    }

    const ExtElem& t_image() const noexcept { return t_; }

    ExtElem operator()(Elem a) const {
        const auto digits = res_->residue(a);
        ExtElem acc = ext_->zero();
        for (std::size_t i = digits.size(); i-- > 0;) acc = ext_->add(ext_->mul(acc, t_), ext_->embed(digits[i]));
        return acc;
    }

private:
    const ExtFieldCtx* ext_;
    const FieldCtx* res_;
    ExtElem t_;
};

} // namespace drinfeld

#endif // DRINFELD_EXT_FIELD_HPP
