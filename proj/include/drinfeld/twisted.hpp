#ifndef DRINFELD_TWISTED_HPP
#define DRINFELD_TWISTED_HPP

#include <drinfeld/ext_field.hpp>
#include <drinfeld/gf.hpp>
#include <drinfeld/poly.hpp>

#include <cstddef>
#include <vector>

namespace drinfeld {

/// Coefficient ring for twisted polynomials: an F_q-algebra with its q-power map.
template <class R>
concept TwistRing = requires(const R& r, const typename R::value_type& a, const typename R::value_type& b, Elem c) {
    typename R::value_type;
    { r.zero() } -> std::convertible_to<typename R::value_type>;
    { r.add(a, b) } -> std::convertible_to<typename R::value_type>;
    { r.sub(a, b) } -> std::convertible_to<typename R::value_type>;
    { r.mul(a, b) } -> std::convertible_to<typename R::value_type>;
    { r.is_zero(a) } -> std::convertible_to<bool>;
    { r.frob(a) } -> std::convertible_to<typename R::value_type>;
    { r.from_base(c) } -> std::convertible_to<typename R::value_type>;
    { r.variable() } -> std::convertible_to<typename R::value_type>;
};

/// A = F_q[T]; the q-power map is T -> T^q on coefficients fixed by F_q.
class RingA {
public:
    using value_type = FqPoly;

    explicit RingA(const FieldCtx& f) : f_(&f) {}

    const FieldCtx& field() const noexcept { return *f_; }
    FqPoly zero() const { return {}; }
    FqPoly add(const FqPoly& a, const FqPoly& b) const { return poly::add(*f_, a, b); }
    FqPoly sub(const FqPoly& a, const FqPoly& b) const { return poly::sub(*f_, a, b); }
    FqPoly mul(const FqPoly& a, const FqPoly& b) const { return poly::mul(*f_, a, b); }
    bool is_zero(const FqPoly& a) const noexcept { return a.is_zero(); }
    bool equal(const FqPoly& a, const FqPoly& b) const noexcept { return a == b; }
    FqPoly frob(const FqPoly& a) const {
        if (a.is_zero()) return a;
        FqPoly r;
        r.coeffs.assign((a.coeffs.size() - 1) * f_->q() + 1, 0);
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i * f_->q()] = a.coeffs[i];
        return r;
    }
    FqPoly from_base(Elem c) const { return poly::constant(*f_, c); }
    FqPoly variable() const { return poly::variable(*f_); }

private:
    const FieldCtx* f_;
};

/// A table field L containing F_q (e.g. a residue field A/P), with tau acting as x -> x^q.
/// `variable()` is the image of T; `from_base` embeds F_q through the subfield digits.
class TableFieldRing {
public:
    using value_type = Elem;

    /// res must be a quotient of F_q (as built by residue_field), or F_q itself.
    TableFieldRing(const FieldCtx& res, std::uint32_t q, Elem t_image)
        : f_(&res), q_(q), t_(t_image), is_base_(res.q() == q) {}

    const FieldCtx& field() const noexcept { return *f_; }
    Elem zero() const noexcept { return 0; }
    Elem add(Elem a, Elem b) const noexcept { return f_->add(a, b); }
    Elem sub(Elem a, Elem b) const noexcept { return f_->sub(a, b); }
    Elem mul(Elem a, Elem b) const noexcept { return f_->mul(a, b); }
    bool is_zero(Elem a) const noexcept { return a == 0; }
    bool equal(Elem a, Elem b) const noexcept { return a == b; }
    Elem frob(Elem a) const noexcept { return f_->pow(a, q_); }
    /// F_q sits in res as the constant residues 0..q-1, both for quotients and for F_q itself.
    Elem from_base(Elem c) const noexcept { return c; }
    Elem variable() const noexcept { return t_; }
    bool is_base_field() const noexcept { return is_base_; }

private:
    const FieldCtx* f_;
    std::uint32_t q_;
    Elem t_;
    bool is_base_;
};

/// F_{q^m} with tau acting as x -> x^q; T maps to a chosen element.
class ExtFieldRing {
public:
    using value_type = ExtElem;

    ExtFieldRing(const ExtFieldCtx& ext, ExtElem t_image) : e_(&ext), t_(std::move(t_image)) {}

    const ExtFieldCtx& field() const noexcept { return *e_; }
    ExtElem zero() const { return e_->zero(); }
    ExtElem add(const ExtElem& a, const ExtElem& b) const { return e_->add(a, b); }
    ExtElem sub(const ExtElem& a, const ExtElem& b) const { return e_->sub(a, b); }
    ExtElem mul(const ExtElem& a, const ExtElem& b) const { return e_->mul(a, b); }
    bool is_zero(const ExtElem& a) const { return e_->is_zero(a); }
    bool equal(const ExtElem& a, const ExtElem& b) const { return a == b; }
    ExtElem frob(const ExtElem& a) const { return e_->frobenius(a); }
    ExtElem from_base(Elem c) const { return e_->embed(c); }
    ExtElem variable() const { return t_; }

private:
    const ExtFieldCtx* e_;
    ExtElem t_;
};

/// Element of R{tau}; coeffs[i] multiplies tau^i. Trailing zeros trimmed.
template <class V>
struct TwistedPoly {
    std::vector<V> coeffs;

    bool is_zero() const noexcept { return coeffs.empty(); }
    /// tau-degree; -1 for zero.
    std::ptrdiff_t degree() const noexcept { return static_cast<std::ptrdiff_t>(coeffs.size()) - 1; }

    friend bool operator==(const TwistedPoly&, const TwistedPoly&) = default;
};

namespace twisted {

template <TwistRing R>
using TwistedOf = TwistedPoly<typename R::value_type>;

template <TwistRing R>
void trim(const R& r, TwistedOf<R>& a) {
    while (!a.coeffs.empty() && r.is_zero(a.coeffs.back())) a.coeffs.pop_back();
}

template <TwistRing R>
TwistedOf<R> make(const R& r, std::vector<typename R::value_type> c) {
    TwistedOf<R> t{std::move(c)};
    trim(r, t);
    return t;
}

template <TwistRing R>
TwistedOf<R> constant(const R& r, const typename R::value_type& c) {
    return make(r, {c});
}

/// tau^k.
template <TwistRing R>
TwistedOf<R> tau_pow(const R& r, std::size_t k) {
    std::vector<typename R::value_type> c(k + 1, r.zero());
    c[k] = r.from_base(1);
    return make(r, std::move(c));
}

template <TwistRing R>
TwistedOf<R> add(const R& r, const TwistedOf<R>& a, const TwistedOf<R>& b) {
    std::vector<typename R::value_type> c(std::max(a.coeffs.size(), b.coeffs.size()), r.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] = a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] = r.add(c[i], b.coeffs[i]);
    return make(r, std::move(c));
}

template <TwistRing R>
TwistedOf<R> sub(const R& r, const TwistedOf<R>& a, const TwistedOf<R>& b) {
    std::vector<typename R::value_type> c(std::max(a.coeffs.size(), b.coeffs.size()), r.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] = a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] = r.sub(c[i], b.coeffs[i]);
    return make(r, std::move(c));
}

/// (sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^(q^i) tau^(i+j).
template <TwistRing R>
TwistedOf<R> mul(const R& r, const TwistedOf<R>& a, const TwistedOf<R>& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<typename R::value_type> c(a.coeffs.size() + b.coeffs.size() - 1, r.zero());
    std::vector<typename R::value_type> twisted_b = b.coeffs;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (i > 0)
            for (auto& x : twisted_b) x = r.frob(x);
        if (r.is_zero(a.coeffs[i])) continue;
        for (std::size_t j = 0; j < twisted_b.size(); ++j) c[i + j] = r.add(c[i + j], r.mul(a.coeffs[i], twisted_b[j]));
    }
    return make(r, std::move(c));
}

/// Left scalar multiple c * a.
template <TwistRing R>
TwistedOf<R> scale(const R& r, const typename R::value_type& c, const TwistedOf<R>& a) {
    std::vector<typename R::value_type> out;
    out.reserve(a.coeffs.size());
    for (const auto& x : a.coeffs) out.push_back(r.mul(c, x));
    return make(r, std::move(out));
}

/// Image of a in R{tau} under the homomorphism determined by phi_T, by Horner over T-digits.
template <TwistRing R>
TwistedOf<R> evaluate_at(const R& r, const TwistedOf<R>& phi_t, const FqPoly& a) {
    TwistedOf<R> acc;
    for (std::size_t k = a.coeffs.size(); k-- > 0;) {
        acc = mul(r, acc, phi_t);
        if (a.coeffs[k] != 0) acc = add(r, acc, constant(r, r.from_base(a.coeffs[k])));
    }
    return acc;
}

} // namespace twisted
} // namespace drinfeld

#endif // DRINFELD_TWISTED_HPP
