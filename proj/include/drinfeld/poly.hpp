#ifndef DRINFELD_POLY_HPP
#define DRINFELD_POLY_HPP

#include <drinfeld/error.hpp>
#include <drinfeld/gf.hpp>

#include <algorithm>
#include <cctype>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace drinfeld {

/// Arithmetic surface shared by FieldCtx and ExtFieldCtx.
template <class F>
concept Field = requires(const F& f, const typename F::value_type& a, const typename F::value_type& b) {
    typename F::value_type;
    { f.zero() } -> std::convertible_to<typename F::value_type>;
    { f.one() } -> std::convertible_to<typename F::value_type>;
    { f.add(a, b) } -> std::convertible_to<typename F::value_type>;
    { f.sub(a, b) } -> std::convertible_to<typename F::value_type>;
    { f.neg(a) } -> std::convertible_to<typename F::value_type>;
    { f.mul(a, b) } -> std::convertible_to<typename F::value_type>;
    { f.inv(a) } -> std::convertible_to<typename F::value_type>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.equal(a, b) } -> std::convertible_to<bool>;
    { f.from_int(1LL) } -> std::convertible_to<typename F::value_type>;
};

/// Dense univariate polynomial; coeffs[i] is the coefficient of x^i, trailing zeros trimmed.
template <class V>
struct Poly {
    static constexpr std::ptrdiff_t kZeroDegree = std::numeric_limits<std::ptrdiff_t>::min();

    std::vector<V> coeffs;

    bool is_zero() const noexcept { return coeffs.empty(); }
    std::ptrdiff_t degree() const noexcept {
        return coeffs.empty() ? kZeroDegree : static_cast<std::ptrdiff_t>(coeffs.size()) - 1;
    }
    const V& lead() const { return coeffs.back(); }

    friend bool operator==(const Poly&, const Poly&) = default;
};

/// Polynomials over F_q; houses elements of A = F_q[T].
using FqPoly = Poly<Elem>;

namespace poly {

template <Field F>
using PolyOf = Poly<typename F::value_type>;

template <Field F>
void trim(const F& f, PolyOf<F>& a) {
    while (!a.coeffs.empty() && f.is_zero(a.coeffs.back())) a.coeffs.pop_back();
}

template <Field F>
PolyOf<F> make(const F& f, std::vector<typename F::value_type> c) {
    PolyOf<F> r{std::move(c)};
    trim(f, r);
    return r;
}

template <Field F>
PolyOf<F> constant(const F& f, const typename F::value_type& c) {
    return make(f, {c});
}

template <Field F>
PolyOf<F> monomial(const F& f, const typename F::value_type& c, std::size_t k) {
    std::vector<typename F::value_type> v(k + 1, f.zero());
    v[k] = c;
    return make(f, std::move(v));
}

template <Field F>
PolyOf<F> variable(const F& f) {
    return monomial(f, f.one(), 1);
}

template <Field F>
bool is_one(const F& f, const PolyOf<F>& a) {
    return a.coeffs.size() == 1 && f.equal(a.coeffs[0], f.one());
}

template <Field F>
PolyOf<F> add(const F& f, const PolyOf<F>& a, const PolyOf<F>& b) {
    const auto& big = a.coeffs.size() >= b.coeffs.size() ? a : b;
    const auto& small = a.coeffs.size() >= b.coeffs.size() ? b : a;
    PolyOf<F> r = big;
    for (std::size_t i = 0; i < small.coeffs.size(); ++i) r.coeffs[i] = f.add(r.coeffs[i], small.coeffs[i]);
    trim(f, r);
    return r;
}

template <Field F>
PolyOf<F> neg(const F& f, const PolyOf<F>& a) {
    PolyOf<F> r = a;
    for (auto& c : r.coeffs) c = f.neg(c);
    return r;
}

template <Field F>
PolyOf<F> sub(const F& f, const PolyOf<F>& a, const PolyOf<F>& b) {
    return add(f, a, neg(f, b));
}

template <Field F>
PolyOf<F> scale(const F& f, const typename F::value_type& c, const PolyOf<F>& a) {
    PolyOf<F> r = a;
    for (auto& x : r.coeffs) x = f.mul(c, x);
    trim(f, r);
    return r;
}

template <Field F>
PolyOf<F> mul(const F& f, const PolyOf<F>& a, const PolyOf<F>& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<typename F::value_type> r(a.coeffs.size() + b.coeffs.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (f.is_zero(a.coeffs[i])) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a.coeffs[i], b.coeffs[j]));
    }
    return make(f, std::move(r));
}

/// (quotient, remainder) with deg(remainder) < deg(divisor).
template <Field F>
std::pair<PolyOf<F>, PolyOf<F>> divmod(const F& f, const PolyOf<F>& a, const PolyOf<F>& b) {
    if (b.is_zero()) throw Error(Errc::DivideByZeroPoly, "polynomial division by zero");
    if (a.degree() < b.degree()) return {PolyOf<F>{}, a};
    auto rem = a.coeffs;
    const std::size_t db = b.coeffs.size() - 1;
    const auto lead_inv = f.inv(b.lead());
    std::vector<typename F::value_type> quo(a.coeffs.size() - db, f.zero());
    for (std::size_t k = rem.size(); k-- > db;) {
        if (f.is_zero(rem[k])) continue;
        auto c = f.mul(rem[k], lead_inv);
        quo[k - db] = c;
        for (std::size_t i = 0; i <= db; ++i) rem[k - db + i] = f.sub(rem[k - db + i], f.mul(c, b.coeffs[i]));
    }
    rem.resize(db);
    return {make(f, std::move(quo)), make(f, std::move(rem))};
}

template <Field F>
PolyOf<F> rem(const F& f, const PolyOf<F>& a, const PolyOf<F>& b) {
    return divmod(f, a, b).second;
}

template <Field F>
PolyOf<F> quo(const F& f, const PolyOf<F>& a, const PolyOf<F>& b) {
    return divmod(f, a, b).first;
}

template <Field F>
PolyOf<F> make_monic(const F& f, const PolyOf<F>& a) {
    if (a.is_zero()) return a;
    return scale(f, f.inv(a.lead()), a);
}

/// Monic gcd; gcd(0, 0) = 0.
template <Field F>
PolyOf<F> gcd(const F& f, PolyOf<F> a, PolyOf<F> b) {
    while (!b.is_zero()) {
        auto r = rem(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(f, a);
}

/// Inverse of a modulo m (a and m coprime).
template <Field F>
PolyOf<F> inverse_mod(const F& f, const PolyOf<F>& a, const PolyOf<F>& m) {
    PolyOf<F> r0 = m, r1 = rem(f, a, m);
    PolyOf<F> s0{}, s1 = constant(f, f.one());
    while (!r1.is_zero()) {
        auto [qt, r2] = divmod(f, r0, r1);
        auto s2 = sub(f, s0, mul(f, qt, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0) throw Error(Errc::ZeroArgument, "element not invertible modulo polynomial");
    return scale(f, f.inv(r0.lead()), s0);
}

template <Field F>
typename F::value_type eval(const F& f, const PolyOf<F>& a, const typename F::value_type& x) {
    auto acc = f.zero();
    for (std::size_t i = a.coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a.coeffs[i]);
    return acc;
}

template <Field F>
PolyOf<F> derivative(const F& f, const PolyOf<F>& a) {
    if (a.coeffs.size() <= 1) return {};
    std::vector<typename F::value_type> r(a.coeffs.size() - 1, f.zero());
    for (std::size_t i = 1; i < a.coeffs.size(); ++i)
        r[i - 1] = f.mul(f.from_int(static_cast<long long>(i)), a.coeffs[i]);
    return make(f, std::move(r));
}

template <Field F>
PolyOf<F> mulmod(const F& f, const PolyOf<F>& a, const PolyOf<F>& b, const PolyOf<F>& m) {
    return rem(f, mul(f, a, b), m);
}

template <Field F>
PolyOf<F> powmod(const F& f, PolyOf<F> base, std::uint64_t n, const PolyOf<F>& m) {
    PolyOf<F> r = rem(f, constant(f, f.one()), m);
    base = rem(f, base, m);
    while (n) {
        if (n & 1U) r = mulmod(f, r, base, m);
        n >>= 1U;
        if (n) base = mulmod(f, base, base, m);
    }
    return r;
}

// ---- F_q-specific helpers -------------------------------------------------------------

/// Canonical integer encoding: coefficients as base-q digits. Order of codes = canonical order.
inline std::uint64_t to_index(const FieldCtx& f, const FqPoly& a) {
    std::uint64_t r = 0;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) r = r * f.q() + a.coeffs[i];
    return r;
}

inline FqPoly from_index(const FieldCtx& f, std::uint64_t n) {
    FqPoly r;
    while (n) {
        r.coeffs.push_back(static_cast<Elem>(n % f.q()));
        n /= f.q();
    }
    return r;
}

/// Monic polynomial of degree d whose lower coefficients are the base-q digits of n.
inline FqPoly monic_from_index(const FieldCtx& f, unsigned d, std::uint64_t n) {
    FqPoly r;
    r.coeffs.resize(d + 1, 0);
    for (unsigned i = 0; i < d; ++i) {
        r.coeffs[i] = static_cast<Elem>(n % f.q());
        n /= f.q();
    }
    r.coeffs[d] = 1;
    return r;
}

/// Canonical polynomial order: by degree, then by coefficient vector from the top.
inline bool canonical_less(const FqPoly& a, const FqPoly& b) {
    if (a.coeffs.size() != b.coeffs.size()) return a.coeffs.size() < b.coeffs.size();
    return std::lexicographical_compare(a.coeffs.rbegin(), a.coeffs.rend(), b.coeffs.rbegin(), b.coeffs.rend());
}

/// Canonical ASCII form: "T^2+3*T+1"; coefficients are element indices. Zero prints as "0".
inline std::string to_string(const FqPoly& a, char var = 'T') {
    if (a.is_zero()) return "0";
    std::string s;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) {
        Elem c = a.coeffs[i];
        if (c == 0) continue;
        if (!s.empty()) s += '+';
        if (i == 0) {
            s += std::to_string(c);
            continue;
        }
        if (c != 1) s += std::to_string(c) + "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
}

/// Parses the canonical syntax: terms in strictly decreasing degree, each "c*T^k", "T^k", "c*T",
/// "T" or "c", joined by '+' or '-' (a leading '-' is allowed). c is a decimal element index in
/// [1, q) without leading zeros. Non-canonical input is rejected, never normalised.
inline FqPoly parse(const FieldCtx& f, const std::string& text, char var = 'T') {
    auto fail = [&](const std::string& why) -> FqPoly {
        throw Error(Errc::ParseError, "'" + text + "': " + why);
    };
    if (text == "0") return {};
    if (text.empty()) return fail("empty polynomial");
    std::size_t pos = 0;
    std::vector<std::pair<std::size_t, Elem>> terms;
    auto read_uint = [&](std::uint64_t& out) {
        std::size_t start = pos;
        out = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            out = out * 10 + static_cast<std::uint64_t>(text[pos] - '0');
            if (out > (1ULL << 32)) fail("number too large");
            ++pos;
        }
        if (pos == start) return false;
        if (text[start] == '0' && pos - start > 1) fail("leading zero");
        return true;
    };
    bool first = true;
    while (pos < text.size()) {
        bool negative = false;
        if (text[pos] == '+' || text[pos] == '-') {
            if (first && text[pos] == '+') fail("leading '+'");
            negative = text[pos] == '-';
            ++pos;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        std::uint64_t coeff = 1;
        bool has_coeff = read_uint(coeff);
        if (!has_coeff) coeff = 1;
        if (has_coeff && (coeff == 0 || coeff >= f.q())) fail("coefficient out of range [1, q)");
        std::size_t degree = 0;
        if (pos < text.size() && (text[pos] == '*' || text[pos] == var)) {
            if (has_coeff) {
                if (text[pos] != '*') fail("missing '*'");
                if (coeff == 1) fail("redundant coefficient 1");
                ++pos;
            }
            if (pos >= text.size() || text[pos] != var) fail("expected variable");
            ++pos;
            degree = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                std::uint64_t k = 0;
                if (!read_uint(k)) fail("missing exponent");
                if (k < 2) fail("exponent must be >= 2 (write T or a constant)");
                degree = static_cast<std::size_t>(k);
            }
        } else if (!has_coeff) {
            fail("expected term");
        }
        if (!terms.empty() && degree >= terms.back().first) fail("terms must have strictly decreasing degree");
        Elem c = static_cast<Elem>(coeff);
        terms.emplace_back(degree, negative ? f.neg(c) : c);
    }
    FqPoly r;
    r.coeffs.assign(terms.front().first + 1, 0);
    for (auto [d, c] : terms) r.coeffs[d] = c;
    return r;
}

} // namespace poly
} // namespace drinfeld

#endif // DRINFELD_POLY_HPP
