#ifndef DRINFELD_MAT2_HPP
#define DRINFELD_MAT2_HPP

#include <drinfeld/gf.hpp>
#include <drinfeld/poly.hpp>

#include <cstdint>
#include <string>

namespace drinfeld {

/// [[a, b], [c, d]] over a table field F_l. Columns are images of the basis vectors.
struct Mat2 {
    Elem a = 1, b = 0, c = 0, d = 1;

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

namespace mat2 {

inline Mat2 identity() { return {}; }

inline Mat2 scalar(Elem s) { return {s, 0, 0, s}; }

inline Mat2 mul(const FieldCtx& f, const Mat2& x, const Mat2& y) {
    return {f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)), f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
            f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
}

inline Elem det(const FieldCtx& f, const Mat2& x) { return f.sub(f.mul(x.a, x.d), f.mul(x.b, x.c)); }

inline Elem trace(const FieldCtx& f, const Mat2& x) { return f.add(x.a, x.d); }

inline Mat2 inv(const FieldCtx& f, const Mat2& x) {
    const Elem di = f.inv(det(f, x));
    return {f.mul(x.d, di), f.mul(f.neg(x.b), di), f.mul(f.neg(x.c), di), f.mul(x.a, di)};
}

inline bool is_scalar(const Mat2& x) { return x.b == 0 && x.c == 0 && x.a == x.d; }

inline Mat2 pow(const FieldCtx& f, Mat2 x, std::uint64_t n) {
    Mat2 r;
    while (n) {
        if (n & 1U) r = mul(f, r, x);
        x = mul(f, x, x);
        n >>= 1U;
    }
    return r;
}

/// Order in GL_2; x must be invertible.
inline std::uint64_t order(const FieldCtx& f, const Mat2& x) {
    Mat2 y = x;
    std::uint64_t k = 1;
    while (!(y == Mat2{})) {
        y = mul(f, y, x);
        ++k;
    }
    return k;
}

/// g x g^-1.
inline Mat2 conj(const FieldCtx& f, const Mat2& g, const Mat2& x) { return mul(f, mul(f, g, x), inv(f, g)); }

inline std::uint32_t code(const FieldCtx& f, const Mat2& x) {
    const std::uint32_t q = f.q();
    return ((x.a * q + x.b) * q + x.c) * q + x.d;
}

inline Mat2 from_code(const FieldCtx& f, std::uint32_t k) {
    const std::uint32_t q = f.q();
    Mat2 x;
    x.d = k % q;
    k /= q;
    x.c = k % q;
    k /= q;
    x.b = k % q;
    x.a = k / q;
    return x;
}

/// Companion matrix of x^2 - t x + n.
inline Mat2 companion(const FieldCtx& f, Elem t, Elem n) { return {0, f.neg(n), 1, t}; }

/// GL_2 conjugacy class key: (trace, det) plus scalar flag. Two invertible matrices are
/// GL_2-conjugate iff their keys agree.
inline std::uint32_t gl2_class_key(const FieldCtx& f, const Mat2& x) {
    return ((trace(f, x) * f.q() + det(f, x)) << 1U) | (is_scalar(x) ? 1U : 0U);
}

inline Elem key_trace(const FieldCtx& f, std::uint32_t key) { return (key >> 1U) / f.q(); }
inline Elem key_det(const FieldCtx& f, std::uint32_t key) { return (key >> 1U) % f.q(); }
inline bool key_scalar(std::uint32_t key) { return (key & 1U) != 0; }

/// "x^2+t'*x+d" in canonical polynomial syntax over F_l (element indices as coefficients).
inline std::string charpoly_string(const FieldCtx& f, Elem tr, Elem dt) {
    FqPoly p{{dt, f.neg(tr), 1}};
    poly::trim(f, p);
    return poly::to_string(p, 'x');
}

inline std::string to_string(const Mat2& x) {
    return "[[" + std::to_string(x.a) + "," + std::to_string(x.b) + "],[" + std::to_string(x.c) + "," +
           std::to_string(x.d) + "]]";
}

} // namespace mat2
} // namespace drinfeld

#endif // DRINFELD_MAT2_HPP
