#ifndef DRINFELD_GF_HPP
#define DRINFELD_GF_HPP

#include <drinfeld/error.hpp>
#include <drinfeld/rational.hpp>

#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace drinfeld {

/// Field elements are packed indices: the base-p digit vector of the element read as an integer.
/// Index order is the canonical element ordering.
using Elem = std::uint32_t;

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> lo, hi;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

inline std::uint64_t upow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace detail

/// Integer Moebius function by trial factorisation.
inline int moebius_int(std::uint64_t n) {
    if (n == 0) throw Error(Errc::ZeroArgument, "moebius_int(0)");
    int sign = 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

/// A finite field with full log/exp tables. Either a prime field F_p or a quotient
/// sub[x]/(modulus) of a smaller FieldCtx. Immutable after construction.
class FieldCtx {
public:
    using value_type = Elem;

    static constexpr std::uint32_t kMaxOrder = 1U << 16;

    static std::shared_ptr<const FieldCtx> prime_field(std::uint32_t p) {
        if (!detail::is_prime_u64(p)) throw Error(Errc::NonPrimeP, std::to_string(p) + " is not prime");
        if (p > kMaxOrder) throw Error(Errc::FieldTooLarge, "prime field too large");
        auto f = std::shared_ptr<FieldCtx>(new FieldCtx());
        f->p_ = p;
        f->q_ = p;
        f->e_ = 1;
        f->degree_ = 1;
        f->sub_q_ = p;
        f->modulus_ = {};
        f->build_tables([p](Elem a, Elem b) { return static_cast<Elem>((std::uint64_t(a) * b) % p); });
        return f;
    }

    /// sub[x]/(modulus); modulus is monic, coefficients are sub elements, index i holds x^i.
    static std::shared_ptr<const FieldCtx> quotient(std::shared_ptr<const FieldCtx> sub, std::vector<Elem> modulus) {
        if (modulus.size() < 2 || modulus.back() != 1)
            throw Error(Errc::NotIrreducible, "quotient modulus must be monic of positive degree");
        const unsigned n = static_cast<unsigned>(modulus.size() - 1);
        std::uint64_t order = 1;
        for (unsigned i = 0; i < n; ++i) {
            order *= sub->q();
            if (order > kMaxOrder) throw Error(Errc::FieldTooLarge, "quotient field exceeds table limit");
        }
        auto f = std::shared_ptr<FieldCtx>(new FieldCtx());
        f->p_ = sub->p();
        f->q_ = static_cast<std::uint32_t>(order);
        f->e_ = sub->e() * n;
        f->degree_ = n;
        f->sub_q_ = sub->q();
        f->modulus_ = std::move(modulus);
        f->sub_ = sub;
        const FieldCtx& s = *sub;
        const auto& mod = f->modulus_;
        const std::uint32_t sq = s.q();
        auto unpack = [n, sq](Elem a) {
            std::vector<Elem> d(n);
            for (unsigned i = 0; i < n; ++i) {
                d[i] = a % sq;
                a /= sq;
            }
            return d;
        };
        auto slow_mul = [&s, &mod, n, sq, unpack](Elem a, Elem b) {
            auto x = unpack(a), y = unpack(b);
            std::vector<Elem> prod(2 * n - 1, 0);
            for (unsigned i = 0; i < n; ++i) {
                if (x[i] == 0) continue;
                for (unsigned j = 0; j < n; ++j) prod[i + j] = s.add(prod[i + j], s.mul(x[i], y[j]));
            }
            for (unsigned k = 2 * n - 1; k-- > n;) {
                Elem c = prod[k];
                if (c == 0) continue;
                for (unsigned i = 0; i < n; ++i) prod[k - n + i] = s.sub(prod[k - n + i], s.mul(c, mod[i]));
                prod[k] = 0;
            }
            Elem r = 0;
            for (unsigned i = n; i-- > 0;) r = r * sq + prod[i];
            return r;
        };
        f->build_tables(slow_mul);
        return f;
    }

    std::uint32_t p() const noexcept { return p_; }
    /// Degree over the prime field.
    unsigned e() const noexcept { return e_; }
    std::uint32_t q() const noexcept { return q_; }
    /// Degree over the field this one was built from.
    unsigned degree() const noexcept { return degree_; }
    std::uint32_t subfield_order() const noexcept { return sub_q_; }
    const std::shared_ptr<const FieldCtx>& subfield() const noexcept { return sub_; }
    const std::vector<Elem>& modulus() const noexcept { return modulus_; }
    Elem generator() const noexcept { return gen_; }
    bool is_prime_field() const noexcept { return !sub_; }
    std::uint32_t characteristic() const noexcept { return p_; }
    BigInt cardinality() const { return BigInt(q_); }
    /// Degree over F_p.
    unsigned prime_degree() const noexcept { return e_; }

    Elem zero() const noexcept { return 0; }
    Elem one() const noexcept { return 1; }
    bool is_zero(Elem a) const noexcept { return a == 0; }
    bool equal(Elem a, Elem b) const noexcept { return a == b; }
    bool less(Elem a, Elem b) const noexcept { return a < b; }

    Elem add(Elem a, Elem b) const noexcept {
        if (p_ == 2) return a ^ b;
        if (!add_.empty()) return add_[std::size_t(a) * q_ + b];
        return digit_add(a, b);
    }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg_[b]); }
    Elem mul(Elem a, Elem b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Elem inv(Elem a) const {
        if (a == 0) throw Error(Errc::ZeroArgument, "inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t n) const noexcept {
        if (n == 0) return 1;
        if (a == 0) return 0;
        return exp_[static_cast<std::uint32_t>((std::uint64_t(log_[a]) * (n % (q_ - 1))) % (q_ - 1))];
    }
    /// a^(subfield order), the relative Frobenius. For residue fields of F_q[T] this is x -> x^q.
    Elem frobenius(Elem a) const noexcept { return frob_[a]; }

    /// The unique b with b^p = a.
    Elem pth_root(Elem a) const noexcept { return pow(a, q_ / p_); }

    template <class Rng>
    Elem random_element(Rng& rng) const {
        return static_cast<Elem>(rng() % q_);
    }

    /// Discrete log to the fixed generator; result in [0, q-1).
    std::uint32_t dlog(Elem a) const {
        if (a == 0) throw Error(Errc::ZeroArgument, "dlog of zero");
        return log_[a];
    }
    Elem exp(std::uint64_t k) const noexcept { return exp_[k % (q_ - 1)]; }

    /// Multiplicative order of a nonzero element.
    std::uint64_t order(Elem a) const {
        std::uint64_t n = q_ - 1;
        std::uint64_t g = std::gcd(std::uint64_t(log_[a]), n);
        return n / g;
    }

    /// Image of an integer in the prime subfield.
    Elem from_int(long long n) const noexcept {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<Elem>(r);
    }

    /// Coefficients over the subfield (length degree()).
    std::vector<Elem> residue(Elem a) const {
        std::vector<Elem> d(degree_);
        for (unsigned i = 0; i < degree_; ++i) {
            d[i] = a % sub_q_;
            a /= sub_q_;
        }
        return d;
    }

    /// Inverse of residue(); digits beyond degree() must be zero.
    Elem from_residue(std::span<const Elem> digits) const {
        Elem r = 0;
        for (std::size_t i = digits.size(); i-- > 0;) {
            if (i >= degree_ && digits[i] != 0) throw std::invalid_argument("residue digit out of range");
            if (i < degree_) r = r * sub_q_ + digits[i];
        }
        return r;
    }

private:
    FieldCtx() = default;

    Elem digit_add(Elem a, Elem b) const noexcept {
        Elem r = 0, scale = 1;
        while (a || b) {
            r += ((a % p_ + b % p_) % p_) * scale;
            a /= p_;
            b /= p_;
            scale *= p_;
        }
        return r;
    }

    template <class SlowMul>
    void build_tables(SlowMul slow_mul) {
        const std::uint32_t n = q_ - 1;
        auto slow_pow = [&](Elem a, std::uint64_t k) {
            Elem r = 1;
            while (k) {
                if (k & 1U) r = slow_mul(r, a);
                a = slow_mul(a, a);
                k >>= 1U;
            }
            return r;
        };
        const auto factors = detail::prime_factors(n);
        gen_ = 0;
        for (Elem g = 1; g < q_; ++g) {
            bool ok = slow_pow(g, n) == 1;
            for (auto r : factors) {
                if (!ok) break;
                if (slow_pow(g, n / r) == 1) ok = false;
            }
            if (ok) {
                gen_ = g;
                break;
            }
        }
        if (gen_ == 0) throw Error(Errc::NotIrreducible, "modulus does not define a field");
        exp_.assign(2 * std::size_t(n), 0);
        log_.assign(q_, 0);
        Elem x = 1;
        for (std::uint32_t k = 0; k < n; ++k) {
            exp_[k] = x;
            exp_[k + n] = x;
            log_[x] = k;
            x = slow_mul(x, gen_);
        }
        neg_.resize(q_);
        for (Elem a = 0; a < q_; ++a) {
            Elem r = 0, scale = 1, t = a;
            while (t) {
                r += ((p_ - t % p_) % p_) * scale;
                t /= p_;
                scale *= p_;
            }
            neg_[a] = r;
        }
        if (p_ != 2 && q_ <= 1024) {
            add_.resize(std::size_t(q_) * q_);
            for (Elem a = 0; a < q_; ++a)
                for (Elem b = 0; b < q_; ++b) add_[std::size_t(a) * q_ + b] = digit_add(a, b);
        }
        frob_.resize(q_);
        for (Elem a = 0; a < q_; ++a) frob_[a] = pow(a, sub_q_);
    }

    std::uint32_t p_ = 0, q_ = 0, sub_q_ = 0;
    unsigned e_ = 0, degree_ = 0;
    std::shared_ptr<const FieldCtx> sub_;
    std::vector<Elem> modulus_;
    Elem gen_ = 0;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> neg_;
    std::vector<Elem> add_;
    std::vector<Elem> frob_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

} // namespace drinfeld

#endif // DRINFELD_GF_HPP
