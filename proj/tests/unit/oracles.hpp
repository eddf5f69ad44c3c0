#ifndef DRINFELD_TEST_ORACLES_HPP
#define DRINFELD_TEST_ORACLES_HPP

#include <drinfeld/drinfeld_module.hpp>
#include <drinfeld/ext_field.hpp>
#include <drinfeld/finite_field.hpp>

#include <catch_amalgamated.hpp>

namespace oracle {

using namespace drinfeld;

struct OracleResult {
    Elem trace = 0, det = 0;
};

/// Root-permutation oracle for l = (T) (so A/l = F_q acting by scalars): find the torsion roots
/// of tbar x + g1bar x^q + g2bar x^(q^2) by generic root finding in F_{q^k}, k the least multiple
/// of deg P giving q^2 roots, then read off how x -> x^|F_P| permutes them.
inline OracleResult frobenius_oracle(const FieldPtr& f, const PrimeIdeal& p, Elem g1, Elem g2) {
    const auto res = residue_field(f, p);
    const std::uint32_t q = f->q();
    const Elem tbar = to_residue(*res, poly::variable(*f));
    for (unsigned k = p.degree;; k += p.degree) {
        REQUIRE(k <= 120);
        const auto ext = ext_field(f, k);
        const ResidueEmbedding emb(*ext, *res);
        std::vector<ExtElem> dense(q * q + 1, ext->zero());
        dense[1] = emb(tbar);
        dense[q] = emb(g1);
        dense[q * q] = emb(g2);
        const auto roots = roots_of_qpoly(*ext, ExtPoly{dense});
        if (roots.size() < q * q) continue;
        // e1: first nonzero root; e2: first root outside F_q e1.
        const ExtElem e1 = roots[0] == ext->zero() ? roots[1] : roots[0];
        ExtElem e2;
        for (const auto& r : roots) {
            bool in_line = false;
            for (Elem c = 0; c < q && !in_line; ++c) in_line = ext->scale(c, e1) == r;
            if (!in_line) {
                e2 = r;
                break;
            }
        }
        auto coords = [&](const ExtElem& v) {
            for (Elem a = 0; a < q; ++a)
                for (Elem b = 0; b < q; ++b)
                    if (ext->add(ext->scale(a, e1), ext->scale(b, e2)) == v) return std::pair{a, b};
            FAIL("image of a torsion point is not torsion");
            return std::pair{Elem(0), Elem(0)};
        };
        const auto [a11, a21] = coords(ext->frobenius_pow(e1, p.degree));
        const auto [a12, a22] = coords(ext->frobenius_pow(e2, p.degree));
        return {f->add(a11, a22), f->sub(f->mul(a11, a22), f->mul(a12, a21))};
    }
}

} // namespace oracle

#endif // DRINFELD_TEST_ORACLES_HPP
