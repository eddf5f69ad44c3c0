#ifndef DRINFELD_GROUPS_HPP
#define DRINFELD_GROUPS_HPP

#include <drinfeld/error.hpp>
#include <drinfeld/gf.hpp>
#include <drinfeld/mat2.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace drinfeld {

/// SL_2(F) in increasing code order.
inline std::vector<Mat2> sl2_elements(const FieldCtx& f) {
    std::vector<Mat2> out;
    const Elem q = f.q();
    for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b)
            for (Elem c = 0; c < q; ++c) {
                if (a != 0) {
                    out.push_back({a, b, c, f.div(f.add(1, f.mul(b, c)), a)});
                } else if (c != 0 && b == f.neg(f.inv(c))) {
                    for (Elem d = 0; d < q; ++d) out.push_back({a, b, c, d});
                }
            }
    std::sort(out.begin(), out.end(), [&f](const Mat2& x, const Mat2& y) { return mat2::code(f, x) < mat2::code(f, y); });
    return out;
}

inline std::vector<Mat2> gl2_elements(const FieldCtx& f) {
    std::vector<Mat2> out;
    const Elem q = f.q();
    for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b)
            for (Elem c = 0; c < q; ++c)
                for (Elem d = 0; d < q; ++d) {
                    Mat2 m{a, b, c, d};
                    if (mat2::det(f, m) != 0) out.push_back(m);
                }
    return out;
}

/// Elementary matrices E12(x), E21(x) for x running over an F_p-basis; they generate SL_2.
inline std::vector<Mat2> sl2_generators(const FieldCtx& f) {
    std::vector<Mat2> gens;
    for (Elem x = 1; x < f.q(); x *= f.p()) {
        gens.push_back({1, x, 0, 1});
        gens.push_back({1, 0, x, 1});
    }
    return gens;
}

/// Conjugacy classes of SL_2(F_l) by orbit enumeration (union-find under conjugation by
/// generators), so nothing depends on the characteristic.
class ClassTable {
public:
    static constexpr std::uint32_t kMaxField = 64;

    struct Class {
        Mat2 rep;               ///< smallest element in code order
        std::uint64_t size = 0;
        std::uint32_t gl2_key = 0;
    };

    explicit ClassTable(FieldPtr fl) : f_(std::move(fl)) {
        const FieldCtx& f = *f_;
        if (f.q() > kMaxField) throw Error(Errc::GroupTooLarge, "class table limited to |F_l| <= 64");
        elems_ = sl2_elements(f);
        codes_.reserve(elems_.size());
        for (const auto& m : elems_) codes_.push_back(mat2::code(f, m));
        std::vector<std::uint32_t> parent(elems_.size());
        std::iota(parent.begin(), parent.end(), 0U);
        auto find = [&parent](std::uint32_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& g : sl2_generators(f)) {
            const Mat2 gi = mat2::inv(f, g);
            for (std::uint32_t i = 0; i < elems_.size(); ++i) {
                auto j = index_of(mat2::mul(f, mat2::mul(f, g, elems_[i]), gi));
                auto ri = find(i), rj = find(j);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
        }
        // Roots are the minimal indices, hence the minimal codes; ids follow representative order.
        std::map<std::uint32_t, std::uint32_t> root_to_id;
        class_of_.resize(elems_.size());
        for (std::uint32_t i = 0; i < elems_.size(); ++i) {
            auto r = find(i);
            auto [it, inserted] = root_to_id.emplace(r, static_cast<std::uint32_t>(classes_.size()));
            if (inserted) classes_.push_back({elems_[r], 0, mat2::gl2_class_key(f, elems_[r])});
            class_of_[i] = it->second;
            ++classes_[it->second].size;
        }
    }

    const FieldCtx& field() const noexcept { return *f_; }
    const FieldPtr& field_ptr() const noexcept { return f_; }
    const std::vector<Class>& classes() const noexcept { return classes_; }
    std::size_t class_count() const noexcept { return classes_.size(); }
    std::uint64_t group_order() const noexcept { return elems_.size(); }
    const std::vector<Mat2>& elements() const noexcept { return elems_; }

    /// Class id of an SL_2 element.
    std::uint32_t classify(const Mat2& m) const {
        if (mat2::det(*f_, m) != 1) throw std::invalid_argument("classify: determinant is not 1");
        return class_of_[index_of(m)];
    }

    std::uint32_t index_of(const Mat2& m) const {
        auto c = mat2::code(*f_, m);
        auto it = std::lower_bound(codes_.begin(), codes_.end(), c);
        return static_cast<std::uint32_t>(it - codes_.begin());
    }

private:
    FieldPtr f_;
    std::vector<Mat2> elems_;
    std::vector<std::uint32_t> codes_;
    std::vector<std::uint32_t> class_of_;
    std::vector<Class> classes_;
};

/// Cached class table per field.
inline std::shared_ptr<const ClassTable> class_table(const FieldPtr& fl) {
    static std::mutex mu;
    static std::map<const FieldCtx*, std::shared_ptr<const ClassTable>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[fl.get()];
    if (!slot) slot = std::make_shared<const ClassTable>(fl);
    return slot;
}

inline constexpr std::size_t kMaxClosure = std::size_t(1) << 22;

/// Subgroup generated by invertible matrices, by breadth-first closure; sorted by code.
inline std::vector<Mat2> generated_subgroup(const FieldCtx& f, const std::vector<Mat2>& gens) {
    for (const auto& g : gens)
        if (mat2::det(f, g) == 0) throw std::invalid_argument("generated_subgroup: singular generator");
    std::unordered_set<std::uint32_t> seen{mat2::code(f, Mat2{})};
    std::vector<Mat2> out{Mat2{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& g : gens) {
            Mat2 y = mat2::mul(f, out[i], g);
            if (seen.insert(mat2::code(f, y)).second) {
                out.push_back(y);
                if (out.size() > kMaxClosure) throw Error(Errc::GroupTooLarge, "subgroup closure too large");
            }
        }
    }
    std::sort(out.begin(), out.end(), [&f](const Mat2& x, const Mat2& y) { return mat2::code(f, x) < mat2::code(f, y); });
    return out;
}

/// H contains SL_2 iff it has |SL_2| elements of determinant 1.
inline bool contains_sl2(const std::vector<Mat2>& H, const ClassTable& table) {
    const FieldCtx& f = table.field();
    std::uint64_t n = 0;
    for (const auto& m : H)
        if (mat2::det(f, m) == 1) ++n;
    return n == table.group_order();
}

/// GL_2-classes (as keys) of g and of all its powers.
inline std::vector<std::uint32_t> power_class_keys(const FieldCtx& f, const Mat2& g) {
    std::vector<std::uint32_t> keys;
    Mat2 y = g;
    for (;;) {
        keys.push_back(mat2::gl2_class_key(f, y));
        if (y == Mat2{}) break;
        y = mat2::mul(f, y, g);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

/// Which subgroups K of SL_2(F_l) are compatible with observed GL_2-conjugacy classes?
///
/// The observations are classes of elements of an unknown group H <= GL_2 (each matrix is only
/// known up to conjugacy). With K = H n SL_2, every observed det-1 class meets K and every
/// observed class meets the normaliser N(K) >= H. If SL_2 is the only K satisfying both, then
/// H contains SL_2. Subgroups are enumerated once, up to GL_2-conjugacy.
class Sl2SubgroupLattice {
public:
    static constexpr std::size_t kMaxOrder = 720;

    struct Entry {
        std::uint64_t order = 0;
        std::uint64_t conjugates = 0;
        boost::dynamic_bitset<> classes_k;  ///< GL_2 classes met by K
        boost::dynamic_bitset<> classes_n;  ///< GL_2 classes met by N_GL2(K)
    };

    struct Certificate {
        bool contains_sl2 = false;
        /// Smallest order of a compatible K: a certified lower bound on |H n SL_2|.
        std::uint64_t min_order = 1;
        /// Number of compatible proper subgroups (up to conjugacy).
        std::size_t obstructions = 0;
    };

    explicit Sl2SubgroupLattice(FieldPtr fl) : f_(std::move(fl)) {
        const FieldCtx& f = *f_;
        const std::uint32_t q = f.q();
        const std::uint64_t sl2_order = std::uint64_t(q) * (std::uint64_t(q) * q - 1);
        if (sl2_order > kMaxOrder)
            throw Error(Errc::GroupTooLarge, "subgroup lattice limited to |SL_2| <= " + std::to_string(kMaxOrder));
        elems_ = sl2_elements(f);
        const std::size_t n = elems_.size();
        for (std::uint32_t i = 0; i < n; ++i) index_[mat2::code(f, elems_[i])] = i;
        // GL_2 class keys -> dense ids.
        for (const auto& g : gl2_elements(f)) {
            auto key = mat2::gl2_class_key(f, g);
            if (!key_id_.count(key)) key_id_.emplace(key, 0);
        }
        std::uint32_t next = 0;
        for (auto& [key, id] : key_id_) id = next++;
        mult_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) mult_[i * n + j] = index_.at(mat2::code(f, mat2::mul(f, elems_[i], elems_[j])));
        // PGL_2 representatives: first nonzero entry equal to 1.
        for (const auto& g : gl2_elements(f)) {
            Elem lead = g.a != 0 ? g.a : g.b;
            if (lead == 1) pgl2_.push_back(g);
        }
        conj_perm_.resize(pgl2_.size() * n);
        for (std::size_t gi = 0; gi < pgl2_.size(); ++gi)
            for (std::size_t k = 0; k < n; ++k)
                conj_perm_[gi * n + k] = index_.at(mat2::code(f, mat2::conj(f, pgl2_[gi], elems_[k])));
        enumerate();
    }

    const FieldCtx& field() const noexcept { return *f_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t class_key_count() const noexcept { return key_id_.size(); }

    Certificate certify(const std::vector<std::uint32_t>& observed_keys) const {
        const FieldCtx& f = *f_;
        boost::dynamic_bitset<> o(key_id_.size()), o1(key_id_.size());
        for (auto key : observed_keys) {
            auto id = key_id_.at(key);
            o.set(id);
            if (mat2::key_det(f, key) == 1) o1.set(id);
        }
        Certificate c;
        c.min_order = elems_.size();
        for (const auto& e : entries_) {
            if (!o1.is_subset_of(e.classes_k) || !o.is_subset_of(e.classes_n)) continue;
            c.min_order = std::min(c.min_order, e.order);
            if (e.order < elems_.size()) ++c.obstructions;
        }
        c.contains_sl2 = c.obstructions == 0;
        return c;
    }

private:
    using Bits = boost::dynamic_bitset<>;

    Bits closure(const std::vector<std::uint32_t>& gens) const {
        const std::size_t n = elems_.size();
        Bits in(n);
        std::vector<std::uint32_t> list{identity_index()};
        in.set(list[0]);
        for (std::size_t i = 0; i < list.size(); ++i)
            for (auto g : gens) {
                auto y = mult_[list[i] * n + g];
                if (!in.test(y)) {
                    in.set(y);
                    list.push_back(y);
                }
            }
        return in;
    }

    std::uint32_t identity_index() const { return index_.at(mat2::code(*f_, Mat2{})); }

    void enumerate() {
        const FieldCtx& f = *f_;
        const std::size_t n = elems_.size();
        std::set<Bits> seen;
        std::vector<std::uint32_t> cyclic_gens;
        {
            std::set<Bits> cyc;
            for (std::uint32_t i = 0; i < n; ++i)
                if (cyc.insert(closure({i})).second) cyclic_gens.push_back(i);
        }
        struct Pending {
            Bits set;
            std::vector<std::uint32_t> gens;
        };
        std::deque<Pending> queue;
        auto add_class = [&](const Bits& k, std::vector<std::uint32_t> gens) {
            if (seen.count(k)) return;
            Entry e;
            e.order = k.count();
            e.classes_k.resize(key_id_.size());
            e.classes_n.resize(key_id_.size());
            for (auto i = k.find_first(); i != Bits::npos; i = k.find_next(i))
                e.classes_k.set(key_id_.at(mat2::gl2_class_key(f, elems_[i])));
            std::set<Bits> conjugates;
            for (std::size_t gi = 0; gi < pgl2_.size(); ++gi) {
                Bits c(n);
                for (auto i = k.find_first(); i != Bits::npos; i = k.find_next(i)) c.set(conj_perm_[gi * n + i]);
                if (c == k)
                    for (Elem s = 1; s < f.q(); ++s)
                        e.classes_n.set(key_id_.at(mat2::gl2_class_key(f, mat2::mul(f, mat2::scalar(s), pgl2_[gi]))));
                conjugates.insert(std::move(c));
            }
            e.conjugates = conjugates.size();
            seen.insert(conjugates.begin(), conjugates.end());
            entries_.push_back(std::move(e));
            queue.push_back({k, std::move(gens)});
        };
        add_class(closure({}), {});
        while (!queue.empty()) {
            Pending h = std::move(queue.front());
            queue.pop_front();
            for (auto g : cyclic_gens) {
                if (h.set.test(g)) continue;
                auto gens = h.gens;
                gens.push_back(g);
                add_class(closure(gens), gens);
            }
        }
        std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.order < b.order; });
    }

    FieldPtr f_;
    std::vector<Mat2> elems_;
    std::unordered_map<std::uint32_t, std::uint32_t> index_;
    std::map<std::uint32_t, std::uint32_t> key_id_;
    std::vector<std::uint32_t> mult_;
    std::vector<Mat2> pgl2_;
    std::vector<std::uint32_t> conj_perm_;
    std::vector<Entry> entries_;
};

inline std::shared_ptr<const Sl2SubgroupLattice> sl2_lattice(const FieldPtr& fl) {
    static std::mutex mu;
    static std::map<const FieldCtx*, std::shared_ptr<const Sl2SubgroupLattice>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[fl.get()];
    if (!slot) slot = std::make_shared<const Sl2SubgroupLattice>(fl);
    return slot;
}

} // namespace drinfeld

#endif // DRINFELD_GROUPS_HPP
