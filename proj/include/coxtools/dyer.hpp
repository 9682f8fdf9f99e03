#pragma once

// Reflection subgroups: canonical simple systems (chi), reflection sets,
// conjugacy class keys, reflection length l_T, Red_T enumeration, absolute
// order and parabolic closure (finite systems; the affine case lives in
// affine.hpp).

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coxeter.hpp"

namespace cox {

inline bool is_reflection(const CoxeterSystem& W, const Element& t) {
    return W.as_reflection(t).has_value();
}

// Canonical simple system of the dihedral subgroup <t, t'>, by length
// descent: while conjugating one generator by the other strictly decreases
// l_S(t) + l_S(t'), do it. The sum strictly decreases, so this terminates;
// the terminal pair is the chi of the subgroup.
inline std::pair<Element, Element> chi_rank2(const CoxeterSystem& W, Element t, Element tp) {
    if (t == tp) throw std::invalid_argument("chi_rank2: generators must differ");
    int lt = W.length(t), ltp = W.length(tp);
    for (;;) {
        // candidate a: replace t by tp t tp ; candidate b: replace tp by t tp t
        Element a = tp * t * tp;
        Element b = t * tp * t;
        int la = W.length(a), lb = W.length(b);
        int cur = lt + ltp, sa = la + ltp, sb = lt + lb;
        if (sa < cur && sa <= sb) {
            t = std::move(a);
            lt = la;
        } else if (sb < cur) {
            tp = std::move(b);
            ltp = lb;
        } else {
            break;
        }
    }
    if (tp < t) std::swap(t, tp);
    return {t, tp};
}

// Dyer's fixpoint loop: repeatedly replace the lexicographically smallest
// non-canonical pair by its rank-2 canonical system until stable.
inline std::vector<Element> chi(const CoxeterSystem& W, std::vector<Element> gens) {
    if (gens.empty()) throw std::invalid_argument("chi: empty generating set");
    for (auto& g : gens)
        if (!is_reflection(W, g)) throw std::invalid_argument("chi: non-reflection generator");
    std::set<Element> cur(gens.begin(), gens.end());
    for (;;) {
        bool changed = false;
        // std::set iteration order is the canonical element order
        for (auto it = cur.begin(); it != cur.end() && !changed; ++it)
            for (auto jt = std::next(it); jt != cur.end(); ++jt) {
                auto [a, b] = chi_rank2(W, *it, *jt);
                if ((a == *it && b == *jt) || (a == *jt && b == *it)) continue;
                Element t = *it, tp = *jt;
                cur.erase(it);
                cur.erase(cur.find(tp));
                cur.insert(a);
                cur.insert(b);
                changed = true;
                break;
            }
        if (!changed) break;
    }
    return {cur.begin(), cur.end()};
}

// W' \cap T by conjugation closure over the given generators.
inline std::vector<Element> reflections_of(const CoxeterSystem& W, const std::vector<Element>& gens,
                                           size_t cap = 100000) {
    std::set<Element> refl(gens.begin(), gens.end());
    std::vector<Element> frontier(refl.begin(), refl.end());
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (const auto& r : frontier)
            for (const auto& g : gens) {
                Element c = g * r * g;
                if (refl.insert(c).second) {
                    if (refl.size() > cap)
                        throw std::runtime_error("reflections_of: cap exceeded (partial result)");
                    next.push_back(std::move(c));
                }
            }
        frontier = std::move(next);
    }
    return {refl.begin(), refl.end()};
}

// Elements of <gens> by BFS; throws past the cap.
inline std::vector<Element> subgroup_elements(const CoxeterSystem& W, const std::vector<Element>& gens,
                                              size_t cap = 100000) {
    std::set<Element> seen{W.identity()};
    std::vector<Element> order{W.identity()};
    for (size_t i = 0; i < order.size(); ++i)
        for (const auto& g : gens) {
            Element next = order[i] * g;
            if (seen.insert(next).second) {
                if (order.size() >= cap) throw std::runtime_error("subgroup enumeration cap exceeded");
                order.push_back(std::move(next));
            }
        }
    return order;
}

// Order of an element (finite subgroups only; capped).
inline int element_order(const CoxeterSystem& W, const Element& w, int cap = 1000) {
    Element p = w;
    for (int k = 1; k <= cap; ++k) {
        if (p == W.identity()) return k;
        p = p * w;
    }
    throw std::runtime_error("element_order: cap exceeded");
}

// Coxeter matrix of a reflection subgroup presented by its canonical simple
// system (labels = orders of pairwise products).
inline CoxeterMatrix subgroup_coxeter_matrix(const CoxeterSystem& W, const std::vector<Element>& simple_system,
                                             int order_cap = 200) {
    int k = static_cast<int>(simple_system.size());
    std::vector<std::vector<int>> m(static_cast<size_t>(k), std::vector<int>(static_cast<size_t>(k), 1));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            int ord;
            try {
                ord = element_order(W, simple_system[static_cast<size_t>(i)] * simple_system[static_cast<size_t>(j)],
                                    order_cap);
            } catch (const std::runtime_error&) {
                ord = 0; // infinite label
            }
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = ord;
            m[static_cast<size_t>(j)][static_cast<size_t>(i)] = ord;
        }
    return CoxeterMatrix(m);
}

// Canonical key of the W-conjugacy class of a reflection: minimum element
// encoding over the conjugation orbit (groups at desk scale are small).
inline std::string conj_class_key(const CoxeterSystem& W, const Element& t) {
    if (!is_reflection(W, t)) throw std::invalid_argument("conj_class_key: not a reflection");
    std::set<Element> orbit{t};
    std::vector<Element> frontier{t};
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (const auto& r : frontier)
            for (int s = 0; s < W.rank(); ++s) {
                Element c = W.simple(s) * r * W.simple(s);
                if (orbit.insert(c).second) next.push_back(std::move(c));
            }
        frontier = std::move(next);
    }
    return orbit.begin()->encode();
}

inline std::vector<std::string> conj_multiset(const CoxeterSystem& W, const std::vector<Element>& tuple) {
    std::vector<std::string> keys;
    keys.reserve(tuple.size());
    for (const auto& t : tuple) keys.push_back(conj_class_key(W, t));
    std::sort(keys.begin(), keys.end());
    return keys;
}

namespace detail {

inline bool product_search(const CoxeterSystem& W, const std::vector<Element>& pool, const Element& target,
                           Element prefix, int depth) {
    if (depth == 0) return prefix == target;
    for (const auto& t : pool)
        if (product_search(W, pool, target, prefix * t, depth - 1)) return true;
    return false;
}

} // namespace detail

// Reflection length l_T. Finite systems: rank of (w - 1) on V (Carter).
// General systems: iterative deepening over N(w) only — complete because
// some reduced reflection factorization lies entirely in N(w).
inline int reflection_length(const CoxeterSystem& W, const Element& w) {
    if (w == W.identity()) return 0;
    if (W.is_finite()) {
        Matrix<Scalar> d = w.matrix();
        for (int i = 0; i < d.rows(); ++i) d(i, i) -= Scalar(1);
        return rank(d);
    }
    std::vector<Element> pool = W.inversion_set(w);
    int max_depth = static_cast<int>(pool.size());
    for (int m = 1; m <= max_depth; ++m)
        if (detail::product_search(W, pool, w, W.identity(), m)) return m;
    throw std::logic_error("reflection_length: search failed");
}

inline bool absolute_leq(const CoxeterSystem& W, const Element& u, const Element& v) {
    return reflection_length(W, u) + reflection_length(W, W.inverse(u) * v) == reflection_length(W, v);
}

struct ParabolicClosure {
    std::vector<Element> reflections; // all reflections of P(X)
    int rank = 0;
    bool whole = false; // P(X) = W
};

// Smallest parabolic containing <X>, finite systems: the pointwise
// stabilizer of Fix(<X>), generated by the s_alpha with alpha orthogonal to
// the common fixed space.
inline ParabolicClosure parabolic_closure(const CoxeterSystem& W, const std::vector<Element>& X) {
    if (!W.is_finite())
        throw std::logic_error("parabolic_closure: only finite systems here (see affine.hpp)");
    int n = W.rank();
    if (X.empty()) return {};
    // common fixed space = nullspace of stacked (M_x - 1)
    Matrix<Scalar> stacked(n * static_cast<int>(X.size()), n);
    for (size_t k = 0; k < X.size(); ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Scalar v = X[k].matrix()(i, j);
                if (i == j) v -= Scalar(1);
                stacked(static_cast<int>(k) * n + i, j) = v;
            }
    std::vector<std::vector<Scalar>> fix = nullspace(stacked);
    ParabolicClosure pc;
    for (const auto& alpha : W.positive_roots()) {
        bool ortho = true;
        for (const auto& f : fix)
            if (!W.bilinear(alpha, f).is_zero()) {
                ortho = false;
                break;
            }
        if (ortho) pc.reflections.push_back(W.reflection_from_root(alpha));
    }
    pc.rank = n - static_cast<int>(fix.size());
    pc.whole = pc.reflections.size() == W.positive_roots().size();
    return pc;
}

inline bool is_parabolic(const CoxeterSystem& W, const std::vector<Element>& gens, size_t cap = 100000) {
    ParabolicClosure pc = parabolic_closure(W, gens);
    return subgroup_elements(W, gens, cap).size() == subgroup_elements(W, pc.reflections, cap).size();
}

namespace detail {

inline void red_T_search(const std::vector<Element>& pool, const Element& target, const Element& prefix,
                         std::vector<Element>& stack, int depth, std::vector<std::vector<Element>>& out,
                         size_t cap) {
    if (depth == 0) {
        if (prefix == target) {
            if (out.size() >= cap) throw std::runtime_error("red_T: enumeration cap exceeded");
            out.push_back(stack);
        }
        return;
    }
    for (const auto& t : pool) {
        stack.push_back(t);
        red_T_search(pool, target, prefix * t, stack, depth - 1, out, cap);
        stack.pop_back();
    }
}

} // namespace detail

// All reduced reflection factorizations of w. The factors of any such
// factorization lie in the parabolic closure P(w), so enumeration over the
// reflections of P(w) is complete.
inline std::vector<std::vector<Element>> red_T(const CoxeterSystem& W, const Element& w,
                                               size_t cap = 1000000) {
    int m = reflection_length(W, w);
    if (m == 0) return {{}};
    ParabolicClosure pc = parabolic_closure(W, {w});
    std::vector<std::vector<Element>> out;
    std::vector<Element> stack;
    detail::red_T_search(pc.reflections, w, W.identity(), stack, m, out, cap);
    return out;
}

} // namespace cox
