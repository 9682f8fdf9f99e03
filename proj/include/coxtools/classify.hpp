#pragma once

// Quasi-Coxeter and parabolic quasi-Coxeter detection in finite and affine
// systems, simple-system completion, Hurwitz-transitivity and
// conjugacy-multiset harnesses, and diagram utilities.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "affine.hpp"
#include "dyer.hpp"
#include "hurwitz.hpp"

namespace cox {

enum class Tribool { False, True, Indeterminate };

// finite systems: a reflection subgroup equals W iff its reflection set is
// all of T
inline bool generates_group(const CoxeterSystem& W, const std::vector<Element>& gens,
                            size_t cap = 1000000) {
    return reflections_of(W, gens, cap).size() == W.positive_roots().size();
}

// conjugate to a product of all simple reflections in some order
inline bool is_coxeter_element(const CoxeterSystem& W, const Element& w, size_t cap = 1000000) {
    std::vector<int> perm;
    for (int i = 0; i < W.rank(); ++i) perm.push_back(i);
    std::vector<Element> products;
    do {
        products.push_back(W.from_word(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& u : W.enumerate(cap)) {
        Element ui = W.inverse(u);
        for (const auto& p : products)
            if (u * p * ui == w) return true;
    }
    return false;
}

struct Classification {
    bool is_coxeter = false;
    bool is_quasi_coxeter = false;
    bool is_parabolic_quasi_coxeter = false;
    bool is_proper_parabolic_quasi_coxeter = false;
    std::vector<Element> witness; // generating reduced factorization
    ParabolicClosure closure;
};

// Reduced factorizations are confined to P(w), so w is parabolic
// quasi-Coxeter iff some member of Red_T(w) has reflection closure equal to
// the reflection set of P(w); quasi-Coxeter additionally needs P(w) = W.
inline Classification classify_element(const CoxeterSystem& W, const Element& w,
                                       size_t cap = 1000000) {
    if (!W.is_finite()) throw std::logic_error("classify_element: finite systems only");
    Classification c;
    c.closure = parabolic_closure(W, {w});
    std::set<Element> pset(c.closure.reflections.begin(), c.closure.reflections.end());
    for (const auto& f : red_T(W, w, cap)) {
        auto refs = reflections_of(W, f, cap);
        if (std::set<Element>(refs.begin(), refs.end()) == pset) {
            c.is_parabolic_quasi_coxeter = true;
            c.witness = f;
            break;
        }
    }
    c.is_proper_parabolic_quasi_coxeter = c.is_parabolic_quasi_coxeter && !c.closure.whole;
    c.is_quasi_coxeter = c.is_parabolic_quasi_coxeter && c.closure.whole;
    c.is_coxeter = c.is_quasi_coxeter && is_coxeter_element(W, w, cap);
    return c;
}

namespace detail {

inline bool one_factorization_search(const CoxeterSystem& W, const std::vector<Element>& pool,
                                     const Element& target, const Element& prefix,
                                     std::vector<Element>& stack, int depth) {
    if (depth == 0) return prefix == target;
    for (const auto& t : pool) {
        stack.push_back(t);
        if (one_factorization_search(W, pool, target, prefix * t, stack, depth - 1)) return true;
        stack.pop_back();
    }
    return false;
}

} // namespace detail

// one reduced reflection factorization, searched inside N(w)
inline std::vector<Element> one_reduced_factorization(const CoxeterSystem& W, const Element& w) {
    int m = reflection_length(W, w);
    std::vector<Element> pool = W.inversion_set(w);
    std::vector<Element> stack;
    if (!detail::one_factorization_search(W, pool, w, W.identity(), stack, m))
        throw std::logic_error("one_reduced_factorization: search failed");
    return stack;
}

struct AffineClassification {
    bool is_coxeter = false; // via bounded conjugacy search
    bool is_quasi_coxeter = false;
    bool is_parabolic_quasi_coxeter = false;
    bool is_proper_parabolic_quasi_coxeter = false;
    bool closure_whole = false;
    std::vector<AffineElement> witness;
};

// bounded conjugacy test against products of all simple generators; a true
// answer is certain, a false answer only searched conjugators of bounded
// length
inline bool is_coxeter_element_affine(const AffineSystem& A, const AffineElement& x,
                                      int conj_bound = 6) {
    std::vector<int> perm;
    for (int i = 0; i <= A.rank(); ++i) perm.push_back(i);
    std::vector<AffineElement> products;
    do {
        products.push_back(A.from_word(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::set<AffineElement> seen{A.identity()};
    std::vector<AffineElement> frontier{A.identity()};
    for (int depth = 0; depth <= conj_bound; ++depth) {
        std::vector<AffineElement> next;
        for (const auto& u : frontier) {
            AffineElement ui = u.inverse();
            for (const auto& p : products)
                if (u * p * ui == x) return true;
            if (depth == conj_bound) continue;
            for (int s = 0; s <= A.rank(); ++s) {
                AffineElement v = u * A.generator(s);
                if (seen.insert(v).second) next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    return false;
}

inline AffineClassification classify_affine(const AffineSystem& A, const AffineElement& x,
                                            size_t cap = 1000000) {
    AffineClassification c;
    auto pc = A.parabolic_closure({x});
    c.closure_whole = pc.whole;
    if (!pc.whole) {
        // elliptic-or-trivial case: everything happens inside a finite
        // parabolic subgroup
        std::set<Element> pset;
        for (const auto& r : pc.reflections) pset.insert(A.to_cox(r));
        for (const auto& f : A.red_T(x, cap)) {
            auto refs = reflections_of(A.cox(), f, cap);
            if (std::set<Element>(refs.begin(), refs.end()) == pset) {
                c.is_parabolic_quasi_coxeter = true;
                for (const auto& t : f) c.witness.push_back(A.from_cox(t));
                break;
            }
        }
        c.is_proper_parabolic_quasi_coxeter = c.is_parabolic_quasi_coxeter;
        return c;
    }
    // P(x) = W: quasi-Coxeter needs l_T = rank+1 and a generating reduced
    // factorization; one factorization decides
    Element w = A.to_cox(x);
    int n = A.rank() + 1;
    if (reflection_length(A.cox(), w) == n) {
        auto f = one_reduced_factorization(A.cox(), w);
        std::vector<AffineReflection> rs;
        std::vector<AffineElement> wit;
        for (const auto& t : f) {
            AffineElement at = A.from_cox(t);
            auto r = A.as_reflection(at);
            if (!r) throw std::logic_error("classify_affine: non-reflection factor");
            rs.push_back(*r);
            wit.push_back(at);
        }
        if (A.generates_whole(rs)) {
            c.is_quasi_coxeter = true;
            c.witness = wit;
        }
    }
    c.is_parabolic_quasi_coxeter = c.is_quasi_coxeter;
    if (c.is_quasi_coxeter) c.is_coxeter = is_coxeter_element_affine(A, x);
    return c;
}

struct Thm13Report {
    bool proper_pqc = false;
    bool witness_exists = false; // exists quasi-Coxeter w >= x with P(x) != W
    bool rank_ok = true;         // rank P(x) = n-1 whenever proper_pqc
    bool agree = false;
    Element witness;
};

// Finite form of the rank n-1 characterization: x is a proper parabolic
// quasi-Coxeter element iff some quasi-Coxeter w has x <=_T w. Since
// l_T(x) = n-1, any such w is x*t for a reflection t, so the scan is
// complete.
inline Thm13Report check_thm13(const CoxeterSystem& W, const Element& x, size_t cap = 1000000) {
    int n = W.rank();
    if (reflection_length(W, x) != n - 1)
        throw std::invalid_argument("check_thm13: l_T(x) must be rank-1");
    Thm13Report r;
    Classification cls = classify_element(W, x, cap);
    r.proper_pqc = cls.is_proper_parabolic_quasi_coxeter;
    if (!cls.closure.whole)
        for (const auto& t : W.reflections()) {
            Element w = x * t;
            if (reflection_length(W, w) != n) continue;
            if (classify_element(W, w, cap).is_quasi_coxeter) {
                r.witness_exists = true;
                r.witness = w;
                break;
            }
        }
    r.rank_ok = !r.proper_pqc || cls.closure.rank == n - 1;
    r.agree = r.proper_pqc == r.witness_exists;
    return r;
}

struct CorMain4Report {
    bool elliptic = false;
    bool proper_pqc = false;
    Tribool witness_exists = Tribool::False; // exists quasi-Coxeter w >= x
    Tribool verdict = Tribool::False;        // biconditional confirmed?
    std::vector<AffineElement> witness;
};

namespace detail {

// l_T in the affine group: cheap rank formula for elliptic elements,
// N(w)-search otherwise
inline int affine_reflection_length(const AffineSystem& A, const AffineElement& x) {
    if (A.is_elliptic(x)) {
        Matrix<Rational> d = x.u;
        for (int i = 0; i < d.rows(); ++i) d(i, i) -= 1;
        return rank(d);
    }
    return reflection_length(A.cox(), A.to_cox(x));
}

} // namespace detail

// Affine characterization: x (with l_T(x) < n) is a proper parabolic
// quasi-Coxeter element iff it is elliptic and below some quasi-Coxeter w.
// The witness search extends a reduced factorization of x by reflections of
// level at most K, demanding l_T to grow by one per factor; exhausting the
// bounded pool proves nothing, so that outcome is indeterminate.
inline CorMain4Report check_cor_main4(const AffineSystem& A, const AffineElement& x, int K = 3,
                                      size_t cap = 1000000) {
    int n = A.rank() + 1;
    int lt = detail::affine_reflection_length(A, x);
    if (lt >= n) throw std::invalid_argument("check_cor_main4: l_T(x) must be below the rank");
    CorMain4Report r;
    r.elliptic = A.is_elliptic(x);
    r.proper_pqc = classify_affine(A, x, cap).is_proper_parabolic_quasi_coxeter;
    if (!r.elliptic) {
        // P(x) = W, so no quasi-Coxeter w above x can witness a proper
        // parabolic; both sides must be false
        r.witness_exists = Tribool::False;
        r.verdict = r.proper_pqc ? Tribool::False : Tribool::True;
        return r;
    }
    std::vector<AffineReflection> pool;
    for (const auto& alpha : A.datum().pos_roots)
        for (int a = 0; a <= 2 * K; ++a) {
            int k = (a % 2 == 0) ? a / 2 : -(a + 1) / 2; // 0, -1, 1, -2, ...
            pool.push_back({alpha, k});
        }
    std::vector<AffineElement> base;
    for (const auto& f : A.red_T(x, cap)) {
        for (const auto& t : f) base.push_back(A.from_cox(t));
        break;
    }
    size_t budget = cap;
    std::vector<AffineElement> chosen;
    bool found = false;
    auto dfs = [&](auto&& self, const AffineElement& acc, int depth) -> void {
        if (found) return;
        if (depth == n) {
            std::vector<AffineReflection> rs;
            for (const auto& t : base) rs.push_back(*A.as_reflection(t));
            for (const auto& t : chosen) rs.push_back(*A.as_reflection(t));
            if (A.generates_whole(rs)) found = true;
            return;
        }
        for (const auto& cand : pool) {
            if (found) return;
            if (budget == 0) throw CapExceeded("witness search cap exceeded");
            --budget;
            AffineElement t = A.reflection(cand);
            AffineElement next = acc * t;
            if (detail::affine_reflection_length(A, next) != depth + 1) continue;
            chosen.push_back(t);
            self(self, next, depth + 1);
            if (!found) chosen.pop_back();
        }
    };
    try {
        dfs(dfs, x, lt);
        if (found) {
            r.witness_exists = Tribool::True;
            r.witness = base;
            r.witness.insert(r.witness.end(), chosen.begin(), chosen.end());
            r.verdict = r.proper_pqc ? Tribool::True : Tribool::False;
        } else {
            // bounded search exhausted: cannot refute existence
            r.witness_exists = Tribool::Indeterminate;
            r.verdict = r.proper_pqc ? Tribool::Indeterminate : Tribool::True;
        }
    } catch (const CapExceeded&) {
        r.witness_exists = Tribool::Indeterminate;
        r.verdict = Tribool::Indeterminate;
    }
    return r;
}

inline bool is_crystallographic(const CoxeterMatrix& cm) {
    for (int i = 0; i < cm.rank(); ++i)
        for (int j = i + 1; j < cm.rank(); ++j) {
            int m = cm.label(i, j);
            if (m != 2 && m != 3 && m != 4 && m != 6) return false;
        }
    return true;
}

// Completion of a rank n-1 parabolic P and a reflection t with <P,t> = W to
// a simple system containing t. Obtuse-ification: reflect the root of t by
// canonical simples of P while some pairing is positive; the resulting set
// is a simple system, which is conjugated back so that it contains t.
inline std::vector<Element> complete_to_simple_system(const CoxeterSystem& W,
                                                      const std::vector<Element>& P_gens,
                                                      const Element& t, size_t cap = 1000000) {
    if (!W.is_finite()) throw std::logic_error("complete_to_simple_system: finite systems only");
    if (!is_crystallographic(W.coxeter_matrix()))
        throw std::invalid_argument("complete_to_simple_system: system is not crystallographic");
    std::vector<Element> delta = chi(W, P_gens);
    if (static_cast<int>(delta.size()) != W.rank() - 1)
        throw std::invalid_argument("complete_to_simple_system: P must have rank n-1");
    std::vector<Element> all = delta;
    all.push_back(t);
    if (!generates_group(W, all, cap))
        throw std::invalid_argument("complete_to_simple_system: <P,t> is not the whole group");
    std::vector<Root> alphas;
    for (const auto& d : delta) alphas.push_back(*W.as_reflection(d));
    Root beta = *W.as_reflection(t);
    Element u = W.identity();
    for (int iter = 0;; ++iter) {
        if (iter > 1000) throw std::logic_error("complete_to_simple_system: no convergence");
        bool changed = false;
        for (size_t j = 0; j < alphas.size(); ++j)
            if (W.bilinear(alphas[j], beta).sign() > 0) {
                Element s = W.reflection_from_root(alphas[j]);
                beta = W.apply_to_root(s, beta);
                u = s * u;
                changed = true;
                break;
            }
        if (!changed) break;
    }
    Element ui = W.inverse(u);
    std::vector<Element> out;
    for (const auto& d : delta) out.push_back(ui * d * u);
    out.push_back(t);
    // verify: out generates W and its Coxeter matrix presents a group of
    // the same order
    if (!generates_group(W, out, cap))
        throw std::logic_error("complete_to_simple_system: output does not generate");
    CoxeterMatrix cm = subgroup_coxeter_matrix(W, out);
    CoxeterSystem abstract(cm);
    if (!abstract.is_finite() || abstract.enumerate(cap).size() != W.enumerate(cap).size())
        throw std::logic_error("complete_to_simple_system: output is not a simple system");
    return out;
}

// All reflections t with <P,t> = W, partitioned into P-conjugacy orbits.
inline std::vector<std::vector<Element>> completing_orbit(const CoxeterSystem& W,
                                                          const std::vector<Element>& P_gens,
                                                          size_t cap = 1000000) {
    std::vector<Element> delta = chi(W, P_gens);
    std::vector<Element> P = subgroup_elements(W, delta, cap);
    std::set<Element> completing;
    for (const auto& t : W.reflections()) {
        std::vector<Element> gens = delta;
        gens.push_back(t);
        if (generates_group(W, gens, cap)) completing.insert(t);
    }
    std::vector<std::vector<Element>> orbits;
    std::set<Element> seen;
    for (const auto& t : completing) {
        if (seen.count(t)) continue;
        std::vector<Element> orb;
        for (const auto& p : P) {
            Element c = p * t * W.inverse(p);
            if (seen.insert(c).second) orb.push_back(c);
        }
        orbits.push_back(orb);
    }
    return orbits;
}

struct TransitivityReport {
    size_t red_count = 0;
    std::vector<size_t> orbit_sizes;
    bool transitive = false;
    bool pqc = false;
    bool agree = false;
};

// Thm: the Hurwitz action is transitive on Red_T(w) iff w is a parabolic
// quasi-Coxeter element.
inline TransitivityReport transitivity_check(const CoxeterSystem& W, const Element& w,
                                             size_t cap = 1000000) {
    TransitivityReport r;
    auto R = red_T(W, w, cap);
    r.red_count = R.size();
    std::set<std::string> seen;
    for (const auto& f : R) {
        if (seen.count(tuple_encode(f))) continue;
        Orbit orb = orbit(W, f, cap);
        for (const auto& g : orb.tuples) seen.insert(tuple_encode(g));
        r.orbit_sizes.push_back(orb.tuples.size());
    }
    r.transitive = r.orbit_sizes.size() == 1;
    r.pqc = classify_element(W, w, cap).is_parabolic_quasi_coxeter;
    r.agree = r.transitive == r.pqc;
    return r;
}

struct MultisetReport {
    size_t factorization_count = 0;
    size_t orbit_count = 0;
    size_t multiset_count = 0;
    bool holds = false; // same orbit <=> same conjugacy multiset
};

// Thm: two same-length reflection factorizations of a quasi-Coxeter element
// of a Weyl group lie in the same Hurwitz orbit iff they share the
// conjugacy-class multiset.
inline MultisetReport multiset_criterion_check(const CoxeterSystem& W, const Element& w, int L,
                                               size_t cap = 1000000) {
    int m = reflection_length(W, w);
    if (L < m || (L - m) % 2 != 0)
        throw std::invalid_argument("multiset_criterion_check: L must be l_T(w) + 2k");
    std::vector<std::vector<Element>> all;
    std::vector<Element> stack;
    detail::red_T_search(W.reflections(), w, W.identity(), stack, L, all, cap);
    MultisetReport r;
    r.factorization_count = all.size();
    std::map<std::string, size_t> orbit_of; // tuple -> orbit id
    for (const auto& f : all) {
        if (orbit_of.count(tuple_encode(f))) continue;
        Orbit orb = orbit(W, f, cap);
        for (const auto& g : orb.tuples) orbit_of[tuple_encode(g)] = r.orbit_count;
        ++r.orbit_count;
    }
    std::map<std::string, std::set<size_t>> orbits_by_multiset;
    for (const auto& f : all) {
        std::string key;
        for (const auto& k : conj_multiset(W, f)) key += k + "#";
        orbits_by_multiset[key].insert(orbit_of[tuple_encode(f)]);
    }
    r.multiset_count = orbits_by_multiset.size();
    r.holds = true;
    for (const auto& [key, orbs] : orbits_by_multiset)
        if (orbs.size() != 1) r.holds = false;
    if (r.multiset_count != r.orbit_count) r.holds = false;
    return r;
}

// connected diagram admitting a spanning tree all of whose labels are odd
inline bool odd_spanning_tree(const CoxeterMatrix& cm) {
    int n = cm.rank();
    if (n == 0) return false;
    auto component_count = [&](auto&& keep_edge) {
        std::vector<int> comp(static_cast<size_t>(n), -1);
        int count = 0;
        for (int start = 0; start < n; ++start) {
            if (comp[static_cast<size_t>(start)] >= 0) continue;
            std::vector<int> stack{start};
            comp[static_cast<size_t>(start)] = count;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int u = 0; u < n; ++u) {
                    if (u == v || comp[static_cast<size_t>(u)] >= 0) continue;
                    if (!keep_edge(cm.label(v, u))) continue;
                    comp[static_cast<size_t>(u)] = count;
                    stack.push_back(u);
                }
            }
            ++count;
        }
        return count;
    };
    if (component_count([](int m) { return m != 2; }) != 1) return false;
    return component_count([](int m) { return m != 2 && m != 0 && m % 2 == 1; }) == 1;
}

} // namespace cox
