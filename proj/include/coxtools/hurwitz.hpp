#pragma once

// The Hurwitz action of the braid group on reflection factorizations:
// moves, orbits with witness braids, Bruhat-path normalization, reduction
// of non-reduced factorizations, pushing reduced factorizations into the
// inversion set, and extension to factorizations in simple reflections.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxeter.hpp"
#include "dyer.hpp"

namespace cox {

// sigma_i^{sign}, 1-based index i acting on entries (i, i+1)
struct BraidLetter {
    int index;
    int sign; // +1 or -1
};

using BraidWord = std::vector<BraidLetter>;

inline BraidWord inverse_braid(const BraidWord& b) {
    BraidWord r(b.rbegin(), b.rend());
    for (auto& l : r) l.sign = -l.sign;
    return r;
}

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Element tuple_product(const CoxeterSystem& W, const std::vector<Element>& f) {
    Element p = W.identity();
    for (const auto& t : f) p = p * t;
    return p;
}

inline std::string tuple_encode(const std::vector<Element>& f) {
    std::string out;
    for (const auto& t : f) {
        out += t.encode();
        out += '|';
    }
    return out;
}

// sigma_i:      (..., t_i, t_{i+1}, ...) -> (..., t_i t_{i+1} t_i, t_i, ...)
// sigma_i^{-1}: (..., t_i, t_{i+1}, ...) -> (..., t_{i+1}, t_{i+1} t_i t_{i+1}, ...)
inline std::vector<Element> hurwitz_move(std::vector<Element> f, int i, int sign) {
    if (i < 1 || i >= static_cast<int>(f.size()))
        throw std::out_of_range("hurwitz_move: index out of range");
    Element& a = f[static_cast<size_t>(i) - 1];
    Element& b = f[static_cast<size_t>(i)];
    if (sign >= 0) {
        Element conj = a * b * a;
        b = a;
        a = std::move(conj);
    } else {
        Element conj = b * a * b;
        a = b;
        b = std::move(conj);
    }
    return f;
}

inline std::vector<Element> apply_braid(std::vector<Element> f, const BraidWord& b) {
    for (const auto& l : b) f = hurwitz_move(std::move(f), l.index, l.sign);
    return f;
}

struct Orbit {
    std::vector<std::vector<Element>> tuples; // tuples[0] is the seed
    std::vector<BraidWord> witnesses;         // witnesses[k] maps seed to tuples[k]
};

// BFS closure under all sigma_i^{+-1}; deterministic order (FIFO, moves by
// ascending index, positive sign first).
inline Orbit orbit(const CoxeterSystem& W, const std::vector<Element>& seed, size_t cap = 1000000) {
    (void)W;
    Orbit o;
    std::map<std::string, size_t> seen;
    o.tuples.push_back(seed);
    o.witnesses.emplace_back();
    seen.emplace(tuple_encode(seed), 0);
    int m = static_cast<int>(seed.size());
    for (size_t head = 0; head < o.tuples.size(); ++head)
        for (int i = 1; i < m; ++i)
            for (int sign : {+1, -1}) {
                std::vector<Element> next = hurwitz_move(o.tuples[head], i, sign);
                auto [it, fresh] = seen.emplace(tuple_encode(next), o.tuples.size());
                if (!fresh) continue;
                if (o.tuples.size() >= cap)
                    throw CapExceeded("orbit: cap exceeded after " + std::to_string(cap) + " tuples");
                BraidWord w = o.witnesses[head];
                w.push_back({i, sign});
                o.tuples.push_back(std::move(next));
                o.witnesses.push_back(std::move(w));
            }
    return o;
}

// Witness braid from f to g if they lie in the same Hurwitz orbit, nullopt
// if the full orbit of f was enumerated without finding g. Exceeding the
// cap is indeterminate and throws, distinct from a negative answer.
inline std::optional<BraidWord> equivalent(const CoxeterSystem& W, const std::vector<Element>& f,
                                           const std::vector<Element>& g, size_t cap = 1000000) {
    if (f.size() != g.size() || !(tuple_product(W, f) == tuple_product(W, g)))
        throw std::invalid_argument("equivalent: tuples must share length and product");
    std::string target = tuple_encode(g);
    if (tuple_encode(f) == target) return BraidWord{};
    std::map<std::string, size_t> seen;
    std::vector<std::vector<Element>> tuples{f};
    std::vector<BraidWord> wits{{}};
    seen.emplace(tuple_encode(f), 0);
    int m = static_cast<int>(f.size());
    for (size_t head = 0; head < tuples.size(); ++head)
        for (int i = 1; i < m; ++i)
            for (int sign : {+1, -1}) {
                std::vector<Element> next = hurwitz_move(tuples[head], i, sign);
                std::string enc = tuple_encode(next);
                if (!seen.emplace(enc, tuples.size()).second) continue;
                BraidWord w = wits[head];
                w.push_back({i, sign});
                if (enc == target) return w;
                if (tuples.size() >= cap) throw CapExceeded("equivalent: cap exceeded");
                tuples.push_back(std::move(next));
                wits.push_back(std::move(w));
            }
    return std::nullopt;
}

// Result of normalizing the Bruhat path x, xf_1, xf_1f_2, ..., xw. Either a
// single-valley (decreasing-then-increasing) path, or the factorization at
// the point where two adjacent equal factors appeared — the branch used in
// the reduction procedure.
struct PathNormalForm {
    BraidWord braid;
    std::vector<Element> entries;
    bool duplicate = false;
    int valley = -1;  // vertex index 0..m, when !duplicate
    int dup_pos = -1; // 1-based position of the left entry of the equal pair
};

// Leftmost-peak rewriting: at a peak v_{j-1} -> v_j <- v_{j+1} with
// distinct factors, search the dihedral orbit of the factor pair for a
// replacement lowering the middle vertex (it exists); the total vertex
// length strictly decreases, so this terminates. A peak with equal factors
// is reported as the duplicate branch.
inline PathNormalForm normalize_path(const CoxeterSystem& W, const Element& x, std::vector<Element> f) {
    PathNormalForm res;
    int m = static_cast<int>(f.size());
    std::vector<Element> v(static_cast<size_t>(m) + 1);
    std::vector<int> len(static_cast<size_t>(m) + 1);
    v[0] = x;
    len[0] = W.length(x);
    for (int j = 1; j <= m; ++j) {
        v[static_cast<size_t>(j)] = v[static_cast<size_t>(j) - 1] * f[static_cast<size_t>(j) - 1];
        len[static_cast<size_t>(j)] = W.length(v[static_cast<size_t>(j)]);
    }
    for (;;) {
        int peak = -1;
        for (int j = 1; j < m; ++j)
            if (len[static_cast<size_t>(j) - 1] < len[static_cast<size_t>(j)] &&
                len[static_cast<size_t>(j)] > len[static_cast<size_t>(j) + 1]) {
                peak = j;
                break;
            }
        if (peak < 0) break;
        const Element& t1 = f[static_cast<size_t>(peak) - 1];
        const Element& t2 = f[static_cast<size_t>(peak)];
        if (t1 == t2) {
            res.duplicate = true;
            res.dup_pos = peak;
            res.entries = std::move(f);
            return res;
        }
        // try sigma^{+-k} on the pair for k = 1, 2, ...; Lemma-3.5 style
        // replacements are guaranteed to appear in the dihedral orbit
        std::vector<Element> plus = {t1, t2}, minus = {t1, t2};
        bool done = false;
        for (int k = 1; !done; ++k) {
            for (int sign : {+1, -1}) {
                std::vector<Element>& pair = (sign > 0) ? plus : minus;
                pair = hurwitz_move(std::move(pair), 1, sign);
                if (W.length(v[static_cast<size_t>(peak) - 1] * pair[0]) >= len[static_cast<size_t>(peak)])
                    continue;
                for (int rep = 0; rep < k; ++rep) res.braid.push_back({peak, sign});
                f[static_cast<size_t>(peak) - 1] = pair[0];
                f[static_cast<size_t>(peak)] = pair[1];
                v[static_cast<size_t>(peak)] = v[static_cast<size_t>(peak) - 1] * pair[0];
                len[static_cast<size_t>(peak)] = W.length(v[static_cast<size_t>(peak)]);
                done = true;
                break;
            }
            if (k > 10000) throw std::logic_error("normalize_path: no lowering replacement found");
        }
    }
    int valley = 0;
    for (int j = 1; j <= m; ++j)
        if (len[static_cast<size_t>(j)] < len[static_cast<size_t>(valley)]) valley = j;
    res.valley = valley;
    res.entries = std::move(f);
    return res;
}

struct ReduceResult {
    BraidWord braid;              // maps the input to `entries`
    std::vector<Element> entries; // reduced prefix followed by equal pairs
    int reduced_length = 0;       // length of the reduced prefix
};

namespace detail {

// shift the adjacent equal pair at (pos, pos+1) rightward until it ends at
// position `last`: (r, r, t) -> (t, trt, trt) via sigma_{pos+1}^{-1} sigma_pos^{-1}
inline void shift_pair_right(std::vector<Element>& entries, BraidWord& braid, int pos, int last) {
    while (pos + 1 < last) {
        entries = hurwitz_move(std::move(entries), pos + 1, -1);
        entries = hurwitz_move(std::move(entries), pos, -1);
        braid.push_back({pos + 1, -1});
        braid.push_back({pos, -1});
        ++pos;
    }
}

} // namespace detail

namespace detail {

// Shortest c (BFS order) conjugating the parabolic subgroup with reflection
// set R to a standard parabolic: c R c^{-1} must be generated by the simple
// reflections it contains. Always exists for parabolics of finite systems.
inline Element standardizing_element(const CoxeterSystem& W, const std::vector<Element>& R,
                                     const std::vector<Element>& all_elements) {
    if (R.empty()) return Element(Matrix<Scalar>::identity(W.rank()));
    for (const auto& c : all_elements) {
        Element ci = W.inverse(c);
        std::set<Element> conj;
        for (const auto& r : R) conj.insert(c * r * ci);
        std::vector<Element> simples_in;
        for (int s = 0; s < W.rank(); ++s)
            if (conj.count(W.simple(s))) simples_in.push_back(W.simple(s));
        if (simples_in.empty()) continue;
        std::set<Element> closed;
        try {
            auto cl = reflections_of(W, simples_in, conj.size());
            closed.insert(cl.begin(), cl.end());
        } catch (const std::runtime_error&) {
            continue;
        }
        if (closed == conj) return c;
    }
    throw std::logic_error("standardizing_element: none found");
}

} // namespace detail

// Reduction procedure for finite systems: Hurwitz-equivalent rewriting of
// any reflection factorization into a T-reduced prefix followed by k equal
// adjacent pairs. Each round takes the maximal reduced prefix t_1...t_l and
// normalizes the path of (t_1,...,t_{l+1}) from x = (t_1...t_{l+1})^{-1} to
// e, after conjugating so that P(x) is a standard parabolic. In that
// position a fully decreasing outcome is impossible (strong exchange would
// confine l reduced factors to a parabolic of rank l-1), so a duplicate
// pair must surface; conjugation commutes with Hurwitz moves, so the braid
// produces the same duplicate on the original tuple.
inline ReduceResult reduce(const CoxeterSystem& W, std::vector<Element> f) {
    if (!W.is_finite()) throw std::logic_error("reduce: finite systems only (see reduce_by_length_S)");
    for (const auto& t : f)
        if (!is_reflection(W, t)) throw std::invalid_argument("reduce: non-reflection entry");
    ReduceResult res;
    int m_cur = static_cast<int>(f.size());
    std::vector<Element> all_elements; // lazily filled BFS enumeration
    for (;;) {
        Element w = tuple_product(W, std::vector<Element>(f.begin(), f.begin() + m_cur));
        int mt = reflection_length(W, w);
        if (m_cur == mt) break;
        int l = 1;
        for (int j = 2; j < m_cur; ++j) {
            Element p = tuple_product(W, std::vector<Element>(f.begin(), f.begin() + j));
            if (reflection_length(W, p) == j)
                l = j;
            else
                break;
        }
        std::vector<Element> sub(f.begin(), f.begin() + l + 1);
        Element x = W.inverse(tuple_product(W, sub));
        if (all_elements.empty()) all_elements = W.enumerate();
        Element c = detail::standardizing_element(W, parabolic_closure(W, {x}).reflections, all_elements);
        Element ci = W.inverse(c);
        std::vector<Element> sub_conj;
        sub_conj.reserve(sub.size());
        for (const auto& t : sub) sub_conj.push_back(c * t * ci);
        PathNormalForm nf = normalize_path(W, c * x * ci, std::move(sub_conj));
        if (!nf.duplicate) throw std::logic_error("reduce: expected duplicate pair");
        for (const auto& letter : nf.braid) res.braid.push_back(letter);
        std::vector<Element> replay = apply_braid(std::move(sub), nf.braid);
        std::copy(replay.begin(), replay.end(), f.begin());
        detail::shift_pair_right(f, res.braid, nf.dup_pos, m_cur);
        m_cur -= 2;
    }
    res.entries = std::move(f);
    res.reduced_length = m_cur;
    return res;
}

// Prop-4.6 variant for arbitrary systems: the reduced prefix has length
// l_S(product) instead of l_T(product). Requires |f| = l_S(product) + 2k.
inline ReduceResult reduce_by_length_S(const CoxeterSystem& W, std::vector<Element> f) {
    for (const auto& t : f)
        if (!is_reflection(W, t)) throw std::invalid_argument("reduce_by_length_S: non-reflection entry");
    Element w = tuple_product(W, f);
    int ms = W.length(w);
    int extra = static_cast<int>(f.size()) - ms;
    if (extra < 0 || extra % 2 != 0)
        throw std::invalid_argument("reduce_by_length_S: entry count must be l_S(product) + 2k");
    ReduceResult res;
    int m_cur = static_cast<int>(f.size());
    while (m_cur > ms) {
        std::vector<Element> sub(f.begin(), f.begin() + m_cur);
        PathNormalForm nf = normalize_path(W, W.identity(), std::move(sub));
        for (const auto& letter : nf.braid) res.braid.push_back(letter);
        std::copy(nf.entries.begin(), nf.entries.end(), f.begin());
        // an increasing path from e with more steps than l_S(product) is
        // impossible, so the duplicate branch always fires here
        if (!nf.duplicate) throw std::logic_error("reduce_by_length_S: expected duplicate pair");
        detail::shift_pair_right(f, res.braid, nf.dup_pos, m_cur);
        m_cur -= 2;
    }
    res.entries = std::move(f);
    res.reduced_length = m_cur;
    return res;
}

struct PushResult {
    BraidWord braid;              // maps the input to `entries`
    std::vector<Element> entries; // all entries in N(product)
    std::vector<int> deletions;   // entries[k] = s_m ... s_{deletions[k]} ... s_m (1-based,
                                  // strictly decreasing in k) w.r.t. the chosen word
};

namespace detail {

// Right-to-left strong-exchange scan: find positions of `word` whose
// successive deletion realizes the factors of the increasing tuple, i.e.
// product(word minus D_k) = w * f_n * ... * f_k. DFS over the (rarely
// ambiguous) choices.
inline bool deletion_chain(const CoxeterSystem& W, const std::vector<int>& word,
                           std::vector<int>& remaining, const std::vector<Element>& f, int k,
                           const Element& u, std::vector<int>& out) {
    if (k == 0) return true;
    Element target = u * f[static_cast<size_t>(k) - 1];
    for (size_t pos = 0; pos < remaining.size(); ++pos) {
        int letter_index = remaining[pos];
        std::vector<int> rest = remaining;
        rest.erase(rest.begin() + static_cast<long>(pos));
        Element p = W.identity();
        for (int idx : rest) p = p * W.simple(word[static_cast<size_t>(idx) - 1]);
        if (!(p == target)) continue;
        std::vector<int> saved = remaining;
        remaining = rest;
        out[static_cast<size_t>(k) - 1] = letter_index;
        if (deletion_chain(W, word, remaining, f, k - 1, target, out)) return true;
        remaining = saved;
    }
    return false;
}

} // namespace detail

// Push a reduced factorization of w into N(w): first rewrite it (Cor 3.7)
// so the path from e is strictly increasing; then read off strong-exchange
// deletion positions against `word` and sort them by adjacent Hurwitz
// swaps, after which entry k is the suffix reflection s_m...s_{d_k}...s_m.
inline PushResult push_into_N(const CoxeterSystem& W, const std::vector<int>& word,
                              std::vector<Element> f) {
    Element w = W.from_word(word);
    if (!(tuple_product(W, f) == w)) throw std::invalid_argument("push_into_N: product mismatch");
    if (static_cast<int>(f.size()) != reflection_length(W, w))
        throw std::invalid_argument("push_into_N: factorization not reduced");
    if (W.length(w) != static_cast<int>(word.size()))
        throw std::invalid_argument("push_into_N: word not reduced");
    int n = static_cast<int>(f.size());
    int m = static_cast<int>(word.size());
    PushResult res;
    if (n == 0) return res;

    PathNormalForm nf = normalize_path(W, W.identity(), std::move(f));
    if (nf.duplicate || nf.valley != 0)
        throw std::logic_error("push_into_N: reduced factorization failed to normalize");
    res.braid = std::move(nf.braid);
    std::vector<Element> cur = std::move(nf.entries);

    std::vector<int> remaining(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) remaining[static_cast<size_t>(i)] = i + 1;
    std::vector<int> del(static_cast<size_t>(n));
    if (!detail::deletion_chain(W, word, remaining, cur, n, w, del))
        throw std::logic_error("push_into_N: strong exchange scan failed");

    // bubble-sort the deletion sequence into d_n < ... < d_1; the adjacent
    // swap sigma_k^{-1} exchanges the two deletion positions exactly
    for (;;) {
        bool swapped = false;
        for (int k = 1; k < n; ++k)
            if (del[static_cast<size_t>(k) - 1] < del[static_cast<size_t>(k)]) {
                cur = hurwitz_move(std::move(cur), k, -1);
                res.braid.push_back({k, -1});
                std::swap(del[static_cast<size_t>(k) - 1], del[static_cast<size_t>(k)]);
                swapped = true;
            }
        if (!swapped) break;
    }

    // verify the suffix-reflection form and membership in N(w)
    for (int k = 1; k <= n; ++k) {
        Element suffix = W.identity();
        for (int j = m; j >= del[static_cast<size_t>(k) - 1]; --j)
            suffix = suffix * W.simple(word[static_cast<size_t>(j) - 1]);
        Element t = suffix;
        for (int j = del[static_cast<size_t>(k) - 1] + 1; j <= m; ++j)
            t = t * W.simple(word[static_cast<size_t>(j) - 1]);
        if (!(t == cur[static_cast<size_t>(k) - 1]))
            throw std::logic_error("push_into_N: suffix reflection mismatch");
        if (W.length(w * t) >= W.length(w)) throw std::logic_error("push_into_N: entry not in N(w)");
    }
    res.entries = std::move(cur);
    res.deletions = std::move(del);
    return res;
}

struct ExtendResult {
    std::vector<int> q; // generator indices, m - n of them, with product e
    BraidWord braid;    // sigma with sigma(word) = (q-reflections, f)
};

// Extension theorem: every reduced reflection factorization f of w is the
// tail of a tuple in the Hurwitz orbit of a reduced simple-reflection word
// of w. The braid is built per the inductive proof: one descending block
// sigma_{m-1}^{-1}...sigma_{i_j}^{-1} per pushed entry, then the pushing
// braid replayed (shifted past the q's) in reverse.
inline ExtendResult extend_to_simples(const CoxeterSystem& W, const std::vector<int>& word,
                                      const std::vector<Element>& f) {
    PushResult push = push_into_N(W, word, f);
    int m = static_cast<int>(word.size());
    int n = static_cast<int>(f.size());
    ExtendResult res;
    std::set<int> deleted(push.deletions.begin(), push.deletions.end());
    for (int j = 1; j <= m; ++j)
        if (!deleted.count(j)) res.q.push_back(word[static_cast<size_t>(j) - 1]);
    // the forward proof applies the block sigma_{i_j}...sigma_{m-1} for
    // j = 1..n (descending within a block); the inverse runs the blocks in
    // reverse with ascending indices
    for (int j = n; j >= 1; --j) {
        // n - j earlier deletions (all at smaller positions) shift the letter
        // left, and the same number of already-placed entries shorten the run
        int off = n - j;
        for (int i = push.deletions[static_cast<size_t>(j) - 1] - off; i <= m - 1 - off; ++i)
            res.braid.push_back({i, -1});
    }
    // undo the push (which acted on the n-tuple) at offset m - n
    BraidWord undo = inverse_braid(push.braid);
    for (auto& l : undo) l.index += m - n;
    res.braid.insert(res.braid.end(), undo.begin(), undo.end());

    // replay check: sigma(word) must equal (q's, f)
    std::vector<Element> start;
    start.reserve(static_cast<size_t>(m));
    for (int s : word) start.push_back(W.simple(s));
    std::vector<Element> target;
    for (int s : res.q) target.push_back(W.simple(s));
    target.insert(target.end(), f.begin(), f.end());
    if (!(apply_braid(start, res.braid) == target))
        throw std::logic_error("extend_to_simples: braid replay mismatch");
    return res;
}

} // namespace cox
