#pragma once

// Crystallographic root systems with exact rational ambient coordinates,
// affine Weyl groups as semidirect products (u, lambda), affine
// reflections s_{alpha,k}, the projection to the finite quotient,
// ellipticity, generation tests, reflection conjugacy keys, and the bridge
// to the Tits representation of the corresponding Coxeter system.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxeter.hpp"
#include "dyer.hpp"
#include "linalg.hpp"

namespace cox {

using QVec = std::vector<Rational>;

inline Rational qdot(const QVec& a, const QVec& b) {
    Rational r = 0;
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline QVec qscale(const QVec& a, const Rational& c) {
    QVec r = a;
    for (auto& x : r) x *= c;
    return r;
}

inline QVec qadd(const QVec& a, const QVec& b) {
    QVec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline QVec qneg(const QVec& a) {
    QVec r = a;
    for (auto& x : r) x = -x;
    return r;
}

inline bool qless(const QVec& a, const QVec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

inline std::string qvec_str(const QVec& v) {
    std::string out = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].get_str();
    }
    return out + ")";
}

// Finite crystallographic root system in standard coordinates.
struct CartanDatum {
    std::string name;
    int rank = 0; // number of simple roots
    int dim = 0;  // ambient dimension
    std::vector<QVec> simples;
    std::vector<QVec> roots;     // all of Phi
    std::vector<QVec> pos_roots; // Phi+ w.r.t. the simples
    QVec highest;

    QVec coroot(const QVec& alpha) const { return qscale(alpha, Rational(2) / qdot(alpha, alpha)); }

    std::vector<QVec> simple_coroots() const {
        std::vector<QVec> out;
        for (const auto& a : simples) out.push_back(coroot(a));
        return out;
    }

    // reflection matrix of s_alpha on the ambient space
    Matrix<Rational> reflection_matrix(const QVec& alpha) const {
        Matrix<Rational> m = Matrix<Rational>::identity(dim);
        QVec av = coroot(alpha);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                m(i, j) -= alpha[static_cast<size_t>(i)] * av[static_cast<size_t>(j)];
        return m;
    }

    QVec reflect(const QVec& alpha, const QVec& v) const {
        return qadd(v, qscale(coroot(alpha), -qdot(alpha, v)));
    }

    // coordinates of a root in the simple-root basis; nullopt if not in span
    std::optional<QVec> simple_coords(const QVec& v) const {
        Matrix<Rational> m(dim, rank);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < rank; ++j) m(i, j) = simples[static_cast<size_t>(j)][static_cast<size_t>(i)];
        auto sol = solve(m, v);
        if (!sol) return std::nullopt;
        // verify (solve returns any solution of a consistent system)
        QVec back(static_cast<size_t>(dim), 0);
        for (int j = 0; j < rank; ++j)
            back = qadd(back, qscale(simples[static_cast<size_t>(j)], (*sol)[static_cast<size_t>(j)]));
        if (back != v) return std::nullopt;
        return sol;
    }

    bool is_positive_root(const QVec& v) const {
        auto c = simple_coords(v);
        if (!c) return false;
        for (const auto& x : *c)
            if (x < 0) return false;
        return true;
    }
};

inline CartanDatum cartan_catalog(const std::string& name) {
    CartanDatum d;
    d.name = name;
    auto e = [&](int i) {
        QVec v(static_cast<size_t>(d.dim), 0);
        v[static_cast<size_t>(i) - 1] = 1;
        return v;
    };
    auto diff = [&](int i, int j) { return qadd(e(i), qneg(e(j))); };
    if (name == "A1" || name == "A2" || name == "A3" || name == "A4") {
        int n = name[1] - '0';
        d.rank = n;
        d.dim = n + 1;
        for (int i = 1; i <= n; ++i) d.simples.push_back(diff(i, i + 1));
        d.highest = diff(1, n + 1);
    } else if (name == "B2" || name == "B3") {
        int n = name[1] - '0';
        d.rank = n;
        d.dim = n;
        for (int i = 1; i < n; ++i) d.simples.push_back(diff(i, i + 1));
        d.simples.push_back(e(n));
        d.highest = qadd(e(1), e(2));
    } else if (name == "C2" || name == "C3") {
        int n = name[1] - '0';
        d.rank = n;
        d.dim = n;
        for (int i = 1; i < n; ++i) d.simples.push_back(diff(i, i + 1));
        d.simples.push_back(qscale(e(n), 2));
        d.highest = qscale(e(1), 2);
    } else if (name == "D4") {
        d.rank = 4;
        d.dim = 4;
        d.simples = {diff(1, 2), diff(2, 3), diff(3, 4), qadd(e(3), e(4))};
        d.highest = qadd(e(1), e(2));
    } else if (name == "G2") {
        d.rank = 2;
        d.dim = 3;
        d.simples = {diff(1, 2), qadd(qscale(e(1), -2), qadd(e(2), e(3)))};
        d.highest = qadd(qneg(qadd(e(1), e(2))), qscale(e(3), 2));
    } else {
        throw std::invalid_argument("cartan_catalog: unknown type '" + name + "'");
    }
    // root closure from the simples
    std::set<QVec, bool (*)(const QVec&, const QVec&)> seen(qless);
    std::vector<QVec> frontier;
    for (const auto& a : d.simples) {
        seen.insert(a);
        frontier.push_back(a);
    }
    while (!frontier.empty()) {
        std::vector<QVec> next;
        for (const auto& r : frontier)
            for (const auto& a : d.simples) {
                QVec img = d.reflect(a, r);
                if (seen.insert(img).second) next.push_back(img);
            }
        frontier = std::move(next);
    }
    d.roots.assign(seen.begin(), seen.end());
    for (const auto& r : d.roots)
        if (d.is_positive_root(r)) d.pos_roots.push_back(r);
    if (d.roots.size() != 2 * d.pos_roots.size())
        throw std::logic_error("cartan_catalog: root system is not symmetric");
    bool found = false;
    for (const auto& r : d.roots) found = found || r == d.highest;
    if (!found) throw std::logic_error("cartan_catalog: highest root not in Phi");
    return d;
}

// Element (u, lambda) of the affine group, acting by v -> u v + lambda.
struct AffineElement {
    Matrix<Rational> u;
    QVec lambda;

    friend bool operator==(const AffineElement& a, const AffineElement& b) {
        return a.u == b.u && a.lambda == b.lambda;
    }
    friend bool operator!=(const AffineElement& a, const AffineElement& b) { return !(a == b); }
    friend AffineElement operator*(const AffineElement& a, const AffineElement& b) {
        return {a.u * b.u, qadd(a.lambda, a.u.apply(b.lambda))};
    }
    AffineElement inverse() const {
        Matrix<Rational> ui = cox::inverse(u);
        return {ui, qneg(ui.apply(lambda))};
    }
    QVec apply(const QVec& v) const { return qadd(u.apply(v), lambda); }
    bool is_translation() const { return u == Matrix<Rational>::identity(u.rows()); }

    std::string encode() const {
        std::string out;
        for (const auto& x : u.data()) {
            out += x.get_str();
            out += ',';
        }
        out += ';';
        for (const auto& x : lambda) {
            out += x.get_str();
            out += ',';
        }
        return out;
    }
    friend bool operator<(const AffineElement& a, const AffineElement& b) {
        return a.encode() < b.encode();
    }
};

// s_{alpha,k}: v -> v - ((v|alpha) - k) alpha^vee
struct AffineReflection {
    QVec root;
    long k = 0;
};

// An affine root (alpha, c), i.e. the affine function v -> (alpha|v) + c.
struct AffineRoot {
    QVec alpha;
    Rational c;
};

struct AffineParabolic {
    bool whole = false;
    std::vector<AffineElement> reflections; // empty when whole
    int rank = 0;
};

class AffineSystem {
public:
    explicit AffineSystem(const std::string& affine_name)
        : cox_(coxeter_matrix_catalog(affine_name)) {
        static const std::map<std::string, std::string> fin = {
            {"At1", "A1"}, {"At2", "A2"}, {"Bt2", "B2"}, {"Ct2", "C2"}, {"Gt2", "G2"}};
        auto it = fin.find(affine_name);
        if (it == fin.end())
            throw std::invalid_argument("AffineSystem: unknown affine type '" + affine_name + "'");
        name_ = affine_name;
        datum_ = cartan_catalog(it->second);
        // generator order must match the Coxeter matrix of the affine name
        // (affine node last); C2 needs its simples flipped for that
        std::vector<int> perm(static_cast<size_t>(datum_.rank));
        for (int i = 0; i < datum_.rank; ++i) perm[static_cast<size_t>(i)] = i;
        if (affine_name == "Ct2") perm = {1, 0};
        std::vector<QVec> ordered;
        for (int i : perm) ordered.push_back(datum_.simples[static_cast<size_t>(i)]);
        datum_.simples = ordered;
        for (const auto& a : datum_.simples) gens_.push_back(reflection({a, 0}));
        gens_.push_back(reflection({datum_.highest, 1}));
        for (size_t i = 0; i < gens_.size(); ++i)
            for (size_t j = i + 1; j < gens_.size(); ++j) {
                int expect = cox_.coxeter_matrix().label(static_cast<int>(i), static_cast<int>(j));
                AffineElement p = gens_[i] * gens_[j];
                AffineElement acc = p;
                int ord = 1;
                while (ord <= 6 && !(acc == identity())) {
                    acc = acc * p;
                    ++ord;
                }
                int got = (ord <= 6) ? ord : 0;
                if (got != expect) throw std::logic_error("AffineSystem: generator orders mismatch");
            }
    }

    const std::string& name() const { return name_; }
    const CartanDatum& datum() const { return datum_; }
    const CoxeterSystem& cox() const { return cox_; }
    int rank() const { return datum_.rank; } // finite rank; #generators = rank+1

    AffineElement identity() const {
        return {Matrix<Rational>::identity(datum_.dim), QVec(static_cast<size_t>(datum_.dim), 0)};
    }

    const AffineElement& generator(int i) const { return gens_[static_cast<size_t>(i)]; }

    AffineElement reflection(const AffineReflection& r) const {
        return {datum_.reflection_matrix(r.root), qscale(datum_.coroot(r.root), r.k)};
    }

    AffineElement from_word(const std::vector<int>& word) const {
        AffineElement x = identity();
        for (int s : word) {
            if (s < 0 || s > rank()) throw std::out_of_range("AffineSystem: generator index");
            x = x * gens_[static_cast<size_t>(s)];
        }
        return x;
    }

    AffineElement translation(const QVec& lambda) const {
        return {Matrix<Rational>::identity(datum_.dim), lambda};
    }

    // simple affine roots: (alpha_i, 0) for simples, (-highest, 1) last
    AffineRoot simple_affine_root(int i) const {
        if (i < rank()) return {datum_.simples[static_cast<size_t>(i)], 0};
        return {qneg(datum_.highest), 1};
    }

    static AffineRoot act(const AffineElement& x, const AffineRoot& r) {
        QVec a = x.u.apply(r.alpha);
        return {a, r.c - qdot(a, x.lambda)};
    }

    bool affine_root_negative(const AffineRoot& r) const {
        if (r.c != 0) return r.c < 0;
        return !datum_.is_positive_root(r.alpha);
    }

    // right descent: smallest generator whose simple affine root is sent
    // negative; -1 for the identity
    int descent(const AffineElement& x) const {
        for (int i = 0; i <= rank(); ++i)
            if (affine_root_negative(act(x, simple_affine_root(i)))) return i;
        return -1;
    }

    std::vector<int> reduced_word(AffineElement x) const {
        std::vector<int> rev;
        while (!(x == identity())) {
            int s = descent(x);
            if (s < 0) throw std::logic_error("AffineSystem: descent failed");
            x = x * gens_[static_cast<size_t>(s)];
            rev.push_back(s);
        }
        std::reverse(rev.begin(), rev.end());
        return rev;
    }

    int length(const AffineElement& x) const { return static_cast<int>(reduced_word(x).size()); }

    // bridge to/from the Tits representation
    Element to_cox(const AffineElement& x) const { return cox_.from_word(reduced_word(x)); }
    AffineElement from_cox(const Element& w) const { return from_word(cox_.reduced_word(w)); }

    Matrix<Rational> project_p(const AffineElement& x) const { return x.u; }

    bool is_elliptic(const AffineElement& x) const {
        // fixed point: (1 - u) v = lambda
        Matrix<Rational> m = Matrix<Rational>::identity(datum_.dim);
        for (int i = 0; i < datum_.dim; ++i)
            for (int j = 0; j < datum_.dim; ++j) m(i, j) -= x.u(i, j);
        return solve(m, x.lambda).has_value();
    }

    std::optional<AffineReflection> as_reflection(const AffineElement& x) const {
        for (const auto& alpha : datum_.pos_roots) {
            if (!(x.u == datum_.reflection_matrix(alpha))) continue;
            QVec av = datum_.coroot(alpha);
            // lambda must be k alpha^vee with k integral
            Rational k = qdot(x.lambda, alpha) / 2;
            if (k.get_den() != 1) return std::nullopt;
            if (x.lambda != qscale(av, k)) return std::nullopt;
            return AffineReflection{alpha, static_cast<long>(k.get_num().get_si())};
        }
        return std::nullopt;
    }

    // gcd of the coroot-lattice pairing values with alpha
    long level_modulus(const QVec& alpha) const {
        Integer g = 0;
        for (const auto& cv : datum_.simple_coroots()) {
            Rational p = qdot(cv, alpha);
            if (p.get_den() != 1) throw std::logic_error("level_modulus: non-integral pairing");
            g = gcd(g, p.get_num());
        }
        return std::abs(g.get_si());
    }

    // Conjugacy class of s_{alpha,k}: (lexmin of the W-orbit of +-alpha,
    // min of +-k modulo the pairing gcd). Justified by
    // w s_{alpha,k} w^{-1} = s_{w alpha, k} and
    // t_mu s_{alpha,k} t_{-mu} = s_{alpha, k + (mu|alpha)}.
    std::string class_key(const AffineReflection& r) const {
        std::set<QVec, bool (*)(const QVec&, const QVec&)> orbit(qless);
        std::vector<QVec> frontier{r.root};
        orbit.insert(r.root);
        while (!frontier.empty()) {
            std::vector<QVec> next;
            for (const auto& v : frontier)
                for (const auto& a : datum_.simples) {
                    QVec img = datum_.reflect(a, v);
                    if (orbit.insert(img).second) next.push_back(img);
                }
            frontier = std::move(next);
        }
        QVec rep = *orbit.begin(); // orbit contains -root via s_root
        long d = level_modulus(r.root);
        long level = 0;
        if (d != 0) {
            long kp = ((r.k % d) + d) % d;
            long kn = ((-r.k % d) + d) % d;
            level = std::min(kp, kn);
        } else {
            level = std::abs(r.k);
        }
        return qvec_str(rep) + "@" + std::to_string(level);
    }

    // true iff the given affine reflections generate the whole affine group:
    // the linear parts must generate the finite Weyl group (root closure
    // covers Phi) and the translation kernel, generated by Schreier
    // elements over coset representatives indexed by the finite part, must
    // span the full coroot lattice (integer lattice index 1).
    bool generates_whole(const std::vector<AffineReflection>& R, size_t coset_cap = 100000) const {
        if (R.empty()) return false;
        // (i) finite parts generate W_fin
        std::set<QVec, bool (*)(const QVec&, const QVec&)> closure(qless);
        std::vector<QVec> frontier;
        for (const auto& r : R) {
            if (closure.insert(r.root).second) frontier.push_back(r.root);
            QVec n = qneg(r.root);
            if (closure.insert(n).second) frontier.push_back(n);
        }
        while (!frontier.empty()) {
            std::vector<QVec> next;
            for (const auto& v : frontier)
                for (const auto& r : R) {
                    QVec img = datum_.reflect(r.root, v);
                    if (closure.insert(img).second) next.push_back(img);
                }
            frontier = std::move(next);
        }
        if (closure.size() != datum_.roots.size()) return false;
        // (ii) Schreier generators of the translation kernel
        std::vector<AffineElement> gens;
        for (const auto& r : R) gens.push_back(reflection(r));
        std::map<std::string, AffineElement> reps; // keyed by finite part
        auto ukey = [](const AffineElement& x) {
            std::string out;
            for (const auto& v : x.u.data()) {
                out += v.get_str();
                out += ',';
            }
            return out;
        };
        std::vector<AffineElement> order{identity()};
        reps.emplace(ukey(identity()), identity());
        std::vector<QVec> kernel;
        for (size_t head = 0; head < order.size(); ++head)
            for (const auto& g : gens) {
                AffineElement next = order[head] * g;
                auto [it, fresh] = reps.emplace(ukey(next), next);
                if (fresh) {
                    if (order.size() >= coset_cap) throw CapExceededAffine();
                    order.push_back(next);
                } else {
                    // right-coset Schreier generator t*g*(bar{t*g})^{-1}
                    AffineElement schreier = next * it->second.inverse();
                    if (!schreier.is_translation())
                        throw std::logic_error("generates_whole: kernel element not a translation");
                    kernel.push_back(schreier.lambda);
                }
            }
        // compare the integer span of the kernel with the coroot lattice
        auto coroots = datum_.simple_coroots();
        Matrix<Rational> basis(datum_.dim, datum_.rank);
        for (int i = 0; i < datum_.dim; ++i)
            for (int j = 0; j < datum_.rank; ++j)
                basis(i, j) = coroots[static_cast<size_t>(j)][static_cast<size_t>(i)];
        std::vector<std::vector<Integer>> rows;
        for (const auto& lam : kernel) {
            auto coords = solve(basis, lam);
            if (!coords) throw std::logic_error("generates_whole: translation outside coroot span");
            std::vector<Integer> row;
            for (const auto& c : *coords) {
                if (c.get_den() != 1)
                    throw std::logic_error("generates_whole: translation outside coroot lattice");
                row.push_back(c.get_num());
            }
            rows.push_back(std::move(row));
        }
        Integer idx = lattice_index(rows, static_cast<size_t>(datum_.rank));
        return idx == 1;
    }

    // Smallest parabolic containing <X>: the pointwise stabilizer of the
    // common fixed affine subspace when one exists (all reflections whose
    // hyperplane contains it), otherwise the whole group.
    AffineParabolic parabolic_closure(const std::vector<AffineElement>& X) const {
        AffineParabolic out;
        int dim = datum_.dim;
        if (X.empty()) {
            out.rank = 0;
            return out;
        }
        Matrix<Rational> stacked(dim * static_cast<int>(X.size()), dim);
        QVec rhs(static_cast<size_t>(dim) * X.size());
        for (size_t k = 0; k < X.size(); ++k)
            for (int i = 0; i < dim; ++i) {
                for (int j = 0; j < dim; ++j) {
                    Rational v = -X[k].u(i, j);
                    if (i == j) v += 1;
                    stacked(static_cast<int>(k) * dim + i, j) = v;
                }
                rhs[static_cast<size_t>(k) * dim + static_cast<size_t>(i)] = X[k].lambda[static_cast<size_t>(i)];
            }
        auto v0 = solve(stacked, rhs);
        if (!v0) {
            out.whole = true;
            return out;
        }
        auto dirs = nullspace(stacked);
        std::vector<QVec> roots_found;
        for (const auto& alpha : datum_.pos_roots) {
            bool contains = true;
            for (const auto& n : dirs)
                if (qdot(alpha, n) != 0) {
                    contains = false;
                    break;
                }
            if (!contains) continue;
            Rational k = qdot(alpha, *v0);
            if (k.get_den() != 1) continue;
            out.reflections.push_back(reflection({alpha, k.get_num().get_si()}));
            roots_found.push_back(alpha);
        }
        Matrix<Rational> span(static_cast<int>(roots_found.size()), dim);
        for (size_t i = 0; i < roots_found.size(); ++i)
            for (int j = 0; j < dim; ++j) span(static_cast<int>(i), j) = roots_found[i][static_cast<size_t>(j)];
        out.rank = roots_found.empty() ? 0 : cox::rank(span);
        return out;
    }

    // Reduced reflection factorizations of an elliptic element, computed in
    // the Tits representation over the reflections of its (finite)
    // parabolic closure. Non-elliptic elements have infinitely many.
    std::vector<std::vector<Element>> red_T(const AffineElement& x, size_t cap = 1000000) const {
        if (!is_elliptic(x))
            throw std::runtime_error("red_T: infinite factorization set for non-elliptic element");
        Element w = to_cox(x);
        if (w == cox_.identity()) return {{}};
        auto pc = parabolic_closure({x});
        std::vector<Element> pool;
        for (const auto& r : pc.reflections) pool.push_back(to_cox(r));
        int m = -1;
        for (int depth = 1; depth <= static_cast<int>(pool.size()) && m < 0; ++depth)
            if (detail::product_search(cox_, pool, w, cox_.identity(), depth)) m = depth;
        if (m < 0) throw std::logic_error("red_T: no factorization inside the parabolic closure");
        std::vector<std::vector<Element>> out;
        std::vector<Element> cur;
        auto dfs = [&](auto&& self, const Element& acc) -> void {
            if (static_cast<int>(cur.size()) == m) {
                if (acc == w) {
                    if (out.size() >= cap) throw CapExceededAffine();
                    out.push_back(cur);
                }
                return;
            }
            for (const auto& t : pool) {
                cur.push_back(t);
                self(self, acc * t);
                cur.pop_back();
            }
        };
        dfs(dfs, cox_.identity());
        return out;
    }

    struct CapExceededAffine : std::runtime_error {
        CapExceededAffine() : std::runtime_error("affine enumeration cap exceeded") {}
    };

private:
    std::string name_;
    CartanDatum datum_;
    CoxeterSystem cox_;
    std::vector<AffineElement> gens_;
};

} // namespace cox
