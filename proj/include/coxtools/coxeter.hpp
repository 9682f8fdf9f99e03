#pragma once

// Coxeter systems from Coxeter matrices, the Tits representation, roots,
// reflections, lengths, reduced words, inversion sets and Bruhat edge
// orientation. Elements are their representing matrices; equality is exact
// matrix equality, which works uniformly for infinite systems.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "linalg.hpp"
#include "scalar.hpp"

namespace cox {

// Edge labels m_st; 0 encodes the infinite label.
class CoxeterMatrix {
public:
    CoxeterMatrix() = default;
    explicit CoxeterMatrix(std::vector<std::vector<int>> entries) : m_(std::move(entries)) {
        int n = static_cast<int>(m_.size());
        for (const auto& row : m_)
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("CoxeterMatrix: not square");
        for (int i = 0; i < n; ++i) {
            if (m_[i][i] != 1) throw std::invalid_argument("CoxeterMatrix: diagonal must be 1");
            for (int j = 0; j < n; ++j) {
                if (m_[i][j] != m_[j][i])
                    throw std::invalid_argument("CoxeterMatrix: not symmetric");
                if (i != j && m_[i][j] != 0 && m_[i][j] < 2)
                    throw std::invalid_argument("CoxeterMatrix: off-diagonal label must be >= 2 or infinite");
            }
        }
    }

    int rank() const { return static_cast<int>(m_.size()); }
    int label(int s, int t) const { return m_[s][t]; }
    const std::vector<std::vector<int>>& entries() const { return m_; }

private:
    std::vector<std::vector<int>> m_;
};

class CoxeterSystem;

// Group element in the Tits representation: its n x n matrix acting on the
// simple-root basis, row-major.
class Element {
public:
    Element() = default;
    explicit Element(Matrix<Scalar> m) : m_(std::move(m)) {}

    const Matrix<Scalar>& matrix() const { return m_; }
    int rank() const { return m_.rows(); }

    friend bool operator==(const Element& a, const Element& b) { return a.m_ == b.m_; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
    friend bool operator<(const Element& a, const Element& b) {
        const auto& x = a.m_.data();
        const auto& y = b.m_.data();
        if (x.size() != y.size()) return x.size() < y.size();
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i] != y[i]) return x[i] < y[i];
        }
        return false;
    }

    friend Element operator*(const Element& a, const Element& b) {
        return Element(a.m_ * b.m_);
    }

    // canonical encoding, usable as a hash key
    std::string encode() const {
        std::string out;
        for (const auto& s : m_.data()) {
            for (int m = 0; m < Scalar::basis_size; ++m) {
                out += s.coeff(m).get_str();
                out += ',';
            }
            out += ';';
        }
        return out;
    }

private:
    Matrix<Scalar> m_;
};

// Root vector in the simple-root basis.
using Root = std::vector<Scalar>;

inline bool root_less(const Root& a, const Root& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

inline std::string root_encode(const Root& r) {
    std::string out;
    for (const auto& s : r) {
        for (int m = 0; m < Scalar::basis_size; ++m) {
            out += s.coeff(m).get_str();
            out += ',';
        }
        out += ';';
    }
    return out;
}

enum class RootSign { Positive, Negative, Mixed };

inline RootSign root_sign(const Root& r) {
    bool nonneg = true, nonpos = true, nonzero = false;
    for (const auto& c : r) {
        int s = c.sign();
        if (s > 0) nonpos = false;
        if (s < 0) nonneg = false;
        if (s != 0) nonzero = true;
    }
    if (!nonzero) throw std::invalid_argument("zero vector is not a root");
    if (nonneg) return RootSign::Positive;
    if (nonpos) return RootSign::Negative;
    return RootSign::Mixed;
}

enum class BruhatDirection { Up, Down };

class CoxeterSystem {
public:
    explicit CoxeterSystem(CoxeterMatrix matrix) : cm_(std::move(matrix)) {
        int n = cm_.rank();
        gram_ = Matrix<Scalar>(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                gram_(i, j) = (i == j) ? Scalar(1) : cos_from_label(cm_.label(i, j));
        finite_ = positive_definite(gram_);
        irreducible_ = diagram_connected();
        simples_.reserve(n);
        for (int s = 0; s < n; ++s) {
            Matrix<Scalar> m = Matrix<Scalar>::identity(n);
            // sigma_s: v -> v - 2 B(e_s, v) e_s ; column j picks up -2 B(e_s, e_j) in row s
            for (int j = 0; j < n; ++j) m(s, j) -= Scalar(2) * gram_(s, j);
            simples_.push_back(Element(std::move(m)));
        }
        identity_ = Element(Matrix<Scalar>::identity(n));
    }

    int rank() const { return cm_.rank(); }
    const CoxeterMatrix& coxeter_matrix() const { return cm_; }
    const Matrix<Scalar>& gram() const { return gram_; }
    bool is_finite() const { return finite_; }
    bool is_irreducible() const { return irreducible_; }

    const Element& identity() const { return identity_; }
    const Element& simple(int s) const {
        if (s < 0 || s >= rank()) throw std::out_of_range("generator index out of range");
        return simples_[static_cast<size_t>(s)];
    }

    Element from_word(const std::vector<int>& word) const {
        Element w = identity_;
        for (int s : word) w = w * simple(s);
        return w;
    }

    // Generic matrix inverse; the Gram form may be degenerate (affine
    // systems), so Gram-transpose conjugation is not available in general.
    Element inverse(const Element& w) const { return Element(cox::inverse(w.matrix())); }

    Scalar bilinear(const Root& a, const Root& b) const {
        Scalar acc;
        for (int i = 0; i < rank(); ++i) {
            if (a[static_cast<size_t>(i)].is_zero()) continue;
            for (int j = 0; j < rank(); ++j)
                acc += a[static_cast<size_t>(i)] * gram_(i, j) * b[static_cast<size_t>(j)];
        }
        return acc;
    }

    Root simple_root(int s) const {
        Root r(static_cast<size_t>(rank()));
        r[static_cast<size_t>(s)] = Scalar(1);
        return r;
    }

    Root apply_to_root(const Element& w, const Root& r) const { return w.matrix().apply(r); }

    // reflection in the (unit-norm) root alpha: v -> v - 2 B(alpha, v) alpha
    Element reflection_from_root(const Root& alpha) const {
        int n = rank();
        Matrix<Scalar> m = Matrix<Scalar>::identity(n);
        for (int i = 0; i < n; ++i) {
            // coefficient of e_i gains -2 alpha_i B(alpha, e_j) in column j
            if (alpha[static_cast<size_t>(i)].is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                Scalar b;
                for (int k = 0; k < n; ++k)
                    b += alpha[static_cast<size_t>(k)] * gram_(k, j);
                m(i, j) -= Scalar(2) * alpha[static_cast<size_t>(i)] * b;
            }
        }
        return Element(std::move(m));
    }

    // Descent algorithm: repeatedly strip the smallest generator with
    // negative image. Yields the canonical reduced word.
    std::vector<int> reduced_word(Element w) const {
        std::vector<int> rev;
        while (!(w == identity_)) {
            int s = descent(w);
            if (s < 0) throw std::logic_error("descent failed: matrix is not a group element");
            w = w * simples_[static_cast<size_t>(s)];
            rev.push_back(s);
        }
        std::reverse(rev.begin(), rev.end());
        return rev;
    }

    int length(const Element& w) const { return static_cast<int>(reduced_word(w).size()); }

    // first generator s with w(e_s) negative, -1 if none (w = identity)
    int descent(const Element& w) const {
        for (int s = 0; s < rank(); ++s) {
            Root img = apply_to_root(w, simple_root(s));
            if (root_sign(img) == RootSign::Negative) return s;
        }
        return -1;
    }

    // If w is a reflection s_alpha, return its positive root. The candidate
    // roots are the inversion roots of w's reduced word; the true one is the
    // unique positive root sent to its negative.
    std::optional<Root> as_reflection(const Element& w) const {
        if (w == identity_) return std::nullopt;
        if (!(w * w == identity_)) return std::nullopt;
        std::vector<int> word = reduced_word(w);
        if (word.size() % 2 == 0) return std::nullopt;
        size_t m = word.size();
        for (size_t i = 0; i < m; ++i) {
            // beta_i = s_{word[m-1]} ... s_{word[i+1]} (e_{word[i]})
            Root beta = simple_root(word[i]);
            for (size_t j = i + 1; j < m; ++j)
                beta = apply_to_root(simple(word[j]), beta);
            Root img = apply_to_root(w, beta);
            bool negated = true;
            for (int k = 0; k < rank(); ++k)
                if (img[static_cast<size_t>(k)] != -beta[static_cast<size_t>(k)]) {
                    negated = false;
                    break;
                }
            if (!negated) continue;
            if (reflection_from_root(beta) == w) return beta;
        }
        return std::nullopt;
    }

    // N(w) = {t in T : l(wt) < l(w)} as {s_m, s_m s_{m-1} s_m, ...} from the
    // canonical reduced word s_1...s_m.
    std::vector<Element> inversion_set(const Element& w) const {
        std::vector<int> word = reduced_word(w);
        std::vector<Element> out;
        int m = static_cast<int>(word.size());
        for (int i = m - 1; i >= 0; --i) {
            // t_i = s_m ... s_{i+1} s_i s_{i+1} ... s_m (word positions, 1-based)
            Element suffix = identity_;
            for (int j = m - 1; j > i; --j) suffix = suffix * simple(word[static_cast<size_t>(j)]);
            Element suffix_rev = identity_;
            for (int j = i + 1; j < m; ++j) suffix_rev = suffix_rev * simple(word[static_cast<size_t>(j)]);
            out.push_back(suffix * simple(word[static_cast<size_t>(i)]) * suffix_rev);
        }
        return out;
    }

    BruhatDirection bruhat_direction(const Element& x, const Element& t) const {
        if (!as_reflection(t)) throw std::invalid_argument("bruhat_direction: t is not a reflection");
        return length(x * t) > length(x) ? BruhatDirection::Up : BruhatDirection::Down;
    }

    // Positive roots; only valid for finite systems.
    const std::vector<Root>& positive_roots() const {
        if (!finite_) throw std::logic_error("positive_roots: system is infinite");
        if (pos_roots_.empty()) {
            std::set<std::string> seen;
            std::vector<Root> frontier;
            for (int s = 0; s < rank(); ++s) {
                Root r = simple_root(s);
                seen.insert(root_encode(r));
                pos_roots_.push_back(r);
                frontier.push_back(std::move(r));
            }
            while (!frontier.empty()) {
                std::vector<Root> next;
                for (const auto& r : frontier)
                    for (int s = 0; s < rank(); ++s) {
                        Root img = apply_to_root(simple(s), r);
                        if (root_sign(img) != RootSign::Positive) continue;
                        if (seen.insert(root_encode(img)).second) {
                            pos_roots_.push_back(img);
                            next.push_back(std::move(img));
                        }
                    }
                frontier = std::move(next);
            }
            std::sort(pos_roots_.begin(), pos_roots_.end(), root_less);
        }
        return pos_roots_;
    }

    // All reflections of a finite system.
    std::vector<Element> reflections() const {
        std::vector<Element> out;
        for (const auto& r : positive_roots()) out.push_back(reflection_from_root(r));
        return out;
    }

    // BFS group enumeration by right multiplication; throws when the cap is
    // exceeded (needed by oracle tests only).
    std::vector<Element> enumerate(size_t cap = 100000) const {
        std::map<Element, bool> seen;
        std::vector<Element> order{identity_};
        seen.emplace(identity_, true);
        for (size_t i = 0; i < order.size(); ++i) {
            for (int s = 0; s < rank(); ++s) {
                Element next = order[i] * simple(s);
                if (seen.emplace(next, true).second) {
                    if (order.size() >= cap)
                        throw std::runtime_error("group enumeration cap exceeded");
                    order.push_back(std::move(next));
                }
            }
        }
        return order;
    }

private:
    bool positive_definite(const Matrix<Scalar>& g) const {
        // leading principal minors all > 0
        int n = g.rows();
        for (int k = 1; k <= n; ++k) {
            Matrix<Scalar> sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub(i, j) = g(i, j);
            if (determinant(sub).sign() <= 0) return false;
        }
        return true;
    }

    static Scalar determinant(Matrix<Scalar> m) {
        int n = m.rows();
        Scalar det(1);
        for (int col = 0; col < n; ++col) {
            int p = -1;
            for (int r = col; r < n; ++r)
                if (!m(r, col).is_zero()) {
                    p = r;
                    break;
                }
            if (p < 0) return Scalar(0);
            if (p != col) {
                for (int c = 0; c < n; ++c) std::swap(m(p, c), m(col, c));
                det = -det;
            }
            det *= m(col, col);
            Scalar inv = m(col, col).inverse();
            for (int r = col + 1; r < n; ++r) {
                if (m(r, col).is_zero()) continue;
                Scalar f = m(r, col) * inv;
                for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
            }
        }
        return det;
    }

    bool diagram_connected() const {
        int n = cm_.rank();
        if (n == 0) return true;
        std::vector<bool> vis(static_cast<size_t>(n), false);
        std::vector<int> stack{0};
        vis[0] = true;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < n; ++u) {
                int m = cm_.label(v, u);
                if (u != v && (m == 0 || m > 2) && !vis[static_cast<size_t>(u)]) {
                    vis[static_cast<size_t>(u)] = true;
                    ++count;
                    stack.push_back(u);
                }
            }
        }
        return count == n;
    }

    CoxeterMatrix cm_;
    Matrix<Scalar> gram_;
    bool finite_ = false;
    bool irreducible_ = false;
    std::vector<Element> simples_;
    Element identity_;
    mutable std::vector<Root> pos_roots_;
};

// Built-in Coxeter matrices. 0 encodes the infinite label. Affine names use
// a trailing 't' marker: At1, At2, Bt2, Ct2, Gt2 (the affine node is last).
CoxeterMatrix coxeter_matrix_catalog(const std::string& name);

inline CoxeterMatrix path_matrix(const std::vector<int>& labels) {
    int n = static_cast<int>(labels.size()) + 1;
    std::vector<std::vector<int>> m(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 2));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (int i = 0; i + 1 < n; ++i) {
        m[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = labels[static_cast<size_t>(i)];
        m[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = labels[static_cast<size_t>(i)];
    }
    return CoxeterMatrix(m);
}

inline CoxeterMatrix coxeter_matrix_catalog(const std::string& name) {
    if (name == "A1") return path_matrix({});
    if (name == "A2") return path_matrix({3});
    if (name == "A3") return path_matrix({3, 3});
    if (name == "A4") return path_matrix({3, 3, 3});
    if (name == "B2" || name == "C2") return path_matrix({4});
    if (name == "B3" || name == "C3") return path_matrix({3, 4});
    if (name == "B4" || name == "C4") return path_matrix({3, 3, 4});
    if (name == "G2") return path_matrix({6});
    if (name == "H3") return path_matrix({5, 3});
    if (name == "D4") {
        // node 1 is the branch node
        std::vector<std::vector<int>> m = {
            {1, 3, 2, 2}, {3, 1, 3, 3}, {2, 3, 1, 2}, {2, 3, 2, 1}};
        return CoxeterMatrix(m);
    }
    if (name == "At1") return CoxeterMatrix({{1, 0}, {0, 1}});
    if (name == "At2") return CoxeterMatrix({{1, 3, 3}, {3, 1, 3}, {3, 3, 1}});
    if (name == "Bt2" || name == "Ct2") return path_matrix({4, 4});
    if (name == "Gt2") return path_matrix({6, 3});
    if (name.rfind("I2(", 0) == 0 && name.back() == ')') {
        std::string inner = name.substr(3, name.size() - 4);
        int m = (inner == "inf" || inner == "0") ? 0 : std::stoi(inner);
        return path_matrix({m});
    }
    throw std::invalid_argument("unknown group type '" + name + "'");
}

} // namespace cox
