#pragma once

// Exact arithmetic in the real field Q(sqrt2, sqrt3, sqrt5).
//
// Every value is stored on the fixed 8-element basis
//   { 1, r2, r3, r6, r5, r10, r15, r30 }   (rN = sqrt(N))
// indexed by a 3-bit mask: bit0 <-> sqrt2, bit1 <-> sqrt3, bit2 <-> sqrt5.
// Coefficients are GMP rationals, always kept in canonical form, so
// equality is plain coefficient comparison.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cox {

using Rational = mpq_class;

class Scalar {
public:
    static constexpr int basis_size = 8;

    Scalar() = default;
    Scalar(long v) { c_[0] = v; canon(); }
    Scalar(const Rational& v) { c_[0] = v; canon(); }
    Scalar(long num, long den) { c_[0] = Rational(num, den); canon(); }

    static Scalar basis(int mask, const Rational& coeff = 1) {
        Scalar s;
        s.c_[mask] = coeff;
        s.canon();
        return s;
    }
    static Scalar sqrt2() { return basis(1); }
    static Scalar sqrt3() { return basis(2); }
    static Scalar sqrt5() { return basis(4); }

    // radicand of a basis element, e.g. mask 3 -> 6
    static long radicand(int mask) {
        long r = 1;
        if (mask & 1) r *= 2;
        if (mask & 2) r *= 3;
        if (mask & 4) r *= 5;
        return r;
    }

    const Rational& coeff(int mask) const { return c_[mask]; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (int m = 1; m < basis_size; ++m)
            if (c_[m] != 0) return false;
        return true;
    }
    const Rational& rational_part() const { return c_[0]; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // deterministic (non-numeric) ordering on canonical coefficients
    friend bool operator<(const Scalar& a, const Scalar& b) {
        for (int m = 0; m < basis_size; ++m) {
            int c = cmp(a.c_[m], b.c_[m]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    Scalar operator-() const {
        Scalar r;
        for (int m = 0; m < basis_size; ++m) r.c_[m] = -c_[m];
        r.canon();
        return r;
    }

    Scalar& operator+=(const Scalar& o) {
        for (int m = 0; m < basis_size; ++m) c_[m] += o.c_[m];
        canon();
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        for (int m = 0; m < basis_size; ++m) c_[m] -= o.c_[m];
        canon();
        return *this;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this * o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Scalar r;
        for (int i = 0; i < basis_size; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < basis_size; ++j) {
                if (b.c_[j] == 0) continue;
                // rI * rJ = radicand(I & J) * r(I ^ J)
                r.c_[i ^ j] += a.c_[i] * b.c_[j] * radicand(i & j);
            }
        }
        r.canon();
        return r;
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    // Field inverse via the Galois norm: flip signs of the three radicals in
    // all 7 nontrivial combinations, multiply, divide by the rational norm.
    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("Scalar: division by zero");
        Scalar p = Scalar(1);
        for (int g = 1; g < basis_size; ++g) p *= galois(g);
        Scalar norm = *this * p;
        if (!norm.is_rational() || norm.c_[0] == 0)
            throw std::logic_error("Scalar: norm computation failed");
        Rational inv_norm = 1 / norm.c_[0];
        Scalar r;
        for (int m = 0; m < basis_size; ++m) r.c_[m] = p.c_[m] * inv_norm;
        r.canon();
        return r;
    }

    // image under the automorphism negating the radicals selected by `flips`
    Scalar galois(int flips) const {
        Scalar r;
        for (int m = 0; m < basis_size; ++m) {
            int shared = m & flips;
            bool neg = (__builtin_popcount(static_cast<unsigned>(shared)) & 1) != 0;
            r.c_[m] = neg ? Rational(-c_[m]) : c_[m];
        }
        return r;
    }

    // Sign of the represented real number, decided by rational interval
    // refinement; the exact-zero case short-circuits on canonical form.
    int sign() const;

    bool is_positive() const { return sign() > 0; }
    bool is_negative() const { return sign() < 0; }

    std::string str() const;
    static Scalar parse(const std::string& text);

    // 50+ digit decimal evaluation (for oracle tests); prec in bits
    mpf_class approx(unsigned prec_bits = 256) const {
        mpf_class acc(0, prec_bits);
        for (int m = 0; m < basis_size; ++m) {
            if (c_[m] == 0) continue;
            mpf_class root(radicand(m), prec_bits);
            root = sqrt(root);
            acc += mpf_class(c_[m], prec_bits) * root;
        }
        return acc;
    }

private:
    void canon() {
        for (auto& x : c_) x.canonicalize();
    }

    std::array<Rational, basis_size> c_{};
};

namespace detail {

// rational interval enclosing sqrt(n), refined by bisection
struct RadicalInterval {
    Rational lo, hi;
    long n;

    explicit RadicalInterval(long n_) : n(n_) {
        lo = 1;
        hi = n_;
        if (hi < 1) hi = 1;
    }
    void refine() {
        Rational mid = (lo + hi) / 2;
        if (mid * mid >= n)
            hi = mid;
        else
            lo = mid;
    }
    Rational width() const { return hi - lo; }
};

} // namespace detail

inline int Scalar::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(c_[0]);

    std::array<detail::RadicalInterval, basis_size> iv = {
        detail::RadicalInterval(1), detail::RadicalInterval(2),
        detail::RadicalInterval(3), detail::RadicalInterval(6),
        detail::RadicalInterval(5), detail::RadicalInterval(10),
        detail::RadicalInterval(15), detail::RadicalInterval(30)};
    // initial width 10^-3 per basis radical
    Rational target(1, 1000);
    for (;;) {
        for (auto& r : iv)
            while (r.width() > target) r.refine();
        Rational lo = 0, hi = 0;
        for (int m = 0; m < basis_size; ++m) {
            if (c_[m] == 0) continue;
            if (c_[m] > 0) {
                lo += c_[m] * iv[m].lo;
                hi += c_[m] * iv[m].hi;
            } else {
                lo += c_[m] * iv[m].hi;
                hi += c_[m] * iv[m].lo;
            }
        }
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        target /= 2;
    }
}

inline std::string Scalar::str() const {
    static const char* sym[basis_size] = {"", "r2", "r3", "r6", "r5", "r10", "r15", "r30"};
    std::string out;
    for (int m = 0; m < basis_size; ++m) {
        if (c_[m] == 0) continue;
        Rational a = c_[m];
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (m == 0) {
            out += a.get_str();
        } else if (a == 1) {
            out += sym[m];
        } else {
            out += a.get_str();
            out += "*";
            out += sym[m];
        }
    }
    if (out.empty()) out = "0";
    return out;
}

inline Scalar Scalar::parse(const std::string& text) {
    // grammar: term (('+'|'-') term)* ; term: rational ['*' sym] | sym
    auto fail = [&]() -> Scalar {
        throw std::invalid_argument("Scalar: cannot parse '" + text + "'");
    };
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    auto sym_mask = [&](const std::string& s) -> int {
        static const char* sym[basis_size] = {"", "r2", "r3", "r6", "r5", "r10", "r15", "r30"};
        for (int m = 1; m < basis_size; ++m)
            if (s == sym[m]) return m;
        return -1;
    };
    Scalar result;
    bool first = true;
    while (true) {
        skip_ws();
        if (i >= text.size()) {
            if (first) return fail();
            break;
        }
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        } else if (!first) {
            return fail();
        }
        first = false;
        Rational coeff = 1;
        int mask = 0;
        if (i < text.size() && (isdigit(static_cast<unsigned char>(text[i])))) {
            size_t j = i;
            while (j < text.size() && (isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
            try {
                coeff = Rational(text.substr(i, j - i));
            } catch (...) {
                return fail();
            }
            coeff.canonicalize();
            i = j;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
                size_t k = i;
                while (k < text.size() && isalnum(static_cast<unsigned char>(text[k]))) ++k;
                mask = sym_mask(text.substr(i, k - i));
                if (mask < 0) return fail();
                i = k;
            }
        } else if (i < text.size() && text[i] == 'r') {
            size_t k = i;
            while (k < text.size() && isalnum(static_cast<unsigned char>(text[k]))) ++k;
            mask = sym_mask(text.substr(i, k - i));
            if (mask < 0) return fail();
            i = k;
        } else {
            return fail();
        }
        result += Scalar::basis(mask, sign * coeff);
        skip_ws();
    }
    return result;
}

// -cos(pi/m) for the supported edge labels; label 0 encodes infinity.
inline Scalar cos_from_label(int m) {
    switch (m) {
        case 2: return Scalar(0);
        case 3: return Scalar(-1, 2);
        case 4: return Scalar::basis(1, Rational(-1, 2));            // -r2/2
        case 5: return Scalar(-1, 4) + Scalar::basis(4, Rational(-1, 4)); // -(1+r5)/4
        case 6: return Scalar::basis(2, Rational(-1, 2));            // -r3/2
        case 0: return Scalar(-1);                                    // infinite label
        default:
            throw std::invalid_argument("unsupported Coxeter label m=" + std::to_string(m));
    }
}

} // namespace cox
