#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sparkforge {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Ground field Q(i): pairs of exact rationals with i^2 = -1.
struct GaussRat {
    Rat re, im;

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(long r) : re(r) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat conj() const { return {re, -im}; }

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat& operator+=(const GaussRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        Rat r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    GaussRat inverse() const {
        Rat n = re * re + im * im;
        if (n == 0) throw Error("GaussRat: division by zero");
        return {re / n, -im / n};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * b.inverse(); }

    // total order for deterministic pivoting and map keys, not a field order
    friend bool operator<(const GaussRat& a, const GaussRat& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

inline GaussRat gauss_i() { return {Rat(0), Rat(1)}; }

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

std::string gauss_to_string(const GaussRat& g);
GaussRat gauss_from_string(const std::string& s);

inline std::string gauss_to_string(const GaussRat& g) {
    if (g.im == 0) return g.re.get_str();
    std::string s;
    if (g.re != 0) {
        s = g.re.get_str();
        if (g.im > 0) s += "+";
    }
    if (g.im == 1)
        s += "i";
    else if (g.im == -1)
        s += "-i";
    else
        s += g.im.get_str() + "i";
    return s;
}

/// Accepts "a", "bi", "a+bi", "a-bi" with a, b rational ("p/q").
inline GaussRat gauss_from_string(const std::string& s) {
    if (s.empty()) throw Error("empty number literal");
    if (s.back() != 'i') return GaussRat(rat_from_string(s));
    // find the split between real part and imaginary part: the last top-level +/- not
    // at position 0 and not directly after '/' (rationals never contain signs inside)
    std::string body = s.substr(0, s.size() - 1);
    size_t split = std::string::npos;
    for (size_t j = body.size(); j-- > 1;) {
        if (body[j] == '+' || body[j] == '-') {
            split = j;
            break;
        }
    }
    auto im_part = [&](std::string t) -> Rat {
        if (t.empty() || t == "+") return Rat(1);
        if (t == "-") return Rat(-1);
        if (t[0] == '+') t = t.substr(1);
        return rat_from_string(t);
    };
    if (split == std::string::npos) return {Rat(0), im_part(body)};
    return {rat_from_string(body.substr(0, split)), im_part(body.substr(split))};
}

// field-trait helpers so Gaussian and rational elimination share code
template <typename T>
inline bool is_zero(const T& x) {
    return x == T(0);
}
template <>
inline bool is_zero<GaussRat>(const GaussRat& x) {
    return x.is_zero();
}
template <typename T>
inline T field_inv(const T& x);
template <>
inline Rat field_inv<Rat>(const Rat& x) {
    if (x == 0) throw Error("division by zero");
    return 1 / x;
}
template <>
inline GaussRat field_inv<GaussRat>(const GaussRat& x) {
    return x.inverse();
}

}  // namespace sparkforge
