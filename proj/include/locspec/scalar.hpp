#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace locspec {

/// Exact Gaussian rational a + b*i with arbitrary-precision rational parts.
/// mpq_class keeps numerator/denominator coprime with positive denominator,
/// so every value is in canonical form by construction.
struct GaussianRational {
    mpq_class re;
    mpq_class im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(const mpq_class& r) : re(r), im(0) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long rn, long rd, long in_, long id) : re(rn, rd), im(in_, id) {
        re.canonicalize();
        im.canonicalize();
    }

    static GaussianRational unit_i() { return {mpq_class(0), mpq_class(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    /// |z|^2 as an exact rational.
    mpq_class norm2() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        mpq_class n2 = o.norm2();
        mpq_class r = (re * o.re + im * o.im) / n2;
        im = (im * o.re - re * o.im) / n2;
        re = r;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational inverse() const {
        if (is_zero()) throw std::domain_error("GaussianRational: inverse of zero");
        mpq_class n2 = norm2();
        return {re / n2, -im / n2};
    }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

namespace detail {

inline std::string rat_to_string(const mpq_class& q) { return q.get_str(); }

// RAT ::= ['-'] INT ['/' POSINT]
inline mpq_class parse_rat(std::string_view s, size_t& pos) {
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t dstart = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == dstart) throw std::invalid_argument("scalar parse error: expected digits at position " + std::to_string(pos));
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        size_t nstart = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == nstart) throw std::invalid_argument("scalar parse error: expected denominator at position " + std::to_string(pos));
    }
    mpq_class q(std::string(s.substr(start, pos - start)));
    q.canonicalize();
    if (q.get_den() <= 0) throw std::invalid_argument("scalar parse error: nonpositive denominator");
    return q;
}

}  // namespace detail

/// Parses the scalar grammar: `3`, `-1/2`, `2/3-5i`, `i`, `-i`, `1+i`.
inline GaussianRational parse_scalar(std::string_view s) {
    size_t pos = 0;
    // strip surrounding spaces
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) throw std::invalid_argument("scalar parse error: empty input");

    auto imag_unit = [&](size_t at, int sign) -> bool {
        return at < s.size() && s[at] == 'i' && at + 1 == s.size() && sign != 0;
    };
    (void)imag_unit;

    // pure "i", "-i", "+i"
    if (s == "i") return GaussianRational::unit_i();
    if (s == "-i") return {mpq_class(0), mpq_class(-1)};
    if (s == "+i") return GaussianRational::unit_i();

    mpq_class first;
    bool first_is_imag = false;
    if (s[pos] == 'i') {
        throw std::invalid_argument("scalar parse error: unexpected 'i'");
    }
    first = detail::parse_rat(s, pos);
    if (pos < s.size() && s[pos] == 'i') {
        ++pos;
        first_is_imag = true;
    }
    if (pos == s.size()) {
        return first_is_imag ? GaussianRational{mpq_class(0), first} : GaussianRational{first, mpq_class(0)};
    }
    if (first_is_imag) throw std::invalid_argument("scalar parse error: trailing text after imaginary part");
    if (s[pos] != '+' && s[pos] != '-')
        throw std::invalid_argument("scalar parse error: expected '+' or '-' at position " + std::to_string(pos));
    int sign = (s[pos] == '-') ? -1 : 1;
    ++pos;
    mpq_class imag;
    if (pos < s.size() && s[pos] == 'i') {
        imag = 1;  // "a+i" / "a-i"
        ++pos;
    } else {
        imag = detail::parse_rat(s, pos);
        if (imag < 0) throw std::invalid_argument("scalar parse error: signed imaginary magnitude");
        if (pos >= s.size() || s[pos] != 'i')
            throw std::invalid_argument("scalar parse error: expected 'i' at position " + std::to_string(pos));
        ++pos;
    }
    if (pos != s.size()) throw std::invalid_argument("scalar parse error: trailing text at position " + std::to_string(pos));
    return {first, sign < 0 ? mpq_class(-imag) : imag};
}

/// Renders in the same grammar; parse(render(z)) == z for every z.
inline std::string render_scalar(const GaussianRational& z) {
    if (z.im == 0) return detail::rat_to_string(z.re);
    std::string imag_part;
    mpq_class a = abs(z.im);
    if (a == 1)
        imag_part = "i";
    else
        imag_part = detail::rat_to_string(a) + "i";
    if (z.re == 0) return (z.im < 0 ? "-" : "") + imag_part;
    return detail::rat_to_string(z.re) + (z.im < 0 ? "-" : "+") + imag_part;
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << render_scalar(z); }

/// Exact square root over Q(i) when one exists.
/// Returns false when the value is not a perfect square in Q(i).
inline bool gaussian_sqrt(const GaussianRational& z, GaussianRational& out) {
    auto rat_sqrt = [](const mpq_class& q, mpq_class& r) -> bool {
        if (q < 0) return false;
        mpz_class num = q.get_num(), den = q.get_den();
        if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
        r = mpq_class(sn, sd);
        r.canonicalize();
        return true;
    };
    const mpq_class& c = z.re;
    const mpq_class& d = z.im;
    if (d == 0) {
        mpq_class r;
        if (c >= 0) {
            if (!rat_sqrt(c, r)) return false;
            out = {r, mpq_class(0)};
        } else {
            if (!rat_sqrt(mpq_class(-c), r)) return false;
            out = {mpq_class(0), r};
        }
        return true;
    }
    // w = p+qi with p^2-q^2 = c, 2pq = d; |w|^2 = sqrt(c^2+d^2) must be rational.
    mpq_class s;
    if (!rat_sqrt(c * c + d * d, s)) return false;
    mpq_class p2 = (c + s) / 2;
    mpq_class p;
    if (!rat_sqrt(p2, p) || p == 0) return false;
    mpq_class q = d / (2 * p);
    out = {p, q};
    if (out * out != z) return false;
    return true;
}

}  // namespace locspec
