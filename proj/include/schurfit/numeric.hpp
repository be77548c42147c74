#pragma once

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace schurfit::numeric {

/// Complex number whose real and imaginary parts are arbitrary-precision
/// rationals. Arithmetic never rounds; division by zero throws
/// std::domain_error.
///
/// Purely real values take a fast path in multiplication and division, which
/// is what the closed-form sums hit on real data.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long value) : re_(value) {}
    GaussRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }
    GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    /// Exact rational value of a finite double (binary64 values are dyadic).
    static GaussRational from_double(double re, double im = 0.0);

    const mpq_class& real() const { return re_; }
    const mpq_class& imag() const { return im_; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    GaussRational& operator/=(const GaussRational& o);

    GaussRational operator-() const { return GaussRational(-re_, -im_); }

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    mpq_class re_;
    mpq_class im_;
};

using Complex = std::complex<double>;

/// The two scalar fields every algorithm is written over. The numeric mode is
/// the type, so mixing modes in one expression does not compile.
template <class T>
concept Field = std::same_as<T, GaussRational> || std::same_as<T, Complex>;

template <class T>
inline constexpr bool is_exact_v = std::same_as<T, GaussRational>;

template <Field T>
constexpr std::string_view mode_name() {
    return is_exact_v<T> ? "exact" : "float";
}

inline GaussRational conj(const GaussRational& s) { return GaussRational(s.real(), -s.imag()); }
inline Complex conj(const Complex& s) { return std::conj(s); }

/// conj(s) * s; the imaginary part is exactly zero in both modes.
inline GaussRational magnitude_sq(const GaussRational& s) {
    if (s.is_real()) return GaussRational(s.real() * s.real());
    return GaussRational(s.real() * s.real() + s.imag() * s.imag());
}
inline Complex magnitude_sq(const Complex& s) { return Complex(std::norm(s), 0.0); }

inline bool is_zero(const GaussRational& s) { return s.is_zero(); }
inline bool is_zero(const Complex& s) { return s.real() == 0.0 && s.imag() == 0.0; }

inline Complex to_complex(const GaussRational& s) { return {s.real().get_d(), s.imag().get_d()}; }
inline Complex to_complex(const Complex& s) { return s; }

/// |s| as a double, for tolerances and reporting only.
template <Field T>
double magnitude(const T& s) {
    return std::abs(to_complex(s));
}

/// Real part of s, returned as a scalar of the same field.
inline GaussRational real_part(const GaussRational& s) { return GaussRational(s.real()); }
inline Complex real_part(const Complex& s) { return Complex(s.real(), 0.0); }

/// s^e by repeated squaring; s^0 == 1, including 0^0.
template <Field T>
T scalar_pow(T base, unsigned exponent) {
    T result(1);
    while (exponent != 0) {
        if (exponent & 1u) result *= base;
        exponent >>= 1;
        if (exponent != 0) base *= base;
    }
    return result;
}

// Literal forms: "3", "-3/4", "1.5", "2.5e-3", "2+3i", "1/2-1/3i", "i", "-i".
// Exact parsing of decimals is lossless; formatting round-trips in both modes.
GaussRational parse_exact(std::string_view text);
Complex parse_float(std::string_view text);

std::string format_scalar(const GaussRational& s);
std::string format_scalar(const Complex& s);

template <Field T>
T parse_scalar(std::string_view text) {
    if constexpr (is_exact_v<T>)
        return parse_exact(text);
    else
        return parse_float(text);
}

} // namespace schurfit::numeric
