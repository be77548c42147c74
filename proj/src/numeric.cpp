#include "schurfit/numeric.hpp"

#include <charconv>
#include <cmath>
#include <regex>
#include <stdexcept>

namespace schurfit::numeric {

GaussRational GaussRational::from_double(double re, double im) {
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::invalid_argument("cannot represent a non-finite double exactly");
    return GaussRational(mpq_class(re), mpq_class(im));
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
    re_ += o.re_;
    if (!o.is_real()) im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
    re_ -= o.re_;
    if (!o.is_real()) im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    if (o.is_real()) {
        re_ *= o.re_;
        if (!is_real()) im_ *= o.re_;
        return *this;
    }
    if (is_real()) {
        im_ = re_ * o.im_;
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (o.is_real()) {
        re_ /= o.re_;
        if (!is_real()) im_ /= o.re_;
        return *this;
    }
    const mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
    im_ = (im_ * o.re_ - re_ * o.im_) / norm;
    re_ = std::move(re);
    return *this;
}

namespace {

const std::regex& rational_pattern() {
    static const std::regex re(R"(([+-]?)(\d+)/(\d+))");
    return re;
}

const std::regex& decimal_pattern() {
    static const std::regex re(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
    return re;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void malformed(std::string_view text) {
    throw std::invalid_argument("malformed scalar literal '" + std::string(text) + "'");
}

// Splits "re±imi" into its real and imaginary tokens. A missing part is
// returned empty; a bare "i" or "-i" yields the coefficient "+"/"-".
std::pair<std::string_view, std::string_view> split_complex(std::string_view text, bool& has_imag) {
    has_imag = !text.empty() && text.back() == 'i';
    if (!has_imag) return {text, {}};
    const std::string_view body = text.substr(0, text.size() - 1);
    for (std::size_t pos = body.size(); pos-- > 1;) {
        const char c = body[pos];
        if ((c == '+' || c == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E')
            return {body.substr(0, pos), body.substr(pos)};
    }
    return {{}, body};
}

mpq_class parse_exact_real(std::string_view token, std::string_view whole) {
    const std::string s(token);
    std::smatch m;
    if (std::regex_match(s, m, rational_pattern())) {
        mpz_class num(m[2].str(), 10), den(m[3].str(), 10);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return m[1].str() == "-" ? mpq_class(-q) : q;
    }
    if (std::regex_match(s, m, decimal_pattern()) && (m[2].length() > 0 || m[3].length() > 0)) {
        const std::string frac = m[3].str();
        const std::string digits = m[2].str() + frac;
        mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
        long exponent = -static_cast<long>(frac.size());
        if (m[4].matched) {
            const std::string e = m[4].str();
            if (e.size() > 6) malformed(whole);
            exponent += std::stol(e);
        }
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
        mpq_class q = exponent >= 0 ? mpq_class(mantissa * scale) : mpq_class(mantissa, scale);
        q.canonicalize();
        return m[1].str() == "-" ? mpq_class(-q) : q;
    }
    malformed(whole);
}

double parse_float_real(std::string_view token, std::string_view whole) {
    const std::string s(token);
    std::smatch m;
    if (std::regex_match(s, m, rational_pattern())) {
        const double num = std::stod(m[2].str());
        const double den = std::stod(m[3].str());
        if (den == 0.0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
        return m[1].str() == "-" ? -num / den : num / den;
    }
    if (std::regex_match(s, m, decimal_pattern()) && (m[2].length() > 0 || m[3].length() > 0)) {
        std::string_view digits = token;
        const bool negative = !digits.empty() && digits.front() == '-';
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc() || ptr != digits.data() + digits.size()) malformed(whole);
        return negative ? -value : value;
    }
    malformed(whole);
}

template <class Real, class ParseReal>
std::pair<Real, Real> parse_parts(std::string_view text, Real one, ParseReal parse_real) {
    const std::string_view t = trim(text);
    if (t.empty()) malformed(text);
    bool has_imag = false;
    const auto [re_tok, im_tok] = split_complex(t, has_imag);
    Real re(0), im(0);
    if (!re_tok.empty()) re = parse_real(re_tok, t);
    if (has_imag) {
        if (im_tok.empty() || im_tok == "+")
            im = one;
        else if (im_tok == "-")
            im = -one;
        else
            im = parse_real(im_tok, t);
    } else if (re_tok.empty()) {
        malformed(text);
    }
    return {re, im};
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("cannot format double");
    return std::string(buf, ptr);
}

} // namespace

GaussRational parse_exact(std::string_view text) {
    auto [re, im] = parse_parts<mpq_class>(text, mpq_class(1), parse_exact_real);
    return GaussRational(std::move(re), std::move(im));
}

Complex parse_float(std::string_view text) {
    const auto [re, im] = parse_parts<double>(text, 1.0, parse_float_real);
    return {re, im};
}

std::string format_scalar(const GaussRational& s) {
    if (s.is_real()) return s.real().get_str();
    std::string imag = s.imag().get_str() + "i";
    if (sgn(s.real()) == 0) return imag;
    if (sgn(s.imag()) > 0) imag.insert(imag.begin(), '+');
    return s.real().get_str() + imag;
}

std::string format_scalar(const Complex& s) {
    if (s.imag() == 0.0) return format_double(s.real());
    std::string imag = format_double(s.imag()) + "i";
    if (s.real() == 0.0 && !std::signbit(s.real())) return imag;
    if (!std::signbit(s.imag())) imag.insert(imag.begin(), '+');
    return format_double(s.real()) + imag;
}

} // namespace schurfit::numeric
