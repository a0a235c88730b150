#include <hyperlog/gaussian.hpp>

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include <hyperlog/errors.hpp>

namespace hyperlog
{

namespace
{

std::string strip_spaces(std::string_view s)
{
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            out += c;
        }
    }
    return out;
}

bool is_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string s = strip_spaces(text);
    if (s.empty()) {
        throw parse_error("empty rational");
    }
    bool negative = false;
    std::string_view body = s;
    if (body.front() == '+' || body.front() == '-') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational q;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!is_digits(num) || !is_digits(den)) {
            throw parse_error("malformed rational '" + s + "'");
        }
        const mpz_class d(std::string(den), 10);
        if (d == 0) {
            throw parse_error("zero denominator in '" + s + "'");
        }
        q = Rational(mpz_class(std::string(num), 10), d);
        q.canonicalize();
    } else {
        // Exact decimal: mantissa digits with an optional point and exponent.
        std::string_view mant = body;
        long exponent = 0;
        if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
            mant = body.substr(0, e);
            auto ex = std::string(body.substr(e + 1));
            std::size_t used = 0;
            try {
                exponent = std::stol(ex, &used);
            } catch (const std::exception &) {
                throw parse_error("malformed exponent in '" + s + "'");
            }
            if (used != ex.size()) {
                throw parse_error("malformed exponent in '" + s + "'");
            }
        }
        std::string digits;
        if (auto dot = mant.find('.'); dot != std::string_view::npos) {
            auto ip = mant.substr(0, dot);
            auto fp = mant.substr(dot + 1);
            if ((!ip.empty() && !is_digits(ip)) || (!fp.empty() && !is_digits(fp)) || (ip.empty() && fp.empty())) {
                throw parse_error("malformed number '" + s + "'");
            }
            digits = std::string(ip) + std::string(fp);
            exponent -= static_cast<long>(fp.size());
        } else {
            if (!is_digits(mant)) {
                throw parse_error("malformed number '" + s + "'");
            }
            digits = std::string(mant);
        }
        mpz_class n(digits, 10);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        if (exponent >= 0) {
            q = Rational(n * scale);
        } else {
            q = Rational(n, scale);
            q.canonicalize();
        }
    }
    return negative ? Rational(-q) : q;
}

std::string format_rational(const Rational &q)
{
    return q.get_str();
}

GaussianRational GaussianRational::inverse() const
{
    const Rational n = norm();
    if (sgn(n) == 0) {
        throw std::domain_error("inverse of zero");
    }
    return {m_re / n, -m_im / n};
}

GaussianRational GaussianRational::pow(long n) const
{
    if (n < 0) {
        return inverse().pow(-n);
    }
    GaussianRational result(1);
    GaussianRational base = *this;
    while (n > 0) {
        if (n & 1) {
            result *= base;
        }
        n >>= 1;
        if (n > 0) {
            base *= base;
        }
    }
    return result;
}

GaussianRational &GaussianRational::operator+=(const GaussianRational &o)
{
    m_re += o.m_re;
    m_im += o.m_im;
    return *this;
}

GaussianRational &GaussianRational::operator-=(const GaussianRational &o)
{
    m_re -= o.m_re;
    m_im -= o.m_im;
    return *this;
}

GaussianRational &GaussianRational::operator*=(const GaussianRational &o)
{
    if (sgn(m_im) == 0 && sgn(o.m_im) == 0) {
        m_re *= o.m_re;
        return *this;
    }
    Rational re = m_re * o.m_re - m_im * o.m_im;
    Rational im = m_re * o.m_im + m_im * o.m_re;
    m_re = std::move(re);
    m_im = std::move(im);
    return *this;
}

GaussianRational &GaussianRational::operator/=(const GaussianRational &o)
{
    return *this *= o.inverse();
}

GaussianRational parse_gaussian(std::string_view text)
{
    std::string s = strip_spaces(text);
    if (s.empty()) {
        throw parse_error("empty complex rational");
    }
    if (s.back() != 'i') {
        return GaussianRational(parse_rational(s));
    }
    // Split at the last sign that is not leading and not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size() - 1; k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    std::string re_part = split == std::string::npos ? std::string() : s.substr(0, split);
    std::string im_part = split == std::string::npos ? s : s.substr(split);
    im_part.pop_back();
    if (!im_part.empty() && im_part.back() == '*') {
        im_part.pop_back();
    }
    Rational im;
    if (im_part.empty() || im_part == "+") {
        im = 1;
    } else if (im_part == "-") {
        im = -1;
    } else {
        im = parse_rational(im_part);
    }
    Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
    return {re, im};
}

std::string format_gaussian(const GaussianRational &z)
{
    if (z.is_real()) {
        return format_rational(z.re());
    }
    std::string im;
    const Rational a = abs(z.im());
    if (a == 1) {
        im = "i";
    } else {
        im = format_rational(a) + "*i";
    }
    if (sgn(z.re()) == 0) {
        return (sgn(z.im()) < 0 ? "-" : "") + im;
    }
    return format_rational(z.re()) + (sgn(z.im()) < 0 ? "-" : "+") + im;
}

GaussianRational parse_complex_pair(std::string_view text)
{
    std::string s = strip_spaces(text);
    auto comma = s.find(',');
    if (comma == std::string::npos) {
        return GaussianRational(parse_rational(s));
    }
    return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

std::ostream &operator<<(std::ostream &os, const GaussianRational &z)
{
    return os << format_gaussian(z);
}

} // namespace hyperlog
