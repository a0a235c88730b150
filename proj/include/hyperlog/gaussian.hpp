#ifndef HYPERLOG_GAUSSIAN_HPP
#define HYPERLOG_GAUSSIAN_HPP

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hyperlog
{

using Rational = mpq_class;

// Parses "p/q", an integer, or an exact decimal such as "0.25" or "1e-3".
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational &q);

// Exact element of Q(i).
class GaussianRational
{
public:
    GaussianRational() = default;
    GaussianRational(long n) : m_re(n) {}
    GaussianRational(Rational re) : m_re(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : m_re(std::move(re)), m_im(std::move(im)) {}

    static GaussianRational i()
    {
        return {Rational(0), Rational(1)};
    }

    const Rational &re() const noexcept
    {
        return m_re;
    }
    const Rational &im() const noexcept
    {
        return m_im;
    }

    bool is_zero() const
    {
        return sgn(m_re) == 0 && sgn(m_im) == 0;
    }
    bool is_real() const
    {
        return sgn(m_im) == 0;
    }

    GaussianRational conj() const
    {
        return {m_re, -m_im};
    }
    // |z|^2
    Rational norm() const
    {
        return m_re * m_re + m_im * m_im;
    }
    // Throws std::domain_error on zero.
    GaussianRational inverse() const;
    GaussianRational pow(long n) const;

    std::complex<double> to_complex() const
    {
        return {m_re.get_d(), m_im.get_d()};
    }

    GaussianRational operator-() const
    {
        return {-m_re, -m_im};
    }
    GaussianRational &operator+=(const GaussianRational &o);
    GaussianRational &operator-=(const GaussianRational &o);
    GaussianRational &operator*=(const GaussianRational &o);
    GaussianRational &operator/=(const GaussianRational &o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational &b)
    {
        return a += b;
    }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational &b)
    {
        return a -= b;
    }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational &b)
    {
        return a *= b;
    }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational &b)
    {
        return a /= b;
    }
    friend bool operator==(const GaussianRational &a, const GaussianRational &b)
    {
        return a.m_re == b.m_re && a.m_im == b.m_im;
    }

    // Total order by (re, im); only used to sort and deduplicate.
    friend bool lex_less(const GaussianRational &a, const GaussianRational &b)
    {
        return a.m_re < b.m_re || (a.m_re == b.m_re && a.m_im < b.m_im);
    }

private:
    Rational m_re{0};
    Rational m_im{0};
};

// Text form "p/q+r/s*i"; also accepts "i", "-2*i", "3", "0.5-0.25*i".
GaussianRational parse_gaussian(std::string_view text);
std::string format_gaussian(const GaussianRational &z);

// Exact value of a decimal "RE,IM" pair or of a single real.
GaussianRational parse_complex_pair(std::string_view text);

std::ostream &operator<<(std::ostream &os, const GaussianRational &z);

} // namespace hyperlog

#endif
