#ifndef HYPERLOG_RATFUN_HPP
#define HYPERLOG_RATFUN_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <hyperlog/gaussian.hpp>

namespace hyperlog
{

// Pairwise distinct singular points a_0, ..., a_{n-1}.
class PoleSet
{
public:
    PoleSet() = default;
    explicit PoleSet(std::vector<GaussianRational> points);

    std::size_t size() const noexcept
    {
        return m_points.size();
    }
    const GaussianRational &operator[](std::size_t i) const
    {
        return m_points.at(i);
    }
    const std::vector<GaussianRational> &points() const noexcept
    {
        return m_points;
    }
    std::optional<std::size_t> index_of(const GaussianRational &a) const;
    std::vector<std::complex<double>> numeric() const;

    friend bool operator==(const PoleSet &, const PoleSet &) = default;

private:
    std::vector<GaussianRational> m_points;
};

using pole_set_ptr = std::shared_ptr<const PoleSet>;

pole_set_ptr make_pole_set(std::vector<GaussianRational> points);

// Key of a principal-part coefficient: (pole index, order k >= 1) for the
// basis element (z - a_i)^{-k}.
using principal_key = std::pair<std::size_t, unsigned>;

// Rational function over Q(i) whose poles lie in a fixed PoleSet, kept in the
// normal form
//
//     sum_m c_m z^m  +  sum_{i,k} c_{i,k} (z - a_i)^{-k}
//
// with no stored zero coefficients. A value without a pole set is a
// polynomial and combines with values over any pole set.
class PoleRational
{
public:
    PoleRational() = default;
    PoleRational(GaussianRational constant);
    PoleRational(long constant) : PoleRational(GaussianRational(constant)) {}
    explicit PoleRational(pole_set_ptr poles) : m_poles(std::move(poles)) {}

    // c z^m
    static PoleRational monomial(GaussianRational c, unsigned m, pole_set_ptr poles = {});
    // c (z - a_i)^{-k}
    static PoleRational pole_term(pole_set_ptr poles, std::size_t i, unsigned k, GaussianRational c);
    // From raw parts; normalizes.
    static PoleRational from_parts(pole_set_ptr poles, std::vector<GaussianRational> poly, std::map<principal_key, GaussianRational> principal);

    const pole_set_ptr &poles() const noexcept
    {
        return m_poles;
    }
    const std::vector<GaussianRational> &poly() const noexcept
    {
        return m_poly;
    }
    const std::map<principal_key, GaussianRational> &principal() const noexcept
    {
        return m_principal;
    }

    bool is_zero() const noexcept
    {
        return m_poly.empty() && m_principal.empty();
    }
    bool is_constant() const noexcept
    {
        return m_principal.empty() && m_poly.size() <= 1;
    }
    GaussianRational constant_term() const
    {
        return m_poly.empty() ? GaussianRational() : m_poly.front();
    }
    GaussianRational principal_coefficient(std::size_t pole, unsigned order) const;
    // Highest pole order at pole i, 0 if regular there.
    unsigned pole_order(std::size_t pole) const;

    PoleRational operator-() const;
    PoleRational &operator+=(const PoleRational &o);
    PoleRational &operator-=(const PoleRational &o);
    PoleRational &operator*=(const PoleRational &o);

    friend PoleRational operator+(PoleRational a, const PoleRational &b)
    {
        return a += b;
    }
    friend PoleRational operator-(PoleRational a, const PoleRational &b)
    {
        return a -= b;
    }
    friend PoleRational operator*(const PoleRational &a, const PoleRational &b);
    friend PoleRational operator*(const GaussianRational &c, const PoleRational &f);

    friend bool operator==(const PoleRational &a, const PoleRational &b);

private:
    void normalize();
    const pole_set_ptr &common_poles(const PoleRational &o) const;

    pole_set_ptr m_poles;
    std::vector<GaussianRational> m_poly;
    std::map<principal_key, GaussianRational> m_principal;
};

PoleRational scale(const PoleRational &f, const GaussianRational &c);

PoleRational derivative(const PoleRational &f);

// Coefficient of (z - a_i)^{-1}.
GaussianRational residue(const PoleRational &f, std::size_t pole);

// F with derivative(F) = f and zero constant term. Throws
// residue_obstruction listing the poles with nonzero residue.
PoleRational rational_primitive(const PoleRational &f);

// Throws geometry_error at (or numerically on top of) a pole.
std::complex<double> evaluate(const PoleRational &f, std::complex<double> z);
GaussianRational evaluate(const PoleRational &f, const GaussianRational &z);

// Floating copy of a PoleRational for repeated evaluation.
class CompiledRational
{
public:
    CompiledRational() = default;
    explicit CompiledRational(const PoleRational &f);

    std::complex<double> operator()(std::complex<double> z) const;

private:
    struct Term {
        std::complex<double> pole;
        unsigned order;
        std::complex<double> coefficient;
    };
    std::vector<std::complex<double>> m_poly;
    std::vector<Term> m_terms;
    std::vector<std::complex<double>> m_poles;
};

// Canonical text: "poly: [c0, c1, ...]; pp: {(i,k): c, ...}".
std::string to_text(const PoleRational &f);
PoleRational parse_pole_rational(std::string_view text, pole_set_ptr poles);

// Human-readable sum such as "1/2*z^2 - 1/2/(z-1)^2" or "-1/z".
std::string to_pretty(const PoleRational &f);

} // namespace hyperlog

#endif
