#ifndef HYPERLOG_POLYNOMIAL_HPP
#define HYPERLOG_POLYNOMIAL_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>

#include <hyperlog/words.hpp>

namespace hyperlog
{

// Finitely supported map Word -> C, C being the coefficient ring. A
// value-initialized C must be the ring's zero and C must be equality
// comparable; zero coefficients are never stored.
//
// Terms are kept in graded lexicographic order, so the last term carries the
// leading monomial.
template <typename C>
class Polynomial
{
public:
    using coefficient_type = C;
    using terms_type = std::map<Word, C>;

    Polynomial() = default;

    // c·1
    explicit Polynomial(C c)
    {
        add_term(Word{}, std::move(c));
    }

    static Polynomial monomial(Word w, C c = C(1))
    {
        Polynomial p;
        p.add_term(std::move(w), std::move(c));
        return p;
    }

    // Takes ownership of a term map; zero coefficients are dropped.
    static Polynomial from_terms(terms_type terms)
    {
        std::erase_if(terms, [](const auto &kv) { return kv.second == C{}; });
        Polynomial p;
        p.m_terms = std::move(terms);
        return p;
    }

    const terms_type &terms() const noexcept
    {
        return m_terms;
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }

    // Length of the longest word in the support; 0 for the zero polynomial.
    std::size_t degree() const
    {
        std::size_t d = 0;
        for (const auto &[w, c] : m_terms) {
            d = std::max(d, w.size());
        }
        return d;
    }

    C coefficient(const Word &w) const
    {
        auto it = m_terms.find(w);
        return it == m_terms.end() ? C{} : it->second;
    }

    void add_term(const Word &w, const C &c)
    {
        if (c == C{}) {
            return;
        }
        auto it = m_terms.find(w);
        if (it == m_terms.end()) {
            m_terms.emplace(w, c);
            return;
        }
        it->second += c;
        if (it->second == C{}) {
            m_terms.erase(it);
        }
    }

    Polynomial &operator+=(const Polynomial &other)
    {
        for (const auto &[w, c] : other.m_terms) {
            add_term(w, c);
        }
        return *this;
    }

    Polynomial &operator-=(const Polynomial &other)
    {
        for (const auto &[w, c] : other.m_terms) {
            add_term(w, -c);
        }
        return *this;
    }

    Polynomial operator-() const
    {
        Polynomial r;
        for (const auto &[w, c] : m_terms) {
            r.m_terms.emplace(w, -c);
        }
        return r;
    }

    // Scalar multiplication on the left, c·P.
    template <typename S>
    Polynomial scaled(const S &s) const
    {
        Polynomial r;
        for (const auto &[w, c] : m_terms) {
            r.add_term(w, s * c);
        }
        return r;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial &b)
    {
        a += b;
        return a;
    }
    friend Polynomial operator-(Polynomial a, const Polynomial &b)
    {
        a -= b;
        return a;
    }

    // Concatenation product.
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        Polynomial r;
        for (const auto &[u, cu] : a.m_terms) {
            for (const auto &[v, cv] : b.m_terms) {
                r.add_term(concat(u, v), cu * cv);
            }
        }
        return r;
    }

    friend bool operator==(const Polynomial &, const Polynomial &) = default;

private:
    terms_type m_terms;
};

} // namespace hyperlog

#endif
