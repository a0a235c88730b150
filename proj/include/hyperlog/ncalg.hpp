#ifndef HYPERLOG_NCALG_HPP
#define HYPERLOG_NCALG_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <hyperlog/errors.hpp>
#include <hyperlog/gaussian.hpp>
#include <hyperlog/polynomial.hpp>
#include <hyperlog/ratfun.hpp>
#include <hyperlog/words.hpp>

namespace hyperlog
{

// Fuchsian shape of a multiplier term: u_x = weight / (z - a_pole).
struct FuchsianTerm {
    std::size_t pole;
    GaussianRational weight;
};

// M = sum_x u_x x, one pole-localized rational per letter.
class Multiplier
{
public:
    // The Fuchsian form is detected: present iff every u_x is a single simple
    // pole term.
    Multiplier(Alphabet alphabet, pole_set_ptr poles, std::vector<PoleRational> terms);

    // u_x = weight_x / (z - a_x). A zero weight is kept in the form.
    static Multiplier fuchsian(Alphabet alphabet, pole_set_ptr poles, const std::vector<FuchsianTerm> &terms);

    const Alphabet &alphabet() const noexcept
    {
        return m_alphabet;
    }
    const pole_set_ptr &poles() const noexcept
    {
        return m_poles;
    }
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }
    const PoleRational &u(letter_index x) const
    {
        return m_terms.at(x);
    }
    const std::vector<PoleRational> &terms() const noexcept
    {
        return m_terms;
    }
    const std::optional<std::vector<FuchsianTerm>> &fuchsian_form() const noexcept
    {
        return m_fuchsian;
    }

private:
    Multiplier() = default;

    Alphabet m_alphabet{std::vector<std::string>{"x0"}};
    pole_set_ptr m_poles;
    std::vector<PoleRational> m_terms;
    std::optional<std::vector<FuchsianTerm>> m_fuchsian;
};

// ⟨S|P⟩ = sum_w ⟨S|w⟩⟨P|w⟩, S being any lookup Word -> const V* (nullptr when
// the coefficient is unknown). Throws unresolvable_word.
template <typename Lookup, typename C>
auto pair(const Lookup &lookup, const Polynomial<C> &p)
{
    using V = std::remove_cvref_t<decltype(*lookup(std::declval<const Word &>()))>;
    using R = decltype(std::declval<const V &>() * std::declval<const C &>());
    R acc{};
    for (const auto &[w, c] : p.terms()) {
        const V *s = lookup(w);
        if (s == nullptr) {
            throw unresolvable_word("coefficient oracle has no value for a word of length " + std::to_string(w.size()));
        }
        acc += (*s) * c;
    }
    return acc;
}

template <typename V, typename C>
auto pair(const std::map<Word, V> &s, const Polynomial<C> &p)
{
    return pair(
        [&](const Word &w) -> const V * {
            auto it = s.find(w);
            return it == s.end() ? nullptr : &it->second;
        },
        p);
}

// ≺-greatest word of the support. Throws std::invalid_argument on zero.
template <typename C>
const Word &leading_monomial(const Polynomial<C> &p)
{
    if (p.is_zero()) {
        throw std::invalid_argument("leading monomial of the zero polynomial");
    }
    return p.terms().rbegin()->first;
}

template <typename C>
Word leading_monomial(const Polynomial<C> &p, const Alphabet &alphabet)
{
    for (const auto &[w, c] : p.terms()) {
        if (!alphabet.contains(w)) {
            throw std::invalid_argument("polynomial not over the given alphabet");
        }
    }
    return leading_monomial(p);
}

template <typename C>
const C &leading_coefficient(const Polynomial<C> &p)
{
    if (p.is_zero()) {
        throw std::invalid_argument("leading coefficient of the zero polynomial");
    }
    return p.terms().rbegin()->second;
}

inline GaussianRational coefficient_inverse(const GaussianRational &c)
{
    return c.inverse();
}

inline std::complex<double> coefficient_inverse(const std::complex<double> &c)
{
    return 1.0 / c;
}

// Only constant pole-localized rationals are invertible inside the normal form.
inline PoleRational coefficient_inverse(const PoleRational &c)
{
    if (!c.is_constant() || c.is_zero()) {
        throw std::domain_error("leading coefficient is not an invertible constant");
    }
    return PoleRational(c.constant_term().inverse());
}

// P divided by its leading coefficient.
template <typename C>
Polynomial<C> monic_normalize(const Polynomial<C> &p)
{
    return p.scaled(coefficient_inverse(leading_coefficient(p)));
}

// x†P: terms x·w become w; other terms are dropped.
template <typename C>
Polynomial<C> left_residual(const Polynomial<C> &p, letter_index x)
{
    Polynomial<C> r;
    for (const auto &[w, c] : p.terms()) {
        if (!w.empty() && w.front() == x) {
            r.add_term(w.drop_front(), c);
        }
    }
    return r;
}

// P x†: terms w·x become w; other terms are dropped.
template <typename C>
Polynomial<C> right_residual(const Polynomial<C> &p, letter_index x)
{
    Polynomial<C> r;
    for (const auto &[w, c] : p.terms()) {
        if (!w.empty() && w.back() == x) {
            r.add_term(w.drop_back(), c);
        }
    }
    return r;
}

// Checks P = ⟨P|1⟩ + sum_x (P x†) x exactly.
template <typename C>
bool reconstruction_check(const Polynomial<C> &p)
{
    std::set<letter_index> last_letters;
    for (const auto &[w, c] : p.terms()) {
        if (!w.empty()) {
            last_letters.insert(w.back());
        }
    }
    Polynomial<C> rebuilt(p.coefficient(Word{}));
    for (auto x : last_letters) {
        const auto stripped = right_residual(p, x);
        for (const auto &[w, c] : stripped.terms()) {
            rebuilt.add_term(w.append(x), c);
        }
    }
    return rebuilt == p;
}

// Coefficientwise derivative d(Q).
Polynomial<PoleRational> coefficient_derivative(const Polynomial<PoleRational> &q);

// D(Q) = d(Q) + M†Q with M†Q = sum_x u_x (x†Q). For every solution S of
// d(S) = MS one has d⟨S|Q⟩ = ⟨S|D(Q)⟩.
Polynomial<PoleRational> reduce(const Polynomial<PoleRational> &q, const Multiplier &m);

// Lift exact constant coefficients into the pole-localized ring.
Polynomial<PoleRational> lift(const Polynomial<GaussianRational> &p, pole_set_ptr poles = {});

// Coefficients evaluated at a point.
Polynomial<std::complex<double>> evaluate_coefficients(const Polynomial<PoleRational> &p, std::complex<double> z);

// Inline form "x1.x0 + x0.x1 + 2*x1 - 1/2*x0", leading term first.
std::string format_polynomial(const Polynomial<PoleRational> &p, const Alphabet &alphabet);
std::string format_polynomial(const Polynomial<GaussianRational> &p, const Alphabet &alphabet);

// Accepts "c * w" terms joined by + or -. A coefficient is a Gaussian
// rational, a decimal, or "(poly: [...]; pp: {...})"; it defaults to 1.
Polynomial<PoleRational> parse_polynomial(std::string_view text, const Alphabet &alphabet, pole_set_ptr poles = {});

} // namespace hyperlog

#endif
