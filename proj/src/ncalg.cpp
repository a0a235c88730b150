#include <hyperlog/ncalg.hpp>

#include <cctype>

namespace hyperlog
{

Multiplier::Multiplier(Alphabet alphabet, pole_set_ptr poles, std::vector<PoleRational> terms)
    : m_alphabet(std::move(alphabet)), m_poles(std::move(poles)), m_terms(std::move(terms))
{
    if (m_terms.size() != m_alphabet.size()) {
        throw std::invalid_argument("multiplier needs exactly one term per letter");
    }
    if (!m_poles) {
        m_poles = make_pole_set({});
    }
    for (auto &u : m_terms) {
        if (u.poles() && !(*u.poles() == *m_poles)) {
            throw pole_set_mismatch();
        }
        // Re-anchor pure polynomials on the shared pole set.
        u = PoleRational(m_poles) + u;
    }

    std::vector<FuchsianTerm> form;
    for (const auto &u : m_terms) {
        if (!u.poly().empty() || u.principal().size() != 1 || u.principal().begin()->first.second != 1) {
            return;
        }
        form.push_back({u.principal().begin()->first.first, u.principal().begin()->second});
    }
    m_fuchsian = std::move(form);
}

Multiplier Multiplier::fuchsian(Alphabet alphabet, pole_set_ptr poles, const std::vector<FuchsianTerm> &terms)
{
    if (terms.size() != alphabet.size()) {
        throw std::invalid_argument("multiplier needs exactly one term per letter");
    }
    Multiplier m;
    m.m_alphabet = std::move(alphabet);
    m.m_poles = std::move(poles);
    for (const auto &t : terms) {
        m.m_terms.push_back(PoleRational::pole_term(m.m_poles, t.pole, 1, t.weight));
    }
    m.m_fuchsian = terms;
    return m;
}

Polynomial<PoleRational> coefficient_derivative(const Polynomial<PoleRational> &q)
{
    Polynomial<PoleRational> r;
    for (const auto &[w, c] : q.terms()) {
        r.add_term(w, derivative(c));
    }
    return r;
}

Polynomial<PoleRational> reduce(const Polynomial<PoleRational> &q, const Multiplier &m)
{
    for (const auto &[w, c] : q.terms()) {
        if (c.poles() && !c.principal().empty() && !(*c.poles() == *m.poles())) {
            throw pole_set_mismatch();
        }
    }
    Polynomial<PoleRational> r = coefficient_derivative(q);
    for (letter_index x = 0; x < m.size(); ++x) {
        const auto &ux = m.u(x);
        if (ux.is_zero()) {
            continue;
        }
        const auto stripped = left_residual(q, x);
        for (const auto &[w, c] : stripped.terms()) {
            r.add_term(w, ux * c);
        }
    }
    return r;
}

Polynomial<PoleRational> lift(const Polynomial<GaussianRational> &p, pole_set_ptr poles)
{
    Polynomial<PoleRational> r;
    for (const auto &[w, c] : p.terms()) {
        r.add_term(w, PoleRational(poles) + PoleRational(c));
    }
    return r;
}

Polynomial<std::complex<double>> evaluate_coefficients(const Polynomial<PoleRational> &p, std::complex<double> z)
{
    Polynomial<std::complex<double>> r;
    for (const auto &[w, c] : p.terms()) {
        r.add_term(w, evaluate(c, z));
    }
    return r;
}

namespace
{

// (negative?, coefficient prefix text without sign, needs '*')
struct coefficient_text {
    bool negative;
    std::string text;
};

coefficient_text describe(const GaussianRational &c)
{
    if (c.is_real()) {
        return {sgn(c.re()) < 0, format_rational(abs(c.re()))};
    }
    if (sgn(c.re()) == 0) {
        return {sgn(c.im()) < 0, format_gaussian(GaussianRational(Rational(0), abs(c.im())))};
    }
    return {false, "(" + format_gaussian(c) + ")"};
}

coefficient_text describe(const PoleRational &c)
{
    if (c.is_constant()) {
        return describe(c.constant_term());
    }
    return {false, "(" + to_pretty(c) + ")"};
}

template <typename C>
std::string format_terms(const Polynomial<C> &p, const Alphabet &alphabet)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto &[w, c] = *it;
        auto [neg, coef] = describe(c);
        std::string term;
        if (w.empty()) {
            term = coef;
        } else if (coef == "1") {
            term = format_word(w, alphabet);
        } else {
            term = coef + "*" + format_word(w, alphabet);
        }
        if (first) {
            out += (neg ? "-" : "") + term;
        } else {
            out += (neg ? " - " : " + ") + term;
        }
        first = false;
    }
    return out;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

PoleRational parse_coefficient(std::string_view text, const pole_set_ptr &poles)
{
    text = trim(text);
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
        auto inner = trim(text.substr(1, text.size() - 2));
        if (inner.find("poly") != std::string_view::npos || inner.find("pp") != std::string_view::npos) {
            return parse_pole_rational(inner, poles);
        }
        return PoleRational(parse_gaussian(inner));
    }
    return PoleRational(parse_gaussian(text));
}

} // namespace

std::string format_polynomial(const Polynomial<PoleRational> &p, const Alphabet &alphabet)
{
    return format_terms(p, alphabet);
}

std::string format_polynomial(const Polynomial<GaussianRational> &p, const Alphabet &alphabet)
{
    return format_terms(p, alphabet);
}

Polynomial<PoleRational> parse_polynomial(std::string_view text, const Alphabet &alphabet, pole_set_ptr poles)
{
    text = trim(text);
    if (text.empty()) {
        throw parse_error("empty polynomial");
    }
    Polynomial<PoleRational> p;
    if (text == "0") {
        return p;
    }

    // Split into signed terms at top-level + and -.
    std::vector<std::pair<bool, std::string_view>> terms;
    int depth = 0;
    bool negative = false;
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        auto t = trim(text.substr(start, end - start));
        if (t.empty()) {
            throw parse_error("empty term in polynomial '" + std::string(text) + "'");
        }
        terms.emplace_back(negative, t);
    };
    std::size_t k = 0;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        start = k = 1;
    }
    for (; k < text.size(); ++k) {
        const char ch = text[k];
        if (ch == '(') {
            ++depth;
        } else if (ch == ')') {
            --depth;
        } else if ((ch == '+' || ch == '-') && depth == 0) {
            // Signs inside exponents or right after an operator belong to a number.
            std::size_t prev = k;
            while (prev > start && std::isspace(static_cast<unsigned char>(text[prev - 1]))) {
                --prev;
            }
            if (prev == start) {
                // Unary sign opening a term, as in "a + -b".
                negative = negative != (ch == '-');
                start = k + 1;
                continue;
            }
            const char before = text[prev - 1];
            if (before == '*' || before == '/' || ((before == 'e' || before == 'E') && prev >= 2 && std::isdigit(static_cast<unsigned char>(text[prev - 2])))) {
                continue;
            }
            flush(k);
            negative = ch == '-';
            start = k + 1;
        }
    }
    if (depth != 0) {
        throw parse_error("unbalanced parentheses in polynomial '" + std::string(text) + "'");
    }
    flush(text.size());

    for (const auto &[neg, term] : terms) {
        PoleRational coef(1L);
        Word w;
        // Split at the last top-level '*'.
        std::size_t star = std::string_view::npos;
        depth = 0;
        for (std::size_t j = 0; j < term.size(); ++j) {
            if (term[j] == '(') {
                ++depth;
            } else if (term[j] == ')') {
                --depth;
            } else if (term[j] == '*' && depth == 0) {
                star = j;
            }
        }
        bool parsed = false;
        if (star != std::string_view::npos) {
            try {
                w = parse_word(term.substr(star + 1), alphabet);
                coef = parse_coefficient(term.substr(0, star), poles);
                parsed = true;
            } catch (const parse_error &) {
            }
        } else {
            try {
                w = parse_word(term, alphabet);
                parsed = true;
            } catch (const parse_error &) {
            }
        }
        if (!parsed) {
            w = Word{};
            coef = parse_coefficient(term, poles);
        }
        p.add_term(w, neg ? -coef : coef);
    }
    return p;
}

} // namespace hyperlog
