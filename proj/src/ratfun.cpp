#include <hyperlog/ratfun.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <hyperlog/errors.hpp>

namespace hyperlog
{

residue_obstruction::residue_obstruction(std::vector<std::size_t> poles)
    : error("nonzero residue: primitive is not rational"), m_poles(std::move(poles))
{
}

PoleSet::PoleSet(std::vector<GaussianRational> points) : m_points(std::move(points))
{
    for (std::size_t i = 0; i < m_points.size(); ++i) {
        for (std::size_t j = i + 1; j < m_points.size(); ++j) {
            if (m_points[i] == m_points[j]) {
                throw std::invalid_argument("poles must be pairwise distinct");
            }
        }
    }
}

std::optional<std::size_t> PoleSet::index_of(const GaussianRational &a) const
{
    for (std::size_t i = 0; i < m_points.size(); ++i) {
        if (m_points[i] == a) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<std::complex<double>> PoleSet::numeric() const
{
    std::vector<std::complex<double>> out;
    out.reserve(m_points.size());
    for (const auto &p : m_points) {
        out.push_back(p.to_complex());
    }
    return out;
}

pole_set_ptr make_pole_set(std::vector<GaussianRational> points)
{
    return std::make_shared<const PoleSet>(std::move(points));
}

namespace
{

GaussianRational binomial(unsigned long n, unsigned long k)
{
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return GaussianRational(Rational(b));
}

// Coefficients of q(t) = p(t + a).
std::vector<GaussianRational> taylor_shift(std::vector<GaussianRational> q, const GaussianRational &a)
{
    if (q.size() < 2 || a.is_zero()) {
        return q;
    }
    const std::size_t n = q.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = n; j-- > i;) {
            q[j] += a * q[j + 1];
        }
    }
    return q;
}

void add_to(std::vector<GaussianRational> &poly, std::size_t m, const GaussianRational &c)
{
    if (poly.size() <= m) {
        poly.resize(m + 1);
    }
    poly[m] += c;
}

bool same_poles(const pole_set_ptr &a, const pole_set_ptr &b)
{
    return a == b || (a && b && *a == *b);
}

} // namespace

PoleRational::PoleRational(GaussianRational constant)
{
    if (!constant.is_zero()) {
        m_poly.push_back(std::move(constant));
    }
}

PoleRational PoleRational::monomial(GaussianRational c, unsigned m, pole_set_ptr poles)
{
    PoleRational f(std::move(poles));
    if (!c.is_zero()) {
        f.m_poly.resize(m + 1);
        f.m_poly[m] = std::move(c);
    }
    return f;
}

PoleRational PoleRational::pole_term(pole_set_ptr poles, std::size_t i, unsigned k, GaussianRational c)
{
    if (!poles || i >= poles->size()) {
        throw std::out_of_range("pole index out of range");
    }
    if (k == 0) {
        throw std::invalid_argument("pole order must be positive");
    }
    PoleRational f(std::move(poles));
    if (!c.is_zero()) {
        f.m_principal.emplace(principal_key{i, k}, std::move(c));
    }
    return f;
}

PoleRational PoleRational::from_parts(pole_set_ptr poles, std::vector<GaussianRational> poly, std::map<principal_key, GaussianRational> principal)
{
    PoleRational f(std::move(poles));
    for (const auto &[key, c] : principal) {
        if (!f.m_poles || key.first >= f.m_poles->size() || key.second == 0) {
            throw std::out_of_range("principal part references an unknown pole or order 0");
        }
    }
    f.m_poly = std::move(poly);
    f.m_principal = std::move(principal);
    f.normalize();
    return f;
}

void PoleRational::normalize()
{
    while (!m_poly.empty() && m_poly.back().is_zero()) {
        m_poly.pop_back();
    }
    std::erase_if(m_principal, [](const auto &kv) { return kv.second.is_zero(); });
}

const pole_set_ptr &PoleRational::common_poles(const PoleRational &o) const
{
    if (m_poles && o.m_poles && !same_poles(m_poles, o.m_poles)) {
        throw pole_set_mismatch();
    }
    return m_poles ? m_poles : o.m_poles;
}

GaussianRational PoleRational::principal_coefficient(std::size_t pole, unsigned order) const
{
    auto it = m_principal.find({pole, order});
    return it == m_principal.end() ? GaussianRational() : it->second;
}

unsigned PoleRational::pole_order(std::size_t pole) const
{
    unsigned k = 0;
    for (const auto &[key, c] : m_principal) {
        if (key.first == pole) {
            k = std::max(k, key.second);
        }
    }
    return k;
}

PoleRational PoleRational::operator-() const
{
    PoleRational r(m_poles);
    r.m_poly.reserve(m_poly.size());
    for (const auto &c : m_poly) {
        r.m_poly.push_back(-c);
    }
    for (const auto &[key, c] : m_principal) {
        r.m_principal.emplace(key, -c);
    }
    return r;
}

PoleRational &PoleRational::operator+=(const PoleRational &o)
{
    m_poles = common_poles(o);
    if (m_poly.size() < o.m_poly.size()) {
        m_poly.resize(o.m_poly.size());
    }
    for (std::size_t m = 0; m < o.m_poly.size(); ++m) {
        m_poly[m] += o.m_poly[m];
    }
    for (const auto &[key, c] : o.m_principal) {
        m_principal[key] += c;
    }
    normalize();
    return *this;
}

PoleRational &PoleRational::operator-=(const PoleRational &o)
{
    return *this += -o;
}

PoleRational &PoleRational::operator*=(const PoleRational &o)
{
    *this = *this * o;
    return *this;
}

PoleRational operator*(const PoleRational &f, const PoleRational &g)
{
    PoleRational r(f.common_poles(g));
    if (f.is_zero() || g.is_zero()) {
        return r;
    }
    const auto &poles = r.m_poles;

    // polynomial × polynomial
    if (!f.m_poly.empty() && !g.m_poly.empty()) {
        r.m_poly.resize(f.m_poly.size() + g.m_poly.size() - 1);
        for (std::size_t i = 0; i < f.m_poly.size(); ++i) {
            for (std::size_t j = 0; j < g.m_poly.size(); ++j) {
                r.m_poly[i + j] += f.m_poly[i] * g.m_poly[j];
            }
        }
    }

    // polynomial × principal term: write p(z) = q(t), t = z - a; low powers
    // of t fall into the principal part, the rest is shifted back to z.
    auto poly_times_pole = [&](const std::vector<GaussianRational> &p, const principal_key &key, const GaussianRational &c) {
        if (p.empty()) {
            return;
        }
        const auto &a = (*poles)[key.first];
        const unsigned k = key.second;
        auto q = taylor_shift(p, a);
        for (std::size_t j = 0; j < q.size() && j < k; ++j) {
            r.m_principal[{key.first, k - static_cast<unsigned>(j)}] += c * q[j];
        }
        if (q.size() > k) {
            std::vector<GaussianRational> rest(q.size() - k);
            for (std::size_t j = k; j < q.size(); ++j) {
                rest[j - k] = c * q[j];
            }
            rest = taylor_shift(std::move(rest), -a);
            for (std::size_t m = 0; m < rest.size(); ++m) {
                add_to(r.m_poly, m, rest[m]);
            }
        }
    };
    for (const auto &[key, c] : g.m_principal) {
        poly_times_pole(f.m_poly, key, c);
    }
    for (const auto &[key, c] : f.m_principal) {
        poly_times_pole(g.m_poly, key, c);
    }

    // principal × principal
    for (const auto &[kf, cf] : f.m_principal) {
        for (const auto &[kg, cg] : g.m_principal) {
            const GaussianRational c = cf * cg;
            if (kf.first == kg.first) {
                r.m_principal[{kf.first, kf.second + kg.second}] += c;
                continue;
            }
            // 1/((z-a)^j (z-b)^k) = sum_{n<j} (-1)^n C(k+n-1,n) (a-b)^{-k-n} (z-a)^{n-j}
            //                     + sum_{n<k} (-1)^n C(j+n-1,n) (b-a)^{-j-n} (z-b)^{n-k}
            const auto &a = (*poles)[kf.first];
            const auto &b = (*poles)[kg.first];
            const unsigned j = kf.second;
            const unsigned k = kg.second;
            const GaussianRational ab_inv = (a - b).inverse();
            const GaussianRational ba_inv = -ab_inv;
            for (unsigned n = 0; n < j; ++n) {
                GaussianRational t = binomial(k + n - 1, n) * ab_inv.pow(static_cast<long>(k + n)) * c;
                if (n % 2 == 1) {
                    t = -t;
                }
                r.m_principal[{kf.first, j - n}] += t;
            }
            for (unsigned n = 0; n < k; ++n) {
                GaussianRational t = binomial(j + n - 1, n) * ba_inv.pow(static_cast<long>(j + n)) * c;
                if (n % 2 == 1) {
                    t = -t;
                }
                r.m_principal[{kg.first, k - n}] += t;
            }
        }
    }

    r.normalize();
    return r;
}

PoleRational operator*(const GaussianRational &c, const PoleRational &f)
{
    return scale(f, c);
}

bool operator==(const PoleRational &a, const PoleRational &b)
{
    if (a.m_poly != b.m_poly || a.m_principal != b.m_principal) {
        return false;
    }
    return a.m_principal.empty() || same_poles(a.m_poles, b.m_poles);
}

PoleRational scale(const PoleRational &f, const GaussianRational &c)
{
    if (c.is_zero()) {
        return PoleRational(f.poles());
    }
    std::vector<GaussianRational> poly;
    poly.reserve(f.poly().size());
    for (const auto &x : f.poly()) {
        poly.push_back(c * x);
    }
    std::map<principal_key, GaussianRational> pp;
    for (const auto &[key, x] : f.principal()) {
        pp.emplace(key, c * x);
    }
    return PoleRational::from_parts(f.poles(), std::move(poly), std::move(pp));
}

PoleRational derivative(const PoleRational &f)
{
    std::vector<GaussianRational> poly;
    for (std::size_t m = 1; m < f.poly().size(); ++m) {
        poly.push_back(GaussianRational(static_cast<long>(m)) * f.poly()[m]);
    }
    std::map<principal_key, GaussianRational> pp;
    for (const auto &[key, c] : f.principal()) {
        pp.emplace(principal_key{key.first, key.second + 1}, GaussianRational(-static_cast<long>(key.second)) * c);
    }
    return PoleRational::from_parts(f.poles(), std::move(poly), std::move(pp));
}

GaussianRational residue(const PoleRational &f, std::size_t pole)
{
    if (f.poles() && pole >= f.poles()->size()) {
        throw std::out_of_range("pole index out of range");
    }
    return f.principal_coefficient(pole, 1);
}

PoleRational rational_primitive(const PoleRational &f)
{
    std::vector<std::size_t> obstructed;
    for (const auto &[key, c] : f.principal()) {
        if (key.second == 1) {
            obstructed.push_back(key.first);
        }
    }
    if (!obstructed.empty()) {
        throw residue_obstruction(std::move(obstructed));
    }
    std::vector<GaussianRational> poly;
    if (!f.poly().empty()) {
        poly.resize(f.poly().size() + 1);
        for (std::size_t m = 0; m < f.poly().size(); ++m) {
            poly[m + 1] = f.poly()[m] / GaussianRational(static_cast<long>(m + 1));
        }
    }
    std::map<principal_key, GaussianRational> pp;
    for (const auto &[key, c] : f.principal()) {
        const long k = key.second;
        pp.emplace(principal_key{key.first, key.second - 1}, c / GaussianRational(-(k - 1)));
    }
    return PoleRational::from_parts(f.poles(), std::move(poly), std::move(pp));
}

CompiledRational::CompiledRational(const PoleRational &f)
{
    for (const auto &c : f.poly()) {
        m_poly.push_back(c.to_complex());
    }
    for (const auto &[key, c] : f.principal()) {
        m_terms.push_back({(*f.poles())[key.first].to_complex(), key.second, c.to_complex()});
    }
    if (f.poles()) {
        m_poles = f.poles()->numeric();
    }
}

std::complex<double> CompiledRational::operator()(std::complex<double> z) const
{
    std::complex<double> acc = 0.0;
    for (auto it = m_poly.rbegin(); it != m_poly.rend(); ++it) {
        acc = acc * z + *it;
    }
    for (const auto &t : m_terms) {
        const auto d = z - t.pole;
        const double scale = std::max(1.0, std::abs(t.pole));
        if (std::abs(d) <= 64 * std::numeric_limits<double>::epsilon() * scale) {
            throw geometry_error("evaluation at a pole");
        }
        std::complex<double> p = d;
        for (unsigned k = 1; k < t.order; ++k) {
            p *= d;
        }
        acc += t.coefficient / p;
    }
    return acc;
}

std::complex<double> evaluate(const PoleRational &f, std::complex<double> z)
{
    return CompiledRational(f)(z);
}

GaussianRational evaluate(const PoleRational &f, const GaussianRational &z)
{
    GaussianRational acc;
    for (auto it = f.poly().rbegin(); it != f.poly().rend(); ++it) {
        acc = acc * z + *it;
    }
    for (const auto &[key, c] : f.principal()) {
        const auto d = z - (*f.poles())[key.first];
        if (d.is_zero()) {
            throw geometry_error("evaluation at a pole");
        }
        acc += c * d.pow(-static_cast<long>(key.second));
    }
    return acc;
}

std::string to_text(const PoleRational &f)
{
    std::ostringstream os;
    os << "poly: [";
    for (std::size_t m = 0; m < f.poly().size(); ++m) {
        os << (m ? ", " : "") << format_gaussian(f.poly()[m]);
    }
    os << "]; pp: {";
    bool first = true;
    for (const auto &[key, c] : f.principal()) {
        os << (first ? "" : ", ") << '(' << key.first << ',' << key.second << "): " << format_gaussian(c);
        first = false;
    }
    os << '}';
    return os.str();
}

namespace
{

std::string_view trim_view(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

// Text strictly between the delimiters that follow "label:".
std::optional<std::string_view> section(std::string_view text, std::string_view label, char open, char close)
{
    auto pos = text.find(label);
    if (pos == std::string_view::npos) {
        return std::nullopt;
    }
    auto o = text.find(open, pos + label.size());
    auto c = text.find(close, o);
    if (o == std::string_view::npos || c == std::string_view::npos) {
        throw parse_error("unbalanced '" + std::string(1, open) + "' in rational function text");
    }
    return text.substr(o + 1, c - o - 1);
}

std::vector<std::string_view> split_top(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '(') {
            ++depth;
        } else if (s[k] == ')') {
            --depth;
        } else if (s[k] == sep && depth == 0) {
            out.push_back(trim_view(s.substr(start, k - start)));
            start = k + 1;
        }
    }
    auto last = trim_view(s.substr(start));
    if (!last.empty() || !out.empty()) {
        out.push_back(last);
    }
    return out;
}

} // namespace

PoleRational parse_pole_rational(std::string_view text, pole_set_ptr poles)
{
    text = trim_view(text);
    std::vector<GaussianRational> poly;
    std::map<principal_key, GaussianRational> pp;
    const auto poly_text = section(text, "poly", '[', ']');
    const auto pp_text = section(text, "pp", '{', '}');
    if (!poly_text && !pp_text) {
        throw parse_error("expected 'poly: [...]' and/or 'pp: {...}'");
    }
    if (poly_text) {
        for (auto item : split_top(*poly_text, ',')) {
            poly.push_back(parse_gaussian(item));
        }
    }
    if (pp_text) {
        for (auto item : split_top(*pp_text, ',')) {
            auto close = item.find(')');
            if (item.empty() || item.front() != '(' || close == std::string_view::npos) {
                throw parse_error("malformed principal-part entry '" + std::string(item) + "'");
            }
            auto key = item.substr(1, close - 1);
            auto comma = key.find(',');
            auto colon = item.find(':', close);
            if (comma == std::string_view::npos || colon == std::string_view::npos) {
                throw parse_error("malformed principal-part entry '" + std::string(item) + "'");
            }
            std::size_t i = 0;
            unsigned k = 0;
            try {
                i = std::stoul(std::string(trim_view(key.substr(0, comma))));
                k = static_cast<unsigned>(std::stoul(std::string(trim_view(key.substr(comma + 1)))));
            } catch (const std::exception &) {
                throw parse_error("malformed principal-part key '" + std::string(key) + "'");
            }
            if (!poles || i >= poles->size() || k == 0) {
                throw parse_error("principal-part key (" + std::to_string(i) + "," + std::to_string(k) + ") does not name a pole");
            }
            pp[{i, k}] += parse_gaussian(item.substr(colon + 1));
        }
    }
    return PoleRational::from_parts(std::move(poles), std::move(poly), std::move(pp));
}

namespace
{

// Coefficient text and its sign, for use as a multiplicative prefix.
std::pair<bool, std::string> signed_coefficient(const GaussianRational &c)
{
    if (c.is_real()) {
        const bool neg = sgn(c.re()) < 0;
        return {neg, format_rational(abs(c.re()))};
    }
    if (sgn(c.re()) == 0) {
        const bool neg = sgn(c.im()) < 0;
        return {neg, format_gaussian(GaussianRational(Rational(0), abs(c.im())))};
    }
    return {false, "(" + format_gaussian(c) + ")"};
}

std::string pole_factor(const GaussianRational &a)
{
    if (a.is_zero()) {
        return "z";
    }
    if (a.is_real()) {
        return sgn(a.re()) > 0 ? "(z-" + format_rational(a.re()) + ")" : "(z+" + format_rational(abs(a.re())) + ")";
    }
    return "(z-(" + format_gaussian(a) + "))";
}

} // namespace

std::string to_pretty(const PoleRational &f)
{
    if (f.is_zero()) {
        return "0";
    }
    std::vector<std::pair<bool, std::string>> terms;
    for (std::size_t m = f.poly().size(); m-- > 0;) {
        const auto &c = f.poly()[m];
        if (c.is_zero()) {
            continue;
        }
        auto [neg, coef] = signed_coefficient(c);
        std::string t;
        if (m == 0) {
            t = coef;
        } else {
            std::string zp = m == 1 ? "z" : "z^" + std::to_string(m);
            t = coef == "1" ? zp : coef + "*" + zp;
        }
        terms.emplace_back(neg, t);
    }
    for (const auto &[key, c] : f.principal()) {
        auto [neg, coef] = signed_coefficient(c);
        std::string t = coef + "/" + pole_factor((*f.poles())[key.first]);
        if (key.second > 1) {
            t += "^" + std::to_string(key.second);
        }
        terms.emplace_back(neg, t);
    }
    std::string out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const auto &[neg, t] = terms[k];
        if (k == 0) {
            out += (neg ? "-" : "") + t;
        } else {
            out += (neg ? " - " : " + ") + t;
        }
    }
    return out;
}

} // namespace hyperlog
