#include <hyperlog/words.hpp>

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include <hyperlog/errors.hpp>

namespace hyperlog
{

Word Word::prepend(letter_index x) const
{
    storage l;
    l.reserve(m_letters.size() + 1);
    l.push_back(x);
    l.insert(l.end(), m_letters.begin(), m_letters.end());
    return Word(std::move(l));
}

Word Word::append(letter_index x) const
{
    auto l = m_letters;
    l.push_back(x);
    return Word(std::move(l));
}

Word Word::drop_front() const
{
    if (empty()) {
        throw std::out_of_range("drop_front on the empty word");
    }
    return Word(m_letters.begin() + 1, m_letters.end());
}

Word Word::drop_back() const
{
    if (empty()) {
        throw std::out_of_range("drop_back on the empty word");
    }
    return Word(m_letters.begin(), m_letters.end() - 1);
}

std::strong_ordering operator<=>(const Word &u, const Word &v)
{
    if (auto c = u.size() <=> v.size(); c != 0) {
        return c;
    }
    const letter_index *a = u.letters().data();
    const letter_index *b = v.letters().data();
    for (std::size_t i = 0, n = u.size(); i < n; ++i) {
        if (a[i] != b[i]) {
            return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
        }
    }
    return std::strong_ordering::equal;
}

Word concat(const Word &u, const Word &v)
{
    Word::storage l;
    l.reserve(u.size() + v.size());
    l.insert(l.end(), u.begin(), u.end());
    l.insert(l.end(), v.begin(), v.end());
    return Word(std::move(l));
}

std::strong_ordering graded_lex_compare(const Word &u, const Word &v)
{
    return u <=> v;
}

std::strong_ordering graded_lex_compare(const Word &u, const Word &v, const Alphabet &alphabet)
{
    if (!alphabet.contains(u) || !alphabet.contains(v)) {
        throw std::invalid_argument("word not over the given alphabet");
    }
    return u <=> v;
}

Alphabet::Alphabet(std::vector<std::string> names) : m_names(std::move(names))
{
    if (m_names.empty()) {
        throw std::invalid_argument("an alphabet needs at least one letter");
    }
    std::set<std::string> seen;
    for (const auto &n : m_names) {
        if (n.empty() || n == "1" || n.find('.') != std::string::npos) {
            throw std::invalid_argument("invalid letter name '" + n + "'");
        }
        if (!seen.insert(n).second) {
            throw std::invalid_argument("duplicate letter name '" + n + "'");
        }
    }
}

Alphabet Alphabet::indexed(std::size_t n, std::string_view prefix)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(std::string(prefix) + std::to_string(i));
    }
    return Alphabet(std::move(names));
}

const std::string &Alphabet::name(letter_index i) const
{
    return m_names.at(i);
}

Letter Alphabet::letter(letter_index i) const
{
    return Letter{i, name(i)};
}

std::optional<letter_index> Alphabet::find(std::string_view name) const
{
    auto it = std::find(m_names.begin(), m_names.end(), name);
    if (it == m_names.end()) {
        return std::nullopt;
    }
    return static_cast<letter_index>(it - m_names.begin());
}

bool Alphabet::contains(const Word &w) const
{
    return std::all_of(w.begin(), w.end(), [&](letter_index x) { return x < m_names.size(); });
}

std::vector<Word> Alphabet::words_of_length(std::size_t length) const
{
    std::vector<Word> out{Word{}};
    for (std::size_t k = 0; k < length; ++k) {
        std::vector<Word> next;
        next.reserve(out.size() * size());
        for (const auto &w : out) {
            for (letter_index x = 0; x < size(); ++x) {
                next.push_back(w.append(x));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<Word> Alphabet::words_up_to(std::size_t max_length) const
{
    std::vector<Word> out;
    for (std::size_t n = 0; n <= max_length; ++n) {
        auto layer = words_of_length(n);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::size_t MultiDegree::count(letter_index a) const
{
    auto it = m_counts.find(a);
    return it == m_counts.end() ? 0 : it->second;
}

std::size_t MultiDegree::total() const
{
    std::size_t t = 0;
    for (const auto &[a, n] : m_counts) {
        t += n;
    }
    return t;
}

void MultiDegree::add(letter_index a, std::size_t n)
{
    if (n != 0) {
        m_counts[a] += n;
    }
}

bool MultiDegree::within(const MultiDegree &cap) const
{
    return std::all_of(m_counts.begin(), m_counts.end(), [&](const auto &kv) { return kv.second <= cap.count(kv.first); });
}

MultiDegree operator+(const MultiDegree &a, const MultiDegree &b)
{
    MultiDegree r = a;
    for (const auto &[x, n] : b.m_counts) {
        r.add(x, n);
    }
    return r;
}

std::size_t partial_degree(const Word &w, letter_index a)
{
    return static_cast<std::size_t>(std::count(w.begin(), w.end(), a));
}

MultiDegree multi_degree(const Word &w)
{
    MultiDegree d;
    for (auto x : w) {
        d.add(x);
    }
    return d;
}

namespace
{

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

} // namespace

Word parse_word(std::string_view text, const Alphabet &alphabet)
{
    text = trim(text);
    if (text.empty()) {
        throw parse_error("empty word text (the unit is spelled '1')");
    }
    if (text == "1") {
        return Word{};
    }
    std::vector<letter_index> letters;
    std::size_t start = 0;
    while (true) {
        auto dot = text.find('.', start);
        auto piece = trim(text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
        auto idx = alphabet.find(piece);
        if (!idx) {
            throw parse_error("unknown letter '" + std::string(piece) + "' in word '" + std::string(text) + "'");
        }
        letters.push_back(*idx);
        if (dot == std::string_view::npos) {
            break;
        }
        start = dot + 1;
    }
    return Word(std::move(letters));
}

std::string format_word(const Word &w, const Alphabet &alphabet)
{
    if (w.empty()) {
        return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i != 0) {
            out += '.';
        }
        out += alphabet.name(w[i]);
    }
    return out;
}

Alphabet infer_indexed_alphabet(const std::vector<std::string> &words)
{
    std::size_t max_index = 0;
    for (const auto &text : words) {
        auto t = trim(text);
        if (t == "1") {
            continue;
        }
        std::size_t start = 0;
        while (true) {
            auto dot = t.find('.', start);
            auto piece = trim(t.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
            std::size_t idx = 0;
            if (piece.size() < 2 || piece.front() != 'x') {
                throw parse_error("letter '" + std::string(piece) + "' is not of the form x<index>");
            }
            auto [p, ec] = std::from_chars(piece.data() + 1, piece.data() + piece.size(), idx);
            if (ec != std::errc{} || p != piece.data() + piece.size()) {
                throw parse_error("letter '" + std::string(piece) + "' is not of the form x<index>");
            }
            max_index = std::max(max_index, idx);
            if (dot == std::string_view::npos) {
                break;
            }
            start = dot + 1;
        }
    }
    return Alphabet::indexed(max_index + 1);
}

} // namespace hyperlog

std::size_t std::hash<hyperlog::Word>::operator()(const hyperlog::Word &w) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ull ^ w.size();
    for (auto x : w) {
        h = (h ^ x) * 0x100000001b3ull;
    }
    return h;
}
