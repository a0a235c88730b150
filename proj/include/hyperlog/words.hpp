#ifndef HYPERLOG_WORDS_HPP
#define HYPERLOG_WORDS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace hyperlog
{

using letter_index = std::uint32_t;

struct Letter {
    letter_index index;
    std::string name;
};

// A word of the free monoid, stored as a sequence of letter indices. The
// empty word is the unit.
//
// Comparison operators implement the graded lexicographic order: shorter
// words come first, equal-length words compare by the first differing
// letter, letters being ordered by index. Ordered containers keyed on Word
// are therefore sorted the way leading-monomial arguments need them.
class Word
{
public:
    using storage = boost::container::small_vector<letter_index, 12>;
    using const_iterator = storage::const_iterator;

    Word() = default;
    explicit Word(const std::vector<letter_index> &letters) : m_letters(letters.begin(), letters.end()) {}
    explicit Word(storage letters) : m_letters(std::move(letters)) {}
    template <typename It>
    Word(It first, It last) : m_letters(first, last)
    {
    }
    Word(std::initializer_list<letter_index> letters) : m_letters(letters) {}

    static Word letter(letter_index x)
    {
        return Word{x};
    }

    std::size_t size() const noexcept
    {
        return m_letters.size();
    }
    bool empty() const noexcept
    {
        return m_letters.empty();
    }
    letter_index operator[](std::size_t i) const
    {
        return m_letters[i];
    }
    letter_index front() const
    {
        return m_letters.front();
    }
    letter_index back() const
    {
        return m_letters.back();
    }
    const_iterator begin() const noexcept
    {
        return m_letters.begin();
    }
    const_iterator end() const noexcept
    {
        return m_letters.end();
    }
    std::span<const letter_index> letters() const noexcept
    {
        return {m_letters.data(), m_letters.size()};
    }

    // x·w
    Word prepend(letter_index x) const;
    // w·x
    Word append(letter_index x) const;
    // w with its first (resp. last) letter removed; the word must be nonempty.
    Word drop_front() const;
    Word drop_back() const;

    friend bool operator==(const Word &, const Word &) = default;
    friend std::strong_ordering operator<=>(const Word &u, const Word &v);

private:
    storage m_letters;
};

Word concat(const Word &u, const Word &v);

// Graded lexicographic comparison. The alphabet overload validates both words.
std::strong_ordering graded_lex_compare(const Word &u, const Word &v);

class Alphabet;
std::strong_ordering graded_lex_compare(const Word &u, const Word &v, const Alphabet &alphabet);

// An ordered, nonempty list of distinct letter names. Letter order is list
// position.
class Alphabet
{
public:
    explicit Alphabet(std::vector<std::string> names);

    // x0, x1, ..., x{n-1}
    static Alphabet indexed(std::size_t n, std::string_view prefix = "x");

    std::size_t size() const noexcept
    {
        return m_names.size();
    }
    const std::string &name(letter_index i) const;
    Letter letter(letter_index i) const;
    std::optional<letter_index> find(std::string_view name) const;
    const std::vector<std::string> &names() const noexcept
    {
        return m_names;
    }

    bool contains(const Word &w) const;

    // All words of length <= max_length, in graded lexicographic order.
    std::vector<Word> words_up_to(std::size_t max_length) const;
    // All words of exactly the given length, in lexicographic order.
    std::vector<Word> words_of_length(std::size_t length) const;

    friend bool operator==(const Alphabet &, const Alphabet &) = default;

private:
    std::vector<std::string> m_names;
};

// Finitely supported map letter -> count.
class MultiDegree
{
public:
    MultiDegree() = default;

    std::size_t count(letter_index a) const;
    std::size_t total() const;
    void add(letter_index a, std::size_t n = 1);
    const std::map<letter_index, std::size_t> &counts() const noexcept
    {
        return m_counts;
    }

    // Componentwise <=.
    bool within(const MultiDegree &cap) const;

    friend MultiDegree operator+(const MultiDegree &a, const MultiDegree &b);
    friend bool operator==(const MultiDegree &, const MultiDegree &) = default;

private:
    std::map<letter_index, std::size_t> m_counts;
};

std::size_t partial_degree(const Word &w, letter_index a);
MultiDegree multi_degree(const Word &w);

// Dot syntax: "x0.x1.x0"; the empty word is "1".
Word parse_word(std::string_view text, const Alphabet &alphabet);
std::string format_word(const Word &w, const Alphabet &alphabet);

// Smallest alphabet x0..x{k} able to spell every word given in dot syntax
// with letters named x<digits>.
Alphabet infer_indexed_alphabet(const std::vector<std::string> &words);

} // namespace hyperlog

template <>
struct std::hash<hyperlog::Word> {
    std::size_t operator()(const hyperlog::Word &w) const noexcept;
};

#endif
