#include <hyperlog/shuffle.hpp>

#include <vector>

namespace hyperlog
{

void for_each_interleaving(const Word &u, const Word &v, const std::function<void(const Word &, std::int64_t)> &f)
{
    const std::size_t n = u.size();
    const std::size_t total = n + v.size();
    if (total >= 64) {
        const auto uv = shuffle(u, v);
        for (const auto &[w, c] : uv.terms()) {
            f(w, c);
        }
        return;
    }
    // One word per n-subset of positions taken by u, enumerated with
    // Gosper's hack.
    Word::storage buf(total);
    const std::uint64_t last = n == 0 ? 0 : ((std::uint64_t{1} << n) - 1) << (total - n);
    std::uint64_t mask = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
    for (;;) {
        std::size_t i = 0, j = 0;
        for (std::size_t k = 0; k < total; ++k) {
            buf[k] = (mask >> k) & 1U ? u[i++] : v[j++];
        }
        f(Word(buf), 1);
        if (mask == last) {
            break;
        }
        const std::uint64_t c = mask & (~mask + 1);
        const std::uint64_t rr = mask + c;
        mask = (((rr ^ mask) >> 2) / c) | rr;
    }
}

Polynomial<std::int64_t> shuffle(const Word &u, const Word &v)
{
    if (u.size() + v.size() >= 64) {
        // au' ⧢ bv' = a(u' ⧢ bv') + b(au' ⧢ v')
        Polynomial<std::int64_t> r;
        const auto left = shuffle(u.drop_front(), v);
        const auto right = shuffle(u, v.drop_front());
        for (const auto &[w, c] : left.terms()) {
            r.add_term(w.prepend(u.front()), c);
        }
        for (const auto &[w, c] : right.terms()) {
            r.add_term(w.prepend(v.front()), c);
        }
        return r;
    }
    std::map<Word, std::int64_t> acc;
    for_each_interleaving(u, v, [&](const Word &w, std::int64_t c) { acc[w] += c; });
    return Polynomial<std::int64_t>::from_terms(std::move(acc));
}

std::map<tensor_word, std::int64_t> coshuffle(const Word &w)
{
    // Expanding Δ(x1...xn) = prod (xk⊗1 + 1⊗xk) picks, for every position,
    // the side that receives the letter.
    const std::size_t n = w.size();
    if (n >= 32) {
        std::map<tensor_word, std::int64_t> acc{{{Word{}, Word{}}, 1}};
        for (std::size_t k = n; k-- > 0;) {
            std::map<tensor_word, std::int64_t> next;
            for (const auto &[pair, c] : acc) {
                next[{pair.first.prepend(w[k]), pair.second}] += c;
                next[{pair.first, pair.second.prepend(w[k])}] += c;
            }
            acc = std::move(next);
        }
        return acc;
    }
    std::map<tensor_word, std::int64_t> out;
    Word::storage left, right;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        left.clear();
        right.clear();
        for (std::size_t k = 0; k < n; ++k) {
            ((mask >> k) & 1U ? left : right).push_back(w[k]);
        }
        ++out[{Word(left), Word(right)}];
    }
    return out;
}

} // namespace hyperlog
