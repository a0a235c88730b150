#ifndef HYPERLOG_SHUFFLE_HPP
#define HYPERLOG_SHUFFLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include <hyperlog/polynomial.hpp>
#include <hyperlog/words.hpp>

namespace hyperlog
{

// Shuffle product of two words: the sum of all order-preserving
// interleavings, each word weighted by the number of interleavings that
// produce it.
Polynomial<std::int64_t> shuffle(const Word &u, const Word &v);

// Calls f(word, multiplicity) for the interleavings of u and v. A word may be
// reported more than once.
void for_each_interleaving(const Word &u, const Word &v, const std::function<void(const Word &, std::int64_t)> &f);

// Bilinear extension to polynomials over any coefficient ring.
template <typename C>
Polynomial<C> shuffle(const Polynomial<C> &p, const Polynomial<C> &q)
{
    typename Polynomial<C>::terms_type acc;
    for (const auto &[u, cu] : p.terms()) {
        for (const auto &[v, cv] : q.terms()) {
            const C c = cu * cv;
            for_each_interleaving(u, v, [&](const Word &w, std::int64_t n) { acc[w] += C(n) * c; });
        }
    }
    return Polynomial<C>::from_terms(std::move(acc));
}

using tensor_word = std::pair<Word, Word>;

// Coshuffle coproduct, deduplicated: (u, v) -> multiplicity of u⊗v.
// Satisfies Δ(1) = 1⊗1 and Δ(xu) = (x⊗1 + 1⊗x)Δ(u).
std::map<tensor_word, std::int64_t> coshuffle(const Word &w);

} // namespace hyperlog

#endif
