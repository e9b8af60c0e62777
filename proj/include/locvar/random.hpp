#pragma once

#include <random>
#include <string>

#include "locvar/regex.hpp"

namespace locvar {

/// Random regular expression over `alphabet` with nesting depth at most `depth`.
/// Literals dominate the leaves; ∅ and ε appear occasionally.
template <typename Rng>
Regex random_regex(Rng& rng, const Alphabet& alphabet, int depth) {
    std::uniform_int_distribution<int> pick(0, 99);
    const int r = pick(rng);
    if (depth <= 0 || r < 30) {
        if (r < 3) return Regex::empty();
        if (r < 7) return Regex::epsilon();
        std::uniform_int_distribution<std::size_t> letter(0, alphabet.size() - 1);
        return Regex::literal(alphabet[letter(rng)]);
    }
    if (r >= 80) return Regex::star(random_regex(rng, alphabet, depth - 1));
    // operands drawn in a fixed order so a seed always yields the same expression
    Regex left = random_regex(rng, alphabet, depth - 1);
    Regex right = random_regex(rng, alphabet, depth - 1);
    return r < 55 ? Regex::concat(std::move(left), std::move(right)) : Regex::alt(std::move(left), std::move(right));
}

}  // namespace locvar
