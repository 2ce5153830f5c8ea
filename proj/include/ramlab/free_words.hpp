#pragma once
// Letters and words of a free group F_k, free reduction, lexicographic word
// enumeration, and evaluation of words as permutations (with fixed points).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ramlab/common.hpp"

namespace ramlab {

// One letter x_j (sign +1) or x_j^{-1} (sign -1); indices run 1..k.
struct Letter {
    int index = 1;
    int sign = +1;

    friend bool operator==(const Letter&, const Letter&) = default;
    // Lexicographic position: x_1 < x_1^{-1} < x_2 < x_2^{-1} < ...
    int lex_rank() const { return 2 * (index - 1) + (sign < 0 ? 1 : 0); }
};

// A word that may contain cancelling adjacent pairs.
struct RawWord {
    std::vector<Letter> letters;
    int alphabet_size = 1;
};

// A freely reduced word; the empty sequence is the identity.
struct ReducedWord {
    std::vector<Letter> letters;
    int alphabet_size = 1;

    bool empty() const { return letters.empty(); }
    int length() const { return static_cast<int>(letters.size()); }
    friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
};

// A permutation of {0, 1, ..., n-1} given by its image table.
struct Permutation {
    std::vector<int> images;

    int size() const { return static_cast<int>(images.size()); }
    int operator()(int x) const { return images[x]; }
    static Permutation identity(int n);
    Permutation inverse() const;
    bool is_valid() const;  // images is a bijection
    friend bool operator==(const Permutation&, const Permutation&) = default;
};

// Cancel adjacent x_j x_j^{-1} pairs until none remain. The result is the
// unique reduced form; reduction preserves word length parity.
ReducedWord reduce(const RawWord& raw);

// Convenience: view a reduced word as a raw word (e.g. for evaluation).
RawWord as_raw(const ReducedWord& w);

// Evaluate w(sigma_1..sigma_k) composing LEFT TO RIGHT: the first letter of
// w acts first, so (x1 x2)(p) = sigma_2(sigma_1(p)). All downstream modules
// inherit this convention. Throws std::invalid_argument on a size mismatch
// between the tuple and the word's alphabet, or unequal permutation sizes.
Permutation evaluate_word(const RawWord& w, const std::vector<Permutation>& sigmas);

// Apply a word to a single point (same composition order); cheaper than
// materialising the full image table when only orbits of points are needed.
int apply_word(const RawWord& w, const std::vector<Permutation>& sigmas, int point);

// |{x : p(x) = x}|.
int fixed_points(const Permutation& p);

enum class WordMode { Raw, Reduced };

// Visit every word of length t over F_k in lexicographic order:
// raw mode yields (2k)^t words, reduced mode 2k(2k-1)^{t-1} (t >= 1).
// Throws GuardError when the raw count exceeds the enumeration guard.
void for_each_word(int k, int t, WordMode mode,
                   const std::function<void(const RawWord&)>& visit);

// Materialised variant of for_each_word (test convenience).
std::vector<RawWord> enumerate_words(int k, int t, WordMode mode);

// Text form: `a`..`z` are x_1..x_26, `A`..`Z` their inverses ("" = identity).
std::string word_to_string(const RawWord& w);
std::string word_to_string(const ReducedWord& w);

// Parse the text form. alphabet_size is inferred as the largest letter used
// (at least 1) unless a larger k is supplied. Throws std::invalid_argument
// on non-alphabetic characters or letters beyond a supplied k.
RawWord parse_word(const std::string& text, int k = 0);
ReducedWord parse_reduced(const std::string& text, int k = 0);

// Sample a uniform permutation of {0..n-1} (Fisher-Yates, uniform_below).
Permutation random_permutation(int n, Rng& rng);

}  // namespace ramlab
