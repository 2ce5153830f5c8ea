#include "ramlab/free_words.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ramlab {

// ---- Permutation ----

Permutation Permutation::identity(int n) {
    Permutation p;
    p.images.resize(n);
    for (int i = 0; i < n; ++i) p.images[i] = i;
    return p;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.images.resize(images.size());
    for (int i = 0; i < size(); ++i) p.images[images[i]] = i;
    return p;
}

bool Permutation::is_valid() const {
    std::vector<char> seen(images.size(), 0);
    for (int v : images) {
        if (v < 0 || v >= size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

// ---- reduction ----

ReducedWord reduce(const RawWord& raw) {
    ReducedWord out;
    out.alphabet_size = raw.alphabet_size;
    for (const Letter& l : raw.letters) {
        if (l.index < 1 || l.index > raw.alphabet_size)
            throw std::invalid_argument("reduce: letter outside alphabet");
        if (!out.letters.empty() && out.letters.back().index == l.index &&
            out.letters.back().sign == -l.sign) {
            out.letters.pop_back();
        } else {
            out.letters.push_back(l);
        }
    }
    return out;
}

RawWord as_raw(const ReducedWord& w) { return RawWord{w.letters, w.alphabet_size}; }

// ---- evaluation ----

Permutation evaluate_word(const RawWord& w, const std::vector<Permutation>& sigmas) {
    if (static_cast<int>(sigmas.size()) < w.alphabet_size)
        throw std::invalid_argument("evaluate_word: fewer permutations than letters");
    const int n = sigmas.empty() ? 0 : sigmas.front().size();
    for (const Permutation& s : sigmas)
        if (s.size() != n) throw std::invalid_argument("evaluate_word: permutation sizes differ");
    Permutation result = Permutation::identity(n);
    std::vector<int> next(n);
    for (const Letter& l : w.letters) {
        if (l.index < 1 || l.index > static_cast<int>(sigmas.size()))
            throw std::invalid_argument("evaluate_word: letter outside permutation tuple");
        // left-to-right: the first letter acts first
        const Permutation step = (l.sign > 0) ? sigmas[l.index - 1]
                                              : sigmas[l.index - 1].inverse();
        for (int i = 0; i < n; ++i) next[i] = step.images[result.images[i]];
        result.images.swap(next);
    }
    return result;
}

int apply_word(const RawWord& w, const std::vector<Permutation>& sigmas, int point) {
    int x = point;
    for (const Letter& l : w.letters) {
        if (l.index < 1 || l.index > static_cast<int>(sigmas.size()))
            throw std::invalid_argument("apply_word: letter outside permutation tuple");
        const Permutation& s = sigmas[l.index - 1];
        if (x < 0 || x >= s.size()) throw std::invalid_argument("apply_word: point out of range");
        // left-to-right: the first letter acts first
        if (l.sign > 0) {
            x = s.images[x];
        } else {
            // inverse image; linear scan avoided by precomputing would need
            // caller cooperation — inverse() per letter would be worse.
            x = static_cast<int>(std::find(s.images.begin(), s.images.end(), x) -
                                 s.images.begin());
        }
    }
    return x;
}

int fixed_points(const Permutation& p) {
    int c = 0;
    for (int i = 0; i < p.size(); ++i)
        if (p.images[i] == i) ++c;
    return c;
}

// ---- enumeration ----

namespace {

Letter letter_from_rank(int r) { return Letter{r / 2 + 1, (r % 2 == 0) ? +1 : -1}; }

}  // namespace

void for_each_word(int k, int t, WordMode mode,
                   const std::function<void(const RawWord&)>& visit) {
    if (k < 1 || t < 0) throw std::invalid_argument("for_each_word: k >= 1, t >= 0 required");
    const double raw_count = std::pow(2.0 * k, t);
    if (raw_count > static_cast<double>(enumeration_guard_limit()))
        throw GuardError("for_each_word: (2k)^t exceeds the enumeration guard");

    RawWord w;
    w.alphabet_size = k;
    w.letters.resize(t);
    // odometer over lex ranks 0..2k-1; reduced mode skips ranks cancelling
    // the previous letter
    std::vector<int> ranks(t, 0);
    const int base = 2 * k;

    auto cancels = [](int prev_rank, int rank) {
        return prev_rank / 2 == rank / 2 && prev_rank % 2 != rank % 2;
    };

    if (t == 0) {
        visit(w);
        return;
    }

    // position the odometer at the first admissible word
    for (int i = 0; i < t; ++i) {
        ranks[i] = 0;
        if (mode == WordMode::Reduced && i > 0 && cancels(ranks[i - 1], ranks[i])) ranks[i] = 1;
    }

    while (true) {
        for (int i = 0; i < t; ++i) w.letters[i] = letter_from_rank(ranks[i]);
        visit(w);

        // advance
        int pos = t - 1;
        while (pos >= 0) {
            ++ranks[pos];
            if (mode == WordMode::Reduced && pos > 0 && ranks[pos] < base &&
                cancels(ranks[pos - 1], ranks[pos]))
                ++ranks[pos];
            if (ranks[pos] < base) break;
            --pos;
        }
        if (pos < 0) return;
        for (int i = pos + 1; i < t; ++i) {
            ranks[i] = 0;
            if (mode == WordMode::Reduced && cancels(ranks[i - 1], ranks[i])) ranks[i] = 1;
        }
    }
}

std::vector<RawWord> enumerate_words(int k, int t, WordMode mode) {
    std::vector<RawWord> out;
    for_each_word(k, t, mode, [&](const RawWord& w) { out.push_back(w); });
    return out;
}

// ---- text form ----

namespace {

std::string letters_to_string(const std::vector<Letter>& letters) {
    std::string s;
    s.reserve(letters.size());
    for (const Letter& l : letters) {
        if (l.index > 26) throw std::invalid_argument("word_to_string: index beyond z");
        const char c = static_cast<char>('a' + l.index - 1);
        s += (l.sign > 0) ? c : static_cast<char>(c - 'a' + 'A');
    }
    return s;
}

}  // namespace

std::string word_to_string(const RawWord& w) { return letters_to_string(w.letters); }
std::string word_to_string(const ReducedWord& w) { return letters_to_string(w.letters); }

RawWord parse_word(const std::string& text, int k) {
    RawWord w;
    int max_index = 1;
    for (char c : text) {
        Letter l;
        if (c >= 'a' && c <= 'z') {
            l = Letter{c - 'a' + 1, +1};
        } else if (c >= 'A' && c <= 'Z') {
            l = Letter{c - 'A' + 1, -1};
        } else {
            throw std::invalid_argument(std::string("parse_word: bad character '") + c + "'");
        }
        if (k > 0 && l.index > k)
            throw std::invalid_argument("parse_word: letter beyond declared alphabet");
        max_index = std::max(max_index, l.index);
        w.letters.push_back(l);
    }
    w.alphabet_size = std::max(k, max_index);
    return w;
}

ReducedWord parse_reduced(const std::string& text, int k) { return reduce(parse_word(text, k)); }

// ---- sampling ----

Permutation random_permutation(int n, Rng& rng) {
    Permutation p = Permutation::identity(n);
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(p.images[i], p.images[j]);
    }
    return p;
}

}  // namespace ramlab
