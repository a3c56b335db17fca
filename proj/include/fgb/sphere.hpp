#pragma once

#include <optional>
#include <vector>

#include "fgb/word.hpp"

namespace fgb {

/** Number of reduced words of length n (= dimension of the depth-n cylinder space). */
long long num_words(const Alphabet& A, int n);

/**
 * Lexicographic index of a reduced word among all words of its length.
 *
 * Order is by letter value: first letter picks a block of size q^{n-1},
 * each subsequent letter contributes its rank among the q letters allowed
 * after the previous one. Children of a word are contiguous at the next
 * depth, which keeps refinement/coarsening index maps trivial.
 */
long long word_index(const Alphabet& A, const Word& w);

/** Inverse of word_index: the idx-th reduced word of length n. */
Word word_at(const Alphabet& A, int n, long long idx);

/** Rank of letter l among the letters allowed after prev (all letters != inv(prev)). */
inline int letter_rank(Letter prev, Letter l) {
    Letter ip = Alphabet::inv(prev);
    return l - (l > ip ? 1 : 0);
}

/** Inverse of letter_rank. */
inline Letter letter_from_rank(Letter prev, int r) {
    Letter ip = Alphabet::inv(prev);
    return r + (r >= ip ? 1 : 0);
}

/**
 * The sphere of radius n, optionally restricted to words with a fixed first
 * letter and/or with a forbidden last letter, in lexicographic order.
 * Constraints require n >= 1; sphere(0) is {e}.
 */
std::vector<Word> sphere(const Alphabet& A, int n,
                         std::optional<Letter> first = std::nullopt,
                         std::optional<Letter> forbid_last = std::nullopt);

/** Exact cardinality of sphere(A, n, first, forbid_last), via integer path counts. */
long long sphere_count(const Alphabet& A, int n,
                       std::optional<Letter> first = std::nullopt,
                       std::optional<Letter> forbid_last = std::nullopt);

}  // namespace fgb
