#include "fgb/sphere.hpp"

#include <array>

namespace fgb {

long long num_words(const Alphabet& A, int n) {
    if (n < 0) throw Error("num_words: negative length");
    if (n == 0) return 1;
    long long d = A.size();
    for (int i = 1; i < n; ++i) d *= A.q();
    return d;
}

long long word_index(const Alphabet& A, const Word& w) {
    const int n = w.length();
    if (n == 0) return 0;
    long long idx = w.first();
    for (int i = 1; i < n; ++i) idx = idx * A.q() + letter_rank(w.letter(i - 1), w.letter(i));
    return idx;
}

Word word_at(const Alphabet& A, int n, long long idx) {
    if (n == 0) return Word();
    std::vector<Letter> ls(static_cast<std::size_t>(n));
    long long block = num_words(A, n) / A.size();
    ls[0] = static_cast<Letter>(idx / block);
    idx %= block;
    for (int i = 1; i < n; ++i) {
        block /= A.q();
        ls[static_cast<std::size_t>(i)] =
            letter_from_rank(ls[static_cast<std::size_t>(i - 1)], static_cast<int>(idx / block));
        idx %= block;
    }
    return Word::from_reduced(std::move(ls));
}

std::vector<Word> sphere(const Alphabet& A, int n,
                         std::optional<Letter> first,
                         std::optional<Letter> forbid_last) {
    std::vector<Word> out;
    if (n == 0) {
        if (!first) out.push_back(Word());
        return out;
    }
    std::vector<Letter> cur(static_cast<std::size_t>(n));
    // Depth-first lexicographic enumeration over letter values.
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            if (forbid_last && cur.back() == *forbid_last) return;
            out.push_back(Word::from_reduced(cur));
            return;
        }
        for (Letter l = 0; l < A.size(); ++l) {
            if (depth == 0) {
                if (first && l != *first) continue;
            } else if (l == Alphabet::inv(cur[static_cast<std::size_t>(depth - 1)])) {
                continue;
            }
            cur[static_cast<std::size_t>(depth)] = l;
            self(self, depth + 1);
        }
    };
    rec(rec, 0);
    return out;
}

long long sphere_count(const Alphabet& A, int n,
                       std::optional<Letter> first,
                       std::optional<Letter> forbid_last) {
    if (n == 0) return first ? 0 : 1;
    const int m = A.size();
    // counts[l] = number of admissible words of the current length ending in l.
    std::vector<long long> counts(static_cast<std::size_t>(m), 0);
    if (first) counts[static_cast<std::size_t>(*first)] = 1;
    else for (auto& c : counts) c = 1;
    for (int step = 1; step < n; ++step) {
        std::vector<long long> next(static_cast<std::size_t>(m), 0);
        long long total = 0;
        for (int l = 0; l < m; ++l) total += counts[static_cast<std::size_t>(l)];
        for (int l = 0; l < m; ++l)
            next[static_cast<std::size_t>(l)] =
                total - counts[static_cast<std::size_t>(Alphabet::inv(l))];
        counts.swap(next);
    }
    long long total = 0;
    for (int l = 0; l < m; ++l) {
        if (forbid_last && l == *forbid_last) continue;
        total += counts[static_cast<std::size_t>(l)];
    }
    return total;
}

}  // namespace fgb
