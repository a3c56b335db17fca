#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "fgb/alphabet.hpp"

namespace fgb {

/**
 * A freely reduced word over the symmetric generating set.
 *
 * The letter sequence is kept reduced (no adjacent l, inv(l)); all factory
 * functions and the group operations below preserve that invariant.
 */
class Word {
public:
    Word() = default;

    /** Wraps a letter sequence, asserting that it is already reduced. */
    static Word from_reduced(std::vector<Letter> ls) {
        for (std::size_t i = 0; i + 1 < ls.size(); ++i)
            if (ls[i + 1] == Alphabet::inv(ls[i]))
                throw Error("Word::from_reduced: sequence is not reduced");
        Word w;
        w.ls_ = std::move(ls);
        return w;
    }

    static Word single(Letter l) { return from_reduced({l}); }

    int length() const { return static_cast<int>(ls_.size()); }
    bool empty() const { return ls_.empty(); }
    const std::vector<Letter>& letters() const { return ls_; }
    Letter letter(int i) const { return ls_[static_cast<std::size_t>(i)]; }
    Letter first() const { return ls_.front(); }
    Letter last() const { return ls_.back(); }

    Word prefix(int n) const {
        Word w;
        w.ls_.assign(ls_.begin(), ls_.begin() + n);
        return w;
    }

    bool starts_with(const Word& p) const {
        return p.length() <= length() && std::equal(p.ls_.begin(), p.ls_.end(), ls_.begin());
    }

    bool ends_with_letter(Letter l) const { return !empty() && last() == l; }

    auto operator<=>(const Word&) const = default;

private:
    std::vector<Letter> ls_;
};

/** Product in the free group, with cancellation at the junction. */
inline Word reduced_mul(const Word& x, const Word& y) {
    const auto& a = x.letters();
    const auto& b = y.letters();
    std::size_t i = a.size(), j = 0;
    while (i > 0 && j < b.size() && b[j] == Alphabet::inv(a[i - 1])) { --i; ++j; }
    std::vector<Letter> out;
    out.reserve(i + (b.size() - j));
    out.insert(out.end(), a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return Word::from_reduced(std::move(out));
}

inline Word inverse(const Word& x) {
    std::vector<Letter> out(x.letters().rbegin(), x.letters().rend());
    for (auto& l : out) l = Alphabet::inv(l);
    return Word::from_reduced(std::move(out));
}

/** Length of the longest common prefix (Gromov product with base e). */
inline int common_prefix_len(const Word& x, const Word& y) {
    int n = std::min(x.length(), y.length());
    int i = 0;
    while (i < n && x.letter(i) == y.letter(i)) ++i;
    return i;
}

inline Word parse_word(const Alphabet& A, const std::string& s) {
    std::vector<Letter> ls;
    ls.reserve(s.size());
    for (char c : s) ls.push_back(A.parse_letter(c));
    return Word::from_reduced(std::move(ls));
}

inline std::string format_word(const Alphabet& A, const Word& w) {
    if (w.empty()) return "e";
    std::string s;
    for (Letter l : w.letters()) s.push_back(A.name(l));
    return s;
}

}  // namespace fgb
