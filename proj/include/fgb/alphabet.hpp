#pragma once

#include <string>

#include "fgb/errors.hpp"

namespace fgb {

/** A letter of the symmetric generating set, encoded as an int in [0, 2k). */
using Letter = int;

/**
 * The symmetric generating set A of the free group on k generators.
 *
 * Letters are encoded so that generator i is 2i and its inverse is 2i+1;
 * inversion is a XOR with 1. Printable names are a..d for generators and
 * A..D for inverses (k <= 4). q = 2k-1 is the branching degree of the
 * Cayley tree (every vertex except the root has q forward neighbours).
 */
class Alphabet {
public:
    explicit Alphabet(int k) : k_(k) {
        if (k < 1 || k > 4) throw ConfigError("Alphabet: k must be in [1,4], got " + std::to_string(k));
    }

    int k() const { return k_; }
    int size() const { return 2 * k_; }
    int q() const { return 2 * k_ - 1; }

    static Letter inv(Letter l) { return l ^ 1; }

    bool valid(Letter l) const { return l >= 0 && l < size(); }

    char name(Letter l) const {
        if (!valid(l)) throw Error("Alphabet::name: letter out of range");
        return static_cast<char>((l % 2 == 0) ? 'a' + l / 2 : 'A' + l / 2);
    }

    Letter parse_letter(char c) const {
        Letter l;
        if (c >= 'a' && c < 'a' + k_) l = 2 * (c - 'a');
        else if (c >= 'A' && c < 'A' + k_) l = 2 * (c - 'A') + 1;
        else throw Error(std::string("Alphabet::parse_letter: invalid letter '") + c + "'");
        return l;
    }

    bool operator==(const Alphabet& o) const { return k_ == o.k_; }

private:
    int k_;
};

}  // namespace fgb
