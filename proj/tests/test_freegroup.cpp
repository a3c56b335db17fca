#include <doctest.h>

#include <algorithm>

#include "fgb/sphere.hpp"

using namespace fgb;

TEST_SUITE("freegroup") {

TEST_CASE("alphabet encoding and involution") {
    Alphabet A(2);
    CHECK(A.size() == 4);
    CHECK(A.q() == 3);
    CHECK(Alphabet::inv(0) == 1);
    CHECK(Alphabet::inv(1) == 0);
    CHECK(Alphabet::inv(2) == 3);
    CHECK(A.name(0) == 'a');
    CHECK(A.name(1) == 'A');
    CHECK(A.name(2) == 'b');
    CHECK(A.name(3) == 'B');
    for (Letter l = 0; l < A.size(); ++l) {
        CHECK(Alphabet::inv(Alphabet::inv(l)) == l);
        CHECK(A.parse_letter(A.name(l)) == l);
    }
    CHECK_THROWS_AS(Alphabet(0), ConfigError);
    CHECK_THROWS_AS(Alphabet(5), ConfigError);
    CHECK_THROWS_AS(A.parse_letter('c'), Error);  // k=2 has only a,b
}

TEST_CASE("word parsing, reduction, inversion") {
    Alphabet A(2);
    Word w = parse_word(A, "abA");
    CHECK(w.length() == 3);
    CHECK(format_word(A, w) == "abA");
    CHECK(format_word(A, Word()) == "e");

    CHECK_THROWS_AS(Word::from_reduced({0, 1}), Error);  // "aA" is not reduced

    // Cancellation cascades across the junction: abA·aB = ab·B = a.
    CHECK(reduced_mul(parse_word(A, "abA"), parse_word(A, "aB")) == parse_word(A, "a"));
    CHECK(reduced_mul(parse_word(A, "ab"), parse_word(A, "BA")) == Word());
    CHECK(reduced_mul(parse_word(A, "ab"), parse_word(A, "Ba")) == parse_word(A, "aa"));
    CHECK_THROWS_AS(parse_word(A, "abB"), Error);  // parse does not reduce
    CHECK(reduced_mul(Word(), parse_word(A, "b")) == parse_word(A, "b"));

    CHECK(inverse(parse_word(A, "abA")) == parse_word(A, "aBA"));
    CHECK(inverse(Word()) == Word());
    for (const Word& x : sphere(A, 3)) {
        CHECK(reduced_mul(x, inverse(x)) == Word());
        CHECK(reduced_mul(inverse(x), x) == Word());
    }
}

TEST_CASE("associativity of reduced multiplication on sampled triples") {
    Alphabet A(2);
    auto s2 = sphere(A, 2);
    for (const Word& x : s2)
        for (const Word& y : s2) {
            Word z = parse_word(A, "Ba");
            CHECK(reduced_mul(reduced_mul(x, y), z) == reduced_mul(x, reduced_mul(y, z)));
        }
}

TEST_CASE("common prefix length") {
    Alphabet A(2);
    CHECK(common_prefix_len(parse_word(A, "ab"), parse_word(A, "aB")) == 1);
    CHECK(common_prefix_len(parse_word(A, "ab"), parse_word(A, "ab")) == 2);
    CHECK(common_prefix_len(parse_word(A, "ab"), parse_word(A, "ba")) == 0);
    CHECK(common_prefix_len(Word(), parse_word(A, "ba")) == 0);
    CHECK(common_prefix_len(parse_word(A, "abab"), parse_word(A, "ab")) == 2);
}

TEST_CASE("sphere sizes at k=2") {
    Alphabet A(2);
    CHECK(num_words(A, 0) == 1);
    CHECK(num_words(A, 1) == 4);
    CHECK(num_words(A, 2) == 12);
    CHECK(num_words(A, 3) == 36);
    CHECK(num_words(A, 5) == 324);
    CHECK(num_words(A, 6) == 972);
    CHECK(sphere(A, 0).size() == 1);
    CHECK(sphere(A, 2).size() == 12);
    // Oracle from the constrained-enumeration contract.
    CHECK(sphere(A, 3, A.parse_letter('a'), A.parse_letter('A')).size() == 7);
    CHECK(sphere_count(A, 3, A.parse_letter('a'), A.parse_letter('A')) == 7);
}

TEST_CASE("constrained enumeration matches exact counts for k=2,3") {
    for (int k : {2, 3}) {
        Alphabet A(k);
        for (int n = 1; n <= 4; ++n) {
            for (Letter f = 0; f < A.size(); ++f)
                for (Letter g = 0; g < A.size(); ++g) {
                    auto words = sphere(A, n, f, g);
                    CHECK(static_cast<long long>(words.size()) == sphere_count(A, n, f, g));
                    for (const Word& w : words) {
                        CHECK(w.first() == f);
                        CHECK(w.last() != g);
                    }
                }
            CHECK(static_cast<long long>(sphere(A, n).size()) == num_words(A, n));
        }
    }
}

TEST_CASE("enumeration is lexicographic and matches rank/unrank") {
    Alphabet A(2);
    CHECK(format_word(A, sphere(A, 2).front()) == "aa");
    CHECK(format_word(A, sphere(A, 2).back()) == "BB");
    for (int n = 0; n <= 4; ++n) {
        auto words = sphere(A, n);
        CHECK(std::is_sorted(words.begin(), words.end()));
        for (long long i = 0; i < static_cast<long long>(words.size()); ++i) {
            CHECK(word_index(A, words[static_cast<std::size_t>(i)]) == i);
            CHECK(word_at(A, n, i) == words[static_cast<std::size_t>(i)]);
        }
    }
}

TEST_CASE("children of a word occupy a contiguous index block") {
    Alphabet A(2);
    for (int d : {1, 2, 3}) {
        auto words = sphere(A, d);
        for (long long p = 0; p < static_cast<long long>(words.size()); ++p) {
            const Word& w = words[static_cast<std::size_t>(p)];
            long long base = p * A.q();
            int child = 0;
            for (Letter l = 0; l < A.size(); ++l) {
                if (l == Alphabet::inv(w.last())) continue;
                std::vector<Letter> ls = w.letters();
                ls.push_back(l);
                CHECK(word_index(A, Word::from_reduced(ls)) == base + child);
                ++child;
            }
        }
    }
}

}  // TEST_SUITE
