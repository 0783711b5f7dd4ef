#include <doctest.h>

#include <set>
#include <stdexcept>

#include "symfix/bitpal.hpp"
#include "symfix/code.hpp"
#include "symfix/error.hpp"
#include "util.hpp"

using namespace symfix;
using testutil::bs;
using testutil::words;

TEST_SUITE("bitstring") {
    TEST_CASE("parse and print round trip") {
        for (const char* s : {"0", "1", "0110", "10001", "1111111111111111111111111111111111111111111111111111111111111111"})
            CHECK(bs(s).str() == s);
        CHECK_THROWS_AS(Bitstring::parse(""), std::invalid_argument);
        CHECK_THROWS_AS(Bitstring::parse("012"), std::invalid_argument);
        CHECK_THROWS_AS(Bitstring::parse(std::string(65, '0')), std::invalid_argument);
        CHECK_THROWS_AS(Bitstring(4, 2), std::invalid_argument);
    }

    TEST_CASE("equality needs equal length") {
        CHECK(bs("0") != bs("00"));
        CHECK(bs("01") == Bitstring(1, 2));
    }

    TEST_CASE("canonical order is length then lexicographic") {
        CHECK(bs("1") < bs("00"));
        CHECK(bs("00") < bs("01"));
        CHECK(bs("111") < bs("0000"));
        std::vector<std::string> all;
        for (int len = 1; len <= 4; ++len)
            for (auto& s : brute::all_strings(len)) all.push_back(s);
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = 0; j < all.size(); ++j)
                CHECK((bs(all[i]) < bs(all[j])) == brute::canon_less(all[i], all[j]));
    }

    TEST_CASE("prefix, reverse, flip, concatenation") {
        CHECK(bs("1101").prefix(2) == bs("11"));
        CHECK(bs("11").is_prefix_of(bs("110")));
        CHECK(bs("11").is_prefix_of(bs("11")));
        CHECK_FALSE(bs("11").is_proper_prefix_of(bs("11")));
        CHECK_FALSE(bs("10").is_prefix_of(bs("110")));
        CHECK(bs("1101").reversed() == bs("1011"));
        CHECK(bs("1101").flipped() == bs("0010"));
        CHECK((bs("10") + bs("011")) == bs("10011"));
        const Bitstring wide = Bitstring::repeat(true, 64);
        CHECK(wide.reversed() == wide);
        CHECK(wide.flipped() == Bitstring::repeat(false, 64));
        CHECK_THROWS_AS(wide + bs("0"), std::length_error);
        CHECK_THROWS_AS(bs("01").prefix(3), std::out_of_range);
    }
}

TEST_SUITE("bitpal") {
    TEST_CASE("is_palindrome") {
        CHECK(is_palindrome(bs("0110")));
        CHECK_FALSE(is_palindrome(bs("10")));
        CHECK(is_palindrome(bs("0")));
        for (int len = 1; len <= 12; ++len)
            for (auto& s : brute::all_strings(len)) CHECK(is_palindrome(bs(s)) == brute::is_pal(s));
    }

    TEST_CASE("complement") {
        CHECK(complement(bs("0")) == bs("1"));
        CHECK(complement(bs("101")) == bs("010"));
        CHECK(complement(bs("11011")) == bs("00100"));
        for (auto& s : brute::all_strings(7)) CHECK(complement(complement(bs(s))) == bs(s));
    }

    TEST_CASE("longest palindromic proper prefix") {
        CHECK(longest_palindromic_proper_prefix(bs("00")) == bs("0"));
        CHECK(longest_palindromic_proper_prefix(bs("101")) == bs("1"));
        CHECK(longest_palindromic_proper_prefix(bs("11011")) == bs("11"));
        CHECK_FALSE(longest_palindromic_proper_prefix(bs("1")).has_value());
        for (auto& s : brute::all_strings(9)) {
            const auto got = longest_palindromic_proper_prefix(bs(s));
            REQUIRE(got.has_value());
            CHECK(got->str() == brute::lpp(s));
        }
    }

    TEST_CASE("enumerate_palindromes") {
        CHECK(words(enumerate_palindromes(1)) == brute::Words{"0", "1"});
        CHECK(words(enumerate_palindromes(3)) == brute::Words{"000", "010", "101", "111"});
        CHECK(words(enumerate_palindromes(4)) == brute::Words{"0000", "0110", "1001", "1111"});
        for (int len = 1; len <= 16; ++len) {
            const auto p = enumerate_palindromes(len);
            CHECK(p.size() == (std::size_t{1} << ((len + 1) / 2)));
            CHECK(std::set<Bitstring>(p.begin(), p.end()).size() == p.size());
            CHECK(std::is_sorted(p.begin(), p.end()));
            for (const auto& w : p) CHECK(is_palindrome(w));
            CHECK(words(p) == brute::palindromes(len));
        }
        CHECK_THROWS_AS(enumerate_palindromes(0), RangeError);
        CHECK_THROWS_AS(enumerate_palindromes(65), RangeError);
    }

    TEST_CASE("neighbors: listed examples") {
        CHECK(words(neighbors(bs("0"), 4)) == brute::Words{"00", "010", "0110"});
        CHECK(words(neighbors(bs("0"), 6)) == brute::Words{"00", "010", "0110", "01110", "011110"});
        CHECK(words(neighbors(bs("11"), 7)) == brute::Words{"111", "11011", "110011", "1100011", "1101011"});
        CHECK(neighbors(bs("101"), 4).empty());
        CHECK_THROWS_AS(neighbors(bs("10"), 5), ValidationError);
        CHECK_THROWS_AS(neighbors(bs("0"), 65), RangeError);
    }

    TEST_CASE("neighbors(0, n) starts 00, 010, 0110 for all n >= 4") {
        for (int n = 4; n <= 40; ++n) {
            const auto nb = neighbors(bs("0"), n);
            REQUIRE(nb.size() >= 3);
            CHECK(nb[0] == bs("00"));
            CHECK(nb[1] == bs("010"));
            CHECK(nb[2] == bs("0110"));
        }
    }

    TEST_CASE("descendants: listed examples") {
        CHECK(words(descendants(bs("0"), 3)) == brute::Words{"00", "000", "010"});
        CHECK(words(descendants(bs("11"), 5)) == brute::Words{"111", "1111", "11011", "11111"});
        const auto nb = neighbors(bs("101"), 9);
        const auto de = descendants(bs("101"), 9);
        for (const auto& w : nb) CHECK(std::binary_search(de.begin(), de.end(), w));
    }

    TEST_CASE("neighbors and descendants agree with string filtering for |sigma| <= 5, n <= 12") {
        for (int len = 1; len <= 5; ++len)
            for (auto& sigma : brute::palindromes(len))
                for (int n = len; n <= 12; ++n) {
                    const auto nb = neighbors(bs(sigma), n);
                    const auto de = descendants(bs(sigma), n);
                    CHECK(words(nb) == brute::neighbors(sigma, n));
                    CHECK(words(de) == brute::descendants(sigma, n));
                    brute::Words filtered;
                    for (const auto& w : de)
                        if (longest_palindromic_proper_prefix(w) == bs(sigma)) filtered.push_back(w.str());
                    CHECK(words(nb) == filtered);
                    for (const auto& w : nb) {
                        CHECK(bs(sigma).is_proper_prefix_of(w));
                        CHECK(is_palindrome(w));
                        for (int k = len + 1; k < w.length(); ++k) CHECK_FALSE(is_palindrome(w.prefix(k)));
                    }
                }
    }

    TEST_CASE("root code") {
        CHECK(words(root_code(5)) == brute::Words{"0", "11", "101", "1001", "10001"});
        CHECK(words(root_code(3)) == brute::Words{"0", "11", "101"});
        CHECK(root_code(20).total_length() == 210);
        for (int n = 3; n <= 40; ++n) {
            const Code r = root_code(n);
            CHECK(is_valid(r));
            CHECK(words(r) == brute::root(n));
            CHECK(r.total_length() == n * (n + 1) / 2);
        }
        CHECK_THROWS_AS(root_code(2), RangeError);
        CHECK(root_index(bs("0")) == 1);
        CHECK(root_index(bs("1000001")) == 7);
        CHECK_FALSE(root_index(bs("1")).has_value());
        CHECK_FALSE(root_index(bs("1100")).has_value());
    }

    TEST_CASE("cluster code") {
        const Code b8 = cluster_code(8);
        CHECK(b8.size() == 8);
        CHECK(b8.words().front() == bs("00000000"));
        CHECK(b8.contains(bs("01011010")));
        for (int n = 8; n <= 64; n += 2) {
            const Code b = cluster_code(n);
            CHECK(words(b) == brute::cluster(n));
            CHECK(b.size() == static_cast<std::size_t>(n));
            CHECK(std::set<Bitstring>(b.words().begin(), b.words().end()).size() == b.size());
            for (const auto& w : b.words()) {
                CHECK(w.length() == n);
                CHECK(is_palindrome(w));
                CHECK_FALSE(w.first_digit());
            }
            CHECK(is_valid(b));
        }
        CHECK_THROWS_AS(cluster_code(9), RangeError);
        CHECK_THROWS_AS(cluster_code(6), RangeError);
    }

    TEST_CASE("prefix palindromes") {
        CHECK(prefix_palindromes(root_code(5)).empty());
        CHECK(count_palindromic_proper_prefixes(root_code(5)) == 0);
        const Code c = Code::parse({"00", "11", "010", "101", "0110"});
        CHECK(words(prefix_palindromes(c)) == brute::Words{"0"});
        CHECK(count_palindromic_proper_prefixes(c) == 1);
        CHECK(prefix_palindromes(Code::parse({"0", "11"})).empty());
    }

    TEST_CASE("cluster prefix counts against the string scanner") {
        // Pinned from brute::prefix_palindromes(brute::cluster(n)).
        const std::pair<int, std::size_t> golden[] = {{8, 10}, {16, 36}, {32, 106}, {64, 326}};
        for (auto [n, count] : golden) {
            CHECK(brute::prefix_palindromes(brute::cluster(n)).size() == count);
            CHECK(count_palindromic_proper_prefixes(cluster_code(n)) == count);
        }
        CHECK(count_palindromic_proper_prefixes(cluster_code(32)) > 4 * count_palindromic_proper_prefixes(cluster_code(8)));
    }

    TEST_CASE("neighbor cache") {
        NeighborCache cache;
        const auto& a = cache.neighbors(bs("0"), 6);
        const auto& b = cache.neighbors(bs("0"), 6);
        CHECK(&a == &b);
        CHECK(a == neighbors(bs("0"), 6));
        cache.neighbors(bs("0"), 7);
        CHECK(cache.size() == 2);
    }
}
