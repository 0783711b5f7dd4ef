#include <doctest.h>

#include <map>
#include <set>

#include "symfix/bitpal.hpp"
#include "symfix/code.hpp"
#include "symfix/error.hpp"
#include "symfix/search.hpp"
#include "util.hpp"

using namespace symfix;
using testutil::bs;
using testutil::seq;
using testutil::words;

namespace {

bool has_rule(const std::vector<Violation>& v, Violation::Rule r) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.rule == r; });
}

}  // namespace

TEST_SUITE("codes") {
    TEST_CASE("validate") {
        CHECK(is_valid(root_code(6)));
        const auto prefix = validate(Code::parse({"0", "00", "11"}));
        CHECK(has_rule(prefix, Violation::Rule::prefix_condition));
        CHECK(prefix.front().message().find("prefix condition") != std::string::npos);

        const auto pal = validate(Code::parse({"0", "10", "11"}));
        REQUIRE(has_rule(pal, Violation::Rule::not_palindrome));
        for (const auto& v : pal)
            if (v.rule == Violation::Rule::not_palindrome) CHECK(v.words == std::vector<Bitstring>{bs("10")});

        CHECK(has_rule(validate(Code::parse({"1", "00", "010"})), Violation::Rule::forbidden_one));
        CHECK(has_rule(validate(Code::parse({"0", "11", "1001"})), Violation::Rule::too_long));
        CHECK(has_rule(validate(Code(std::vector<Bitstring>{bs("0"), bs("11")}, 3)), Violation::Rule::word_count));
        CHECK(has_rule(validate(Code::parse({"0", "0", "11"})), Violation::Rule::duplicate));
    }

    TEST_CASE("validate agrees with the string checker on every small word set") {
        brute::Words universe;
        for (int len = 1; len <= 3; ++len)
            for (auto& s : brute::all_strings(len)) universe.push_back(s);
        // every 3-subset of strings of length <= 3
        for (std::size_t a = 0; a < universe.size(); ++a)
            for (std::size_t b = a + 1; b < universe.size(); ++b)
                for (std::size_t c = b + 1; c < universe.size(); ++c) {
                    brute::Words w{universe[a], universe[b], universe[c]};
                    CHECK(is_valid(Code::parse(w, 3)) == brute::valid(w, 3));
                }
    }

    TEST_CASE("length sequences") {
        CHECK(length_sequence(root_code(4)).lengths() == std::vector<int>{1, 2, 3, 4});
        CHECK(length_sequence(Code::parse({"00", "11", "010", "101", "0110"})).lengths() ==
              std::vector<int>{2, 2, 3, 3, 4});
        CHECK(length_sequence(root_code(20)).total() == 210);
        CHECK(seq({3, 1, 2}).prefix_sums() == std::vector<std::int64_t>{1, 3, 6});
        CHECK(seq({3, 1, 2}).str() == "(1,2,3)");
    }

    TEST_CASE("dominates") {
        CHECK(dominates(seq({1, 2, 3}), seq({1, 2, 4})));
        CHECK_FALSE(dominates(seq({1, 2, 3, 4, 5}), seq({2, 2, 3, 3, 4})));
        CHECK_FALSE(dominates(seq({2, 2, 3, 3, 4}), seq({1, 2, 3, 4, 5})));
        CHECK_FALSE(dominates(seq({1, 2, 3}), seq({1, 2, 3})));
        CHECK_THROWS_AS(dominates(seq({1, 2}), seq({1, 2, 3})), std::invalid_argument);
    }

    TEST_CASE("double_arrow_all at the root of n=5 on pivot 0") {
        const auto all = double_arrow_all(root_code(5), bs("0"));
        REQUIRE(all.size() == 2);
        for (const auto& c : all) CHECK(length_sequence(c).lengths() == std::vector<int>{2, 2, 3, 3, 4});
        CHECK(words(all[0]) == brute::Words{"00", "11", "010", "101", "0110"});
        CHECK(words(all[1]) == brute::Words{"00", "11", "010", "101", "1001"});
        const auto step = arrow_step(root_code(5), bs("0"), neighbors(bs("0"), 5));
        CHECK(step.alternative_count() == 2);
        CHECK(step.take == 1);
    }

    TEST_CASE("double_arrow_all at the root of n=20") {
        const Code r = root_code(20);
        const std::map<std::string, int> totals = {{"0", 130},       {"11", 136},       {"101", 145},
                                                   {"1001", 161},    {"10001", 177},    {"100001", 191},
                                                   {"1000001", 202}};
        for (const auto& [pivot, total] : totals) {
            const auto all = double_arrow_all(r, bs(pivot));
            REQUIRE_FALSE(all.empty());
            for (const auto& c : all) CHECK(c.total_length() == total);
        }
        CHECK(double_arrow_canonical(r, bs("1000001")).total_length() == 202);
    }

    TEST_CASE("double_arrow_canonical") {
        CHECK(words(double_arrow_canonical(root_code(5), bs("0"))) == brute::Words{"00", "11", "010", "101", "0110"});
        CHECK(double_arrow_all(root_code(4), bs("101")).empty());
        CHECK_THROWS_AS(double_arrow_canonical(root_code(4), bs("101")), ValidationError);
        CHECK_THROWS_AS(double_arrow_all(root_code(4), bs("00")), ValidationError);
    }

    TEST_CASE("verify_arrow") {
        const Code r5 = root_code(5);
        CHECK(verify_arrow(r5, Code::parse({"00", "11", "010", "101", "0110"}), bs("0")));
        CHECK_FALSE(verify_arrow(r5, r5, bs("0")));
        CHECK_THROWS_AS(verify_arrow(r5, r5, bs("00")), ValidationError);
    }

    TEST_CASE("valid codes can be longer in total than the root code") {
        const Code c = Code::parse({"000", "010", "101"});
        CHECK(is_valid(c));
        CHECK(c.total_length() > root_code(3).total_length());
    }

    TEST_CASE("root prefix property") {
        CHECK(has_root_prefix_property(root_code(7)));
        CHECK(has_root_prefix_property(Code::parse({"00", "11", "010", "101", "0110"})));
    }

    TEST_CASE("code ordering and hashing") {
        const Code a = Code::parse({"11", "0", "101"});
        CHECK(words(a) == brute::Words{"0", "11", "101"});
        CHECK(a == root_code(3));
        CHECK(CodeHash{}(a) == CodeHash{}(root_code(3)));
        CHECK(Code::parse({"0", "11", "101"}, 3) < Code::parse({"0", "11", "111"}, 3));
        CHECK(root_code(3).complemented() == Code::parse({"1", "00", "010"}));
    }

    TEST_CASE("double_arrow matches the string model along the n=6 closure") {
        // Walk the exhaustive closure at n=6 and compare every transformation.
        SearchOptions opts;
        opts.config = PruneConfig::exhaustive();
        const SearchResult r = search(6, opts);
        std::size_t steps = 0;
        for (const Code& S : r.reached) {
            const auto sw = words(S);
            for (const auto& sigma : S.words()) {
                const auto mine = double_arrow_all(S, sigma);
                const auto ref = brute::double_arrow(sw, sigma.str(), 6);
                REQUIRE(mine.size() == ref.size());
                for (std::size_t i = 0; i < ref.size(); ++i) CHECK(words(mine[i]) == ref[i]);
                for (const auto& c : mine) {
                    CHECK(verify_arrow(S, c, sigma));
                    CHECK(length_sequence(c) == length_sequence(mine.front()));
                }
                ++steps;
            }
        }
        CHECK(steps > 1000);
    }
}
