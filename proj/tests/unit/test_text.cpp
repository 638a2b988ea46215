#include <asplag/text_tests.hpp>

#include <catch_amalgamated.hpp>

#include "oracle.hpp"
#include "random_programs.hpp"

using namespace asplag;

TEST_CASE("lcs length on small strings", "[text]") {
    CHECK(lcs_length("abc", "abc") == 3);
    CHECK(lcs_length("abc", "xyz") == 0);
    CHECK(lcs_length("ABCBDAB", "BDCABA") == 4);
    CHECK(lcs_length("BDCABA", "ABCBDAB") == 4);
    CHECK(lcs_length("", "") == 0);
    CHECK(lcs_length("", "abc") == 0);
    CHECK(oracle::lcs_dp("ABCBDAB", "BDCABA") == 4);
}

TEST_CASE("lcs similarity normalises by each side", "[text]") {
    auto r = lcs_similarity("ABCBDAB", "BDCABA");
    CHECK(r.lcs_length == 4);
    CHECK(r.length_a == 7);
    CHECK(r.length_b == 6);
    CHECK(r.similarity_ab == Rational(4, 7));
    CHECK(r.similarity_ba == Rational(4, 6));

    auto same = lcs_similarity("p(X):-q(X).", "p(X):-q(X).");
    CHECK(same.similarity_ab == Rational(1));
    CHECK(same.similarity_ba == Rational(1));

    auto empty = lcs_similarity("", "x");
    CHECK(empty.similarity_ab == Rational(0));
    CHECK(empty.similarity_ba == Rational(0));
}

TEST_CASE("lcs counts code points, not bytes", "[text]") {
    CHECK(code_point_count("a\xc3\xa9z") == 3);         // aéz
    CHECK(lcs_length("\xc3\xa9", "\xc3\xa8") == 0);     // é vs è share a lead byte only
    CHECK(lcs_length("caf\xc3\xa9", "\xc3\xa9t\xc3\xa9") == 1);
    CHECK(code_point_count("\xff\xfe") == 2);
    CHECK(lcs_length("\xff", "\xff") == 1);
}

TEST_CASE("lcs beyond one machine word", "[text]") {
    std::string a(300, 'a'), b;
    for (int i = 0; i < 300; ++i) b += i % 3 ? 'a' : 'b';
    CHECK(lcs_length(a, b) == 200);
    CHECK(lcs_length(b, a) == 200);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
        auto x = testgen::random_string(rng, 700, "abcdefg");
        auto y = testgen::random_string(rng, 500, "abcdefg");
        CHECK(lcs_length(x, y) == oracle::lcs_dp(x, y));
    }
}

TEST_CASE("comment test", "[text]") {
    auto a = parse_program("% solve part a\np.", "a");
    auto b = parse_program("% we solve part a fast\np.", "b");
    auto r = comment_test(a, b);
    CHECK(r.similarity_ab == Rational(1));
    CHECK(r.similarity_ba < Rational(1));

    auto none = parse_program("p.", "n");
    auto z    = comment_test(a, none);
    CHECK(z.similarity_ab == Rational(0));
    CHECK(z.similarity_ba == Rational(0));

    auto same = comment_test(a, a);
    CHECK(same.similarity_ab == Rational(1));
    CHECK(same.similarity_ba == Rational(1));
}

TEST_CASE("program text test", "[text]") {
    auto a      = parse_program("p(X) :- q(X).\nq(a).\n", "a");
    auto longer = parse_program("p(X) :- q(X).\nq(a).\nr(X) :- p(X).\n", "b");
    auto r      = program_text_test(a, longer);
    CHECK(r.similarity_ab == Rational(1));
    CHECK(r.similarity_ba < Rational(1));
    CHECK(program_text_test(a, a).similarity_ab == Rational(1));

    // reformatting and comments vanish under cleansing
    auto reformatted = parse_program("% note\np( X ):-\n   q( X ).\n\nq(a).", "c");
    CHECK(program_text_test(a, reformatted).similarity_ab == Rational(1));
    CHECK(program_text_test(a, reformatted).similarity_ba == Rational(1));
}

TEST_CASE("program text test on the two fixture programs", "[text]") {
    auto p = parse_program(oracle::read_fixture("original.lp"), "P");
    auto q = parse_program(oracle::read_fixture("disguised.lp"), "Q");
    auto r = program_text_test(p, q);
    CHECK(r.lcs_length == oracle::lcs_dp(p.cleansed_text, q.cleansed_text));
    CHECK(r.lcs_length == 62);
    CHECK(r.length_a == 129);
    CHECK(r.length_b == 136);
    CHECK(r.similarity_ab == Rational(62, 129));
    CHECK(r.similarity_ba == Rational(62, 136));
}

TEST_CASE("lcs agrees with the quadratic oracle", "[text][property]") {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 1000; ++i) {
        auto a = testgen::random_string(rng, 200, i % 2 ? "ab" : "abcdefghij");
        auto b = testgen::random_string(rng, 200, i % 2 ? "ab" : "abcdefghij");
        INFO(a << " | " << b);
        auto n = lcs_length(a, b);
        REQUIRE(n == oracle::lcs_dp(a, b));
        REQUIRE(n == lcs_length(b, a));
        REQUIRE(n <= std::min(a.size(), b.size()));
    }
}

TEST_CASE("lcs laws", "[text][property]") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        auto a = testgen::random_string(rng, 60);
        auto b = testgen::random_string(rng, 60);
        auto c = testgen::random_string(rng, 20);
        REQUIRE(lcs_length(a, a) == a.size());
        REQUIRE(lcs_length(a, b + c) >= lcs_length(a, b));
        auto s = lcs_similarity(a, b);
        REQUIRE(s.similarity_ab >= Rational(0));
        REQUIRE(s.similarity_ab <= Rational(1));
        REQUIRE(s.similarity_ba <= Rational(1));
        if (!a.empty()) REQUIRE(lcs_similarity(a, a).similarity_ab == Rational(1));

        // similarity_ab is 1 exactly when a is a subsequence of b
        std::size_t k = 0;
        for (char ch : b)
            if (k < a.size() && a[k] == ch) ++k;
        const bool subsequence = !a.empty() && k == a.size();
        REQUIRE((s.similarity_ab == Rational(1)) == subsequence);

        // a subsequence built by deleting characters is always reported as contained
        std::string sub;
        for (char ch : b)
            if (rng() % 2) sub += ch;
        if (!sub.empty()) REQUIRE(lcs_similarity(sub, b).similarity_ab == Rational(1));
    }
}
