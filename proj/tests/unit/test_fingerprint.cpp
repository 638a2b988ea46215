#include <asplag/fingerprint.hpp>
#include <asplag/generator.hpp>
#include <asplag/text_tests.hpp>

#include <catch_amalgamated.hpp>

#include "oracle.hpp"
#include "random_programs.hpp"

using namespace asplag;

TEST_CASE("sha256 digests", "[fingerprint]") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("fingerprint of the original fixture", "[fingerprint]") {
    auto f = compute_fingerprint(parse_program(oracle::read_fixture("original.lp"), "P"));
    CHECK(f.rule_count == 2);
    CHECK(f.constraint_count == 0);
    CHECK(f.fact_count == 0);
    CHECK(f.predicate_count == 5);   // s/3 combi/1 ab/1 t/3 d/3
    CHECK(f.constant_count == 8);    // o1 i1 i2 i3 heat 1 2 40
    CHECK(f.variable_count == 7);    // {C,X} + {C,X,Y,Z,A}
    CHECK(f.literal_count == 14);
    CHECK(f.cleansed_size == 129);
    CHECK(f.comment_count == 1);
}

TEST_CASE("fingerprint of the disguised fixture", "[fingerprint]") {
    auto f = compute_fingerprint(parse_program(oracle::read_fixture("disguised.lp"), "Q"));
    CHECK(f.rule_count == 3);
    CHECK(f.predicate_count == 6); // t ab d s c combi
    CHECK(f.constant_count == 8);
    CHECK(f.variable_count == 8);
    CHECK(f.literal_count == 16);
    CHECK(f.cleansed_size == 136);
}

TEST_CASE("fingerprint similarity counts equal attributes", "[fingerprint]") {
    auto p = compute_fingerprint(parse_program(oracle::read_fixture("original.lp"), "P"));
    auto q = compute_fingerprint(parse_program(oracle::read_fixture("disguised.lp"), "Q"));
    // constants, facts, constraints and comments agree
    CHECK(fingerprint_similarity(p, q) == Rational(4, 10));
    CHECK(fingerprint_similarity(q, p) == Rational(4, 10));
    CHECK(fingerprint_similarity(p, p) == Rational(1));

    Fingerprint a, b;
    a.content_digest = "x";
    b.content_digest = "y";
    b.rule_count = b.predicate_count = b.constant_count = b.variable_count = b.fact_count = 1;
    b.constraint_count = b.literal_count = b.cleansed_size = b.comment_count = 1;
    CHECK(fingerprint_similarity(a, b) == Rational(0));
}

TEST_CASE("fingerprint of the empty program", "[fingerprint]") {
    auto f = compute_fingerprint(parse_program("", "empty"));
    CHECK(f.content_digest == sha256_hex(""));
    for (std::size_t i = 1; i < Fingerprint::attribute_count; ++i) CHECK(f.values()[i] == "0");
}

TEST_CASE("weak constraints and facts are counted", "[fingerprint]") {
    auto f = compute_fingerprint(parse_program("a(1). b(2). :- a(X), b(X). :~ a(X). [3:1]\nc(X) :- a(X).", "w"));
    CHECK(f.fact_count == 2);
    CHECK(f.constraint_count == 2);
    CHECK(f.rule_count == 5);
}

TEST_CASE("fingerprint properties", "[fingerprint][property]") {
    std::mt19937_64 rng(5);
    testgen::Shape  shape;
    for (int i = 0; i < 1000; ++i) {
        auto p = testgen::random_program(rng, shape, testgen::pick(rng, 1, 6), "p");
        auto q = testgen::random_program(rng, shape, testgen::pick(rng, 1, 6), "q");
        auto f = compute_fingerprint(p), g = compute_fingerprint(q);
        REQUIRE(fingerprint_similarity(f, g) == fingerprint_similarity(g, f));
        REQUIRE(compute_fingerprint(p) == f);

        // compare against a plain re-emission so only the permutation differs
        auto seed     = rng();
        auto plain    = generate_camouflaged(p, {}, seed, "plain");
        auto permuted = generate_camouflaged(p, {Transform::permute_rules, Transform::permute_literals}, seed, "perm");
        auto e        = compute_fingerprint(plain.program);
        auto h        = compute_fingerprint(permuted.program);
        auto fv = e.values(), hv = h.values();
        for (std::size_t k = 1; k < Fingerprint::attribute_count; ++k) {
            if (Fingerprint::attribute_names[k] == "comment_count") continue;
            INFO(Fingerprint::attribute_names[k] << "\n" << p.raw_text << "---\n" << permuted.source);
            REQUIRE(fv[k] == hv[k]);
        }
        if (e.content_digest == h.content_digest) {
            auto t = program_text_test(plain.program, permuted.program);
            REQUIRE(t.similarity_ab == Rational(1));
            REQUIRE(t.similarity_ba == Rational(1));
        }
    }
}
