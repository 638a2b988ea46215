#include <asplag/corpus.hpp>
#include <asplag/generator.hpp>

#include <catch_amalgamated.hpp>

#include "oracle.hpp"
#include "random_programs.hpp"
#include "temp_dir.hpp"

#include <json.hpp>

#include <fstream>


using namespace asplag;
namespace fs = std::filesystem;

namespace {

using testgen::TempDir;

const Program& original() {
    static const Program p = parse_program(oracle::read_fixture("original.lp"), "P");
    return p;
}
const Program& disguised() {
    static const Program q = parse_program(oracle::read_fixture("disguised.lp"), "Q");
    return q;
}

CompareConfig structure_only(std::vector<Technique> ts) {
    CompareConfig c;
    c.tests      = TestSelection::parse("structure");
    c.techniques = std::move(ts);
    return c;
}

} // namespace

TEST_CASE("loading a corpus directory", "[corpus]") {
    TempDir d;
    d.write("a.lp", "p(X) :- q(X).");
    d.write("b.lp", "q(1).");
    d.write("c.dl", "r(X) :- q(X), not p(X).");
    d.write("notes.md", "not a program");
    auto loaded = load_corpus(d.path);
    REQUIRE(loaded.programs.size() == 3);
    CHECK(loaded.programs[0].id == "a");
    CHECK(loaded.programs[2].id == "c");
    CHECK(loaded.warnings.size() == 1);
    CHECK(loaded.parse_failures == 0);
}

TEST_CASE("a subdirectory is one program", "[corpus]") {
    TempDir d;
    d.write("team1/part2.lp", "b(X) :- a(X).");
    d.write("team1/part1.lp", "a(1).");
    auto loaded = load_corpus(d.path);
    REQUIRE(loaded.programs.size() == 1);
    CHECK(loaded.programs[0].id == "team1");
    CHECK(loaded.programs[0].rules.size() == 2);
    CHECK(loaded.programs[0].raw_text.find("a(1).") < loaded.programs[0].raw_text.find("b(X)"));
}

TEST_CASE("unparsable entries are skipped with a warning", "[corpus]") {
    TempDir d;
    d.write("good.lp", "p.");
    d.write("bad.lp", "p(X :- .");
    auto loaded = load_corpus(d.path);
    CHECK(loaded.programs.size() == 1);
    CHECK(loaded.parse_failures == 1);
    REQUIRE(loaded.warnings.size() == 1);
    CHECK(loaded.warnings[0].find("bad.lp") != std::string::npos);
}

TEST_CASE("corpus loading errors", "[corpus]") {
    TempDir d;
    CHECK_THROWS_AS(load_corpus(d.path), CorpusError);
    CHECK_THROWS_AS(load_corpus(d.path / "missing"), CorpusError);
}

TEST_CASE("comparing the fixture pair", "[corpus]") {
    CompareConfig cfg;
    cfg.techniques = {techniques::full(), techniques::identity()};
    auto r         = compare_pair(original(), disguised(), cfg);
    REQUIRE(r.structure.size() == 2);
    CHECK(r.structure[0].ab.value == Rational(1));
    CHECK(r.structure[0].ba.value == Rational(2, 3));
    CHECK(r.structure[1].ab.value == Rational(0));
    CHECK(r.structure[1].ba.value == Rational(0));
    CHECK(r.score() == Rational(1));
    CHECK(r.technique_used == "tau4");
    REQUIRE(r.lcs_program);
    CHECK(r.lcs_program->similarity_ab == Rational(62, 129));
    REQUIRE(r.fingerprint);
    CHECK(*r.fingerprint == Rational(4, 10));
    CHECK_FALSE(r.confidence);
    CHECK(r.errors.empty());
    CHECK(r.approximate_flags.empty());
    CHECK(r.structure_for("tau1") == &r.structure[1]);
    CHECK(r.structure_for("tau2") == nullptr);
}

TEST_CASE("comparing a program with itself", "[corpus]") {
    CompareConfig cfg;
    cfg.techniques = {techniques::identity()};
    auto r         = compare_pair(original(), original(), cfg);
    CHECK(r.structure[0].ab.value == Rational(1));
    CHECK(r.structure[0].ba.value == Rational(1));
    CHECK(r.lcs_program->similarity_ab == Rational(1));
    CHECK(r.lcs_comment->similarity_ab == Rational(1));
    CHECK(*r.fingerprint == Rational(1));
}

TEST_CASE("test selection", "[corpus]") {
    auto t = TestSelection::parse("structure,fingerprint");
    CHECK(t.structure);
    CHECK_FALSE(t.lcs_program);
    CHECK(t.fingerprint);
    CHECK(t.str() == "structure,fingerprint");
    CHECK(TestSelection::parse("all").str() == "structure,lcs_program,lcs_comment,fingerprint");
    CHECK_THROWS_AS(TestSelection::parse("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(TestSelection::parse(""), std::invalid_argument);

    CompareConfig cfg;
    cfg.tests = TestSelection::parse("lcs_comment");
    auto r    = compare_pair(original(), disguised(), cfg);
    CHECK(r.structure.empty());
    CHECK(r.score() == Rational(0));
    CHECK(r.lcs_comment);
    CHECK_FALSE(r.lcs_program);
}

TEST_CASE("tiny search budgets are flagged as approximate", "[corpus]") {
    CompareConfig cfg         = structure_only({techniques::full()});
    cfg.search.predicate_node_budget = 1;
    cfg.search.variable_node_budget  = 1;
    auto r = compare_pair(original(), disguised(), cfg);
    CHECK(r.errors.empty());
    CHECK_FALSE(r.approximate_flags.empty());
}

TEST_CASE("running a two-program corpus", "[corpus]") {
    auto rs = run_corpus({original(), disguised()}, CompareConfig{}, 1, "fig");
    REQUIRE(rs.pairs.size() == 1);
    CHECK(rs.pairs[0].id_a == "P");
    CHECK(rs.pairs[0].id_b == "Q");
    CHECK(rs.programs.size() == 2);
    CHECK(rs.timing.contains("structure:tau4"));
    CHECK_FALSE(rs.table);
}

TEST_CASE("identical programs share every class", "[corpus]") {
    std::vector<Program> corpus;
    for (int i = 0; i < 4; ++i) {
        auto p = original();
        p.id   = "copy" + std::to_string(i);
        corpus.push_back(p);
    }
    CompareConfig cfg;
    cfg.techniques = {techniques::identity()};
    cfg.confidence = ConfidenceMode::table;
    auto rs        = run_corpus(corpus, cfg, 3);
    REQUIRE(rs.pairs.size() == 6);
    for (const auto& p : rs.pairs) {
        CHECK(p.structure[0].ab.value == Rational(1));
        CHECK(p.structure[0].ba.value == Rational(1));
        CHECK(p.lcs_program->similarity_ab == Rational(1));
        CHECK(*p.fingerprint == Rational(1));
        CHECK(*p.confidence == Rational(4, 8));
    }
    REQUIRE(rs.table);
    REQUIRE(rs.table->classes().size() == 2);
    for (const auto& c : rs.table->classes()) CHECK(c.count == 4);
}

TEST_CASE("pairs are sorted by descending score, then ids", "[corpus]") {
    std::vector<Program> corpus{parse_program("a(X) :- b(X).", "z"), parse_program("a(X) :- b(X).", "y"),
                                parse_program("c(X) :- d(X).", "x"), parse_program("a(X) :- b(X), c(X).", "w")};
    auto rs = run_corpus(corpus, structure_only({techniques::identity()}), 2);
    REQUIRE(rs.pairs.size() == 6);
    // w's rule contains the rule of y and z, so three pairs score 1
    CHECK(rs.pairs[0].id_a == "w");
    CHECK(rs.pairs[0].id_b == "y");
    CHECK(rs.pairs[2].id_a == "y");
    CHECK(rs.pairs[2].score() == Rational(1));
    CHECK(rs.pairs[3].score() < Rational(1));
    for (std::size_t i = 1; i < rs.pairs.size(); ++i) {
        CHECK(rs.pairs[i - 1].score() >= rs.pairs[i].score());
        CHECK(rs.pairs[i].id_a < rs.pairs[i].id_b);
    }
}

TEST_CASE("run output does not depend on the number of workers", "[corpus]") {
    std::mt19937_64      rng(3);
    testgen::Shape       shape;
    std::vector<Program> corpus;
    for (int i = 0; i < 8; ++i) corpus.push_back(testgen::random_program(rng, shape, 4, "prog" + std::to_string(i)));
    CompareConfig cfg;
    cfg.techniques = {techniques::full(), techniques::variables()};
    cfg.confidence = ConfidenceMode::table;
    auto one       = results_json(run_corpus(corpus, cfg, 1, "rand"));
    CHECK(results_json(run_corpus(corpus, cfg, 4, "rand")) == one);
    CHECK(results_json(run_corpus(corpus, cfg, 7, "rand")) == one);
}

TEST_CASE("evaluation reproduces published counts", "[corpus][eval]") {
    auto r = make_eval_row("tau1", Rational(1), 5, 5, 26);
    CHECK(r.precision == Rational(1));
    CHECK(r.recall == Rational(5, 26));
    CHECK(r.precision.fixed(2) == "1.00");
    CHECK(r.recall.fixed(2) == "0.19");

    auto w = make_eval_row("tau4", Rational(9, 10), 174, 25, 26);
    CHECK(w.precision.fixed(2) == "0.14");
    CHECK(w.recall.fixed(2) == "0.96");

    auto none = make_eval_row("tau1", Rational(1), 0, 0, 26);
    CHECK(none.precision == Rational(1));
    CHECK(none.recall == Rational(0));
}

TEST_CASE("evaluate counts classified and actual pairs", "[corpus][eval]") {
    StoredResults s;
    s.ids   = {"a", "b", "c", "d"};
    s.pairs = {{"a", "b", {{"tau1", {Rational(1), Rational(1, 2)}}}},
               {"a", "c", {{"tau1", {Rational(1, 2), Rational(19, 20)}}}},
               {"b", "d", {{"tau1", {Rational(9, 10), Rational(0)}}}},
               {"c", "d", {{"tau1", {Rational(0), Rational(0)}}}}};
    s.timing["structure:tau1"] = 1.5;
    std::set<IdPair> labels{make_id_pair("b", "a"), make_id_pair("c", "d")};
    auto rows = evaluate(s, labels, {"tau1"}, {Rational(1), Rational(19, 20), Rational(9, 10)});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].classified == 1);
    CHECK(rows[0].actual == 1);
    CHECK(rows[1].classified == 2);
    CHECK(rows[1].actual == 1);
    CHECK(rows[1].precision == Rational(1, 2));
    CHECK(rows[2].classified == 3);
    CHECK(rows[2].recall == Rational(1, 2));
    CHECK(rows[2].wall_time_seconds == 1.5);

    CHECK_THROWS_AS(evaluate(s, {make_id_pair("a", "zz")}, {"tau1"}, {Rational(1)}), CorpusError);
    CHECK_THROWS_AS(evaluate(s, labels, {"tau4"}, {Rational(1)}), CorpusError);
}

TEST_CASE("evaluation is monotone in the threshold", "[corpus][eval][property]") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        StoredResults s;
        const std::size_t n = testgen::pick(rng, 2, 8);
        for (std::size_t k = 0; k < n; ++k) s.ids.push_back("p" + std::to_string(k));
        std::set<IdPair> labels;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                auto x = Rational(static_cast<std::int64_t>(testgen::pick(rng, 0, 20)), 20);
                auto y = Rational(static_cast<std::int64_t>(testgen::pick(rng, 0, 20)), 20);
                s.pairs.push_back({s.ids[a], s.ids[b], {{"tau2", {x, y}}}});
                if (rng() % 4 == 0) labels.insert(make_id_pair(s.ids[a], s.ids[b]));
            }
        std::vector<Rational> thresholds;
        for (int t = 20; t >= 0; t -= 1 + static_cast<int>(rng() % 4)) thresholds.push_back(Rational(t, 20));
        auto rows = evaluate(s, labels, {"tau2"}, thresholds);
        for (std::size_t k = 1; k < rows.size(); ++k) {
            REQUIRE(rows[k].recall >= rows[k - 1].recall);
            REQUIRE(rows[k].classified >= rows[k - 1].classified);
            REQUIRE(rows[k].actual >= rows[k - 1].actual);
            // lowering the threshold without catching another true pair can only cost precision
            if (rows[k].actual == rows[k - 1].actual) REQUIRE(rows[k].precision <= rows[k - 1].precision);
            REQUIRE(rows[k].precision >= Rational(0));
            REQUIRE(rows[k].precision <= Rational(1));
        }
    }
}

TEST_CASE("precision can rise when a lower threshold catches more copies", "[corpus][eval]") {
    StoredResults s;
    s.ids   = {"a", "b", "c", "d"};
    s.pairs = {{"a", "b", {{"tau1", {Rational(1), Rational(1)}}}},
               {"c", "d", {{"tau1", {Rational(1), Rational(1)}}}},
               {"a", "c", {{"tau1", {Rational(9, 10), Rational(0)}}}},
               {"b", "d", {{"tau1", {Rational(9, 10), Rational(0)}}}}};
    std::set<IdPair> labels{make_id_pair("a", "b"), make_id_pair("a", "c"), make_id_pair("b", "d")};
    auto rows = evaluate(s, labels, {"tau1"}, {Rational(1), Rational(9, 10)});
    CHECK(rows[0].precision == Rational(1, 2));
    CHECK(rows[1].precision == Rational(3, 4));
}

TEST_CASE("results json round trip", "[corpus][io]") {
    CompareConfig cfg;
    cfg.techniques = {techniques::full(), techniques::identity()};
    cfg.confidence = ConfidenceMode::table;
    auto rs        = run_corpus({original(), disguised()}, cfg, 1, "fig");
    auto text      = results_json(rs);
    auto doc       = nlohmann::json::parse(text);
    CHECK(doc["schema"] == "asplag.results/1");
    CHECK(doc["corpus"]["pair_count"] == 1);
    const auto& pair = doc["pairs"][0];
    CHECK(pair["structure"][0]["technique"] == "tau4");
    CHECK(pair["structure"][0]["ab"]["exact"] == "1");
    CHECK(pair["structure"][0]["ba"]["exact"] == "2/3");
    CHECK(pair["structure"][0]["ab"]["rules"].size() == 2);
    CHECK(pair["structure"][0]["ab"]["predicates"].is_array());
    CHECK(pair["structure"][1]["ab"].contains("rules") == false);
    CHECK(pair["flagged"] == true);
    CHECK(doc["programs"][0]["fingerprint"]["rule_count"] == 2);

    auto stored = read_results_json(text, timing_json(rs));
    CHECK(stored.ids == std::vector<std::string>{"P", "Q"});
    REQUIRE(stored.pairs.size() == 1);
    CHECK(stored.pairs[0].structure.at("tau4").first == Rational(1));
    CHECK(stored.pairs[0].structure.at("tau4").second == Rational(2, 3));
    CHECK(stored.pairs[0].structure.at("tau1").first == Rational(0));
    CHECK(stored.timing.contains("structure:tau4"));
    CHECK(stored_from(rs).pairs[0].structure == stored.pairs[0].structure);

    CHECK_THROWS_AS(read_results_json("{"), CorpusError);
    CHECK_THROWS_AS(read_results_json("{\"schema\": \"other\"}"), CorpusError);
}

TEST_CASE("csv outputs", "[corpus][io]") {
    auto rs  = run_corpus({original(), disguised()}, CompareConfig{}, 1);
    auto csv = results_csv(rs);
    CHECK(csv.starts_with("id_a,id_b,technique,structure_ab,structure_ba,lcs_program_ab,lcs_program_ba,lcs_comment_ab,"
                          "lcs_comment_ba,fingerprint,confidence\n"));
    CHECK(csv.find("P,Q,tau4,1.0000,0.6667,0.4806,0.4559,") != std::string::npos);

    std::set<IdPair> labels{make_id_pair("b", "a"), make_id_pair("c", "d")};
    auto text = labels_csv(labels);
    CHECK(text == "id_a,id_b\na,b\nc,d\n");
    CHECK(read_labels_csv(text) == labels);
    CHECK(read_labels_csv("id_a,id_b\r\nb , a\r\n\r\n") == std::set<IdPair>{make_id_pair("a", "b")});
    CHECK_THROWS_AS(read_labels_csv("a,b\n"), CorpusError);
    CHECK_THROWS_AS(read_labels_csv("id_a,id_b\nonly\n"), CorpusError);

    auto rows = std::vector<EvalRow>{make_eval_row("tau1", Rational(1), 5, 5, 26)};
    rows[0].wall_time_seconds = 0.126;
    CHECK(eval_csv(rows) == "technique,time,threshold,classified,actual,recall,precision\ntau1,0.13,1.00,5,5,0.19,1.00\n");
}

TEST_CASE("synthetic corpus copies rank above everything else at tau3", "[corpus][generator]") {
    SyntheticOptions opts;
    opts.originals         = 24;
    opts.copies            = 8;
    opts.rename_predicates = false;
    auto syn               = generate_synthetic_corpus(opts, 11);
    std::vector<Program> corpus;
    for (const auto& p : syn.programs) corpus.push_back(parse_program(p.source, p.id));
    auto rs = run_corpus(corpus, structure_only({techniques::canonical()}), 2);
    REQUIRE(rs.pairs.size() == 32 * 31 / 2);
    const Rational threshold(19, 20);
    for (std::size_t i = 0; i < rs.pairs.size(); ++i) {
        const auto& p      = rs.pairs[i];
        const bool  copied = syn.labels.contains(make_id_pair(p.id_a, p.id_b));
        INFO(p.id_a << " " << p.id_b << " " << p.score().str());
        CHECK((i < syn.labels.size()) == copied);
        CHECK((p.score() >= threshold) == copied);
    }
}
