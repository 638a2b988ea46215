#include <asplag/corpus.hpp>
#include <asplag/generator.hpp>
#include <asplag/similarity.hpp>
#include <asplag/text_tests.hpp>

#include <benchmark/benchmark.h>

using namespace asplag;

namespace {

Program random_program(std::uint64_t seed, std::size_t min_rules, std::size_t max_rules, const std::string& id) {
    Rng rng(seed);
    return parse_program(random_program_source(rng, min_rules, max_rules), id);
}

std::string random_text(std::uint64_t seed, std::size_t n) {
    Rng         rng(seed);
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<char>('a' + rng.below(8));
    return s;
}

void BM_Lcs(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto       a = random_text(1, n), b = random_text(2, n);
    for (auto _ : state) benchmark::DoNotOptimize(lcs_length(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Lcs)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_VariableRenaming(benchmark::State& state) {
    auto r = parse_rule("t(C,X,Y) :- combi(C), s(C,o1,1), t(C,i1,Y), d(C,i2,Z), d(C,i3,heat), X = Y + Z, A < X.");
    auto s = parse_rule("t(X,Y,Z) :- c(X), s(X,o1,1), t(X,i1,Z), d(X,i2,A), d(X,i3,heat), Y = A + Z, B < Y.");
    for (auto _ : state) benchmark::DoNotOptimize(best_variable_renaming(r, s, techniques::canonical().canonical_part()));
}
BENCHMARK(BM_VariableRenaming);

void BM_PredicateRenaming(benchmark::State& state) {
    const auto rules = static_cast<std::size_t>(state.range(0));
    auto       p = random_program(3, rules, rules, "p");
    auto       q = generate_camouflaged(p, {Transform::rename_predicates, Transform::permute_rules}, 4).program;
    for (auto _ : state) benchmark::DoNotOptimize(best_predicate_renaming(p, q, techniques::canonical().canonical_part()));
}
BENCHMARK(BM_PredicateRenaming)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_ComparePair(benchmark::State& state) {
    auto          p = random_program(5, 10, 10, "p");
    auto          q = generate_camouflaged(p, all_transforms(), 6).program;
    CompareConfig cfg;
    cfg.techniques = {techniques::full(), techniques::identity(), techniques::variables(), techniques::canonical()};
    for (auto _ : state) benchmark::DoNotOptimize(compare_pair(p, q, cfg));
}
BENCHMARK(BM_ComparePair)->Unit(benchmark::kMillisecond);

void BM_RunCorpus(benchmark::State& state) {
    SyntheticOptions opts;
    opts.originals = static_cast<std::size_t>(state.range(0));
    opts.copies    = opts.originals / 4;
    std::vector<Program> corpus;
    for (const auto& p : generate_synthetic_corpus(opts, 7).programs) corpus.push_back(parse_program(p.source, p.id));
    CompareConfig cfg;
    cfg.confidence = ConfidenceMode::table;
    for (auto _ : state) benchmark::DoNotOptimize(run_corpus(corpus, cfg, 1));
}
BENCHMARK(BM_RunCorpus)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
