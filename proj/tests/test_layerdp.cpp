#include <algorithm>
#include <random>

#include "doctest.h"
#include "foldwork/generators.hpp"
#include "foldwork/layerdp.hpp"
#include "foldwork/oracle.hpp"

using namespace foldwork;

namespace {

constexpr auto M = FoldLabel::Mountain;
constexpr auto V = FoldLabel::Valley;

CreaseEvent folded(int cell, int a, int b) {
    CreaseEvent e;
    e.kind = CreaseEvent::Kind::Folded;
    e.cell = cell;
    e.a = a;
    e.b = b;
    e.positive = a;
    return e;
}

CreaseEvent spanning(int f) {
    CreaseEvent e;
    e.kind = CreaseEvent::Kind::Spanning;
    e.a = f;
    return e;
}

ArrangementEdge edge_with(std::vector<CreaseEvent> events) {
    ArrangementEdge e;
    e.left = 0;
    e.right = 1;
    e.events = std::move(events);
    return e;
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long power(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

BigInt dp_count(const CreasePattern& cp) { return run_dp(fold_arrangement(cp)).count; }

CreasePattern half_fold() {
    CreasePattern cp;
    cp.boundary = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    cp.creases = {{{Rat(1, 2), Rat(0)}, {Rat(1, 2), Rat(1)}}};
    return cp;
}

// Agreement with the oracle plus the structural properties of the result.
void cross_check(const CreasePattern& cp) {
    auto fa = fold_arrangement(cp);
    DpOptions opt;
    opt.mode = DpMode::Witness;
    auto res = run_dp(fa, opt);
    const OracleBudget big{20'000'000};  // the ply-8 fans need about 1e7
    CHECK(res.count == oracle_count(fa, big));
    CHECK(res.foldable == oracle_decide(fa, big));
    CHECK(res.foldable == (res.count > 0));
    CHECK(static_cast<double>(res.max_bag_states) <= std::pow(static_cast<double>(factorial(ply(fa))), res.width + 1));
    if (res.foldable) {
        auto w = extract_witness(res);
        CHECK(oracle_check(fa, w));
        if (!fa.labeled) {
            for (auto& l : w) std::reverse(l.begin(), l.end());
            CHECK(oracle_check(fa, w));
            if (ply(fa) >= 2) CHECK(res.count % 2 == 0);
        }
    } else {
        CHECK_THROWS_AS(extract_witness(res), NoWitness);
    }
    DpOptions decide;
    decide.mode = DpMode::Decide;
    CHECK(run_dp(fa, decide).foldable == res.foldable);
}

}  // namespace

TEST_CASE("check_edge examples") {
    auto one = edge_with({folded(0, 0, 1)});
    CHECK(check_edge(one, {0, 1}, {}, false));
    CHECK(check_edge(one, {1, 0}, {}, false));

    auto two = edge_with({folded(0, 0, 1), folded(0, 2, 3)});
    CHECK(check_edge(two, {0, 2, 3, 1}, {}, false));  // nested
    CHECK(check_edge(two, {0, 1, 2, 3}, {}, false));  // disjoint
    CHECK_FALSE(check_edge(two, {0, 2, 1, 3}, {}, false));

    auto taco = edge_with({folded(0, 0, 2), spanning(1)});
    CHECK_FALSE(check_edge(taco, {0, 1, 2}, {1}, false));
    CHECK(check_edge(taco, {1, 0, 2}, {1}, false));

    auto spans = edge_with({spanning(0), spanning(1)});
    CHECK(check_edge(spans, {0, 1}, {0, 1}, false));
    CHECK_FALSE(check_edge(spans, {0, 1}, {1, 0}, false));

    auto labeled = edge_with({folded(0, 0, 1)});
    labeled.events[0].label = M;
    CHECK(check_edge(labeled, {0, 1}, {}, true));
    CHECK_FALSE(check_edge(labeled, {1, 0}, {}, true));
    CHECK(check_edge(labeled, {1, 0}, {}, false));

    // a boundary end inside a folded pair is allowed
    CreaseEvent end;
    end.kind = CreaseEvent::Kind::BoundaryEnd;
    end.cell = 0;
    end.a = 1;
    CHECK(check_edge(edge_with({folded(0, 0, 2), end}), {0, 1, 2}, {}, false));
}

TEST_CASE("run_dp examples") {
    CHECK(dp_count(half_fold()) == 2);
    CHECK(dp_count(gen::strip(2, {M})) == 1);
    CHECK(dp_count(gen::strip(2, {V})) == 1);
    CHECK(dp_count(gen::strip(1)) == 1);
    CHECK(dp_count(gen::strip(3)) == 6);
    CHECK(dp_count(gen::strip(4)) == 16);
    CHECK(dp_count(gen::strip(5)) == 50);
    CHECK(dp_count(gen::strip(6)) == 144);

    auto fa = fold_arrangement(gen::strip(3));
    DpOptions opt;
    opt.mode = DpMode::Witness;
    auto res = run_dp(fa, opt);
    REQUIRE(res.foldable);
    CHECK(oracle_check(fa, extract_witness(res)));
}

TEST_CASE("2x2 map labelings") {
    auto all_m = gen::map(2, 2, {M, M, M, M});
    auto fa = fold_arrangement(all_m);
    CHECK_FALSE(oracle_decide(fa));
    auto res = run_dp(fa, {DpMode::Witness});
    CHECK_FALSE(res.foldable);
    CHECK_THROWS_AS(extract_witness(res), NoWitness);

    int foldable = 0;
    for (const auto& labels : gen::all_labelings(4, false)) {
        auto cp = gen::map(2, 2, labels);
        cross_check(cp);
        foldable += run_dp(fold_arrangement(cp)).foldable;
    }
    CHECK(foldable > 0);
    CHECK(foldable < 16);
}

TEST_CASE("dp agrees with the oracle") {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& labels : gen::all_labelings(n - 1, true)) cross_check(gen::strip(n, labels));
    }
    cross_check(gen::map(2, 3));
    std::mt19937 rng(9);
    for (int k = 4; k <= 8; k += 2) {
        for (int t = 0; t < 3; ++t) cross_check(gen::fan(gen::kawasaki_directions(k, rng)));
    }
    for (int t = 0; t < 6; ++t) cross_check(gen::random_grid(1 + t % 2, 2 + t % 2, rng));
}

TEST_CASE("label monotonicity") {
    for (const auto& labels : gen::all_labelings(3, true)) {
        CHECK(dp_count(gen::strip(4, labels)) <= dp_count(gen::strip(4)));
    }
}

TEST_CASE("threads do not change results") {
    auto fa = fold_arrangement(gen::map(2, 3));
    DpOptions one{DpMode::Witness, 8, 1}, many{DpMode::Witness, 8, 4};
    auto a = run_dp(fa, one), b = run_dp(fa, many);
    CHECK(a.count == b.count);
    CHECK(a.witness == b.witness);
    std::mt19937 rng(21);
    auto fan = fold_arrangement(gen::fan(gen::kawasaki_directions(8, rng)));
    auto c = run_dp(fan, one), d = run_dp(fan, many);
    CHECK(c.count == d.count);
    CHECK(c.witness == d.witness);
}

TEST_CASE("dp refusals") {
    auto fa = fold_arrangement(gen::strip(5));
    DpOptions capped;
    capped.ply_cap = 4;
    CHECK_THROWS_AS(run_dp(fa, capped), BudgetExceeded);

    NiceTreeDecomposition bogus;
    bogus.nodes.push_back({NiceKind::Leaf, {0}, 0, {}});
    bogus.root = 0;
    CHECK_THROWS_AS(run_dp(fa, bogus), DecompositionInvalid);
}

TEST_CASE("oracle examples") {
    CreasePattern square;
    square.boundary = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    auto plain = fold_arrangement(square);
    CHECK(oracle_decide(plain));
    CHECK(oracle_count(plain) == 1);
    CHECK(oracle_count(fold_arrangement(half_fold())) == 2);
    CHECK_THROWS_AS(oracle_count(fold_arrangement(gen::strip(10)), {1000}), BudgetExceeded);
    CHECK(power(2, 3) == 8);
}

TEST_CASE("oracle witness") {
    for (int n = 1; n <= 4; ++n) {
        auto fa = fold_arrangement(gen::strip(n));
        auto w = oracle_witness(fa);
        REQUIRE(w);
        CHECK(oracle_check(fa, *w));
    }
    // MM on a 1x3 strip cannot fold
    auto fa = fold_arrangement(gen::strip(3, {FoldLabel::Mountain, FoldLabel::Mountain}));
    CHECK(oracle_witness(fa).has_value() == oracle_decide(fa));
}
