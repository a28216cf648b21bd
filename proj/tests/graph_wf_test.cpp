#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "corecur/euclid.hpp"
#include "corecur/graph_wf.hpp"
#include "corecur/sorting.hpp"
#include "support/oracles.hpp"

namespace corecur {
namespace {

using List = std::vector<std::int64_t>;

std::vector<std::string> edges_of(const FiniteGraph& g) {
    std::vector<std::string> out;
    for (std::size_t x = 0; x < g.size(); ++x) {
        for (auto y : g.successors(x)) out.push_back(g.name(x) + "->" + g.name(y));
    }
    return out;
}

TEST(CanonicalGraph, QuicksortFromTwoElementList) {
    List roots[] = {{2, 1}};
    auto g = canonical_graph(sorting::quicksort_coalgebra<std::int64_t>(), std::span<const List>(roots),
                             &sorting::list_key<std::int64_t>);
    ASSERT_EQ(g.size(), 3u);
    EXPECT_EQ(g.name(0), "[2,1]");
    EXPECT_EQ(g.name(1), "[1]");
    EXPECT_EQ(g.name(2), "[]");
    // [1] divides into ([], 1, []): one support element.
    EXPECT_EQ(edges_of(g), (std::vector<std::string>{"[2,1]->[1]", "[2,1]->[]", "[1]->[]"}));
}

TEST(CanonicalGraph, LeafOnlyCoalgebraGivesSingleNode) {
    RankedCoalgebra<int, int> c{[](const int&) { return Node<int, int>{0, {}}; }, {}};
    int roots[] = {5};
    auto g = canonical_graph(c, std::span<const int>(roots), [](int x) { return std::to_string(x); });
    EXPECT_EQ(g.size(), 1u);
    EXPECT_EQ(g.edge_count(), 0u);
}

TEST(CanonicalGraph, EuclidIsAPath) {
    euclid::GcdInput roots[] = {{8, 12}};
    auto g = canonical_graph(euclid::gcd_coalgebra(), std::span<const euclid::GcdInput>(roots), &euclid::input_key);
    EXPECT_EQ(edges_of(g), (std::vector<std::string>{"(8,12)->(12,8)", "(12,8)->(8,4)", "(8,4)->(4,0)"}));
    EXPECT_TRUE(is_well_founded(g));
}

TEST(CanonicalGraph, FuseLimitsDistinctNodes) {
    RankedCoalgebra<int, int> c{[](const int& x) { return Node<int, int>{0, {x + 1}}; }, {}};
    int roots[] = {0};
    EXPECT_THROW(canonical_graph(c, std::span<const int>(roots), [](int x) { return std::to_string(x); }, 100),
                 fuse_exceeded);
}

TEST(IsWellFounded, SelfLoopAndDag) {
    EXPECT_FALSE(is_well_founded(parse_graph("a: a\n")));
    EXPECT_TRUE(is_well_founded(parse_graph("a: b c\nb: c\nc:\n")));
    EXPECT_FALSE(is_well_founded(parse_graph("a: b\nb: c\nc: a\n")));
    EXPECT_TRUE(is_well_founded(FiniteGraph{}));
}

TEST(FindCycle, WitnessIsAClosedWalkOfEdges) {
    auto g = parse_graph("s: a\na: b\nb: c\nc: a\n");
    auto cycle = find_cycle(g);
    ASSERT_TRUE(cycle);
    ASSERT_GE(cycle->size(), 2u);
    EXPECT_EQ(cycle->front(), cycle->back());
    for (std::size_t i = 0; i + 1 < cycle->size(); ++i) {
        auto succ = g.successors((*cycle)[i]);
        EXPECT_NE(std::find(succ.begin(), succ.end(), (*cycle)[i + 1]), succ.end());
    }
}

TEST(VerifyRanking, Examples) {
    auto g = parse_graph("a: b\nb:\n");
    EXPECT_TRUE(verify_ranking(g, Ranking{Rank::nat(1), Rank::nat(0)}));
    EXPECT_FALSE(verify_ranking(g, Ranking{Rank::nat(0), Rank::nat(0)}));
    EXPECT_THROW(verify_ranking(g, Ranking{Rank::nat(1), Rank::second_of_pair(0, 0)}), domain_mismatch);
}

TEST(VerifyRanking, QuicksortGraphByLength) {
    List roots[] = {{2, 1}};
    auto c = sorting::quicksort_coalgebra<std::int64_t>();
    auto g = canonical_graph(c, std::span<const List>(roots), &sorting::list_key<std::int64_t>);
    Ranking r;
    for (const List& w : {List{2, 1}, List{1}, List{}}) r.push_back(c.rank(w));
    EXPECT_TRUE(verify_ranking(g, r));
}

TEST(DeriveMinRank, Examples) {
    EXPECT_EQ(derive_min_rank(parse_graph("x:\n")), Ranking{Rank::nat(0)});
    EXPECT_EQ(derive_min_rank(parse_graph("a: b\nb: c\nc:\n")),
              (Ranking{Rank::nat(2), Rank::nat(1), Rank::nat(0)}));
    try {
        derive_min_rank(parse_graph("a: b\nb: a\n"));
        FAIL();
    } catch (const cycle_found& e) {
        EXPECT_EQ(e.cycle().front(), e.cycle().back());
    }
}

TEST(DeriveMinRank, IsPointwiseMinimal) {
    // Any Nat ranking must give x at least the longest-path length from x.
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        auto g = oracles::random_dag(rng, 12, 0.3);
        auto r = derive_min_rank(g);
        auto h = oracles::longest_paths(g);
        for (std::size_t x = 0; x < g.size(); ++x) EXPECT_EQ(r[x], Rank::nat(h[x]));
        // Lowering any single entry breaks the ranking unless it is already 0.
        for (std::size_t x = 0; x < g.size(); ++x) {
            if (h[x] == 0) continue;
            auto lowered = r;
            lowered[x] = Rank::nat(h[x] - 1);
            EXPECT_FALSE(verify_ranking(g, lowered));
        }
    }
}

TEST(DisjunctiveWf, Examples) {
    auto empty_edges = parse_graph("a:\nb:\n");
    std::vector<Ranking> any{{Rank::nat(0), Rank::nat(0)}};
    EXPECT_TRUE(disjunctive_wf(empty_edges, any));

    auto loop = parse_graph("a: a\n");
    std::vector<Ranking> loop_rs{{Rank::nat(3)}, {Rank::ev_zero_seq({1})}};
    EXPECT_FALSE(disjunctive_wf(loop, loop_rs));
}

TEST(DisjunctiveWf, FourPairGraph) {
    // Nodes are pairs; closure pairs and which coordinate drops:
    //   (1,1)->(0,1) first   (1,1)->(1,0) second  (1,1)->(0,0) both
    //   (0,1)->(1,0) second  (0,1)->(0,0) second  (1,0)->(0,0) first
    auto g = parse_graph("p11: p01\np01: p10\np10: p00\np00:\n");
    std::vector<Ranking> rs{{Rank::nat(1), Rank::nat(0), Rank::nat(1), Rank::nat(0)},
                            {Rank::nat(1), Rank::nat(1), Rank::nat(0), Rank::nat(0)}};
    EXPECT_EQ(transitive_closure(g)[0][2], true);
    EXPECT_TRUE(disjunctive_wf(g, rs));
    // Neither coordinate alone is a ranking function.
    EXPECT_FALSE(verify_ranking(g, rs[0]));
    EXPECT_FALSE(verify_ranking(g, rs[1]));
    // With only the first coordinate the pair (0,1)->(1,0) has no witness.
    EXPECT_FALSE(disjunctive_wf(g, std::span<const Ranking>(rs).first(1)));
}

TEST(DisjunctiveWf, DomainsMayDifferAcrossRankings) {
    auto g = parse_graph("a: b\nb:\n");
    std::vector<Ranking> rs{{Rank::second_of_pair(0, 1), Rank::second_of_pair(9, 0)},
                            {Rank::nat(0), Rank::nat(0)}};
    EXPECT_TRUE(disjunctive_wf(g, rs));
    std::vector<Ranking> mixed{{Rank::nat(1), Rank::second_of_pair(0, 0)}};
    EXPECT_THROW(disjunctive_wf(g, mixed), domain_mismatch);
}

TEST(Properties, RandomGraphs) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        auto g = oracles::random_graph(rng, 12, 0.15);
        bool wf = is_well_founded(g);
        EXPECT_EQ(wf, oracles::acyclic_by_kahn(g));
        if (wf) {
            auto r = derive_min_rank(g);
            EXPECT_TRUE(verify_ranking(g, r));
        }
        // Random Nat rankings: a valid single ranking or a valid disjunctive
        // family both certify well-foundedness.
        std::vector<Ranking> rs(2);
        for (auto& r : rs) {
            for (std::size_t x = 0; x < g.size(); ++x) r.push_back(Rank::nat(rng() % 6));
        }
        if (verify_ranking(g, rs[0])) {
            EXPECT_TRUE(wf);
        }
        if (disjunctive_wf(g, rs)) {
            EXPECT_TRUE(wf);
        }
    }
}

TEST(Properties, SolveSuccessImpliesCanonicalGraphIsRanked) {
    std::mt19937_64 rng(8);
    auto c = sorting::quicksort_coalgebra<std::int64_t>();
    for (int i = 0; i < 50; ++i) {
        auto w = oracles::random_list(rng, 10, 0, 9);
        sorting::quicksort(w, SolveConfig<List>{});
        List roots[] = {w};
        auto g = canonical_graph(c, std::span<const List>(roots), &sorting::list_key<std::int64_t>);
        // Keys are "[a,b,...]": decode to recover the list's length.
        Ranking r;
        for (std::size_t x = 0; x < g.size(); ++x) {
            const auto& k = g.name(x);
            r.push_back(Rank::nat(k == "[]" ? 0 : static_cast<natural>(std::count(k.begin(), k.end(), ',') + 1)));
        }
        EXPECT_TRUE(verify_ranking(g, r));
    }
}

TEST(GraphText, ParsesCommentsAndBlankSuccessors) {
    auto g = parse_graph("# header\n\n a :  b   c  # trailing\nb:\nc: b\n");
    EXPECT_EQ(format_graph(g), "a: b c\nb:\nc: b\n");
}

TEST(GraphText, CanonicalFormRoundTrips) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        auto g = oracles::random_graph(rng, 12, 0.25);
        auto text = format_graph(g);
        auto back = parse_graph(text);
        EXPECT_EQ(back, g);
        EXPECT_EQ(format_graph(back), text);
    }
}

TEST(GraphText, Errors) {
    auto kind = [](const std::string& text) {
        try {
            parse_graph(text);
        } catch (const parse_error& e) {
            return e.kind() + "@" + std::to_string(e.line());
        }
        return std::string("ok");
    };
    EXPECT_EQ(kind("a: b\n"), "UndeclaredNode@1");
    EXPECT_EQ(kind("a:\n\na:\n"), "DuplicateNode@3");
    EXPECT_EQ(kind("a b\n"), "MalformedLine@1");
    EXPECT_EQ(kind("a b: c\n"), "MalformedLine@1");
}

TEST(RankingText, ParsesPerNodeRanks) {
    auto g = parse_graph("a: b\nb:\n");
    auto r = parse_ranking("b: Nat(0)\na: 1\n", g);
    EXPECT_EQ(r, (Ranking{Rank::nat(1), Rank::nat(0)}));
    EXPECT_THROW(parse_ranking("a: 1\n", g), parse_error);
    EXPECT_THROW(parse_ranking("a: 1\nb: 0\nc: 0\n", g), parse_error);
    EXPECT_THROW(parse_ranking("a: x\nb: 0\n", g), parse_error);
}

}  // namespace
}  // namespace corecur
