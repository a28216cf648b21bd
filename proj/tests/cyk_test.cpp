#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "corecur/cyk.hpp"
#include "support/oracles.hpp"

namespace corecur::cyk {
namespace {

std::vector<std::string> child_texts(const std::string& w) {
    std::vector<std::string> out;
    for (const auto& c : cyk_divide(Subword{0, w.size()}).children) out.push_back(w.substr(c.offset, c.length));
    return out;
}

NTSet set_of(const CNFGrammar& g, std::initializer_list<const char*> names) {
    NTSet s(g.nonterminals().size());
    for (auto n : names) s.insert(*g.nonterminal_index(n));
    return s;
}

TEST(CykDivide, Examples) {
    EXPECT_EQ(child_texts("ab"), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(child_texts("abc"), (std::vector<std::string>{"a", "bc", "ab", "c"}));
    EXPECT_TRUE(child_texts("a").empty());
    EXPECT_EQ(cyk_divide(Subword{3, 2}).label, (Subword{3, 2}));
    EXPECT_THROW(cyk_divide(Subword{0, 0}), empty_word);
}

TEST(CykCombine, Examples) {
    auto g = oracles::g_ab();
    auto a = make_word(g, "a");
    EXPECT_EQ(cyk_combine(g, a.symbols(), {}), set_of(g, {"A"}));

    auto ab = make_word(g, "ab");
    std::vector<NTSet> ab_children{set_of(g, {"A"}), set_of(g, {"B"})};
    EXPECT_EQ(cyk_combine(g, ab.symbols(), ab_children), set_of(g, {"S"}));

    auto ba = make_word(g, "ba");
    std::vector<NTSet> ba_children{set_of(g, {"B"}), set_of(g, {"A"})};
    EXPECT_TRUE(cyk_combine(g, ba.symbols(), ba_children).empty());

    EXPECT_THROW(cyk_combine(g, ab.symbols(), std::vector<NTSet>{set_of(g, {"A"})}), arity_mismatch);
}

TEST(Cyk, Examples) {
    auto g = oracles::g_ab();
    EXPECT_EQ(cyk(g, make_word(g, "ab")).set, set_of(g, {"S"}));
    auto h = oracles::g_anbn();
    EXPECT_TRUE(cyk(h, make_word(h, "aabb")).set.contains(h.start()));
    EXPECT_FALSE(cyk(h, make_word(h, "abab")).set.contains(h.start()));
    EXPECT_TRUE(accepts(h, make_word(h, "aaabbb")));
    EXPECT_FALSE(accepts(h, make_word(h, "aab")));
}

TEST(Cyk, StartSymbolWithUnitRule) {
    auto g = parse_grammar("start A\nA -> 'a'\n");
    EXPECT_TRUE(accepts(g, make_word(g, "a")));
    EXPECT_FALSE(accepts(g, make_word(g, "aa")));
}

TEST(Cyk, UnknownTerminalAndEmptyWord) {
    auto g = oracles::g_ab();
    EXPECT_THROW(make_word(g, "abc"), unknown_terminal);
    EXPECT_THROW(make_word(g, ""), empty_word);
}

TEST(Cyk, Utf8Terminals) {
    auto g = parse_grammar("start S\nS -> X Y\nX -> 'λ'\nY -> '→'\n");
    EXPECT_EQ(g.terminals().size(), 2u);
    EXPECT_TRUE(accepts(g, make_word(g, "λ→")));
    EXPECT_FALSE(accepts(g, make_word(g, "→λ")));
}

TEST(DeriveOracle, Examples) {
    auto g = oracles::g_ab();
    auto S = *g.nonterminal_index("S");
    EXPECT_TRUE(derives_oracle(g, S, make_word(g, "ab").symbols()));
    EXPECT_FALSE(derives_oracle(g, S, make_word(g, "a").symbols()));
    auto h = oracles::g_anbn();
    EXPECT_TRUE(derives_oracle(h, h.start(), make_word(h, "ab").symbols()));
    EXPECT_THROW(derives_oracle(h, h.start(), make_word(h, "aaaaaaabbbbbbb").symbols()), oracle_bound_exceeded);
}

TEST(Memoization, ExpansionsAndSplitPairsAreCubicBookkeeping) {
    auto g = oracles::g_anbn();
    for (std::size_t n : {1u, 2u, 5u, 16u}) {
        std::string text(n / 2, 'a');
        text += std::string(n - n / 2, 'b');
        auto r = cyk(g, make_word(g, text));
        EXPECT_EQ(r.counters.expansions, n * (n + 1) / 2);
        EXPECT_EQ(r.stats.expanded, n * (n + 1) / 2);
        std::size_t pairs = 0;
        for (std::size_t len = 2; len <= n; ++len) pairs += (n - len + 1) * (len - 1);
        EXPECT_EQ(r.counters.split_pairs, pairs);
    }
}

TEST(Memoization, ReusedSubwordsReturnTheFirstResult) {
    // Instrument the algebra: every subword's set is recorded the first time
    // it is computed, and each later consumer must see an equal set.
    auto g = oracles::g_brackets();
    auto w = make_word(g, "(()())()");
    std::map<std::string, NTSet> first;
    std::size_t reuses = 0;
    auto base = cyk_algebra(g, w);
    Algebra<Subword, NTSet> checked{[&](const Subword& label, std::vector<NTSet> children) {
        auto split = cyk_divide(label).children;
        for (std::size_t i = 0; i < split.size(); ++i) {
            auto it = first.find(subword_key(split[i]));
            EXPECT_NE(it, first.end());
            if (it != first.end()) {
                EXPECT_EQ(it->second, children[i]);
                ++reuses;
            }
        }
        auto out = base.combine(label, std::move(children));
        EXPECT_TRUE(first.emplace(subword_key(label), out).second) << subword_key(label);
        return out;
    }};
    SolveConfig<Subword> cfg;
    cfg.memoize = true;
    cfg.key = &subword_key;
    auto r = solve(cyk_coalgebra(), checked, Subword{0, w.size()}, cfg);
    EXPECT_TRUE(r.value.contains(g.start()));
    EXPECT_EQ(first.size(), 36u);
    EXPECT_GT(reuses, first.size());
}

TEST(Properties, OracleEquivalenceUpToLength6) {
    for (const auto& g : {oracles::g_ab(), oracles::g_anbn(), oracles::g_brackets()}) {
        for (const auto& symbols : oracles::all_words(g.terminals().size(), 6)) {
            Word w(symbols);
            auto memo = cyk(g, w).set;
            auto plain = cyk(g, w, false).set;
            auto naive = oracles::naive_solve(cyk_coalgebra(), cyk_algebra(g, w), Subword{0, w.size()});
            EXPECT_EQ(memo, plain);
            EXPECT_EQ(memo, naive);
            for (std::size_t p = 0; p < g.nonterminals().size(); ++p) {
                EXPECT_EQ(memo.contains(p), derives_oracle(g, p, w.symbols()));
            }
        }
    }
}

TEST(GrammarFile, ParsesFormat) {
    auto g = parse_grammar("# comment\n  start S  \n\nS -> A B   # binary\nA -> 'a'\nB -> 'b'\n");
    EXPECT_EQ(g.nonterminals(), (std::vector<std::string>{"S", "A", "B"}));
    EXPECT_EQ(g.terminals(), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(g.binary_rules().size(), 1u);
    EXPECT_EQ(g.unit_rules().size(), 2u);
    auto hash = parse_grammar("start S\nS -> '#'\n");
    EXPECT_TRUE(accepts(hash, make_word(hash, "#")));
}

TEST(GrammarFile, Errors) {
    auto kind = [](const std::string& text) {
        try {
            parse_grammar(text);
        } catch (const parse_error& e) {
            return e.kind() + "@" + std::to_string(e.line());
        }
        return std::string("ok");
    };
    EXPECT_EQ(kind("start S\nS -> A B C\n"), "NonBinaryRule@2");
    EXPECT_EQ(kind("start S\nS -> A\n"), "NonBinaryRule@2");
    EXPECT_EQ(kind("start T\nS -> 'a'\n"), "UndeclaredStart@1");
    EXPECT_EQ(kind("S -> A B\n"), "MissingStart@1");
    EXPECT_EQ(kind(""), "MissingStart@0");
    EXPECT_EQ(kind("start S\nS A B\n"), "MalformedRule@2");
    EXPECT_EQ(kind("start S\nS -> 'ab'\n"), "MalformedTerminal@2");
    EXPECT_EQ(kind("start S\nS -> 'a\n"), "MalformedTerminal@2");
    EXPECT_EQ(kind("start S\nS -> A 'a'\n"), "MalformedRule@2");
    EXPECT_EQ(kind("start S\nS -> a a\na -> 'a'\n"), "InvalidGrammar@1");
}

}  // namespace
}  // namespace corecur::cyk
