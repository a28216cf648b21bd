#pragma once

// The Hydra game on finite rooted trees.
//
// A round picks a leaf l and a number n: if l has a grandparent, n fresh
// leaves are appended to the grandparent; then l is deleted. The game ends
// at the root-only tree. Ranking a tree by its count of leaves per depth,
// compared reverse-lexicographically, every round strictly decreases the
// rank, so every game terminates.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "corecur/error.hpp"
#include "corecur/rec_engine.hpp"
#include "corecur/wf_orders.hpp"

namespace corecur::hydra {

struct Tree {
    std::vector<Tree> children;

    bool is_leaf() const noexcept { return children.empty(); }
    friend bool operator==(const Tree&, const Tree&) = default;
};

/// Child indices from the root down to a leaf.
using LeafPath = std::vector<std::size_t>;

/// Finite prefix of the player's number sequence.
using Strategy = std::vector<natural>;

class not_a_leaf : public error {
public:
    explicit not_a_leaf(const std::string& what) : error("NotALeaf", what) {}
};

class root_only : public error {
public:
    root_only() : error("RootOnly", "the root-only tree has no moves") {}
};

inline std::string format_tree(const Tree& t);

class strategy_exhausted : public error {
public:
    strategy_exhausted(Tree residual, std::size_t rounds)
        : error("StrategyExhausted",
                "strategy ran out after " + std::to_string(rounds) + " rounds at " + format_tree(residual)),
          residual_(std::move(residual)),
          rounds_(rounds) {}

    const Tree& residual() const noexcept { return residual_; }
    std::size_t rounds() const noexcept { return rounds_; }

private:
    Tree residual_;
    std::size_t rounds_;
};

// ---- text form: tree ::= '(' tree* ')' -------------------------------------

inline constexpr std::size_t max_parse_depth = 10'000;

inline Tree parse_tree(std::string_view text) {
    std::vector<Tree> open;
    std::optional<Tree> done;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (done) throw parse_error("MalformedTree", 1, "trailing input at offset " + std::to_string(i));
        if (c == '(') {
            if (open.size() >= max_parse_depth) throw parse_error("MalformedTree", 1, "tree too deep");
            open.emplace_back();
        } else if (c == ')') {
            if (open.empty()) throw parse_error("MalformedTree", 1, "unbalanced ')' at offset " + std::to_string(i));
            Tree t = std::move(open.back());
            open.pop_back();
            if (open.empty()) {
                done = std::move(t);
            } else {
                open.back().children.push_back(std::move(t));
            }
        } else {
            throw parse_error("MalformedTree", 1, std::string("unexpected '") + c + "'");
        }
    }
    if (!done) throw parse_error("MalformedTree", 1, open.empty() ? "empty input" : "unbalanced '('");
    return std::move(*done);
}

inline std::string format_tree(const Tree& t) {
    std::string out = "(";
    for (const auto& c : t.children) out += format_tree(c);
    return out + ")";
}

/// Text form with children sorted recursively; equal iff the trees are
/// isomorphic as unordered trees.
inline std::string canonical(const Tree& t) {
    std::vector<std::string> parts;
    parts.reserve(t.children.size());
    for (const auto& c : t.children) parts.push_back(canonical(c));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) out += p;
    return out + ")";
}

inline std::size_t node_count(const Tree& t) {
    std::size_t n = 1;
    for (const auto& c : t.children) n += node_count(c);
    return n;
}

/// Leaves in left-to-right order. The root-only tree has the root as its
/// single leaf, at the empty path.
inline std::vector<LeafPath> leaves(const Tree& t) {
    std::vector<LeafPath> out;
    LeafPath path;
    std::function<void(const Tree&)> walk = [&](const Tree& node) {
        if (node.is_leaf()) {
            out.push_back(path);
            return;
        }
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            path.push_back(i);
            walk(node.children[i]);
            path.pop_back();
        }
    };
    walk(t);
    return out;
}

/// Entry i counts the leaves at depth i (root at depth 0).
inline Rank rank(const Tree& t) {
    std::vector<natural> counts;
    std::function<void(const Tree&, std::size_t)> walk = [&](const Tree& node, std::size_t depth) {
        if (node.is_leaf()) {
            if (counts.size() <= depth) counts.resize(depth + 1, 0);
            ++counts[depth];
            return;
        }
        for (const auto& c : node.children) walk(c, depth + 1);
    };
    walk(t, 0);
    return Rank::ev_zero_seq(std::move(counts));
}

inline Tree apply_move(const Tree& t, const LeafPath& leaf, natural n) {
    if (t.is_leaf()) throw root_only();
    if (leaf.empty()) throw not_a_leaf("the root is not a removable leaf");
    Tree out = t;
    // Walk to the leaf's parent, remembering the grandparent.
    Tree* grandparent = nullptr;
    Tree* parent = &out;
    for (std::size_t d = 0; d + 1 < leaf.size(); ++d) {
        if (leaf[d] >= parent->children.size()) throw not_a_leaf("path leaves the tree at depth " + std::to_string(d));
        grandparent = parent;
        parent = &parent->children[leaf[d]];
    }
    const std::size_t last = leaf.back();
    if (last >= parent->children.size()) throw not_a_leaf("path leaves the tree at its last step");
    if (!parent->children[last].is_leaf()) throw not_a_leaf("path ends at an inner node");
    parent->children.erase(parent->children.begin() + static_cast<std::ptrdiff_t>(last));
    if (grandparent != nullptr) grandparent->children.resize(grandparent->children.size() + n);
    return out;
}

/// Trees reachable in one round with number n, deduplicated by canonical
/// form, in order of the leaf that first produced them.
inline std::vector<Tree> successors(const Tree& t, natural n) {
    std::vector<Tree> out;
    if (t.is_leaf()) return out;
    std::unordered_set<std::string> seen;
    for (const auto& l : leaves(t)) {
        Tree next = apply_move(t, l, n);
        if (seen.insert(canonical(next)).second) out.push_back(std::move(next));
    }
    return out;
}

// ---- games -----------------------------------------------------------------

using LeafPolicy = std::function<LeafPath(const Tree&)>;

inline LeafPolicy leftmost_leaf() {
    return [](const Tree& t) { return leaves(t).front(); };
}

inline LeafPolicy rightmost_leaf() {
    return [](const Tree& t) { return leaves(t).back(); };
}

/// First leaf of maximal depth.
inline LeafPolicy deepest_leaf() {
    return [](const Tree& t) {
        auto all = leaves(t);
        return *std::max_element(all.begin(), all.end(),
                                 [](const LeafPath& a, const LeafPath& b) { return a.size() < b.size(); });
    };
}

/// Uniform choice from a seeded generator; the policy owns its generator.
inline LeafPolicy random_leaf(std::uint64_t seed) {
    auto gen = std::make_shared<std::mt19937_64>(seed);
    return [gen](const Tree& t) {
        auto all = leaves(t);
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        return all[pick(*gen)];
    };
}

struct PlayStep {
    Tree tree;
    Rank rank;
};

/// Plays until the root-only tree, using strategy[i] in round i. The first
/// entry is the starting position. A rank that fails to descend raises
/// rank_violation.
inline std::vector<PlayStep> play(const Tree& start, const Strategy& strategy, const LeafPolicy& policy) {
    std::vector<PlayStep> trace{{start, rank(start)}};
    while (!trace.back().tree.is_leaf()) {
        const std::size_t round = trace.size() - 1;
        if (round >= strategy.size()) throw strategy_exhausted(trace.back().tree, round);
        Tree next = apply_move(trace.back().tree, policy(trace.back().tree), strategy[round]);
        Rank r = rank(next);
        if (!less(r, trace.back().rank)) {
            throw rank_violation(format_tree(trace.back().tree), trace.back().rank, std::move(r), 0);
        }
        trace.push_back({std::move(next), std::move(r)});
    }
    return trace;
}

// ---- maxsteps on the solver --------------------------------------------------

struct GameState {
    Tree tree;
    std::size_t round = 0;
};

/// Whether the game is already over at this state.
struct Finished {
    bool value;
    friend bool operator==(const Finished&, const Finished&) = default;
};

struct MaxstepsLimits {
    std::size_t max_nodes = 6;
    natural max_value = 4;
    std::size_t fuse = default_fuse;
};

inline RankedCoalgebra<GameState, Finished> maxsteps_coalgebra(const Strategy& strategy) {
    return {[strategy](const GameState& s) -> Node<Finished, GameState> {
                if (s.tree.is_leaf()) return {Finished{true}, {}};
                if (s.round >= strategy.size()) throw strategy_exhausted(s.tree, s.round);
                Node<Finished, GameState> node{Finished{false}, {}};
                for (auto& t : successors(s.tree, strategy[s.round])) node.children.push_back({std::move(t), s.round + 1});
                return node;
            },
            [](const GameState& s) { return rank(s.tree); }};
}

/// Rounds to finish: 0 at the root-only tree, else one plus the worst
/// successor.
inline Algebra<Finished, natural> maxsteps_algebra() {
    return {[](const Finished& done, std::vector<natural> rounds) -> natural {
        if (done.value) {
            if (!rounds.empty()) throw arity_mismatch(0, rounds.size());
            return 0;
        }
        return 1 + (rounds.empty() ? 0 : *std::max_element(rounds.begin(), rounds.end()));
    }};
}

inline std::string state_key(const GameState& s) { return canonical(s.tree) + "@" + std::to_string(s.round); }

inline SolveResult<natural> maxsteps(const Tree& t, const Strategy& strategy, const MaxstepsLimits& limits,
                                     bool trace = false) {
    if (node_count(t) > limits.max_nodes) {
        throw fuse_exceeded(limits.max_nodes, "tree has " + std::to_string(node_count(t)) + " nodes, limit is " +
                                                  std::to_string(limits.max_nodes));
    }
    for (auto v : strategy) {
        if (v > limits.max_value) {
            throw fuse_exceeded(limits.max_value, "strategy value " + std::to_string(v) + " exceeds limit " +
                                                      std::to_string(limits.max_value));
        }
    }
    SolveConfig<GameState> cfg;
    cfg.memoize = true;
    cfg.key = &state_key;
    cfg.fuse = limits.fuse;
    cfg.trace = trace;
    return solve(maxsteps_coalgebra(strategy), maxsteps_algebra(), GameState{t, 0}, cfg);
}

inline natural maxsteps(const Tree& t, const Strategy& strategy) { return maxsteps(t, strategy, {}).value; }

}  // namespace corecur::hydra
