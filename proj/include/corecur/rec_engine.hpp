#pragma once

// Generic divide-and-conquer solver.
//
// Given a ranked coalgebra (divide + rank) and an algebra (combine), `solve`
// computes the unique h with
//
//     h(x) = combine(divide(x).label, [h(y) for y in divide(x).children])
//
// The call tree is unfolded with an explicit stack, so recursion depth is
// bounded by memory rather than by the host call stack. With
// `enforce_rank` set, every parent -> child edge must strictly decrease the
// rank; a violating edge raises rank_violation before the child is expanded.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <ostream>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corecur/error.hpp"
#include "corecur/wf_orders.hpp"

namespace corecur {

inline constexpr std::size_t default_fuse = 50'000'000;

/// One layer of a finitary polynomial functor: a shape label plus the
/// recursive positions, in order.
template <class Label, class Input>
struct Node {
    Label label;
    std::vector<Input> children;
};

template <class Input, class Label>
struct RankedCoalgebra {
    using input_type = Input;
    using label_type = Label;
    using node_type = Node<Label, Input>;

    std::function<node_type(const Input&)> divide;
    std::function<Rank(const Input&)> rank;
};

template <class Label, class Output>
struct Algebra {
    using output_type = Output;

    std::function<Output(const Label&, std::vector<Output>)> combine;
};

template <class Input>
struct SolveConfig {
    bool memoize = false;
    /// Canonical key of an input. Required when memoize is set; also used to
    /// name nodes in traces and rank violations when present.
    std::function<std::string(const Input&)> key;
    bool enforce_rank = true;
    std::size_t fuse = default_fuse;
    bool trace = false;
};

class rank_violation : public error {
public:
    rank_violation(std::string parent_key, Rank parent_rank, Rank child_rank, std::size_t child_index)
        : error("RankViolation", "child " + std::to_string(child_index) + " of " + parent_key + " has rank " +
                                     child_rank.str() + ", not below " + parent_rank.str()),
          parent_key_(std::move(parent_key)),
          parent_rank_(std::move(parent_rank)),
          child_rank_(std::move(child_rank)),
          child_index_(child_index) {}

    const std::string& parent_key() const noexcept { return parent_key_; }
    const Rank& parent_rank() const noexcept { return parent_rank_; }
    const Rank& child_rank() const noexcept { return child_rank_; }
    std::size_t child_index() const noexcept { return child_index_; }

private:
    std::string parent_key_;
    Rank parent_rank_;
    Rank child_rank_;
    std::size_t child_index_;
};

struct TraceRecord {
    std::size_t depth;
    std::string key;
    std::optional<Rank> rank;  // absent when the coalgebra has no rank function
    std::size_t child_count;
};

/// Expansion records in pre-order; `depth` reconstructs the tree.
struct CallTrace {
    std::vector<TraceRecord> records;

    /// One line per expanded node: indentation, depth, key, rank.
    void dump(std::ostream& os) const {
        for (const auto& r : records) {
            os << std::string(2 * r.depth, ' ') << r.depth << ' ' << r.key << ' ';
            if (r.rank) {
                os << *r.rank;
            } else {
                os << '-';
            }
            os << '\n';
        }
    }
};

struct SolveStats {
    std::size_t expanded = 0;
    std::size_t memo_hits = 0;
    std::size_t max_depth = 0;
};

template <class Output>
struct SolveResult {
    Output value;
    SolveStats stats;
    std::optional<CallTrace> trace;
};

namespace detail {

template <class Input, class RankFn>
std::vector<Rank> guarded_child_ranks(std::span<const Input> children, const Rank& parent_rank, RankFn&& rank,
                                      const std::string& parent_key) {
    std::vector<Rank> ranks;
    ranks.reserve(children.size());
    for (std::size_t i = 0; i < children.size(); ++i) {
        Rank r = rank(children[i]);
        if (!less(r, parent_rank)) throw rank_violation(parent_key, parent_rank, std::move(r), i);
        ranks.push_back(std::move(r));
    }
    return ranks;
}

}  // namespace detail

/// Returns `node` iff every child ranks strictly below `parent_rank`;
/// otherwise throws rank_violation naming the first offending child.
template <class Label, class Input, class RankFn>
const Node<Label, Input>& guard(const Node<Label, Input>& node, const Rank& parent_rank, RankFn&& rank,
                                const std::string& parent_key = "?") {
    detail::guarded_child_ranks(std::span<const Input>(node.children), parent_rank, rank, parent_key);
    return node;
}

template <class Input, class Label, class Output>
SolveResult<Output> solve(const RankedCoalgebra<Input, Label>& coalg, const Algebra<Label, Output>& alg,
                          const std::type_identity_t<Input>& input,
                          const std::type_identity_t<SolveConfig<Input>>& cfg = {},
                          const std::type_identity_t<std::function<void(const Input&, const Node<Label, Input>&)>>&
                              on_expand = {}) {
    if (cfg.fuse == 0) throw std::invalid_argument("fuse must be positive");
    if (cfg.memoize && !cfg.key) throw std::invalid_argument("memoize requires a key function");
    if (cfg.enforce_rank && !coalg.rank) throw std::invalid_argument("enforce_rank requires a rank function");

    struct Frame {
        Label label;
        std::vector<Input> pending;
        std::vector<Rank> child_ranks;
        std::size_t next = 0;
        std::vector<Output> outputs;
        std::string key;
    };

    SolveStats stats;
    std::optional<CallTrace> trace;
    if (cfg.trace) trace.emplace();
    std::unordered_map<std::string, Output> memo;
    std::vector<Frame> stack;

    // Without a key function nodes are named by expansion index.
    auto key_of = [&](const Input& x) {
        return cfg.key ? cfg.key(x) : "#" + std::to_string(stats.expanded);
    };

    // `known_rank` is the rank already computed by the parent's guard.
    auto expand = [&](const Input& x, std::optional<Rank> known_rank, std::string key) {
        if (++stats.expanded > cfg.fuse) throw fuse_exceeded(cfg.fuse);
        auto node = coalg.divide(x);
        if (on_expand) on_expand(x, node);
        Frame f{std::move(node.label), std::move(node.children), {}, 0, {}, std::move(key)};
        std::optional<Rank> own_rank = std::move(known_rank);
        if (!own_rank && (cfg.enforce_rank || cfg.trace) && coalg.rank) own_rank = coalg.rank(x);
        if (cfg.enforce_rank) {
            f.child_ranks =
                detail::guarded_child_ranks(std::span<const Input>(f.pending), *own_rank, coalg.rank, f.key);
        }
        if (trace) {
            trace->records.push_back(TraceRecord{stack.size(), f.key, own_rank, f.pending.size()});
        }
        f.outputs.reserve(f.pending.size());
        stack.push_back(std::move(f));
        if (stack.size() > stats.max_depth) stats.max_depth = stack.size();
    };

    expand(input, std::nullopt, key_of(input));
    while (true) {
        Frame& top = stack.back();
        if (top.next < top.pending.size()) {
            Input child = std::move(top.pending[top.next]);
            std::optional<Rank> child_rank;
            if (cfg.enforce_rank) child_rank = std::move(top.child_ranks[top.next]);
            ++top.next;
            std::string key = key_of(child);
            if (cfg.memoize) {
                if (auto it = memo.find(key); it != memo.end()) {
                    ++stats.memo_hits;
                    top.outputs.push_back(it->second);
                    continue;
                }
            }
            expand(child, std::move(child_rank), std::move(key));
            continue;
        }
        Output out = alg.combine(top.label, std::move(top.outputs));
        if (cfg.memoize) memo.emplace(std::move(top.key), out);
        stack.pop_back();
        if (stack.empty()) return SolveResult<Output>{std::move(out), stats, std::move(trace)};
        stack.back().outputs.push_back(std::move(out));
    }
}

}  // namespace corecur
