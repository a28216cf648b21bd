#pragma once

// Termination toolkit for finite graphs: canonical graphs of coalgebras,
// acyclicity, ranking-function checking and derivation, and the
// disjunctive (several rankings over the transitive closure) criterion.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corecur/error.hpp"
#include "corecur/rec_engine.hpp"
#include "corecur/wf_orders.hpp"

namespace corecur {

class FiniteGraph {
public:
    FiniteGraph() = default;

    /// Throws std::invalid_argument on duplicate names or out-of-range successors.
    FiniteGraph(std::vector<std::string> names, std::vector<std::vector<std::size_t>> succ)
        : names_(std::move(names)), succ_(std::move(succ)) {
        if (succ_.size() != names_.size()) throw std::invalid_argument("one successor list per node required");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!index_.emplace(names_[i], i).second) {
                throw std::invalid_argument("duplicate node '" + names_[i] + "'");
            }
        }
        for (const auto& list : succ_) {
            for (auto j : list) {
                if (j >= names_.size()) throw std::invalid_argument("successor index out of range");
            }
        }
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    std::span<const std::size_t> successors(std::size_t i) const { return succ_.at(i); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& l : succ_) n += l.size();
        return n;
    }

    friend bool operator==(const FiniteGraph& a, const FiniteGraph& b) {
        return a.names_ == b.names_ && a.succ_ == b.succ_;
    }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<std::size_t>> succ_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Per-node ranks, aligned with the graph's node indices.
using Ranking = std::vector<Rank>;

class cycle_found : public error {
public:
    explicit cycle_found(std::vector<std::size_t> cycle)
        : error("CycleFound", "graph contains a cycle"), cycle_(std::move(cycle)) {}

    /// Closed walk: first node == last node.
    const std::vector<std::size_t>& cycle() const noexcept { return cycle_; }

private:
    std::vector<std::size_t> cycle_;
};

// ---- text format ---------------------------------------------------------
//
//   # comment
//   a: b c
//   b: c
//   c:
//
// Node names are whitespace-free tokens without ':' or '#'. Every successor
// must be declared on its own line somewhere in the file.

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

inline std::string_view strip_comment(std::string_view line) {
    auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

}  // namespace detail

inline FiniteGraph parse_graph(std::string_view text) {
    struct Decl {
        std::string name;
        std::vector<std::string> succ;
        std::size_t line;
    };
    std::vector<Decl> decls;
    std::unordered_map<std::string, std::size_t> index;
    std::istringstream is{std::string(text)};
    std::size_t lineno = 0;
    for (std::string raw; std::getline(is, raw);) {
        ++lineno;
        auto line = detail::trim(detail::strip_comment(raw));
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw parse_error("MalformedLine", lineno, "expected '<node>: <succ>...'");
        auto name = detail::trim(line.substr(0, colon));
        if (name.empty() || detail::split_ws(name).size() != 1) {
            throw parse_error("MalformedLine", lineno, "node name must be a single token");
        }
        auto succ = detail::split_ws(line.substr(colon + 1));
        for (const auto& s : succ) {
            if (s.find(':') != std::string::npos) throw parse_error("MalformedLine", lineno, "stray ':' in '" + s + "'");
        }
        if (!index.emplace(std::string(name), decls.size()).second) {
            throw parse_error("DuplicateNode", lineno, "node '" + std::string(name) + "' declared twice");
        }
        decls.push_back(Decl{std::string(name), std::move(succ), lineno});
    }
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> succ;
    for (auto& d : decls) {
        std::vector<std::size_t> list;
        for (const auto& s : d.succ) {
            auto it = index.find(s);
            if (it == index.end()) throw parse_error("UndeclaredNode", d.line, "successor '" + s + "' is not declared");
            list.push_back(it->second);
        }
        names.push_back(std::move(d.name));
        succ.push_back(std::move(list));
    }
    return FiniteGraph(std::move(names), std::move(succ));
}

/// Canonical text: declaration order, `name:` then successors separated by
/// single spaces, LF line endings.
inline std::string format_graph(const FiniteGraph& g) {
    std::string out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        out += g.name(i);
        out += ':';
        for (auto j : g.successors(i)) {
            out += ' ';
            out += g.name(j);
        }
        out += '\n';
    }
    return out;
}

/// Rank file: one `<node>: <rank>` line per node of `g`, rank in the
/// printed form accepted by parse_rank.
inline Ranking parse_ranking(std::string_view text, const FiniteGraph& g) {
    std::vector<std::optional<Rank>> slots(g.size());
    std::istringstream is{std::string(text)};
    std::size_t lineno = 0;
    for (std::string raw; std::getline(is, raw);) {
        ++lineno;
        auto line = detail::trim(detail::strip_comment(raw));
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw parse_error("MalformedLine", lineno, "expected '<node>: <rank>'");
        auto name = detail::trim(line.substr(0, colon));
        auto idx = g.index_of(name);
        if (!idx) throw parse_error("UndeclaredNode", lineno, "unknown node '" + std::string(name) + "'");
        if (slots[*idx]) throw parse_error("DuplicateNode", lineno, "rank for '" + std::string(name) + "' given twice");
        try {
            slots[*idx] = parse_rank(line.substr(colon + 1));
        } catch (const std::invalid_argument& e) {
            throw parse_error("MalformedRank", lineno, e.what());
        }
    }
    Ranking r;
    r.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!slots[i]) throw parse_error("MissingRank", lineno, "no rank for node '" + g.name(i) + "'");
        r.push_back(std::move(*slots[i]));
    }
    return r;
}

// ---- analyses ------------------------------------------------------------

/// Explores divide from `roots` breadth-first. Nodes appear in discovery
/// order; each node's successors are the distinct children of its layer
/// (the support of the layer), in first-occurrence order.
template <class Input, class Label, class KeyFn>
FiniteGraph canonical_graph(const RankedCoalgebra<Input, Label>& coalg, std::span<const Input> roots, KeyFn&& key,
                            std::size_t fuse = default_fuse) {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> succ;
    std::unordered_map<std::string, std::size_t> index;
    std::deque<Input> queue;

    auto intern = [&](const Input& x) -> std::size_t {
        auto k = key(x);
        if (auto it = index.find(k); it != index.end()) return it->second;
        if (names.size() >= fuse) throw fuse_exceeded(fuse);
        index.emplace(k, names.size());
        names.push_back(std::move(k));
        succ.emplace_back();
        queue.push_back(x);
        return names.size() - 1;
    };

    for (const auto& r : roots) intern(r);
    for (std::size_t i = 0; !queue.empty(); ++i) {
        Input x = std::move(queue.front());
        queue.pop_front();
        auto node = coalg.divide(x);
        std::vector<std::size_t> list;
        for (const auto& c : node.children) {
            auto j = intern(c);
            if (std::find(list.begin(), list.end(), j) == list.end()) list.push_back(j);
        }
        succ[i] = std::move(list);
    }
    return FiniteGraph(std::move(names), std::move(succ));
}

/// A cycle as a closed walk, or nullopt when the graph is acyclic.
inline std::optional<std::vector<std::size_t>> find_cycle(const FiniteGraph& g) {
    enum class color : unsigned char { white, grey, black };
    std::vector<color> state(g.size(), color::white);
    std::vector<std::size_t> parent(g.size(), g.size());
    struct Visit {
        std::size_t node;
        std::size_t next;
    };
    for (std::size_t root = 0; root < g.size(); ++root) {
        if (state[root] != color::white) continue;
        std::vector<Visit> stack{{root, 0}};
        state[root] = color::grey;
        while (!stack.empty()) {
            auto& top = stack.back();
            auto succ = g.successors(top.node);
            if (top.next == succ.size()) {
                state[top.node] = color::black;
                stack.pop_back();
                continue;
            }
            auto y = succ[top.next++];
            if (state[y] == color::grey) {
                std::vector<std::size_t> cycle{y};
                for (auto x = top.node; x != y; x = parent[x]) cycle.push_back(x);
                cycle.push_back(y);
                std::reverse(cycle.begin(), cycle.end());
                return cycle;
            }
            if (state[y] == color::white) {
                state[y] = color::grey;
                parent[y] = top.node;
                stack.push_back({y, 0});
            }
        }
    }
    return std::nullopt;
}

/// In a finite graph an infinite path exists iff a cycle does.
inline bool is_well_founded(const FiniteGraph& g) { return !find_cycle(g).has_value(); }

inline bool verify_ranking(const FiniteGraph& g, std::span<const Rank> r) {
    if (r.size() != g.size()) throw std::invalid_argument("ranking must assign one rank per node");
    require_same_domain(r);
    for (std::size_t x = 0; x < g.size(); ++x) {
        for (auto y : g.successors(x)) {
            if (!less(r[y], r[x])) return false;
        }
    }
    return true;
}

/// Longest-path height of every node: the pointwise least Nat ranking.
/// Throws cycle_found when no ranking exists.
inline Ranking derive_min_rank(const FiniteGraph& g) {
    if (auto c = find_cycle(g)) throw cycle_found(std::move(*c));
    std::vector<natural> height(g.size(), 0);
    std::vector<bool> done(g.size(), false);
    for (std::size_t root = 0; root < g.size(); ++root) {
        if (done[root]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        while (!stack.empty()) {
            auto& [x, next] = stack.back();
            auto succ = g.successors(x);
            if (next < succ.size()) {
                auto y = succ[next++];
                if (!done[y]) stack.emplace_back(y, 0);
                continue;
            }
            natural h = 0;
            for (auto y : succ) h = std::max(h, height[y] + 1);
            height[x] = h;
            done[x] = true;
            stack.pop_back();
        }
    }
    Ranking r;
    r.reserve(g.size());
    for (auto h : height) r.push_back(Rank::nat(h));
    return r;
}

/// reach[x][y] iff y is reachable from x by a path of length >= 1.
inline std::vector<std::vector<bool>> transitive_closure(const FiniteGraph& g) {
    std::vector<std::vector<bool>> reach(g.size(), std::vector<bool>(g.size(), false));
    for (std::size_t x = 0; x < g.size(); ++x) {
        std::vector<std::size_t> work(g.successors(x).begin(), g.successors(x).end());
        while (!work.empty()) {
            auto y = work.back();
            work.pop_back();
            if (reach[x][y]) continue;
            reach[x][y] = true;
            for (auto z : g.successors(y)) {
                if (!reach[x][z]) work.push_back(z);
            }
        }
    }
    return reach;
}

/// True iff every pair (x, y) of the transitive closure decreases under at
/// least one of the rankings. That premise implies well-foundedness; the
/// converse does not hold.
inline bool disjunctive_wf(const FiniteGraph& g, std::span<const Ranking> rankings) {
    for (const auto& r : rankings) {
        if (r.size() != g.size()) throw std::invalid_argument("ranking must assign one rank per node");
        require_same_domain(r);
    }
    auto reach = transitive_closure(g);
    for (std::size_t x = 0; x < g.size(); ++x) {
        for (std::size_t y = 0; y < g.size(); ++y) {
            if (!reach[x][y]) continue;
            bool decreases = std::any_of(rankings.begin(), rankings.end(),
                                         [&](const Ranking& r) { return less(r[y], r[x]); });
            if (!decreases) return false;
        }
    }
    return true;
}

}  // namespace corecur
