#pragma once

// CYK recognition for grammars in Chomsky normal form, run on the solver
// with memoization by subword position.
//
// A word w is divided into the 2(|w|-1) subwords of its proper splits,
// ordered [u1, v1, u2, v2, ...] where uk is the first k symbols. Combining
// collects every P with a unit rule P -> w (|w| = 1) or a binary rule
// P -> Q T with Q derived by some uk and T by the matching vk.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corecur/error.hpp"
#include "corecur/rec_engine.hpp"
#include "corecur/wf_orders.hpp"

namespace corecur::cyk {

class unknown_terminal : public error {
public:
    explicit unknown_terminal(const std::string& symbol)
        : error("UnknownTerminal", "symbol '" + symbol + "' is not a terminal of the grammar") {}
};

class empty_word : public error {
public:
    empty_word() : error("EmptyWord", "words must be non-empty") {}
};

class oracle_bound_exceeded : public error {
public:
    oracle_bound_exceeded(std::size_t length, std::size_t bound)
        : error("OracleBoundExceeded",
                "word of length " + std::to_string(length) + " exceeds oracle bound " + std::to_string(bound)) {}
};

/// Splits UTF-8 text into code points, one string each.
inline std::vector<std::string> utf8_symbols(std::string_view text) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < text.size();) {
        auto lead = static_cast<unsigned char>(text[i]);
        std::size_t len = lead < 0x80 ? 1 : (lead >> 5) == 0x6 ? 2 : (lead >> 4) == 0xE ? 3 : (lead >> 3) == 0x1E ? 4 : 0;
        if (len == 0 || i + len > text.size()) throw std::invalid_argument("malformed UTF-8");
        out.emplace_back(text.substr(i, len));
        i += len;
    }
    return out;
}

class CNFGrammar {
public:
    struct BinaryRule {
        std::size_t lhs;
        std::size_t left;
        std::size_t right;
    };
    struct UnitRule {
        std::size_t lhs;
        std::size_t terminal;
    };

    struct NamedBinary {
        std::string lhs, left, right;
    };
    struct NamedUnit {
        std::string lhs, terminal;
    };

    /// Nonterminals are numbered in order of first appearance, start first;
    /// terminals likewise. Throws std::invalid_argument when the start symbol
    /// has no rule or a name is both a nonterminal and a terminal.
    CNFGrammar(const std::string& start, const std::vector<NamedBinary>& binary, const std::vector<NamedUnit>& unit) {
        intern_nt(start);
        for (const auto& r : binary) binary_.push_back({intern_nt(r.lhs), intern_nt(r.left), intern_nt(r.right)});
        for (const auto& r : unit) {
            if (utf8_symbols(r.terminal).size() != 1) {
                throw std::invalid_argument("terminal '" + r.terminal + "' is not a single symbol");
            }
            unit_.push_back({intern_nt(r.lhs), intern_t(r.terminal)});
        }
        bool start_has_rule = std::any_of(binary_.begin(), binary_.end(), [](auto& r) { return r.lhs == 0; }) ||
                              std::any_of(unit_.begin(), unit_.end(), [](auto& r) { return r.lhs == 0; });
        if (!start_has_rule) throw std::invalid_argument("start symbol '" + start + "' has no rule");
        for (const auto& t : terminals_) {
            if (nonterminal_index(t)) throw std::invalid_argument("'" + t + "' is both a nonterminal and a terminal");
        }
    }

    std::size_t start() const noexcept { return 0; }
    const std::vector<std::string>& nonterminals() const noexcept { return nonterminals_; }
    const std::vector<std::string>& terminals() const noexcept { return terminals_; }
    const std::vector<BinaryRule>& binary_rules() const noexcept { return binary_; }
    const std::vector<UnitRule>& unit_rules() const noexcept { return unit_; }

    std::optional<std::size_t> nonterminal_index(std::string_view name) const {
        auto it = nt_index_.find(std::string(name));
        return it == nt_index_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
    }
    std::optional<std::size_t> terminal_index(std::string_view symbol) const {
        auto it = t_index_.find(std::string(symbol));
        return it == t_index_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
    }

private:
    std::size_t intern_nt(const std::string& name) {
        auto [it, fresh] = nt_index_.emplace(name, nonterminals_.size());
        if (fresh) nonterminals_.push_back(name);
        return it->second;
    }
    std::size_t intern_t(const std::string& symbol) {
        auto [it, fresh] = t_index_.emplace(symbol, terminals_.size());
        if (fresh) terminals_.push_back(symbol);
        return it->second;
    }

    std::vector<std::string> nonterminals_;
    std::vector<std::string> terminals_;
    std::unordered_map<std::string, std::size_t> nt_index_;
    std::unordered_map<std::string, std::size_t> t_index_;
    std::vector<BinaryRule> binary_;
    std::vector<UnitRule> unit_;
};

/// Non-empty sequence of terminal indices.
class Word {
public:
    explicit Word(std::vector<std::size_t> symbols) : symbols_(std::move(symbols)) {
        if (symbols_.empty()) throw empty_word();
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    std::span<const std::size_t> symbols() const noexcept { return symbols_; }

private:
    std::vector<std::size_t> symbols_;
};

inline Word make_word(const CNFGrammar& g, std::string_view text) {
    std::vector<std::size_t> symbols;
    for (const auto& s : utf8_symbols(text)) {
        auto idx = g.terminal_index(s);
        if (!idx) throw unknown_terminal(s);
        symbols.push_back(*idx);
    }
    return Word(std::move(symbols));
}

/// Subset of the grammar's nonterminals.
class NTSet {
public:
    NTSet() = default;
    explicit NTSet(std::size_t universe) : bits_(universe, false) {}

    void insert(std::size_t p) { bits_.at(p) = true; }
    bool contains(std::size_t p) const { return p < bits_.size() && bits_[p]; }
    std::size_t size() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }
    bool empty() const { return size() == 0; }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i]) out.push_back(i);
        }
        return out;
    }

    friend bool operator==(const NTSet& a, const NTSet& b) { return a.members() == b.members(); }

private:
    std::vector<bool> bits_;
};

/// `{A, S}` in nonterminal numbering order.
inline std::string format_set(const CNFGrammar& g, const NTSet& set) {
    std::string out = "{";
    bool first = true;
    for (auto p : set.members()) {
        out += (first ? "" : ", ") + g.nonterminals()[p];
        first = false;
    }
    return out + "}";
}

/// Position of a subword inside the word being parsed.
struct Subword {
    std::size_t offset;
    std::size_t length;
    friend bool operator==(const Subword&, const Subword&) = default;
};

using CykNode = Node<Subword, Subword>;

inline CykNode cyk_divide(const Subword& w) {
    if (w.length == 0) throw empty_word();
    CykNode node{w, {}};
    node.children.reserve(2 * (w.length - 1));
    for (std::size_t k = 1; k < w.length; ++k) {
        node.children.push_back({w.offset, k});
        node.children.push_back({w.offset + k, w.length - k});
    }
    return node;
}

inline Rank subword_rank(const Subword& w) { return Rank::nat(w.length); }

inline std::string subword_key(const Subword& w) {
    return std::to_string(w.offset) + ":" + std::to_string(w.length);
}

struct CykCounters {
    std::size_t expansions = 0;
    std::size_t split_pairs = 0;
};

/// `symbols` is the subword itself; `child_sets` pairs up per split position.
inline NTSet cyk_combine(const CNFGrammar& g, std::span<const std::size_t> symbols, std::span<const NTSet> child_sets,
                         CykCounters* counters = nullptr) {
    if (symbols.empty()) throw empty_word();
    if (child_sets.size() != 2 * (symbols.size() - 1)) throw arity_mismatch(2 * (symbols.size() - 1), child_sets.size());
    NTSet out(g.nonterminals().size());
    if (symbols.size() == 1) {
        for (const auto& r : g.unit_rules()) {
            if (r.terminal == symbols[0]) out.insert(r.lhs);
        }
        return out;
    }
    for (std::size_t k = 0; k + 1 < symbols.size(); ++k) {
        const NTSet& left = child_sets[2 * k];
        const NTSet& right = child_sets[2 * k + 1];
        if (counters) ++counters->split_pairs;
        for (const auto& r : g.binary_rules()) {
            if (left.contains(r.left) && right.contains(r.right)) out.insert(r.lhs);
        }
    }
    return out;
}

inline RankedCoalgebra<Subword, Subword> cyk_coalgebra() { return {&cyk_divide, &subword_rank}; }

/// The grammar, word and counters must outlive the returned algebra.
inline Algebra<Subword, NTSet> cyk_algebra(const CNFGrammar& g, const Word& w, CykCounters* counters = nullptr) {
    return {[&g, &w, counters](const Subword& label, std::vector<NTSet> child_sets) {
        if (counters) ++counters->expansions;
        return cyk_combine(g, w.symbols().subspan(label.offset, label.length), child_sets, counters);
    }};
}

struct CykResult {
    NTSet set;
    CykCounters counters;
    SolveStats stats;
    std::optional<CallTrace> trace;
};

inline CykResult cyk(const CNFGrammar& g, const Word& w, bool memoize = true, bool trace = false) {
    CykCounters counters;
    SolveConfig<Subword> cfg;
    cfg.memoize = memoize;
    cfg.key = &subword_key;
    cfg.trace = trace;
    auto r = solve(cyk_coalgebra(), cyk_algebra(g, w, &counters), Subword{0, w.size()}, cfg);
    return {std::move(r.value), counters, r.stats, std::move(r.trace)};
}

inline bool accepts(const CNFGrammar& g, const Word& w) { return cyk(g, w).set.contains(g.start()); }

/// P =>+ w by exhaustive search over rules and splits, no sharing.
inline bool derives_oracle(const CNFGrammar& g, std::size_t p, std::span<const std::size_t> w,
                           std::size_t bound = 12) {
    if (w.empty()) return false;
    if (w.size() > bound) throw oracle_bound_exceeded(w.size(), bound);
    if (w.size() == 1) {
        return std::any_of(g.unit_rules().begin(), g.unit_rules().end(),
                           [&](const auto& r) { return r.lhs == p && r.terminal == w[0]; });
    }
    for (const auto& r : g.binary_rules()) {
        if (r.lhs != p) continue;
        for (std::size_t k = 1; k < w.size(); ++k) {
            if (derives_oracle(g, r.left, w.first(k), bound) && derives_oracle(g, r.right, w.subspan(k), bound)) {
                return true;
            }
        }
    }
    return false;
}

// ---- grammar files ---------------------------------------------------------
//
//   # comment
//   start S
//   S -> A B
//   A -> 'a'
//
// The first non-comment line names the start symbol. `#` outside quotes
// starts a comment.

inline CNFGrammar parse_grammar(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    auto strip_comment = [](std::string_view line) {
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '\'') quoted = !quoted;
            if (line[i] == '#' && !quoted) return line.substr(0, i);
        }
        return line;
    };
    auto tokens = [](std::string_view s) {
        std::vector<std::string> out;
        std::istringstream is{std::string(s)};
        for (std::string tok; is >> tok;) out.push_back(tok);
        return out;
    };
    auto is_name = [](const std::string& s) {
        return !s.empty() && s.find('\'') == std::string::npos && s != "->";
    };

    std::optional<std::string> start;
    std::size_t start_line = 0;
    std::vector<CNFGrammar::NamedBinary> binary;
    std::vector<CNFGrammar::NamedUnit> unit;
    std::istringstream is{std::string(text)};
    std::size_t lineno = 0;
    for (std::string raw; std::getline(is, raw);) {
        ++lineno;
        auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (!start) {
            auto toks = tokens(line);
            if (toks.size() != 2 || toks[0] != "start" || !is_name(toks[1])) {
                throw parse_error("MissingStart", lineno, "expected 'start <nonterminal>'");
            }
            start = toks[1];
            start_line = lineno;
            continue;
        }
        auto arrow = line.find("->");
        if (arrow == std::string_view::npos) throw parse_error("MalformedRule", lineno, "expected '<NT> -> ...'");
        auto lhs = tokens(line.substr(0, arrow));
        if (lhs.size() != 1 || !is_name(lhs[0])) {
            throw parse_error("MalformedRule", lineno, "left-hand side must be one nonterminal");
        }
        auto rhs = trim(line.substr(arrow + 2));
        if (!rhs.empty() && rhs.front() == '\'') {
            if (rhs.size() < 3 || rhs.back() != '\'') throw parse_error("MalformedTerminal", lineno, "unterminated terminal");
            auto body = rhs.substr(1, rhs.size() - 2);
            std::vector<std::string> symbols;
            try {
                symbols = utf8_symbols(body);
            } catch (const std::invalid_argument& e) {
                throw parse_error("MalformedTerminal", lineno, e.what());
            }
            if (symbols.size() != 1) throw parse_error("MalformedTerminal", lineno, "terminal must be one character");
            unit.push_back({lhs[0], symbols[0]});
            continue;
        }
        auto names = tokens(rhs);
        for (const auto& n : names) {
            if (!is_name(n)) throw parse_error("MalformedRule", lineno, "unexpected token '" + n + "'");
        }
        if (names.size() != 2) {
            throw parse_error("NonBinaryRule", lineno,
                              "right-hand side has " + std::to_string(names.size()) + " nonterminals, expected 2");
        }
        binary.push_back({lhs[0], names[0], names[1]});
    }
    if (!start) throw parse_error("MissingStart", lineno, "no start line");
    bool start_has_rule = std::any_of(binary.begin(), binary.end(), [&](auto& r) { return r.lhs == *start; }) ||
                          std::any_of(unit.begin(), unit.end(), [&](auto& r) { return r.lhs == *start; });
    if (!start_has_rule) throw parse_error("UndeclaredStart", start_line, "start symbol '" + *start + "' has no rule");
    try {
        return CNFGrammar(*start, binary, unit);
    } catch (const std::invalid_argument& e) {
        throw parse_error("InvalidGrammar", start_line, e.what());
    }
}

}  // namespace corecur::cyk
