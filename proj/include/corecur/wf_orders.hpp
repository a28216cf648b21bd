#pragma once

// Well-founded rank domains.
//
// A Rank is a value in one of three built-in strict orders:
//
//   Nat(n)              natural numbers under <
//   SecondOfPair(m, n)  pairs compared by their second component only
//   EvZeroSeq(a0, ...)  eventually-zero sequences of naturals, compared
//                       reverse-lexicographically: a < b iff a != b and
//                       a[m] < b[m] at the largest index m where they differ
//
// Comparing ranks from different domains raises domain_mismatch. The set of
// domains is closed; adding one means extending `Rank::payload` and `less`.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "corecur/error.hpp"

namespace corecur {

using natural = std::uint64_t;

enum class rank_domain { nat, second_of_pair, ev_zero_seq };

inline const char* to_string(rank_domain d) {
    switch (d) {
    case rank_domain::nat: return "Nat";
    case rank_domain::second_of_pair: return "SecondOfPair";
    case rank_domain::ev_zero_seq: return "EvZeroSeq";
    }
    return "?";
}

class Rank {
public:
    struct Nat {
        natural n = 0;
        friend bool operator==(const Nat&, const Nat&) = default;
    };
    struct SecondOfPair {
        natural first = 0;
        natural second = 0;
        friend bool operator==(const SecondOfPair&, const SecondOfPair&) = default;
    };
    /// Canonical form: no trailing zeros.
    struct EvZeroSeq {
        std::vector<natural> entries;
        friend bool operator==(const EvZeroSeq&, const EvZeroSeq&) = default;

        natural at(std::size_t i) const { return i < entries.size() ? entries[i] : 0; }
    };

    using payload = std::variant<Nat, SecondOfPair, EvZeroSeq>;

    static Rank nat(natural n) { return Rank(Nat{n}); }
    static Rank second_of_pair(natural m, natural n) { return Rank(SecondOfPair{m, n}); }
    static Rank ev_zero_seq(std::vector<natural> entries) {
        while (!entries.empty() && entries.back() == 0) entries.pop_back();
        return Rank(EvZeroSeq{std::move(entries)});
    }
    static Rank ev_zero_seq(std::initializer_list<natural> entries) {
        return ev_zero_seq(std::vector<natural>(entries));
    }

    rank_domain domain() const { return static_cast<rank_domain>(value_.index()); }
    const payload& value() const { return value_; }

    template <class T>
    const T& as() const {
        return std::get<T>(value_);
    }

    /// Structural equality on canonical forms. Distinct from "neither is less"
    /// for SecondOfPair, where (1,2) and (5,2) are incomparable but unequal.
    friend bool operator==(const Rank&, const Rank&) = default;

    std::string str() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rank& r) {
        std::visit(
            [&os](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Nat>) {
                    os << "Nat(" << v.n << ')';
                } else if constexpr (std::is_same_v<T, SecondOfPair>) {
                    os << "SecondOfPair(" << v.first << ',' << v.second << ')';
                } else {
                    os << "EvZeroSeq(";
                    for (std::size_t i = 0; i < v.entries.size(); ++i) os << (i ? "," : "") << v.entries[i];
                    os << ')';
                }
            },
            r.value_);
        return os;
    }

private:
    explicit Rank(payload p) : value_(std::move(p)) {}

    payload value_;
};

/// Strict order within one rank domain.
inline bool less(const Rank& a, const Rank& b) {
    if (a.domain() != b.domain()) {
        throw domain_mismatch(std::string("cannot compare ") + to_string(a.domain()) + " with " +
                              to_string(b.domain()));
    }
    switch (a.domain()) {
    case rank_domain::nat:
        return a.as<Rank::Nat>().n < b.as<Rank::Nat>().n;
    case rank_domain::second_of_pair:
        return a.as<Rank::SecondOfPair>().second < b.as<Rank::SecondOfPair>().second;
    case rank_domain::ev_zero_seq: {
        const auto& x = a.as<Rank::EvZeroSeq>();
        const auto& y = b.as<Rank::EvZeroSeq>();
        for (std::size_t m = std::max(x.entries.size(), y.entries.size()); m-- > 0;) {
            if (x.at(m) != y.at(m)) return x.at(m) < y.at(m);
        }
        return false;
    }
    }
    return false;
}

inline void require_same_domain(std::span<const Rank> ranks) {
    for (std::size_t i = 1; i < ranks.size(); ++i) {
        if (ranks[i].domain() != ranks[0].domain()) {
            throw domain_mismatch(std::string("ranks mix ") + to_string(ranks[0].domain()) + " and " +
                                  to_string(ranks[i].domain()));
        }
    }
}

/// True iff the chain is strictly decreasing. Every entry must share one
/// domain, even when an earlier pair already fails to descend.
inline bool check_descent(std::span<const Rank> chain) {
    require_same_domain(chain);
    bool descending = true;
    for (std::size_t i = 1; i < chain.size(); ++i) descending = descending && less(chain[i], chain[i - 1]);
    return descending;
}

/// Parses the printed form of a rank: `Nat(3)`, `SecondOfPair(1,2)`,
/// `EvZeroSeq(0,1)`, or a bare natural as shorthand for Nat.
inline Rank parse_rank(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    auto parse_nat = [&](std::string_view s) -> natural {
        s = trim(s);
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw std::invalid_argument("not a natural number: '" + std::string(s) + "'");
        }
        return std::stoull(std::string(s));
    };
    text = trim(text);
    auto open = text.find('(');
    if (open == std::string_view::npos) return Rank::nat(parse_nat(text));
    if (text.back() != ')') throw std::invalid_argument("unterminated rank: '" + std::string(text) + "'");
    auto tag = trim(text.substr(0, open));
    auto body = text.substr(open + 1, text.size() - open - 2);
    std::vector<natural> args;
    if (!trim(body).empty()) {
        std::size_t start = 0;
        while (true) {
            auto comma = body.find(',', start);
            args.push_back(parse_nat(body.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    if (tag == "Nat" && args.size() == 1) return Rank::nat(args[0]);
    if (tag == "SecondOfPair" && args.size() == 2) return Rank::second_of_pair(args[0], args[1]);
    if (tag == "EvZeroSeq") return Rank::ev_zero_seq(std::move(args));
    throw std::invalid_argument("unknown rank form: '" + std::string(text) + "'");
}

}  // namespace corecur
