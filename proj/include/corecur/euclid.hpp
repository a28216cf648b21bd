#pragma once

// Extended Euclid on the solver. The result carries its own proof: a
// certificate (g, k, l, s, t) with g*k = m, g*l = n and s*k + t*l = 1, from
// which g = s*m + t*n follows, so every common divisor of m and n divides g.

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "corecur/error.hpp"
#include "corecur/rec_engine.hpp"
#include "corecur/wf_orders.hpp"

namespace corecur::euclid {

using integer = std::int64_t;

struct GcdInput {
    natural m = 0;
    natural n = 0;
    friend bool operator==(const GcdInput&, const GcdInput&) = default;
};

struct BezoutCert {
    natural g = 0;
    natural k = 0;
    natural l = 0;
    integer s = 0;
    integer t = 0;
    friend bool operator==(const BezoutCert&, const BezoutCert&) = default;

    friend std::ostream& operator<<(std::ostream& os, const BezoutCert& c) {
        return os << c.g << ' ' << c.k << ' ' << c.l << ' ' << c.s << ' ' << c.t;
    }
};

struct Base {
    natural m;
    friend bool operator==(const Base&, const Base&) = default;
};

struct Step {
    natural q;
    friend bool operator==(const Step&, const Step&) = default;
};

using Label = std::variant<Base, Step>;
using GcdNode = Node<Label, GcdInput>;

inline GcdNode gcd_divide(const GcdInput& x) {
    if (x.n == 0) return {Base{x.m}, {}};
    return {Step{x.m / x.n}, {GcdInput{x.n, x.m % x.n}}};
}

/// Ordered by the second component only.
inline Rank gcd_rank(const GcdInput& x) { return Rank::second_of_pair(x.m, x.n); }

/// Base(m) -> (m, 1, 0, 1, 0); Step(q) over (g, k, l, s, t) gives
/// (g, k*q + l, k, t, s - t*q). The witness update keeps s*k + t*l = 1:
/// t*(k*q + l) + (s - t*q)*k = s*k + t*l.
inline BezoutCert gcd_combine(const Label& label, std::vector<BezoutCert> outputs) {
    if (const auto* base = std::get_if<Base>(&label)) {
        if (!outputs.empty()) throw arity_mismatch(0, outputs.size());
        return {base->m, 1, 0, 1, 0};
    }
    if (outputs.size() != 1) throw arity_mismatch(1, outputs.size());
    const natural q = std::get<Step>(label).q;
    const BezoutCert& c = outputs.front();

    natural kq = 0;
    natural new_k = 0;
    if (__builtin_mul_overflow(c.k, q, &kq) || __builtin_add_overflow(kq, c.l, &new_k)) {
        throw overflow_error("cofactor k*q + l exceeds 64 bits");
    }
    integer tq = 0;
    integer new_t = 0;
    if (q > static_cast<natural>(INT64_MAX) && c.t != 0) throw overflow_error("Bezout witness exceeds 64 bits");
    if (__builtin_mul_overflow(c.t, static_cast<integer>(q), &tq) || __builtin_sub_overflow(c.s, tq, &new_t)) {
        throw overflow_error("Bezout witness exceeds 64 bits");
    }
    return {c.g, new_k, c.k, c.t, new_t};
}

inline RankedCoalgebra<GcdInput, Label> gcd_coalgebra() { return {&gcd_divide, &gcd_rank}; }
inline Algebra<Label, BezoutCert> gcd_algebra() { return {&gcd_combine}; }

inline std::string input_key(const GcdInput& x) {
    return "(" + std::to_string(x.m) + "," + std::to_string(x.n) + ")";
}

inline SolveResult<BezoutCert> gcd(natural m, natural n, const SolveConfig<GcdInput>& cfg) {
    return solve(gcd_coalgebra(), gcd_algebra(), GcdInput{m, n}, cfg);
}

inline BezoutCert gcd(natural m, natural n) {
    SolveConfig<GcdInput> cfg;
    cfg.key = &input_key;
    return gcd(m, n, cfg).value;
}

/// g*k = m, g*l = n and s*k + t*l = 1, evaluated in 128-bit arithmetic.
inline bool verify_cert(natural m, natural n, const BezoutCert& c) {
    using wide = __int128;
    using uwide = unsigned __int128;
    if (static_cast<uwide>(c.g) * c.k != m) return false;
    if (static_cast<uwide>(c.g) * c.l != n) return false;
    wide sk = static_cast<wide>(c.s) * static_cast<wide>(c.k);
    wide tl = static_cast<wide>(c.t) * static_cast<wide>(c.l);
    wide sum = 0;
    if (__builtin_add_overflow(sk, tl, &sum)) return false;
    return sum == 1;
}

/// The input pair a layer was divided from, recovered from the layer and its
/// child: Base(m) -> (m, 0); Step(q) over (a, b) -> (a*q + b, a).
inline GcdInput layer_index(const GcdNode& node) {
    if (const auto* base = std::get_if<Base>(&node.label)) return {base->m, 0};
    const auto& child = node.children.at(0);
    return {child.m * std::get<Step>(node.label).q + child.n, child.m};
}

}  // namespace corecur::euclid
