#pragma once

// Quicksort and Mergesort as divide/combine pairs for the solver, plus the
// checks that make their correctness observable: sortedness, multiset
// preservation, and the quicksort split condition.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "corecur/error.hpp"
#include "corecur/rec_engine.hpp"
#include "corecur/wf_orders.hpp"

namespace corecur::sorting {

template <class T>
using ElemList = std::vector<T>;

template <class T>
using Multiset = std::map<T, std::size_t>;

template <class T>
Multiset<T> multiset_of(const ElemList<T>& w) {
    Multiset<T> m;
    for (const auto& z : w) ++m[z];
    return m;
}

template <class T>
std::string format_list(const ElemList<T>& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    return os.str();
}

template <class T>
Rank length_rank(const ElemList<T>& w) {
    return Rank::nat(w.size());
}

// ---- Quicksort -------------------------------------------------------------

struct Empty {
    friend bool operator==(const Empty&, const Empty&) = default;
};

template <class T>
struct Pivot {
    T value;
    friend bool operator==(const Pivot&, const Pivot&) = default;
};

template <class T>
using QsLabel = std::variant<Empty, Pivot<T>>;

template <class T>
using QsNode = Node<QsLabel<T>, ElemList<T>>;

/// Head of the list is the pivot; elements <= pivot go left in original
/// order, elements > pivot go right.
template <class T>
QsNode<T> qs_divide(const ElemList<T>& w) {
    if (w.empty()) return {Empty{}, {}};
    const T& p = w.front();
    const auto tail = std::next(w.begin());
    const auto n_left = static_cast<std::size_t>(std::count_if(tail, w.end(), [&](const T& z) { return z <= p; }));
    ElemList<T> left;
    ElemList<T> right;
    if (n_left == 0) {
        right.assign(tail, w.end());
    } else if (n_left == w.size() - 1) {
        left.assign(tail, w.end());
    } else {
        left.reserve(n_left);
        right.reserve(w.size() - 1 - n_left);
        for (auto it = tail; it != w.end(); ++it) (*it <= p ? left : right).push_back(*it);
    }
    return {Pivot<T>{p}, {std::move(left), std::move(right)}};
}

template <class T>
ElemList<T> qs_combine(const QsLabel<T>& label, std::vector<ElemList<T>> outputs) {
    if (std::holds_alternative<Empty>(label)) {
        if (!outputs.empty()) throw arity_mismatch(0, outputs.size());
        return {};
    }
    if (outputs.size() != 2) throw arity_mismatch(2, outputs.size());
    auto& u = outputs[0];
    auto& v = outputs[1];
    ElemList<T> out;
    out.reserve(u.size() + 1 + v.size());
    out.insert(out.end(), std::make_move_iterator(u.begin()), std::make_move_iterator(u.end()));
    out.push_back(std::get<Pivot<T>>(label).value);
    out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    return out;
}

template <class T>
RankedCoalgebra<ElemList<T>, QsLabel<T>> quicksort_coalgebra() {
    return {&qs_divide<T>, &length_rank<T>};
}

template <class T>
Algebra<QsLabel<T>, ElemList<T>> quicksort_algebra() {
    return {&qs_combine<T>};
}

template <class T>
SolveResult<ElemList<T>> quicksort(const ElemList<T>& w, const SolveConfig<ElemList<T>>& cfg,
                                   const std::type_identity_t<std::function<void(const ElemList<T>&, const QsNode<T>&)>>& on_expand = {}) {
    return solve(quicksort_coalgebra<T>(), quicksort_algebra<T>(), w, cfg, on_expand);
}

template <class T>
ElemList<T> quicksort(const ElemList<T>& w) {
    return quicksort(w, SolveConfig<ElemList<T>>{}).value;
}

/// Checks a quicksort layer against its parent: left block <= pivot,
/// right block > pivot, and left + {pivot} + right is a rearrangement of
/// the parent.
template <class T>
bool verify_split(const ElemList<T>& parent, const QsNode<T>& node) {
    if (std::holds_alternative<Empty>(node.label)) return parent.empty() && node.children.empty();
    if (node.children.size() != 2) return false;
    const T& p = std::get<Pivot<T>>(node.label).value;
    const auto& left = node.children[0];
    const auto& right = node.children[1];
    if (!std::all_of(left.begin(), left.end(), [&](const T& z) { return z <= p; })) return false;
    if (!std::all_of(right.begin(), right.end(), [&](const T& z) { return z > p; })) return false;
    auto joined = multiset_of(left);
    for (const auto& z : right) ++joined[z];
    ++joined[p];
    return joined == multiset_of(parent);
}

template <class T>
bool verify_sorted_permutation(const ElemList<T>& input, const ElemList<T>& output) {
    return std::is_sorted(output.begin(), output.end()) && multiset_of(input) == multiset_of(output);
}

// ---- Mergesort -------------------------------------------------------------

template <class T>
struct Single {
    T value;
    friend bool operator==(const Single&, const Single&) = default;
};

struct Split {
    friend bool operator==(const Split&, const Split&) = default;
};

template <class T>
using MsLabel = std::variant<Empty, Single<T>, Split>;

template <class T>
using MsNode = Node<MsLabel<T>, ElemList<T>>;

/// Lists of length >= 2 split at floor(n/2), so both halves are non-empty
/// and strictly shorter.
template <class T>
MsNode<T> ms_divide(const ElemList<T>& w) {
    if (w.empty()) return {Empty{}, {}};
    if (w.size() == 1) return {Single<T>{w.front()}, {}};
    auto mid = w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2);
    return {Split{}, {ElemList<T>(w.begin(), mid), ElemList<T>(mid, w.end())}};
}

template <class T>
ElemList<T> ms_combine(const MsLabel<T>& label, std::vector<ElemList<T>> outputs) {
    if (std::holds_alternative<Empty>(label) || std::holds_alternative<Single<T>>(label)) {
        if (!outputs.empty()) throw arity_mismatch(0, outputs.size());
        if (auto* s = std::get_if<Single<T>>(&label)) return {s->value};
        return {};
    }
    if (outputs.size() != 2) throw arity_mismatch(2, outputs.size());
    const auto& a = outputs[0];
    const auto& b = outputs[1];
    ElemList<T> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    // Stable: ties take from the left run.
    while (i < a.size() && j < b.size()) out.push_back(b[j] < a[i] ? b[j++] : a[i++]);
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return out;
}

template <class T>
RankedCoalgebra<ElemList<T>, MsLabel<T>> mergesort_coalgebra() {
    return {&ms_divide<T>, &length_rank<T>};
}

template <class T>
Algebra<MsLabel<T>, ElemList<T>> mergesort_algebra() {
    return {&ms_combine<T>};
}

template <class T>
SolveResult<ElemList<T>> mergesort(const ElemList<T>& w, const SolveConfig<ElemList<T>>& cfg) {
    return solve(mergesort_coalgebra<T>(), mergesort_algebra<T>(), w, cfg);
}

template <class T>
ElemList<T> mergesort(const ElemList<T>& w) {
    return mergesort(w, SolveConfig<ElemList<T>>{}).value;
}

/// Key for memo tables and traces: `[a,b,c]`.
template <class T>
std::string list_key(const ElemList<T>& w) {
    return "[" + format_list(w) + "]";
}

}  // namespace corecur::sorting
