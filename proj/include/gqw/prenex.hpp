#pragma once

// so_prenex: pulls every predicate-variable quantifier into an outermost
// prefix, applying only rewrites that are genuine equivalences on every
// Henkin model. Relation families may be empty, and that invalidates most of
// the classical prenex moves: over an empty family a universal predicate
// quantifier is vacuously true and an existential one false, regardless of
// its body.
//
// At a connective the transform therefore works with emptiness patterns.
// For a set of arities assumed empty, a quantifier prefix decides the whole
// subformula at its first quantifier over an empty arity (forall -> true,
// exists -> false) and ignores everything inside. Merging two prefixes over
// a connective is sound exactly when, for every emptiness pattern over the
// arities involved, the connective's value is already determined by the two
// sides' decided values, and the merged prefix decides to that same value.
// The implementation checks this and searches the order-preserving
// interleavings of the two prefixes for one whose first hit matches the
// required value under every pattern; when none exists the input is
// reported NotPrenexable rather than silently changed. On patterns with no
// empty family involved, the classical shift laws apply (families behave as
// nonempty ranges), so any order-preserving interleaving is sound there.
//
// Individual quantifiers commute with predicate quantifiers of the same
// kind only. Renaming appends primes deterministically.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gqw/errors.hpp"
#include "gqw/formula.hpp"

namespace gqw {

namespace detail {

struct PrefixEntry {
    QuantKind kind;
    std::string var;
    int arity;
};

struct PrenexSide {
    std::vector<PrefixEntry> prefix;
    Formula matrix;
};

inline std::set<std::string> side_free_pred_names(const PrenexSide& side) {
    std::set<std::string> names;
    for (const auto& [name, arity] : free_pred_vars(side.matrix)) names.insert(name);
    for (const auto& e : side.prefix) names.erase(e.var);
    return names;
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string candidate = base;
    do {
        candidate += "'";
    } while (avoid.count(candidate));
    return candidate;
}

// Moves the front entry of `side` into `out`, renaming it when its name is
// already emitted or free on the other side. When a later entry of the same
// prefix binds the same name, the popped binder is vacuous for the matrix
// and no occurrence needs rewriting.
inline void emit(PrenexSide& side, const PrenexSide& other, std::set<std::string>& used,
                 std::vector<PrefixEntry>& out, bool dualize) {
    PrefixEntry e = side.prefix.front();
    side.prefix.erase(side.prefix.begin());

    std::set<std::string> conflicts = used;
    for (const auto& n : side_free_pred_names(other)) conflicts.insert(n);
    std::string name = e.var;
    if (conflicts.count(name)) {
        std::set<std::string> avoid = conflicts;
        for (const auto& [n, a] : pred_var_arities(side.matrix)) avoid.insert(n);
        for (const auto& p : side.prefix) avoid.insert(p.var);
        name = fresh_name(e.var, avoid);
        bool shadowed = false;
        for (const auto& p : side.prefix)
            if (p.var == e.var) shadowed = true;
        if (!shadowed) side.matrix = substitute_pred(side.matrix, e.var, name);
    }
    out.push_back({dualize ? dual(e.kind) : e.kind, name, e.arity});
    used.insert(name);
}

enum class Val { True, False, Open };

// Value of one side under an emptiness pattern: the polarity of the first
// prefix entry whose arity is in the pattern, Open when the pattern misses
// the prefix and the side keeps its classical (unknown) value.
inline Val decided_value(const std::vector<PrefixEntry>& prefix, unsigned pattern,
                         const std::vector<int>& arity_of_bit) {
    for (const auto& e : prefix)
        for (std::size_t b = 0; b < arity_of_bit.size(); ++b)
            if ((pattern >> b & 1u) && arity_of_bit[b] == e.arity)
                return e.kind == QuantKind::Forall ? Val::True : Val::False;
    return Val::Open;
}

inline Val connective_value(BinOp op, Val a, Val b) {
    switch (op) {
        case BinOp::And:
            if (a == Val::False || b == Val::False) return Val::False;
            if (a == Val::True && b == Val::True) return Val::True;
            return Val::Open;
        case BinOp::Or:
            if (a == Val::True || b == Val::True) return Val::True;
            if (a == Val::False && b == Val::False) return Val::False;
            return Val::Open;
        case BinOp::Imp:
            if (a == Val::False || b == Val::True) return Val::True;
            if (a == Val::True && b == Val::False) return Val::False;
            return Val::Open;
    }
    return Val::Open;
}

inline PrenexSide pull(const Formula& f);

inline PrenexSide combine(BinOp op, PrenexSide a, PrenexSide b) {
    bool dual_a = op == BinOp::Imp; // pulling out of an antecedent dualizes

    // Distinct arities of both prefixes; one pattern bit each.
    std::vector<int> arity_of_bit;
    {
        std::set<int> arities;
        for (const auto& e : a.prefix) arities.insert(e.arity);
        for (const auto& e : b.prefix) arities.insert(e.arity);
        arity_of_bit.assign(arities.begin(), arities.end());
    }
    unsigned pattern_count = 1u << arity_of_bit.size();

    // Required merged value per pattern; Open never arises for a pattern
    // that hits at least one side (checked below).
    std::vector<Val> required(pattern_count, Val::Open);
    for (unsigned p = 1; p < pattern_count; ++p) {
        Val va = decided_value(a.prefix, p, arity_of_bit);
        Val vb = decided_value(b.prefix, p, arity_of_bit);
        Val merged = connective_value(op, va, vb);
        if (merged == Val::Open)
            throw NotPrenexableError(
                "predicate quantifiers cannot be pulled out of this connective: on a model "
                "where the relation families at " +
                [&] {
                    std::string arities;
                    for (std::size_t bit = 0; bit < arity_of_bit.size(); ++bit)
                        if (p >> bit & 1u)
                            arities += (arities.empty() ? "arity " : ", ") +
                                       std::to_string(arity_of_bit[bit]);
                    return arities;
                }() +
                " are empty, the rewritten formula would take a fixed value while the original "
                "still depends on its matrix");
        required[p] = merged;
    }

    // Search the order-preserving interleavings: an entry may be placed when
    // every pattern it newly decides requires its polarity. Preferring the
    // left side keeps the output deterministic.
    std::size_t na = a.prefix.size(), nb = b.prefix.size();
    std::vector<char> dead((na + 1) * (nb + 1), 0);
    std::vector<char> take_a_at; // reversed on unwind
    auto emitted_arity_mask = [&](std::size_t ia, std::size_t ib) {
        unsigned mask = 0;
        auto add = [&](int arity) {
            for (std::size_t bit = 0; bit < arity_of_bit.size(); ++bit)
                if (arity_of_bit[bit] == arity) mask |= 1u << bit;
        };
        for (std::size_t i = 0; i < ia; ++i) add(a.prefix[i].arity);
        for (std::size_t i = 0; i < ib; ++i) add(b.prefix[i].arity);
        return mask;
    };
    auto placeable = [&](const PrefixEntry& e, bool from_a, std::size_t ia, std::size_t ib) {
        QuantKind emitted = from_a && dual_a ? dual(e.kind) : e.kind;
        Val pol = emitted == QuantKind::Forall ? Val::True : Val::False;
        unsigned seen = emitted_arity_mask(ia, ib);
        unsigned own = 0;
        for (std::size_t bit = 0; bit < arity_of_bit.size(); ++bit)
            if (arity_of_bit[bit] == e.arity) own = 1u << bit;
        for (unsigned p = 1; p < pattern_count; ++p)
            if ((p & own) && !(p & seen) && required[p] != pol) return false;
        return true;
    };
    std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t ia,
                                                               std::size_t ib) -> bool {
        if (ia == na && ib == nb) return true;
        if (dead[ia * (nb + 1) + ib]) return false;
        if (ia < na && placeable(a.prefix[ia], true, ia, ib) && search(ia + 1, ib)) {
            take_a_at.push_back(1);
            return true;
        }
        if (ib < nb && placeable(b.prefix[ib], false, ia, ib) && search(ia, ib + 1)) {
            take_a_at.push_back(0);
            return true;
        }
        dead[ia * (nb + 1) + ib] = 1;
        return false;
    };
    if (!search(0, 0))
        throw NotPrenexableError(
            "no ordering of the pulled predicate quantifiers preserves the formula's value on "
            "models with empty relation families");

    std::vector<PrefixEntry> out;
    std::set<std::string> used;
    for (auto it = take_a_at.rbegin(); it != take_a_at.rend(); ++it) {
        if (*it)
            emit(a, b, used, out, dual_a);
        else
            emit(b, a, used, out, false);
    }
    Formula matrix = detail::make(Node{Binary{op, a.matrix, b.matrix}});
    return {std::move(out), std::move(matrix)};
}

inline PrenexSide pull(const Formula& f) {
    if (auto* n = as<Not>(f)) {
        PrenexSide inner = pull(n->body);
        for (auto& e : inner.prefix) e.kind = dual(e.kind);
        inner.matrix = neg(inner.matrix);
        return inner;
    }
    if (auto* b = as<Binary>(f)) return combine(b->op, pull(b->lhs), pull(b->rhs));
    if (auto* q = as<IndQuant>(f)) {
        PrenexSide inner = pull(q->body);
        for (const auto& e : inner.prefix)
            if (e.kind != q->kind)
                throw NotPrenexableError(
                    "an individual quantifier cannot move past a predicate quantifier of the "
                    "opposite kind without changing meaning");
        inner.matrix = detail::make(Node{IndQuant{q->kind, q->var, inner.matrix}});
        return inner;
    }
    if (auto* p = as<PredQuant>(f)) {
        PrenexSide inner = pull(p->body);
        inner.prefix.insert(inner.prefix.begin(), PrefixEntry{p->kind, p->var, p->arity});
        return inner;
    }
    if (as<QBind>(f)) {
        if (contains_pred_quant(f))
            throw NotPrenexableError(
                "a predicate quantifier inside a quantifier binder slot cannot be pulled out");
        return {{}, f};
    }
    return {{}, f}; // Atom, Equality, QApp
}

} // namespace detail

// Returns an equivalent formula whose predicate quantifiers form an
// outermost prefix, or throws NotPrenexableError when no meaning-preserving
// rewrite exists within the move set described above.
inline Formula so_prenex(const Formula& f) {
    validate(f);
    detail::PrenexSide parts = detail::pull(f);
    Formula out = parts.matrix;
    for (auto it = parts.prefix.rbegin(); it != parts.prefix.rend(); ++it)
        out = it->kind == QuantKind::Forall ? forall_pred(it->var, it->arity, out)
                                            : exists_pred(it->var, it->arity, out);
    return out;
}

} // namespace gqw
