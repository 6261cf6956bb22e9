#pragma once

// Canonical rendering. parse(print(f)) reproduces f node for node:
// quantified operands of connectives are parenthesized (a bare quantifier
// body would otherwise swallow the rest of the line), binary operands of
// binary nodes are always parenthesized, and a conjunction of two converse
// implications prints as "<->", which re-parses to the same desugared pair.

#include <string>

#include "gqw/formula.hpp"

namespace gqw {

namespace detail {

inline std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

// The two converse implications of a desugared "<->", if f has that shape.
inline const Binary* iff_shape(const Formula& f) {
    auto* b = as<Binary>(f);
    if (!b || b->op != BinOp::And) return nullptr;
    auto* l = as<Binary>(b->lhs);
    auto* r = as<Binary>(b->rhs);
    if (!l || !r || l->op != BinOp::Imp || r->op != BinOp::Imp) return nullptr;
    if (l->lhs == r->rhs && l->rhs == r->lhs) return b;
    return nullptr;
}

inline std::string render(const Formula& f);

inline bool is_connective(const Formula& f) { return as<Binary>(f) != nullptr; }
inline bool is_quant(const Formula& f) {
    return as<IndQuant>(f) != nullptr || as<PredQuant>(f) != nullptr;
}

inline std::string operand(const Formula& f) {
    if (is_connective(f) || is_quant(f)) return "(" + render(f) + ")";
    return render(f);
}

inline std::string quant_body(const Formula& f) {
    if (is_connective(f)) return "(" + render(f) + ")";
    return render(f);
}

inline std::string render(const Formula& f) {
    if (auto* a = as<Atom>(f)) {
        if (a->args.empty()) return a->pred;
        return a->pred + "(" + join(a->args, ",") + ")";
    }
    if (auto* e = as<Equality>(f)) return e->lhs + " = " + e->rhs;
    if (auto* qa = as<QApp>(f)) return qa->qsym + "(" + join(qa->args, ",") + ")";
    if (auto* qb = as<QBind>(f)) {
        std::string out = qb->qsym + "[";
        for (std::size_t i = 0; i < qb->parts.size(); ++i) {
            if (i) out += "; ";
            out += join(qb->parts[i].vars, ",") + " | " + render(qb->parts[i].body);
        }
        return out + "]";
    }
    if (auto* n = as<Not>(f)) return "~" + operand(n->body);
    if (auto* i = iff_shape(f)) {
        auto* l = as<Binary>(i->lhs);
        return operand(l->lhs) + " <-> " + operand(l->rhs);
    }
    if (auto* b = as<Binary>(f)) {
        const char* op = b->op == BinOp::And ? " & " : b->op == BinOp::Or ? " | " : " -> ";
        return operand(b->lhs) + op + operand(b->rhs);
    }
    if (auto* q = as<IndQuant>(f)) {
        const char* kw = q->kind == QuantKind::Forall ? "forall " : "exists ";
        return kw + q->var + ". " + quant_body(q->body);
    }
    auto* p = as<PredQuant>(f);
    const char* kw = p->kind == QuantKind::Forall ? "forall " : "exists ";
    return kw + p->var + ":" + std::to_string(p->arity) + ". " + quant_body(p->body);
}

} // namespace detail

inline std::string print(const Formula& f) { return detail::render(f); }

} // namespace gqw
