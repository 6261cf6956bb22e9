#pragma once

// Evaluators. eval_lq handles the first-order fragment plus quantifier
// binders resolved through a symbol registry; eval_l2q handles L2 and L2(Q)
// over a Henkin model, with predicate quantifiers ranging over the model's
// relation families and QApp atoms decided by a supplied interpretation.
// Assignments must cover the free variables of the formula being evaluated;
// anything unassigned is an error, not a default.

#include <optional>
#include <string>
#include <vector>

#include "gqw/errors.hpp"
#include "gqw/formula.hpp"
#include "gqw/model.hpp"
#include "gqw/printer.hpp"
#include "gqw/quantifier.hpp"

namespace gqw {

struct EvalTrace {
    struct Entry {
        std::string binder;                // printed QBind node
        std::vector<Relation> extensions;  // one extension set per slot
    };
    std::vector<Entry> entries;
};

namespace detail {

inline Elem lookup_ind(const Assignment& s, const std::string& var) {
    auto it = s.ind.find(var);
    if (it == s.ind.end()) throw EvalError("unassigned individual variable " + var);
    return it->second;
}

inline const Relation& lookup_pred(const Assignment& s, const std::string& var) {
    auto it = s.pred.find(var);
    if (it == s.pred.end()) throw EvalError("unassigned predicate variable " + var);
    return it->second;
}

inline bool eval_atom(const Domain& d, const Assignment& s, const Atom& a) {
    const Relation& r = lookup_pred(s, a.pred);
    if (r.arity != static_cast<int>(a.args.size()))
        throw ArityError("predicate variable " + a.pred + " holds a relation of arity " +
                         std::to_string(r.arity) + " but is applied to " +
                         std::to_string(a.args.size()) + " arguments");
    Tuple t;
    t.reserve(a.args.size());
    for (const auto& v : a.args) {
        Elem e = lookup_ind(s, v);
        if (e >= d.size()) throw ArgumentError("assignment maps " + v + " outside the domain");
        t.push_back(e);
    }
    return r.contains(t);
}

// First-order / L(Q) evaluator.
struct LqEvaluator {
    const Domain& domain;
    const QuantifierRegistry& registry;
    EvalTrace* trace = nullptr;

    bool eval(Assignment& s, const Formula& f) {
        if (auto* a = as<Atom>(f)) return eval_atom(domain, s, *a);
        if (auto* e = as<Equality>(f))
            return lookup_ind(s, e->lhs) == lookup_ind(s, e->rhs);
        if (auto* n = as<Not>(f)) return !eval(s, n->body);
        if (auto* b = as<Binary>(f)) {
            switch (b->op) {
                case BinOp::And: return eval(s, b->lhs) && eval(s, b->rhs);
                case BinOp::Or: return eval(s, b->lhs) || eval(s, b->rhs);
                case BinOp::Imp: return !eval(s, b->lhs) || eval(s, b->rhs);
            }
        }
        if (auto* q = as<IndQuant>(f)) {
            auto saved = save_ind(s, q->var);
            bool result = q->kind == QuantKind::Forall;
            for (Elem e = 0; e < domain.size(); ++e) {
                s.ind[q->var] = e;
                bool v = eval(s, q->body);
                if (q->kind == QuantKind::Forall ? !v : v) {
                    result = !result;
                    break;
                }
            }
            restore_ind(s, q->var, saved);
            return result;
        }
        if (auto* qb = as<QBind>(f)) return eval_qbind(s, *qb, f);
        throw EvalError("second-order construct is not part of the first-order/L(Q) fragment: " +
                        print(f));
    }

    bool eval_qbind(Assignment& s, const QBind& qb, const Formula& whole) {
        auto it = registry.find(qb.qsym);
        if (it == registry.end())
            throw EvalError("unknown quantifier symbol '" + qb.qsym + "'");
        const GeneralizedQuantifier& q = it->second;
        if (qb.parts.size() != q.qtype.slot_count())
            throw ArityError("quantifier '" + qb.qsym + "' of type " + type_to_string(q.qtype) +
                             " applied to " + std::to_string(qb.parts.size()) + " slots");
        std::vector<Relation> exts;
        for (std::size_t i = 0; i < qb.parts.size(); ++i) {
            const auto& part = qb.parts[i];
            if (static_cast<int>(part.vars.size()) != q.qtype.arities[i])
                throw ArityError("slot " + std::to_string(i + 1) + " of quantifier '" + qb.qsym +
                                 "' binds " + std::to_string(part.vars.size()) +
                                 " variables, expected " + std::to_string(q.qtype.arities[i]));
            exts.push_back(extension(s, part.vars, part.body));
        }
        if (trace) trace->entries.push_back({print(whole), exts});
        return q.oracle(domain, exts);
    }

    // The set of tuples over which the rebound variables satisfy the body.
    Relation extension(Assignment& s, const std::vector<std::string>& vars, const Formula& body) {
        std::vector<std::optional<Elem>> saved;
        saved.reserve(vars.size());
        for (const auto& v : vars) saved.push_back(save_ind(s, v));
        Relation out{static_cast<int>(vars.size()), {}};
        for (const Tuple& t : all_tuples(domain.size(), static_cast<int>(vars.size()))) {
            for (std::size_t i = 0; i < vars.size(); ++i) s.ind[vars[i]] = t[i];
            if (eval(s, body)) out.tuples.insert(t);
        }
        for (std::size_t i = 0; i < vars.size(); ++i) restore_ind(s, vars[i], saved[i]);
        return out;
    }

    static std::optional<Elem> save_ind(Assignment& s, const std::string& var) {
        auto it = s.ind.find(var);
        return it == s.ind.end() ? std::nullopt : std::optional<Elem>(it->second);
    }
    static void restore_ind(Assignment& s, const std::string& var, std::optional<Elem> saved) {
        if (saved)
            s.ind[var] = *saved;
        else
            s.ind.erase(var);
    }
};

// L2 / L2(Q) evaluator over a Henkin model.
struct L2Evaluator {
    const HenkinModel& model;
    const QuantifierInterpretation* interp = nullptr;

    bool eval(Assignment& s, const Formula& f) {
        if (auto* a = as<Atom>(f)) return eval_atom(model.domain, s, *a);
        if (auto* e = as<Equality>(f))
            return lookup_ind(s, e->lhs) == lookup_ind(s, e->rhs);
        if (auto* n = as<Not>(f)) return !eval(s, n->body);
        if (auto* b = as<Binary>(f)) {
            switch (b->op) {
                case BinOp::And: return eval(s, b->lhs) && eval(s, b->rhs);
                case BinOp::Or: return eval(s, b->lhs) || eval(s, b->rhs);
                case BinOp::Imp: return !eval(s, b->lhs) || eval(s, b->rhs);
            }
        }
        if (auto* q = as<IndQuant>(f)) {
            auto saved = LqEvaluator::save_ind(s, q->var);
            bool result = q->kind == QuantKind::Forall;
            for (Elem e = 0; e < model.domain.size(); ++e) {
                s.ind[q->var] = e;
                bool v = eval(s, q->body);
                if (q->kind == QuantKind::Forall ? !v : v) {
                    result = !result;
                    break;
                }
            }
            LqEvaluator::restore_ind(s, q->var, saved);
            return result;
        }
        if (auto* p = as<PredQuant>(f)) {
            const auto& family = model.family(p->arity);
            auto it = s.pred.find(p->var);
            std::optional<Relation> saved =
                it == s.pred.end() ? std::nullopt : std::optional<Relation>(it->second);
            bool result = p->kind == QuantKind::Forall; // vacuous over an empty family
            for (const Relation& r : family) {
                s.pred[p->var] = r;
                bool v = eval(s, p->body);
                if (p->kind == QuantKind::Forall ? !v : v) {
                    result = !result;
                    break;
                }
            }
            if (saved)
                s.pred[p->var] = *saved;
            else
                s.pred.erase(p->var);
            return result;
        }
        if (auto* qa = as<QApp>(f)) {
            if (!interp)
                throw EvalError("formula mentions the quantifier symbol '" + qa->qsym +
                                "' but no interpretation was supplied");
            if (qa->args.size() != interp->qtype.slot_count())
                throw ArityError("quantifier symbol applied to " +
                                 std::to_string(qa->args.size()) + " arguments, expected " +
                                 std::to_string(interp->qtype.slot_count()));
            std::vector<Relation> tuple;
            tuple.reserve(qa->args.size());
            for (std::size_t i = 0; i < qa->args.size(); ++i) {
                const Relation& r = lookup_pred(s, qa->args[i]);
                if (r.arity != interp->qtype.arities[i])
                    throw ArityError("argument " + std::to_string(i + 1) +
                                     " of the quantifier symbol has arity " +
                                     std::to_string(r.arity) + ", expected " +
                                     std::to_string(interp->qtype.arities[i]));
                tuple.push_back(r);
            }
            return interp->members.count(tuple) != 0;
        }
        throw EvalError("quantifier binders are not part of the L2/L2(Q) fragment: " + print(f));
    }
};

} // namespace detail

// ---------------------------------------------------------------------------
// public entry points

inline bool eval_lq(const Domain& domain, const Assignment& assignment,
                    const QuantifierRegistry& registry, const Formula& f,
                    EvalTrace* trace = nullptr) {
    domain.check();
    detail::LqEvaluator ev{domain, registry, trace};
    Assignment s = assignment;
    return ev.eval(s, f);
}

inline Relation extension(const Domain& domain, const Assignment& assignment,
                          const QuantifierRegistry& registry,
                          const std::vector<std::string>& vars, const Formula& body,
                          EvalTrace* trace = nullptr) {
    domain.check();
    std::set<std::string> distinct(vars.begin(), vars.end());
    if (distinct.size() != vars.size())
        throw ScopeError("extension variables must be distinct");
    detail::LqEvaluator ev{domain, registry, trace};
    Assignment s = assignment;
    return ev.extension(s, vars, body);
}

inline bool eval_l2q(const HenkinModel& model, const std::optional<QuantifierInterpretation>& interp,
                     const Assignment& assignment, const Formula& f) {
    model.check();
    detail::L2Evaluator ev{model, interp ? &*interp : nullptr};
    Assignment s = assignment;
    return ev.eval(s, f);
}

// Closed L2 sentence, no quantifier symbol.
inline bool eval_l2q(const HenkinModel& model, const Formula& f) {
    return eval_l2q(model, std::nullopt, Assignment{}, f);
}

inline Relation extension(const HenkinModel& model,
                          const std::optional<QuantifierInterpretation>& interp,
                          const Assignment& assignment, const std::vector<std::string>& vars,
                          const Formula& body) {
    model.check();
    std::set<std::string> distinct(vars.begin(), vars.end());
    if (distinct.size() != vars.size())
        throw ScopeError("extension variables must be distinct");
    detail::L2Evaluator ev{model, interp ? &*interp : nullptr};
    Assignment s = assignment;
    Relation out{static_cast<int>(vars.size()), {}};
    for (const Tuple& t : all_tuples(model.domain.size(), static_cast<int>(vars.size()))) {
        for (std::size_t i = 0; i < vars.size(); ++i) s.ind[vars[i]] = t[i];
        if (ev.eval(s, body)) out.tuples.insert(t);
    }
    return out;
}

} // namespace gqw
