#pragma once

// Independent reference recursion for the first-order fragment, used as a
// test oracle against the library evaluators. Deliberately written in the
// dumbest possible style: environments are copied at every binding and the
// quantifier loops are spelled out inline. Keep this file free of any
// include from gqw/eval.hpp machinery beyond the AST itself.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gqw/formula.hpp"

namespace refeval {

struct Env {
    std::map<std::string, unsigned> ind;
    std::map<std::string, std::set<std::vector<unsigned>>> pred;
};

// n = domain size; elements are 0..n-1.
inline bool holds(std::size_t n, Env env, const gqw::Formula& f) {
    using namespace gqw;
    if (auto* a = as<Atom>(f)) {
        std::vector<unsigned> tuple;
        for (const auto& v : a->args) {
            if (!env.ind.count(v)) throw std::runtime_error("ref: unbound " + v);
            tuple.push_back(env.ind.at(v));
        }
        if (!env.pred.count(a->pred)) throw std::runtime_error("ref: unbound " + a->pred);
        return env.pred.at(a->pred).count(tuple) != 0;
    }
    if (auto* e = as<Equality>(f)) {
        if (!env.ind.count(e->lhs) || !env.ind.count(e->rhs))
            throw std::runtime_error("ref: unbound equality operand");
        return env.ind.at(e->lhs) == env.ind.at(e->rhs);
    }
    if (auto* nt = as<Not>(f)) return !holds(n, env, nt->body);
    if (auto* b = as<Binary>(f)) {
        bool l = holds(n, env, b->lhs);
        bool r = holds(n, env, b->rhs);
        switch (b->op) {
            case BinOp::And: return l && r;
            case BinOp::Or: return l || r;
            case BinOp::Imp: return !l || r;
        }
    }
    if (auto* q = as<IndQuant>(f)) {
        if (q->kind == QuantKind::Forall) {
            for (unsigned e = 0; e < n; ++e) {
                Env child = env;
                child.ind[q->var] = e;
                if (!holds(n, child, q->body)) return false;
            }
            return true;
        }
        for (unsigned e = 0; e < n; ++e) {
            Env child = env;
            child.ind[q->var] = e;
            if (holds(n, child, q->body)) return true;
        }
        return false;
    }
    throw std::runtime_error("ref: not a first-order node");
}

} // namespace refeval
