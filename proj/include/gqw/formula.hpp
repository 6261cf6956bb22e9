#pragma once

// Formula AST shared by the FO, L(Q), L2 and L2(Q) fragments, plus the purely
// syntactic operations on it: fragment classification, predicate-variable
// substitution, free-variable collection and well-formedness validation.
//
// Identifier conventions (also enforced by validate/parse):
//   - individual variables start with a lowercase letter:  x, y1, a'
//   - predicate variables start with an uppercase letter:  P, R2, P'
//   - quantifier symbols may use either case:              E, I, most
// "forall" and "exists" are reserved words.

#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gqw/errors.hpp"

namespace gqw {

// Type signature of a generalized quantifier: the arities of its argument
// slots. Every slot arity is at least 1.
struct QuantifierType {
    std::vector<int> arities;

    std::size_t slot_count() const { return arities.size(); }

    void check() const {
        if (arities.empty())
            throw ArgumentError("quantifier type must have at least one slot");
        for (int a : arities)
            if (a < 1)
                throw ArgumentError("quantifier slot arity must be at least 1");
    }

    bool operator==(const QuantifierType& o) const { return arities == o.arities; }
    bool operator<(const QuantifierType& o) const { return arities < o.arities; }
};

enum class BinOp { And, Or, Imp };
enum class QuantKind { Forall, Exists };

inline QuantKind dual(QuantKind k) {
    return k == QuantKind::Forall ? QuantKind::Exists : QuantKind::Forall;
}

struct Node;

// Immutable formula handle with structural equality. Copies share nodes.
class Formula {
public:
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    const Node& node() const { return *node_; }
    const std::shared_ptr<const Node>& ptr() const { return node_; }

    friend bool operator==(const Formula& a, const Formula& b);

private:
    std::shared_ptr<const Node> node_;
};

bool operator==(const Formula& a, const Formula& b);

// P(x1,...,xn); an empty argument list is a 0-ary atom.
struct Atom {
    std::string pred;
    std::vector<std::string> args;
    bool operator==(const Atom&) const = default;
};

// x = y (only available when the equality feature is enabled).
struct Equality {
    std::string lhs;
    std::string rhs;
    bool operator==(const Equality&) const = default;
};

// Q(P1,...,Pk): the quantifier symbol applied to predicate variables
// (the second-order atom of L2(Q)).
struct QApp {
    std::string qsym;
    std::vector<std::string> args;
    bool operator==(const QApp&) const = default;
};

// One argument slot of a quantifier binder: the bound variable tuple and the
// formula whose extension it collects.
struct QBindPart {
    std::vector<std::string> vars;
    Formula body;
    bool operator==(const QBindPart&) const = default;
};

// Q[x̄1 | φ1; ...; x̄k | φk]: the L(Q) binder form.
struct QBind {
    std::string qsym;
    std::vector<QBindPart> parts;
    bool operator==(const QBind&) const = default;
};

struct Not {
    Formula body;
    bool operator==(const Not&) const = default;
};

struct Binary {
    BinOp op;
    Formula lhs;
    Formula rhs;
    bool operator==(const Binary&) const = default;
};

struct IndQuant {
    QuantKind kind;
    std::string var;
    Formula body;
    bool operator==(const IndQuant&) const = default;
};

struct PredQuant {
    QuantKind kind;
    std::string var;
    int arity = 0;
    Formula body;
    bool operator==(const PredQuant&) const = default;
};

struct Node {
    std::variant<Atom, Equality, QApp, QBind, Not, Binary, IndQuant, PredQuant> v;
    bool operator==(const Node&) const = default;
};

inline bool operator==(const Formula& a, const Formula& b) {
    return a.node_ == b.node_ || *a.node_ == *b.node_;
}

template <class T>
const T* as(const Formula& f) {
    return std::get_if<T>(&f.node().v);
}

namespace detail {
inline Formula make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }
} // namespace detail

inline Formula atom(std::string pred, std::vector<std::string> args = {}) {
    return detail::make(Node{Atom{std::move(pred), std::move(args)}});
}
inline Formula equal(std::string lhs, std::string rhs) {
    return detail::make(Node{Equality{std::move(lhs), std::move(rhs)}});
}
inline Formula qapp(std::string qsym, std::vector<std::string> args) {
    return detail::make(Node{QApp{std::move(qsym), std::move(args)}});
}
inline Formula qbind(std::string qsym, std::vector<QBindPart> parts) {
    return detail::make(Node{QBind{std::move(qsym), std::move(parts)}});
}
inline Formula neg(Formula f) { return detail::make(Node{Not{std::move(f)}}); }
inline Formula conj(Formula a, Formula b) {
    return detail::make(Node{Binary{BinOp::And, std::move(a), std::move(b)}});
}
inline Formula disj(Formula a, Formula b) {
    return detail::make(Node{Binary{BinOp::Or, std::move(a), std::move(b)}});
}
inline Formula imp(Formula a, Formula b) {
    return detail::make(Node{Binary{BinOp::Imp, std::move(a), std::move(b)}});
}
// a <-> b is not a node of its own: it desugars to (a -> b) & (b -> a).
inline Formula iff(const Formula& a, const Formula& b) {
    return conj(imp(a, b), imp(b, a));
}
inline Formula forall_ind(std::string var, Formula body) {
    return detail::make(Node{IndQuant{QuantKind::Forall, std::move(var), std::move(body)}});
}
inline Formula exists_ind(std::string var, Formula body) {
    return detail::make(Node{IndQuant{QuantKind::Exists, std::move(var), std::move(body)}});
}
inline Formula forall_pred(std::string var, int arity, Formula body) {
    return detail::make(Node{PredQuant{QuantKind::Forall, std::move(var), arity, std::move(body)}});
}
inline Formula exists_pred(std::string var, int arity, Formula body) {
    return detail::make(Node{PredQuant{QuantKind::Exists, std::move(var), arity, std::move(body)}});
}

// ---------------------------------------------------------------------------
// identifier classes

inline bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])))) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''))
            return false;
    return s != "forall" && s != "exists";
}

inline bool is_ind_var(const std::string& s) {
    return is_ident(s) && std::islower(static_cast<unsigned char>(s[0]));
}

inline bool is_pred_var(const std::string& s) {
    return is_ident(s) && std::isupper(static_cast<unsigned char>(s[0]));
}

// ---------------------------------------------------------------------------
// traversal helpers

namespace detail {

inline void for_each_child(const Formula& f, const std::function<void(const Formula&)>& fn) {
    if (auto* n = as<Not>(f)) {
        fn(n->body);
    } else if (auto* b = as<Binary>(f)) {
        fn(b->lhs);
        fn(b->rhs);
    } else if (auto* q = as<IndQuant>(f)) {
        fn(q->body);
    } else if (auto* p = as<PredQuant>(f)) {
        fn(p->body);
    } else if (auto* qb = as<QBind>(f)) {
        for (const auto& part : qb->parts) fn(part.body);
    }
}

} // namespace detail

inline void collect_free_ind_vars(const Formula& f, std::map<std::string, int>& bound,
                                  std::set<std::string>& out) {
    auto is_bound = [&](const std::string& v) {
        auto it = bound.find(v);
        return it != bound.end() && it->second > 0;
    };
    if (auto* a = as<Atom>(f)) {
        for (const auto& v : a->args)
            if (!is_bound(v)) out.insert(v);
    } else if (auto* e = as<Equality>(f)) {
        for (const auto& v : {e->lhs, e->rhs})
            if (!is_bound(v)) out.insert(v);
    } else if (auto* q = as<IndQuant>(f)) {
        ++bound[q->var];
        collect_free_ind_vars(q->body, bound, out);
        --bound[q->var];
    } else if (auto* qb = as<QBind>(f)) {
        for (const auto& part : qb->parts) {
            for (const auto& v : part.vars) ++bound[v];
            collect_free_ind_vars(part.body, bound, out);
            for (const auto& v : part.vars) --bound[v];
        }
    } else {
        detail::for_each_child(f, [&](const Formula& c) { collect_free_ind_vars(c, bound, out); });
    }
}

inline std::set<std::string> free_ind_vars(const Formula& f) {
    std::map<std::string, int> bound;
    std::set<std::string> out;
    collect_free_ind_vars(f, bound, out);
    return out;
}

// Free predicate variables with their arity where one is determined by an
// atom occurrence; -1 when the variable only appears as a QApp argument.
inline void collect_free_pred_vars(const Formula& f, std::map<std::string, int>& bound,
                                   std::map<std::string, int>& out) {
    auto record = [&](const std::string& name, int arity) {
        if (bound.count(name) && bound[name] > 0) return;
        auto it = out.find(name);
        if (it == out.end())
            out.emplace(name, arity);
        else if (it->second < 0)
            it->second = arity;
    };
    if (auto* a = as<Atom>(f)) {
        record(a->pred, static_cast<int>(a->args.size()));
    } else if (auto* qa = as<QApp>(f)) {
        for (const auto& v : qa->args) record(v, -1);
    } else if (auto* p = as<PredQuant>(f)) {
        ++bound[p->var];
        collect_free_pred_vars(p->body, bound, out);
        --bound[p->var];
    } else {
        detail::for_each_child(f, [&](const Formula& c) { collect_free_pred_vars(c, bound, out); });
    }
}

inline std::map<std::string, int> free_pred_vars(const Formula& f) {
    std::map<std::string, int> bound, out;
    collect_free_pred_vars(f, bound, out);
    return out;
}

// Arity of every predicate variable occurring anywhere in f (free or bound);
// -1 when no atom or binder fixes it. With strict=true an inconsistent use
// throws ArityError, which realizes the single-arity-per-name invariant.
inline std::map<std::string, int> pred_var_arities(const Formula& f, bool strict = false) {
    std::map<std::string, int> out;
    std::function<void(const std::string&, int)> record = [&](const std::string& name, int arity) {
        auto it = out.find(name);
        if (it == out.end()) {
            out.emplace(name, arity);
        } else if (it->second < 0) {
            it->second = arity;
        } else if (arity >= 0 && arity != it->second && strict) {
            throw ArityError("predicate variable " + name + " is used with arity " +
                             std::to_string(arity) + " but elsewhere has arity " +
                             std::to_string(it->second));
        }
    };
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (auto* a = as<Atom>(g)) {
            record(a->pred, static_cast<int>(a->args.size()));
        } else if (auto* qa = as<QApp>(g)) {
            for (const auto& v : qa->args) record(v, -1);
        } else if (auto* p = as<PredQuant>(g)) {
            record(p->var, p->arity);
            walk(p->body);
        } else {
            detail::for_each_child(g, walk);
        }
    };
    walk(f);
    return out;
}

// ---------------------------------------------------------------------------
// classification

enum class Fragment { FO, LQ, L2, L2Q };

inline std::string to_string(Fragment fr) {
    switch (fr) {
        case Fragment::FO: return "FO";
        case Fragment::LQ: return "L(Q)";
        case Fragment::L2: return "L2";
        case Fragment::L2Q: return "L2(Q)";
    }
    return "?";
}

struct FragmentInfo {
    Fragment fragment = Fragment::FO;
    bool has_polyadic_so_vars = false;
    bool is_so_prenex = true;
    std::vector<std::pair<QuantKind, std::string>> so_prefix;
};

inline bool contains_pred_quant(const Formula& f) {
    if (as<PredQuant>(f)) return true;
    bool found = false;
    detail::for_each_child(f, [&](const Formula& c) { found = found || contains_pred_quant(c); });
    return found;
}

inline FragmentInfo classify(const Formula& f) {
    FragmentInfo info;
    bool has_qbind = false, has_qapp = false, has_predq = false;
    std::function<void(const Formula&)> scan = [&](const Formula& g) {
        if (as<QBind>(g)) has_qbind = true;
        if (as<QApp>(g)) has_qapp = true;
        if (as<PredQuant>(g)) has_predq = true;
        detail::for_each_child(g, scan);
    };
    scan(f);

    if (has_qapp || (has_predq && has_qbind))
        info.fragment = Fragment::L2Q;
    else if (has_predq)
        info.fragment = Fragment::L2;
    else if (has_qbind)
        info.fragment = Fragment::LQ;
    else
        info.fragment = Fragment::FO;

    for (const auto& [name, arity] : pred_var_arities(f))
        if (arity >= 2) info.has_polyadic_so_vars = true;

    const Formula* cur = &f;
    while (auto* p = as<PredQuant>(*cur)) {
        info.so_prefix.emplace_back(p->kind, p->var);
        cur = &p->body;
    }
    info.is_so_prenex = !contains_pred_quant(*cur);
    return info;
}

// ---------------------------------------------------------------------------
// substitution

// Replaces every free occurrence of the predicate variable `from` by `to`.
// Binders are left untouched, so occurrences bound by a binder of `from`
// stay as they are. The caller is responsible for `to` not being captured by
// an enclosing binder of `to` at a replacement site.
inline Formula substitute_pred(const Formula& f, const std::string& from, const std::string& to) {
    if (from == to) return f;
    auto arities = pred_var_arities(f);
    auto it_from = arities.find(from);
    if (it_from == arities.end()) return f;
    auto it_to = arities.find(to);
    if (it_to != arities.end() && it_from->second >= 0 && it_to->second >= 0 &&
        it_from->second != it_to->second)
        throw ArityError("cannot substitute " + from + " (arity " +
                         std::to_string(it_from->second) + ") by " + to + " (arity " +
                         std::to_string(it_to->second) + ")");

    std::function<Formula(const Formula&)> walk = [&](const Formula& g) -> Formula {
        if (auto* a = as<Atom>(g)) {
            if (a->pred == from) return atom(to, a->args);
            return g;
        }
        if (auto* qa = as<QApp>(g)) {
            bool hit = false;
            std::vector<std::string> args = qa->args;
            for (auto& v : args)
                if (v == from) { v = to; hit = true; }
            return hit ? qapp(qa->qsym, std::move(args)) : g;
        }
        if (auto* p = as<PredQuant>(g)) {
            if (p->var == from) return g; // occurrences below are bound
            Formula body = walk(p->body);
            if (body == p->body) return g;
            return detail::make(Node{PredQuant{p->kind, p->var, p->arity, std::move(body)}});
        }
        if (auto* n = as<Not>(g)) {
            Formula body = walk(n->body);
            return body == n->body ? g : neg(std::move(body));
        }
        if (auto* b = as<Binary>(g)) {
            Formula l = walk(b->lhs), r = walk(b->rhs);
            if (l == b->lhs && r == b->rhs) return g;
            return detail::make(Node{Binary{b->op, std::move(l), std::move(r)}});
        }
        if (auto* q = as<IndQuant>(g)) {
            Formula body = walk(q->body);
            if (body == q->body) return g;
            return detail::make(Node{IndQuant{q->kind, q->var, std::move(body)}});
        }
        if (auto* qb = as<QBind>(g)) {
            bool hit = false;
            std::vector<QBindPart> parts;
            parts.reserve(qb->parts.size());
            for (const auto& part : qb->parts) {
                Formula body = walk(part.body);
                if (!(body == part.body)) hit = true;
                parts.push_back(QBindPart{part.vars, std::move(body)});
            }
            return hit ? qbind(qb->qsym, std::move(parts)) : g;
        }
        return g; // Equality
    };
    return walk(f);
}

// ---------------------------------------------------------------------------
// validation

// Checks the structural invariants: identifier classes, one arity per
// predicate-variable name across the whole formula, nonempty distinct bound
// tuples in binder slots, nonnegative declared arities.
inline void validate(const Formula& f) {
    pred_var_arities(f, /*strict=*/true);
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (auto* a = as<Atom>(g)) {
            if (!is_pred_var(a->pred))
                throw ScopeError("'" + a->pred + "' is not a valid predicate variable");
            for (const auto& v : a->args)
                if (!is_ind_var(v))
                    throw ScopeError("atom argument '" + v + "' is not an individual variable");
        } else if (auto* e = as<Equality>(g)) {
            if (!is_ind_var(e->lhs) || !is_ind_var(e->rhs))
                throw ScopeError("equality relates individual variables only");
        } else if (auto* qa = as<QApp>(g)) {
            if (!is_ident(qa->qsym))
                throw ScopeError("'" + qa->qsym + "' is not a valid quantifier symbol");
            if (qa->args.empty())
                throw ScopeError("quantifier application needs at least one argument");
            for (const auto& v : qa->args)
                if (!is_pred_var(v))
                    throw ScopeError("quantifier application argument '" + v +
                                     "' is not a predicate variable");
        } else if (auto* qb = as<QBind>(g)) {
            if (!is_ident(qb->qsym))
                throw ScopeError("'" + qb->qsym + "' is not a valid quantifier symbol");
            if (qb->parts.empty())
                throw ScopeError("quantifier binder needs at least one slot");
            for (const auto& part : qb->parts) {
                if (part.vars.empty())
                    throw ScopeError("quantifier binder slot needs at least one bound variable");
                std::set<std::string> seen;
                for (const auto& v : part.vars) {
                    if (!is_ind_var(v))
                        throw ScopeError("bound tuple entry '" + v +
                                         "' is not an individual variable");
                    if (!seen.insert(v).second)
                        throw ScopeError("duplicate variable '" + v + "' in a bound tuple");
                }
            }
        } else if (auto* q = as<IndQuant>(g)) {
            if (!is_ind_var(q->var))
                throw ScopeError("'" + q->var + "' is not a valid individual variable");
        } else if (auto* p = as<PredQuant>(g)) {
            if (!is_pred_var(p->var))
                throw ScopeError("'" + p->var + "' is not a valid predicate variable");
            if (p->arity < 0)
                throw ArityError("negative arity in predicate binder for " + p->var);
        }
        detail::for_each_child(g, walk);
    };
    walk(f);
}

} // namespace gqw
