#pragma once

// Definability machinery: singleton-unary models, brute-force implicit
// definability checks over enumerated Henkin models, extraction of a
// first-order definition from a second-order implicit one, exhaustive
// verification of the extraction, unpadding of cylindrified definitions, and
// the comprehension-schema checker.

#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gqw/errors.hpp"
#include "gqw/eval.hpp"
#include "gqw/formula.hpp"
#include "gqw/io.hpp"
#include "gqw/model.hpp"
#include "gqw/parser.hpp"
#include "gqw/prenex.hpp"
#include "gqw/printer.hpp"
#include "gqw/quantifier.hpp"

namespace gqw {

enum class Verdict { pass, fail, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

// Structured outcome of a check. A fail always carries a counterexample; a
// pass never does. Exit codes: pass 0, fail 1, inconclusive 2.
struct Report {
    Verdict verdict = Verdict::pass;
    std::uint64_t models_checked = 0;
    std::string strategy;
    std::optional<Json> counterexample;
    std::vector<std::string> notes;

    Json to_json() const {
        Json out;
        out["verdict"] = gqw::to_string(verdict);
        out["models_checked"] = models_checked;
        out["strategy"] = strategy;
        if (counterexample) out["counterexample"] = *counterexample;
        if (!notes.empty()) out["notes"] = notes;
        return out;
    }

    int exit_code() const {
        switch (verdict) {
            case Verdict::pass: return 0;
            case Verdict::fail: return 1;
            case Verdict::inconclusive: return 2;
        }
        return 3;
    }
};

// ---------------------------------------------------------------------------
// singleton-unary models

// The Henkin model over `domain` in which unary predicate variables range
// over the single set `a` and every listed non-unary arity has the empty
// family (as do all arities without an entry).
inline HenkinModel singleton_unary_model(const Domain& domain, const Relation& a,
                                         const std::set<int>& empty_arities = {}) {
    domain.check();
    if (a.arity != 1) throw ArgumentError("the pinned relation must be unary");
    a.check(domain);
    HenkinModel m{domain, {}};
    m.preds[1] = {a};
    for (int k : empty_arities) {
        if (k == 1) throw ArgumentError("arity 1 carries the pinned relation, not an empty family");
        if (k < 0) throw ArgumentError("negative arity");
        m.preds[k] = {};
    }
    return m;
}

// ---------------------------------------------------------------------------
// implicit definability

// Arities whose families matter for evaluating sigma against a type: every
// arity a predicate variable of sigma carries, plus the slot arities.
inline std::set<int> mentioned_arities(const Formula& sigma, const QuantifierType& qtype) {
    std::set<int> out;
    for (const auto& [name, arity] : pred_var_arities(sigma))
        if (arity >= 0) out.insert(arity);
    for (int a : qtype.arities) out.insert(a);
    return out;
}

// Every interpretation of the quantifier symbol that satisfies the sentence
// over the model: all 2^|product| subsets of the family product are tried.
// Returned in enumeration order (subset masks ascending).
inline std::vector<QuantifierInterpretation> satisfying_interpretations(
    const HenkinModel& model, const Formula& sigma, const QuantifierType& qtype,
    std::uint64_t guard = kDefaultSizeGuard) {
    qtype.check();
    model.check();

    std::vector<std::vector<Relation>> product;
    {
        std::vector<const std::vector<Relation>*> fams;
        std::uint64_t count = 1;
        for (int arity : qtype.arities) {
            fams.push_back(&model.family(arity));
            std::uint64_t n = fams.back()->size();
            if (n == 0) { count = 0; break; }
            if (count > guard / n) throw SizeGuardError("family product exceeds the size guard");
            count *= n;
        }
        if (count > 0) {
            std::vector<std::size_t> idx(fams.size(), 0);
            for (std::uint64_t step = 0; step < count; ++step) {
                std::vector<Relation> tuple;
                for (std::size_t s = 0; s < idx.size(); ++s) tuple.push_back((*fams[s])[idx[s]]);
                product.push_back(std::move(tuple));
                for (std::size_t s = idx.size(); s-- > 0;) {
                    if (++idx[s] < fams[s]->size()) break;
                    idx[s] = 0;
                }
            }
        }
    }
    std::uint64_t candidates = checked_pow(2, product.size(), guard);

    std::vector<QuantifierInterpretation> out;
    for (std::uint64_t mask = 0; mask < candidates; ++mask) {
        QuantifierInterpretation x{qtype, {}};
        for (std::size_t i = 0; i < product.size(); ++i)
            if (mask & (1ull << i)) x.members.insert(product[i]);
        if (eval_l2q(model, x, Assignment{}, sigma)) out.push_back(std::move(x));
    }
    return out;
}

// True when the quantifier's restriction to the model is sigma's one and
// only satisfying interpretation.
inline bool implicitly_defines_on(const HenkinModel& model, const Formula& sigma,
                                  const GeneralizedQuantifier& q,
                                  std::uint64_t guard = kDefaultSizeGuard) {
    auto sats = satisfying_interpretations(model, sigma, q.qtype, guard);
    return sats.size() == 1 && sats.front() == restrict_to(q, model);
}

// Walks every Henkin model over the canonical domains of size 1..max_size
// (one representative per cardinality) with every choice of relation family
// at the given arities, in a fixed order: size ascending, then family
// subsets ascending with the smallest arity cycling fastest. Returns false
// from the callback to stop.
inline void for_each_henkin_model(int max_size, const std::set<int>& arities, std::uint64_t guard,
                                  const std::function<bool(const HenkinModel&)>& visit) {
    if (max_size < 1) throw ArgumentError("max_size must be at least 1 (domains are nonempty)");
    for (int n = 1; n <= max_size; ++n) {
        Domain domain = Domain::canonical(n);
        std::vector<int> arity_list(arities.begin(), arities.end());
        std::vector<std::vector<Relation>> rels;
        std::uint64_t combos = 1;
        for (int a : arity_list) {
            rels.push_back(all_relations(domain.size(), a, guard));
            std::uint64_t families = checked_pow(2, rels.back().size(), guard);
            if (combos > guard / families)
                throw SizeGuardError("family-choice enumeration exceeds the size guard");
            combos *= families;
        }
        std::vector<std::uint64_t> masks(arity_list.size(), 0);
        for (std::uint64_t step = 0; step < combos; ++step) {
            HenkinModel m{domain, {}};
            for (std::size_t i = 0; i < arity_list.size(); ++i) {
                std::vector<Relation> fam;
                for (std::size_t bit = 0; bit < rels[i].size(); ++bit)
                    if (masks[i] & (1ull << bit)) fam.push_back(rels[i][bit]);
                m.preds[arity_list[i]] = std::move(fam);
            }
            m.normalize();
            if (!visit(m)) return;
            for (std::size_t i = 0; i < masks.size(); ++i) {
                if (++masks[i] < (1ull << rels[i].size())) break;
                masks[i] = 0;
            }
        }
    }
}

enum class Strategy { exhaustive, sampled };

struct CheckOptions {
    int max_size = 2;
    Strategy strategy = Strategy::exhaustive;
    std::uint64_t seed = 0;     // sampled only
    std::uint64_t samples = 100; // sampled only
    std::uint64_t guard = kDefaultSizeGuard;
};

namespace detail {

inline Json implicit_counterexample(const HenkinModel& model,
                                    const std::vector<QuantifierInterpretation>& sats,
                                    const QuantifierInterpretation& expected) {
    Json ce;
    ce["model"] = model_to_json(model);
    ce["expected_interpretation"] = interpretation_to_json(expected, model.domain);
    ce["satisfier_count"] = sats.size();
    const QuantifierInterpretation* offending = nullptr;
    for (const auto& x : sats)
        if (!(x == expected)) { offending = &x; break; }
    if (offending) {
        ce["offending_interpretation"] = interpretation_to_json(*offending, model.domain);
        ce["detail"] = sats.size() == 1
                           ? "the sentence's unique satisfier differs from the quantifier's "
                             "restriction to this model"
                           : "the sentence does not pin down a unique interpretation";
    } else {
        ce["offending_interpretation"] = nullptr;
        ce["detail"] = "no interpretation at all satisfies the sentence over this model";
    }
    return ce;
}

} // namespace detail

// Finitized implicit-definability check: does the sentence pin the
// quantifier's restriction as its unique satisfier on every enumerated
// model? Exhaustive strategy enumerates every family choice at the
// mentioned arities up to max_size; sampled draws family choices from a
// seeded generator and can only report fail or inconclusive.
inline Report check_implicit(const Formula& sigma, const GeneralizedQuantifier& q,
                             const CheckOptions& opts = {}) {
    validate(sigma);
    if (!free_ind_vars(sigma).empty() || !free_pred_vars(sigma).empty())
        throw ArgumentError("the defining sentence must be closed");
    q.qtype.check();
    std::set<int> arities = mentioned_arities(sigma, q.qtype);

    Report report;
    bool quantifier_seen_inhabited = false;
    auto test_model = [&](const HenkinModel& m) {
        ++report.models_checked;
        auto sats = satisfying_interpretations(m, sigma, q.qtype, opts.guard);
        QuantifierInterpretation expected = restrict_to(q, m);
        if (!expected.members.empty()) quantifier_seen_inhabited = true;
        if (sats.size() == 1 && sats.front() == expected) return true;
        report.verdict = Verdict::fail;
        report.counterexample = detail::implicit_counterexample(m, sats, expected);
        return false;
    };

    if (opts.strategy == Strategy::exhaustive) {
        report.strategy = "exhaustive(max_size=" + std::to_string(opts.max_size) + ")";
        report.verdict = Verdict::pass;
        for_each_henkin_model(opts.max_size, arities, opts.guard, test_model);
    } else {
        report.strategy = "sampled(seed=" + std::to_string(opts.seed) +
                          ",samples=" + std::to_string(opts.samples) +
                          ",max_size=" + std::to_string(opts.max_size) + ")";
        report.verdict = Verdict::inconclusive;
        if (opts.max_size < 1) throw ArgumentError("max_size must be at least 1");
        std::mt19937_64 rng(opts.seed);
        for (std::uint64_t i = 0; i < opts.samples; ++i) {
            int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(opts.max_size));
            Domain domain = Domain::canonical(n);
            HenkinModel m{domain, {}};
            for (int a : arities) {
                std::vector<Relation> fam;
                for (const Relation& r : all_relations(domain.size(), a, opts.guard))
                    if (rng() & 1u) fam.push_back(r);
                m.preds[a] = std::move(fam);
            }
            m.normalize();
            if (!test_model(m)) break;
        }
    }
    if (report.verdict != Verdict::fail && !quantifier_seen_inhabited)
        report.notes.push_back("the quantifier has no member over any checked model; a "
                               "quantifier that is empty everywhere is defined outright by any "
                               "unsatisfiable formula");
    return report;
}

// ---------------------------------------------------------------------------
// extraction

enum class ExtractMode { prenex, structural };

// The distinguished unary predicate symbol of extracted definitions, and the
// fixed true sentence that replaces quantifier-symbol atoms.
inline const std::string kExtractionPred = "P";

inline Formula extraction_tautology() {
    Formula some = exists_ind("x", atom(kExtractionPred, {"x"}));
    return disj(some, neg(some));
}

namespace detail {

inline void check_extraction_input(const Formula& theta) {
    validate(theta);
    if (!free_ind_vars(theta).empty() || !free_pred_vars(theta).empty())
        throw ArgumentError("extraction expects a closed sentence");
    bool has_qbind = false;
    std::function<void(const Formula&)> scan = [&](const Formula& g) {
        if (as<QBind>(g)) has_qbind = true;
        for_each_child(g, scan);
    };
    scan(theta);
    if (has_qbind)
        throw ArgumentError("extraction input must be in the second-order fragment; quantifier "
                            "binders are not allowed");
}

inline Formula replace_qapps(const Formula& f, const Formula& replacement) {
    if (as<QApp>(f)) return replacement;
    if (auto* n = as<Not>(f)) {
        Formula body = replace_qapps(n->body, replacement);
        return body == n->body ? f : neg(std::move(body));
    }
    if (auto* b = as<Binary>(f)) {
        Formula l = replace_qapps(b->lhs, replacement);
        Formula r = replace_qapps(b->rhs, replacement);
        if (l == b->lhs && r == b->rhs) return f;
        return make(Node{Binary{b->op, std::move(l), std::move(r)}});
    }
    if (auto* q = as<IndQuant>(f)) {
        Formula body = replace_qapps(q->body, replacement);
        return body == q->body ? f : make(Node{IndQuant{q->kind, q->var, std::move(body)}});
    }
    if (auto* p = as<PredQuant>(f)) {
        Formula body = replace_qapps(p->body, replacement);
        return body == p->body ? f
                               : make(Node{PredQuant{p->kind, p->var, p->arity, std::move(body)}});
    }
    return f;
}

} // namespace detail

// Turns a second-order sentence that implicitly defines a unary quantifier
// into a first-order formula over the single unary symbol P.
//
// Prenex mode is the literal construction: the input must be in
// second-order prenex form; the prefix is removed, every prefix variable is
// replaced by P, and every quantifier-symbol atom becomes the fixed true
// sentence "(exists x. P(x)) | ~(exists x. P(x))". A prefix variable of
// arity other than 1 is reported as PolyadicDetectedError: on the
// singleton-unary models the equivalence argument runs over, such a
// quantifier ranges over an empty family and fixes the sentence's value no
// matter how the quantifier symbol is interpreted, so it cannot occur in a
// genuine implicit definition.
//
// Structural mode applies the same collapse recursively without requiring a
// prenex input: unary predicate quantifiers collapse to their body at P,
// non-unary universal/existential ones become the tautology/its negation,
// and quantifier-symbol atoms become the tautology. This evaluates the
// sentence over the singleton-unary models directly and agrees with prenex
// mode whenever the latter applies.
inline Formula extract_first_order(const Formula& theta, ExtractMode mode) {
    detail::check_extraction_input(theta);
    Formula taut = extraction_tautology();

    if (mode == ExtractMode::prenex) {
        FragmentInfo info = classify(theta);
        if (!info.is_so_prenex)
            throw NotPrenexError("the predicate quantifiers do not form an outermost prefix; "
                                 "apply so-prenex first or use structural mode");
        std::vector<std::pair<std::string, int>> prefix;
        const Formula* cur = &theta;
        while (auto* p = as<PredQuant>(*cur)) {
            prefix.emplace_back(p->var, p->arity);
            cur = &p->body;
        }
        for (const auto& [var, arity] : prefix)
            if (arity != 1)
                throw PolyadicDetectedError(
                    "the prefix binds " + var + " of arity " + std::to_string(arity) +
                    "; over a model whose non-unary families are empty that quantifier fixes "
                    "the sentence's truth value regardless of the quantifier symbol's "
                    "interpretation, so it cannot occur in an implicit definition");
        Formula body = *cur;
        for (const auto& [var, arity] : prefix) body = substitute_pred(body, var, kExtractionPred);
        return detail::replace_qapps(body, taut);
    }

    std::function<Formula(const Formula&)> rec = [&](const Formula& g) -> Formula {
        if (as<QApp>(g)) return taut;
        if (auto* p = as<PredQuant>(g)) {
            if (p->arity == 1) return rec(substitute_pred(p->body, p->var, kExtractionPred));
            return p->kind == QuantKind::Forall ? taut : neg(taut);
        }
        if (auto* n = as<Not>(g)) return neg(rec(n->body));
        if (auto* b = as<Binary>(g))
            return detail::make(Node{Binary{b->op, rec(b->lhs), rec(b->rhs)}});
        if (auto* q = as<IndQuant>(g))
            return detail::make(Node{IndQuant{q->kind, q->var, rec(q->body)}});
        return g; // Atom (bound variables were substituted on the way down)
    };
    return rec(theta);
}

// Exhaustively checks the three-way agreement behind the extraction, for a
// unary quantifier: over every canonical domain of size 1..max_size and
// every unary relation A,
//   phi holds at (M, P := A)
//   <=> theta holds over the singleton-unary model with the quantifier
//       symbol interpreted as the one-member set {(A)}
//   <=> (A) is a member of the quantifier's table over M.
// The middle evaluation uses the singleton interpretation {(A)} and not the
// quantifier's restriction to the model; the two coincide exactly when A is
// in the table, and only the singleton makes the equivalence hold at every
// A.
inline Report verify_extraction(const Formula& theta, const Formula& phi,
                                const GeneralizedQuantifier& q, int max_size,
                                std::uint64_t guard = kDefaultSizeGuard) {
    detail::check_extraction_input(theta);
    validate(phi);
    if (!(q.qtype == QuantifierType{{1}}))
        throw ArgumentError("extraction verification targets quantifiers of type <1>");
    if (max_size < 1) throw ArgumentError("max_size must be at least 1");
    if (classify(phi).fragment != Fragment::FO)
        throw ArgumentError("the candidate definition must be first-order");
    if (!free_ind_vars(phi).empty())
        throw ArgumentError("the first-order formula must have no free individual variables");
    std::string pred_name = kExtractionPred;
    {
        auto fp = free_pred_vars(phi);
        if (fp.size() > 1)
            throw ArgumentError("the first-order formula must use a single predicate symbol");
        if (fp.size() == 1) {
            if (fp.begin()->second > 1)
                throw ArgumentError("the first-order formula's predicate symbol must be unary");
            pred_name = fp.begin()->first;
        }
    }
    std::set<int> empty_arities;
    for (const auto& [name, arity] : pred_var_arities(theta))
        if (arity >= 2) empty_arities.insert(arity);

    Report report;
    report.verdict = Verdict::pass;
    report.strategy = "exhaustive(max_size=" + std::to_string(max_size) + ")";
    QuantifierRegistry no_registry;
    bool member_seen = false;
    for (int n = 1; n <= max_size && report.verdict == Verdict::pass; ++n) {
        Domain domain = Domain::canonical(n);
        auto table = realize(q, domain, guard);
        for (const Relation& a : all_relations(domain.size(), 1, guard)) {
            ++report.models_checked;
            Assignment s;
            s.pred[pred_name] = a;
            bool fo = eval_lq(domain, s, no_registry, phi);
            HenkinModel m = singleton_unary_model(domain, a, empty_arities);
            QuantifierInterpretation x{QuantifierType{{1}}, {{a}}};
            bool henkin = eval_l2q(m, x, Assignment{}, theta);
            bool member = table.count({a}) != 0;
            member_seen = member_seen || member;
            if (fo != henkin || henkin != member) {
                report.verdict = Verdict::fail;
                Json ce;
                ce["domain"] = domain_to_json(domain);
                ce["relation"] = relation_to_json(a, domain);
                ce["fo_value"] = fo;
                ce["henkin_value"] = henkin;
                ce["member"] = member;
                ce["detail"] = "the first-order evaluation, the singleton-unary-model "
                               "evaluation and the quantifier membership disagree here";
                report.counterexample = std::move(ce);
                break;
            }
        }
    }
    if (report.verdict == Verdict::pass && !member_seen)
        report.notes.push_back("no (domain, relation) pair lies in " + q.name +
                               " at these sizes; a quantifier with empty extension everywhere "
                               "is defined by any unsatisfiable formula");
    return report;
}

// ---------------------------------------------------------------------------
// unpadding

// Converts a definition of a slot-padded quantifier back into one of the
// base quantifier by dropping the last argument of every atom of the slot's
// predicate symbol. Slots are identified by sorting the formula's free
// predicate symbols by name; a slot index beyond that list leaves the
// formula unchanged. Sound because membership of a cylinder R x M never
// depends on the final coordinate.
inline Formula unpad_definition(const Formula& phi_pad, int slot) {
    validate(phi_pad);
    if (slot < 1) throw ArgumentError("slot index must be at least 1");
    auto fp = free_pred_vars(phi_pad); // std::map: sorted by name
    if (static_cast<std::size_t>(slot) > fp.size()) return phi_pad;
    auto it = fp.begin();
    std::advance(it, slot - 1);
    const std::string& target = it->first;
    int arity = it->second;
    if (arity < 2)
        throw ArityError("predicate symbol " + target + " has arity " + std::to_string(arity) +
                         "; unpadding needs arity at least 2");

    std::function<Formula(const Formula&)> rec = [&](const Formula& g) -> Formula {
        if (auto* a = as<Atom>(g)) {
            if (a->pred != target) return g;
            std::vector<std::string> args(a->args.begin(), a->args.end() - 1);
            return atom(a->pred, std::move(args));
        }
        if (auto* n = as<Not>(g)) return neg(rec(n->body));
        if (auto* b = as<Binary>(g))
            return detail::make(Node{Binary{b->op, rec(b->lhs), rec(b->rhs)}});
        if (auto* q = as<IndQuant>(g))
            return detail::make(Node{IndQuant{q->kind, q->var, rec(q->body)}});
        if (auto* p = as<PredQuant>(g)) {
            if (p->var == target) return g; // bound occurrences are a different variable
            return detail::make(Node{PredQuant{p->kind, p->var, p->arity, rec(p->body)}});
        }
        if (auto* qb = as<QBind>(g)) {
            std::vector<QBindPart> parts;
            for (const auto& part : qb->parts) parts.push_back({part.vars, rec(part.body)});
            return qbind(qb->qsym, std::move(parts));
        }
        return g;
    };
    return rec(phi_pad);
}

// ---------------------------------------------------------------------------
// comprehension

namespace detail {

struct ComprehensionShape {
    std::vector<std::pair<std::string, int>> universals; // outer forall binders, in order
    std::string witness_var;
    int witness_arity = 0;
    std::vector<std::string> ind_vars;
    Formula phi;
};

// Accepts exactly the closed shape
//   forall R1:a1. ... forall Rm:am. exists P:a. forall x1. ... forall xa.
//     (phi <-> P(x1,...,xa))
// with phi a formula of L2 not mentioning P freely; the biconditional may
// also be written with the P-atom on the left.
inline ComprehensionShape comprehension_shape(const Formula& instance) {
    validate(instance);
    if (!free_ind_vars(instance).empty() || !free_pred_vars(instance).empty())
        throw ArgumentError("a comprehension instance must be closed");

    ComprehensionShape shape{.universals = {}, .witness_var = "", .witness_arity = 0,
                             .ind_vars = {}, .phi = instance};
    const Formula* cur = &instance;
    while (auto* p = as<PredQuant>(*cur)) {
        if (p->kind != QuantKind::Forall) break;
        shape.universals.emplace_back(p->var, p->arity);
        cur = &p->body;
    }
    auto* ex = as<PredQuant>(*cur);
    if (!ex || ex->kind != QuantKind::Exists)
        throw ArgumentError("malformed comprehension instance: expected an existential "
                            "predicate quantifier after the universal prefix");
    shape.witness_var = ex->var;
    shape.witness_arity = ex->arity;
    for (const auto& [name, arity] : shape.universals)
        if (name == ex->var)
            throw ArgumentError("malformed comprehension instance: the witness variable "
                                "shadows a universal one");
    cur = &ex->body;
    for (int i = 0; i < shape.witness_arity; ++i) {
        auto* q = as<IndQuant>(*cur);
        if (!q || q->kind != QuantKind::Forall)
            throw ArgumentError("malformed comprehension instance: expected " +
                                std::to_string(shape.witness_arity) +
                                " universal individual quantifiers after the witness");
        shape.ind_vars.push_back(q->var);
        cur = &q->body;
    }
    {
        std::set<std::string> distinct(shape.ind_vars.begin(), shape.ind_vars.end());
        if (distinct.size() != shape.ind_vars.size())
            throw ArgumentError("malformed comprehension instance: repeated tuple variable");
    }

    auto* body = as<Binary>(*cur);
    const Binary* left = body ? as<Binary>(body->lhs) : nullptr;
    const Binary* right = body ? as<Binary>(body->rhs) : nullptr;
    if (!body || body->op != BinOp::And || !left || !right || left->op != BinOp::Imp ||
        right->op != BinOp::Imp || !(left->lhs == right->rhs) || !(left->rhs == right->lhs))
        throw ArgumentError("malformed comprehension instance: the matrix must be a "
                            "biconditional");
    Formula witness_atom = atom(shape.witness_var, shape.ind_vars);
    auto mentions_witness = [&](const Formula& f) {
        auto fp = free_pred_vars(f);
        return fp.count(shape.witness_var) != 0;
    };
    if (left->rhs == witness_atom && !mentions_witness(left->lhs)) {
        shape.phi = left->lhs;
    } else if (left->lhs == witness_atom && !mentions_witness(left->rhs)) {
        shape.phi = left->rhs;
    } else {
        throw ArgumentError("malformed comprehension instance: one side of the biconditional "
                            "must be the witness atom applied to the bound tuple, and the "
                            "other side must not mention the witness");
    }
    FragmentInfo info = classify(shape.phi);
    if (info.fragment == Fragment::LQ || info.fragment == Fragment::L2Q)
        throw ArgumentError("malformed comprehension instance: the defining formula must stay "
                            "inside L2");
    return shape;
}

} // namespace detail

// Checks comprehension instances against a model: for every assignment of
// the universally quantified relation variables, the definable extension of
// phi must already be a member of the witness arity's family. Fails with
// the first instance and relation assignment for which it is not.
inline Report check_comprehension(const HenkinModel& model, const std::vector<Formula>& instances,
                                  std::uint64_t guard = kDefaultSizeGuard) {
    model.check();
    Report report;
    report.verdict = Verdict::pass;
    report.strategy = "exhaustive(instances=" + std::to_string(instances.size()) + ")";

    for (const Formula& instance : instances) {
        detail::ComprehensionShape shape = detail::comprehension_shape(instance);
        std::vector<const std::vector<Relation>*> fams;
        std::uint64_t combos = 1;
        for (const auto& [name, arity] : shape.universals) {
            fams.push_back(&model.family(arity));
            std::uint64_t n = fams.back()->size();
            if (n == 0) { combos = 0; break; }
            if (combos > guard / n)
                throw SizeGuardError("relation assignment enumeration exceeds the size guard");
            combos *= n;
        }
        std::vector<std::size_t> idx(fams.size(), 0);
        for (std::uint64_t step = 0; step < combos; ++step) {
            ++report.models_checked;
            Assignment s;
            for (std::size_t i = 0; i < fams.size(); ++i)
                s.pred[shape.universals[i].first] = (*fams[i])[idx[i]];
            Relation ext = extension(model, std::nullopt, s, shape.ind_vars, shape.phi);
            if (!model.family_contains(shape.witness_arity, ext)) {
                report.verdict = Verdict::fail;
                Json ce;
                ce["instance"] = print(instance);
                Json witness = Json::object();
                for (std::size_t i = 0; i < fams.size(); ++i)
                    witness[shape.universals[i].first] =
                        relation_to_json((*fams[i])[idx[i]], model.domain);
                ce["witness"] = std::move(witness);
                ce["required_extension"] = relation_to_json(ext, model.domain);
                ce["detail"] = "the definable extension is not in the model's arity-" +
                               std::to_string(shape.witness_arity) + " family";
                report.counterexample = std::move(ce);
                return report;
            }
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (++idx[i] < fams[i]->size()) break;
                idx[i] = 0;
            }
        }
    }
    return report;
}

} // namespace gqw
