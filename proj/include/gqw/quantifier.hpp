#pragma once

// The generalized-quantifier catalog. A quantifier is carried as a type
// signature plus a membership oracle over finite domains, so user-defined
// quantifiers can be added; realize() materializes the extensional table on
// demand, restrict_to() cuts it down to a Henkin model's families, and pad()
// cylindrifies one argument slot.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gqw/errors.hpp"
#include "gqw/formula.hpp"
#include "gqw/model.hpp"

namespace gqw {

struct GeneralizedQuantifier {
    std::string name;
    QuantifierType qtype;
    // Membership test for one tuple of relations (one relation per slot,
    // arities matching qtype). Must only inspect the domain size/identity and
    // the argument relations.
    std::function<bool(const Domain&, const std::vector<Relation>&)> oracle;
    std::string definition; // one-line set-theoretic description
    enum class Provenance { builtin, extension } provenance = Provenance::builtin;
};

using QuantifierRegistry = std::map<std::string, GeneralizedQuantifier>;

namespace detail {

inline std::size_t card(const Relation& r) { return r.tuples.size(); }

inline GeneralizedQuantifier make_unary(std::string name, std::string definition,
                                        GeneralizedQuantifier::Provenance prov,
                                        std::function<bool(const Domain&, const Relation&)> test) {
    GeneralizedQuantifier q;
    q.name = std::move(name);
    q.qtype = QuantifierType{{1}};
    q.definition = std::move(definition);
    q.provenance = prov;
    q.oracle = [test = std::move(test)](const Domain& d, const std::vector<Relation>& rs) {
        return test(d, rs.at(0));
    };
    return q;
}

inline GeneralizedQuantifier make_binary(std::string name, std::string definition,
                                         GeneralizedQuantifier::Provenance prov,
                                         std::function<bool(const Domain&, const Relation&,
                                                            const Relation&)> test) {
    GeneralizedQuantifier q;
    q.name = std::move(name);
    q.qtype = QuantifierType{{1, 1}};
    q.definition = std::move(definition);
    q.provenance = prov;
    q.oracle = [test = std::move(test)](const Domain& d, const std::vector<Relation>& rs) {
        return test(d, rs.at(0), rs.at(1));
    };
    return q;
}

} // namespace detail

// Catalog quantifiers by name. Parameterized names take the parameter
// separately: builtin("atleast", 2). aleph0 is the finite-domain restriction
// of the countability quantifier and is uniformly false here.
inline GeneralizedQuantifier builtin(const std::string& name,
                                     std::optional<int> param = std::nullopt) {
    using P = GeneralizedQuantifier::Provenance;
    auto need_param = [&](int min_value) {
        if (!param)
            throw ArgumentError("quantifier '" + name + "' needs a parameter, e.g. " + name + ":2");
        if (*param < min_value)
            throw ArgumentError("parameter for '" + name + "' must be at least " +
                                std::to_string(min_value));
        return *param;
    };
    auto no_param = [&]() {
        if (param) throw ArgumentError("quantifier '" + name + "' takes no parameter");
    };

    if (name == "forall") {
        no_param();
        return detail::make_unary("forall", "{A | A = M}", P::builtin,
                                  [](const Domain& d, const Relation& a) {
                                      return detail::card(a) == d.size();
                                  });
    }
    if (name == "exists") {
        no_param();
        return detail::make_unary("exists", "{A | A != {}}", P::builtin,
                                  [](const Domain&, const Relation& a) {
                                      return detail::card(a) > 0;
                                  });
    }
    if (name == "atleast") {
        int k = need_param(0);
        return detail::make_unary("atleast:" + std::to_string(k),
                                  "{A | |A| >= " + std::to_string(k) + "}", P::extension,
                                  [k](const Domain&, const Relation& a) {
                                      return detail::card(a) >= static_cast<std::size_t>(k);
                                  });
    }
    if (name == "exactly") {
        int k = need_param(0);
        return detail::make_unary("exactly:" + std::to_string(k),
                                  "{A | |A| = " + std::to_string(k) + "}", P::extension,
                                  [k](const Domain&, const Relation& a) {
                                      return detail::card(a) == static_cast<std::size_t>(k);
                                  });
    }
    if (name == "divides") {
        int n = need_param(1);
        return detail::make_unary("divides:" + std::to_string(n),
                                  "{A | " + std::to_string(n) + " divides |A|}", P::extension,
                                  [n](const Domain&, const Relation& a) {
                                      return detail::card(a) % static_cast<std::size_t>(n) == 0;
                                  });
    }
    if (name == "most") {
        no_param();
        return detail::make_binary("most", "{(A,B) | |A & B| > |A \\ B|}", P::extension,
                                   [](const Domain&, const Relation& a, const Relation& b) {
                                       std::size_t both = 0;
                                       for (const auto& t : a.tuples)
                                           if (b.contains(t)) ++both;
                                       return both > detail::card(a) - both;
                                   });
    }
    if (name == "hartig") {
        no_param();
        return detail::make_binary("hartig", "{(A,B) | |A| = |B|}", P::builtin,
                                   [](const Domain&, const Relation& a, const Relation& b) {
                                       return detail::card(a) == detail::card(b);
                                   });
    }
    if (name == "aleph0") {
        no_param();
        return detail::make_unary("aleph0", "{A | A is infinite} (empty on finite domains)",
                                  P::builtin,
                                  [](const Domain&, const Relation&) { return false; });
    }
    throw ArgumentError("unknown quantifier '" + name + "'");
}

// "name" or "name:param", as accepted by the CLI.
inline GeneralizedQuantifier builtin_from_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) return builtin(spec);
    std::string name = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
        throw ArgumentError("malformed quantifier parameter in '" + spec + "'");
    if (rest.size() > 6) throw ArgumentError("quantifier parameter out of range in '" + spec + "'");
    return builtin(name, std::stoi(rest));
}

struct CatalogEntry {
    std::string name;
    std::string type;      // "<1>", "<1,1>", ...
    std::string definition;
    std::string provenance; // "builtin" | "extension" | "stub"
};

inline std::string type_to_string(const QuantifierType& t) {
    std::string out = "<";
    for (std::size_t i = 0; i < t.arities.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(t.arities[i]);
    }
    return out + ">";
}

inline std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> out;
    auto add = [&](const GeneralizedQuantifier& q) {
        out.push_back({q.name, type_to_string(q.qtype), q.definition,
                       q.provenance == GeneralizedQuantifier::Provenance::builtin ? "builtin"
                                                                                  : "extension"});
    };
    add(builtin("forall"));
    add(builtin("exists"));
    add(builtin("atleast", 2));
    add(builtin("exactly", 2));
    add(builtin("most"));
    add(builtin("hartig"));
    add(builtin("divides", 2));
    add(builtin("aleph0"));
    // Uncountability quantifiers have no finite-domain content at all; they
    // are listed by name and type only and cannot be constructed.
    out.push_back({"aleph_alpha (alpha >= 1)", "<1>", "{A | |A| >= aleph_alpha}", "stub"});
    return out;
}

// Default symbol registry used by the CLI and tests for binder formulas:
// catalog names plus the short aliases A/E/I.
inline QuantifierRegistry builtin_registry() {
    QuantifierRegistry reg;
    for (const char* name : {"forall", "exists", "most", "hartig", "aleph0"})
        reg.emplace(name, builtin(name));
    reg.emplace("A", builtin("forall"));
    reg.emplace("E", builtin("exists"));
    reg.emplace("I", builtin("hartig"));
    return reg;
}

// ---------------------------------------------------------------------------
// realization, restriction, padding

// The full extensional table of Q over the domain: every tuple from the
// product of full powersets that the oracle accepts.
inline std::set<std::vector<Relation>> realize(const GeneralizedQuantifier& q, const Domain& domain,
                                               std::uint64_t guard = kDefaultSizeGuard) {
    domain.check();
    q.qtype.check();
    std::vector<std::vector<Relation>> slot_relations;
    std::uint64_t product = 1;
    for (int arity : q.qtype.arities) {
        slot_relations.push_back(all_relations(domain.size(), arity, guard));
        std::uint64_t count = slot_relations.back().size();
        if (product > guard / count)
            throw SizeGuardError("candidate product exceeds the size guard");
        product *= count;
    }

    std::set<std::vector<Relation>> out;
    std::vector<std::size_t> idx(slot_relations.size(), 0);
    for (std::uint64_t step = 0; step < product; ++step) {
        std::vector<Relation> tuple;
        tuple.reserve(idx.size());
        for (std::size_t s = 0; s < idx.size(); ++s) tuple.push_back(slot_relations[s][idx[s]]);
        if (q.oracle(domain, tuple)) out.insert(std::move(tuple));
        for (std::size_t s = idx.size(); s-- > 0;) {
            if (++idx[s] < slot_relations[s].size()) break;
            idx[s] = 0;
        }
    }
    return out;
}

// Q_M cut down to the model's families: the members of the interpretation are
// exactly the family-product tuples the oracle accepts.
inline QuantifierInterpretation restrict_to(const GeneralizedQuantifier& q,
                                            const HenkinModel& model) {
    q.qtype.check();
    QuantifierInterpretation interp{q.qtype, {}};
    std::vector<const std::vector<Relation>*> fams;
    for (int arity : q.qtype.arities) {
        fams.push_back(&model.family(arity));
        if (fams.back()->empty()) return interp; // empty product
    }
    std::vector<std::size_t> idx(fams.size(), 0);
    for (;;) {
        std::vector<Relation> tuple;
        tuple.reserve(idx.size());
        for (std::size_t s = 0; s < idx.size(); ++s) tuple.push_back((*fams[s])[idx[s]]);
        if (q.oracle(model.domain, tuple)) interp.members.insert(std::move(tuple));
        std::size_t s = idx.size();
        for (; s-- > 0;) {
            if (++idx[s] < fams[s]->size()) break;
            idx[s] = 0;
        }
        if (s == static_cast<std::size_t>(-1)) break;
    }
    return interp;
}

// The quantifier whose slot-l argument is the cylinder R x M of a slot-l
// argument of q. A relation that is not of the form R x M is rejected
// outright; product form is detected by projecting away the last coordinate
// and re-expanding.
inline GeneralizedQuantifier pad(const GeneralizedQuantifier& q, int slot) {
    q.qtype.check();
    if (slot < 1 || static_cast<std::size_t>(slot) > q.qtype.slot_count())
        throw ArgumentError("pad slot " + std::to_string(slot) + " out of range for type " +
                            type_to_string(q.qtype));
    GeneralizedQuantifier padded;
    padded.qtype = q.qtype;
    padded.qtype.arities[slot - 1] += 1;
    padded.name = q.name + "+" + std::to_string(slot);
    padded.definition = "{(..,R x M,..) | (..,R,..) in " + q.name + "_M} (cylinder at slot " +
                        std::to_string(slot) + ")";
    padded.provenance = q.provenance;
    int base_arity = q.qtype.arities[slot - 1];
    padded.oracle = [base = q, slot, base_arity](const Domain& d,
                                                 const std::vector<Relation>& rs) {
        const Relation& s = rs.at(slot - 1);
        Relation projected{base_arity, {}};
        for (const auto& t : s.tuples)
            projected.tuples.insert(Tuple(t.begin(), t.end() - 1));
        Relation expanded{base_arity + 1, {}};
        for (const auto& t : projected.tuples)
            for (Elem e = 0; e < d.size(); ++e) {
                Tuple padded_tuple = t;
                padded_tuple.push_back(e);
                expanded.tuples.insert(std::move(padded_tuple));
            }
        if (expanded != s) return false;
        std::vector<Relation> unpadded = rs;
        unpadded[slot - 1] = std::move(projected);
        return base.oracle(d, unpadded);
    };
    return padded;
}

} // namespace gqw
