#pragma once

// Finite structures: domains, relations as explicit tuple sets, assignments,
// Henkin models (a domain plus one finite relation family per arity) and
// second-order predicate interpretations. Also the enumeration helpers used
// throughout: tuple spaces, relation spaces, powerset models.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gqw/errors.hpp"
#include "gqw/formula.hpp"

namespace gqw {

using Elem = std::uint32_t; // index into Domain::names
using Tuple = std::vector<Elem>;

// Enumerations refuse to build candidate spaces larger than this unless the
// caller raises the bound (CLI: GQW_SIZE_GUARD).
constexpr std::uint64_t kDefaultSizeGuard = 1ull << 20;

struct Domain {
    std::vector<std::string> names;

    static Domain canonical(std::size_t n) {
        Domain d;
        for (std::size_t i = 1; i <= n; ++i) d.names.push_back(std::to_string(i));
        d.check();
        return d;
    }

    std::size_t size() const { return names.size(); }

    std::optional<Elem> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<Elem>(i);
        return std::nullopt;
    }

    void check() const {
        if (names.empty()) throw ArgumentError("domain must be nonempty");
        std::set<std::string> seen(names.begin(), names.end());
        if (seen.size() != names.size())
            throw ArgumentError("domain elements must be distinct");
    }

    bool operator==(const Domain&) const = default;
};

struct Relation {
    int arity = 0;
    std::set<Tuple> tuples;

    bool contains(const Tuple& t) const { return tuples.count(t) != 0; }

    void insert(Tuple t) {
        if (static_cast<int>(t.size()) != arity)
            throw ArityError("tuple length does not match relation arity");
        tuples.insert(std::move(t));
    }

    void check(const Domain& d) const {
        if (arity < 0) throw ArityError("negative relation arity");
        for (const auto& t : tuples) {
            if (static_cast<int>(t.size()) != arity)
                throw ArityError("tuple length does not match relation arity");
            for (Elem e : t)
                if (e >= d.size()) throw ArgumentError("tuple entry outside the domain");
        }
    }

    bool operator==(const Relation& o) const { return arity == o.arity && tuples == o.tuples; }
    bool operator!=(const Relation& o) const { return !(*this == o); }
    bool operator<(const Relation& o) const {
        if (arity != o.arity) return arity < o.arity;
        return tuples < o.tuples;
    }
};

struct Assignment {
    std::map<std::string, Elem> ind;
    std::map<std::string, Relation> pred;
};

// A domain together with an explicitly listed family of k-ary relations per
// arity. An arity with no entry has the empty family: universal predicate
// quantifiers at that arity hold vacuously, existential ones fail.
struct HenkinModel {
    Domain domain;
    std::map<int, std::vector<Relation>> preds;

    const std::vector<Relation>& family(int arity) const {
        static const std::vector<Relation> empty;
        auto it = preds.find(arity);
        return it == preds.end() ? empty : it->second;
    }

    bool family_contains(int arity, const Relation& r) const {
        const auto& fam = family(arity);
        return std::find(fam.begin(), fam.end(), r) != fam.end();
    }

    // Sorts and dedupes every family; call after hand-building.
    void normalize() {
        for (auto& [arity, fam] : preds) {
            std::sort(fam.begin(), fam.end());
            fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
        }
    }

    void check() const {
        domain.check();
        for (const auto& [arity, fam] : preds)
            for (const auto& r : fam) {
                if (r.arity != arity)
                    throw ArityError("relation of arity " + std::to_string(r.arity) +
                                     " listed in the family for arity " + std::to_string(arity));
                r.check(domain);
            }
    }

    bool operator==(const HenkinModel& o) const {
        return domain == o.domain && preds == o.preds;
    }
};

// Interpretation of the quantifier symbol over a Henkin model: a set of
// relation tuples, one relation per slot of the type.
struct QuantifierInterpretation {
    QuantifierType qtype;
    std::set<std::vector<Relation>> members;

    bool operator==(const QuantifierInterpretation& o) const {
        return qtype == o.qtype && members == o.members;
    }
    bool operator<(const QuantifierInterpretation& o) const {
        if (!(qtype == o.qtype)) return qtype < o.qtype;
        return members < o.members;
    }
};

// ---------------------------------------------------------------------------
// enumeration helpers

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t guard) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && result > guard / base)
            throw SizeGuardError("enumeration of " + std::to_string(base) + "^" +
                                 std::to_string(exp) + " candidates exceeds the size guard (" +
                                 std::to_string(guard) + ")");
        result *= base;
        if (result > guard)
            throw SizeGuardError("enumeration of " + std::to_string(base) + "^" +
                                 std::to_string(exp) + " candidates exceeds the size guard (" +
                                 std::to_string(guard) + ")");
    }
    return result;
}

// All arity-length tuples over a domain of the given size, lexicographic.
// Arity 0 yields the single empty tuple.
inline std::vector<Tuple> all_tuples(std::size_t domain_size, int arity,
                                     std::uint64_t guard = kDefaultSizeGuard) {
    std::uint64_t count = checked_pow(domain_size, static_cast<std::uint64_t>(arity), guard);
    std::vector<Tuple> out;
    out.reserve(count);
    Tuple current(arity, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        out.push_back(current);
        for (int pos = arity - 1; pos >= 0; --pos) {
            if (++current[pos] < domain_size) break;
            current[pos] = 0;
        }
    }
    return out;
}

// All k-ary relations over the domain size, enumerated as subsets of the
// lexicographic tuple list (bit i of the subset mask selects tuple i).
inline std::vector<Relation> all_relations(std::size_t domain_size, int arity,
                                           std::uint64_t guard = kDefaultSizeGuard) {
    std::vector<Tuple> tuples = all_tuples(domain_size, arity, guard);
    std::uint64_t count = checked_pow(2, tuples.size(), guard);
    std::vector<Relation> out;
    out.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        Relation r{arity, {}};
        for (std::size_t i = 0; i < tuples.size(); ++i)
            if (mask & (1ull << i)) r.tuples.insert(tuples[i]);
        out.push_back(std::move(r));
    }
    return out;
}

// The maximal Henkin model over the domain: every requested arity carries the
// full powerset of tuple space.
inline HenkinModel full_powerset_model(const Domain& domain, const std::set<int>& arities,
                                       std::uint64_t guard = kDefaultSizeGuard) {
    domain.check();
    HenkinModel m{domain, {}};
    for (int arity : arities) {
        if (arity < 0) throw ArgumentError("negative arity requested");
        auto fam = all_relations(domain.size(), arity, guard);
        std::sort(fam.begin(), fam.end());
        m.preds[arity] = std::move(fam);
    }
    return m;
}

} // namespace gqw
