#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "gqw/model.hpp"
#include "gqw/quantifier.hpp"

#include "catalog_oracle.hpp"

using namespace gqw;

namespace {

Relation rel1(std::initializer_list<Elem> elems) {
    Relation r{1, {}};
    for (Elem e : elems) r.tuples.insert({e});
    return r;
}

std::uint32_t to_mask(const Relation& r) {
    std::uint32_t mask = 0;
    for (const auto& t : r.tuples) mask |= 1u << t[0];
    return mask;
}

std::set<std::uint32_t> unary_table_masks(const std::set<std::vector<Relation>>& table) {
    std::set<std::uint32_t> out;
    for (const auto& tuple : table) out.insert(to_mask(tuple[0]));
    return out;
}

std::set<std::pair<std::uint32_t, std::uint32_t>> binary_table_masks(
    const std::set<std::vector<Relation>>& table) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const auto& tuple : table) out.insert({to_mask(tuple[0]), to_mask(tuple[1])});
    return out;
}

// Applies a permutation of element indices to every tuple entry.
Relation permuted(const Relation& r, const std::vector<Elem>& perm) {
    Relation out{r.arity, {}};
    for (const auto& t : r.tuples) {
        Tuple pt;
        for (Elem e : t) pt.push_back(perm[e]);
        out.tuples.insert(std::move(pt));
    }
    return out;
}

} // namespace

TEST_CASE("builtin: forall holds exactly on the full set") {
    auto q = builtin("forall");
    Domain m = Domain::canonical(2);
    for (const Relation& a : all_relations(2, 1))
        REQUIRE(q.oracle(m, {a}) == (a.tuples.size() == 2));
}

TEST_CASE("builtin: the countability quantifier is empty on finite domains") {
    auto q = builtin("aleph0");
    for (std::size_t n = 1; n <= 3; ++n) {
        Domain m = Domain::canonical(n);
        for (const Relation& a : all_relations(n, 1)) REQUIRE_FALSE(q.oracle(m, {a}));
    }
}

TEST_CASE("builtin: cardinality thresholds") {
    Domain m = Domain::canonical(3);
    REQUIRE(builtin("atleast", 2).oracle(m, {rel1({0, 2})}));
    REQUIRE_FALSE(builtin("atleast", 2).oracle(m, {rel1({0})}));
    REQUIRE(builtin("exactly", 2).oracle(m, {rel1({0, 2})}));
    REQUIRE_FALSE(builtin("exactly", 2).oracle(m, {rel1({0, 1, 2})}));
    REQUIRE(builtin("divides", 3).oracle(m, {rel1({0, 1, 2})}));
    REQUIRE(builtin("divides", 3).oracle(m, {Relation{1, {}}}));
    REQUIRE_FALSE(builtin("divides", 3).oracle(m, {rel1({0})}));
}

TEST_CASE("builtin: parameter handling") {
    REQUIRE_THROWS_AS(builtin("atleast"), ArgumentError);
    REQUIRE_THROWS_AS(builtin("divides", 0), ArgumentError);
    REQUIRE_THROWS_AS(builtin("forall", 2), ArgumentError);
    REQUIRE_THROWS_AS(builtin("zorp"), ArgumentError);
    REQUIRE(builtin_from_spec("atleast:2").name == "atleast:2");
    REQUIRE_THROWS_AS(builtin_from_spec("atleast:x"), ArgumentError);
}

TEST_CASE("realize: tables on tiny domains") {
    {
        auto table = realize(builtin("exists"), Domain::canonical(1));
        REQUIRE(unary_table_masks(table) == std::set<std::uint32_t>{1});
    }
    {
        auto table = realize(builtin("forall"), Domain::canonical(2));
        REQUIRE(unary_table_masks(table) == std::set<std::uint32_t>{3});
    }
    {
        // frozen expected value, checked against the independent oracle below
        auto table = realize(builtin("hartig"), Domain::canonical(1));
        std::set<std::pair<std::uint32_t, std::uint32_t>> expected = {{0, 0}, {1, 1}};
        REQUIRE(binary_table_masks(table) == expected);
        REQUIRE(binary_table_masks(table) == catalog_oracle::hartig_table(1));
    }
}

TEST_CASE("realize: matches the independent set-theoretic oracle up to size 3") {
    for (std::size_t n = 1; n <= 3; ++n) {
        Domain m = Domain::canonical(n);
        REQUIRE(unary_table_masks(realize(builtin("forall"), m)) ==
                catalog_oracle::forall_table(n));
        REQUIRE(unary_table_masks(realize(builtin("exists"), m)) ==
                catalog_oracle::exists_table(n));
        REQUIRE(unary_table_masks(realize(builtin("atleast", 2), m)) ==
                catalog_oracle::atleast_table(n, 2));
        REQUIRE(binary_table_masks(realize(builtin("hartig"), m)) ==
                catalog_oracle::hartig_table(n));
        REQUIRE(binary_table_masks(realize(builtin("most"), m)) ==
                catalog_oracle::most_table(n));
    }
}

TEST_CASE("realize: size guard") {
    // the slot product over a three-element domain has 8 * 8 = 64 candidates
    REQUIRE_THROWS_AS(realize(builtin("hartig"), Domain::canonical(3), 50), SizeGuardError);
    REQUIRE(realize(builtin("hartig"), Domain::canonical(3), 64).size() > 0);
}

TEST_CASE("restrict_to: cuts the table down to the model's families") {
    auto exists_q = builtin("exists");
    {
        HenkinModel m{Domain::canonical(2), {{1, {Relation{1, {}}}}}};
        REQUIRE(restrict_to(exists_q, m).members.empty());
    }
    {
        HenkinModel m{Domain::canonical(2), {{1, {Relation{1, {}}, rel1({0})}}}};
        auto interp = restrict_to(exists_q, m);
        REQUIRE(interp.members == std::set<std::vector<Relation>>{{rel1({0})}});
    }
    {
        HenkinModel m{Domain::canonical(2), {}};
        REQUIRE(restrict_to(exists_q, m).members.empty());
        REQUIRE(restrict_to(builtin("hartig"), m).members.empty());
    }
}

TEST_CASE("property: restriction to the full powerset model is the whole table") {
    for (std::size_t n = 1; n <= 3; ++n) {
        Domain d = Domain::canonical(n);
        HenkinModel full = full_powerset_model(d, {1});
        for (const char* name : {"forall", "exists", "aleph0"}) {
            auto q = builtin(name);
            REQUIRE(restrict_to(q, full).members == realize(q, d));
        }
        auto hartig = builtin("hartig");
        REQUIRE(restrict_to(hartig, full).members == realize(hartig, d));
    }
}

TEST_CASE("pad: accepted relations are exactly the cylinders of accepted sets") {
    auto padded = pad(builtin("exists"), 1);
    REQUIRE(padded.qtype == QuantifierType{{2}});
    Domain m = Domain::canonical(2);
    auto table = realize(padded, m);
    std::set<std::vector<Relation>> expected;
    for (const Relation& a : all_relations(2, 1)) {
        if (a.tuples.empty()) continue;
        Relation cylinder{2, {}};
        for (const auto& t : a.tuples)
            for (Elem e = 0; e < 2; ++e) cylinder.tuples.insert({t[0], e});
        expected.insert({cylinder});
    }
    REQUIRE(table == expected);
    REQUIRE(table.size() == 3);
}

TEST_CASE("pad: an empty base quantifier pads to an empty one") {
    auto padded = pad(builtin("aleph0"), 1);
    REQUIRE(realize(padded, Domain::canonical(2)).empty());
}

TEST_CASE("pad: universal quantifier on a singleton domain") {
    auto padded = pad(builtin("forall"), 1);
    auto table = realize(padded, Domain::canonical(1));
    Relation full{2, {{0, 0}}};
    REQUIRE(table == std::set<std::vector<Relation>>{{full}});
}

TEST_CASE("pad: non-product relations are rejected outright") {
    auto padded = pad(builtin("exists"), 1);
    Domain m = Domain::canonical(2);
    Relation diagonal{2, {{0, 0}, {1, 1}}};
    REQUIRE_FALSE(padded.oracle(m, {diagonal}));
    Relation partial{2, {{0, 0}}};
    REQUIRE_FALSE(padded.oracle(m, {partial}));
}

TEST_CASE("pad: slot bounds") {
    REQUIRE_THROWS_AS(pad(builtin("exists"), 0), ArgumentError);
    REQUIRE_THROWS_AS(pad(builtin("exists"), 2), ArgumentError);
    REQUIRE(pad(builtin("hartig"), 2).qtype == QuantifierType{{1, 2}});
}

TEST_CASE("property: padding soundness on domains up to size 3") {
    for (const char* name : {"forall", "exists", "atleast"}) {
        auto base = name == std::string("atleast") ? builtin("atleast", 2) : builtin(name);
        auto padded = pad(base, 1);
        for (std::size_t n = 1; n <= 3; ++n) {
            Domain d = Domain::canonical(n);
            auto base_table = realize(base, d);
            auto padded_table = realize(padded, d);
            // every member of the padded table is a cylinder of a base member
            std::set<std::vector<Relation>> expected;
            for (const auto& tuple : base_table) {
                Relation cylinder{2, {}};
                for (const auto& t : tuple[0].tuples)
                    for (Elem e = 0; e < n; ++e) cylinder.tuples.insert({t[0], e});
                expected.insert({cylinder});
            }
            REQUIRE(padded_table == expected);
        }
    }
}

TEST_CASE("property: builtins are invariant under domain bijections up to size 3") {
    std::vector<GeneralizedQuantifier> quantifiers = {
        builtin("forall"), builtin("exists"),   builtin("atleast", 2), builtin("exactly", 2),
        builtin("most"),   builtin("hartig"),   builtin("divides", 2), builtin("divides", 3),
        builtin("aleph0"),
    };
    std::vector<std::string> other_names = {"a", "b", "c"};
    for (std::size_t n = 1; n <= 3; ++n) {
        Domain d1 = Domain::canonical(n);
        Domain d2{std::vector<std::string>(other_names.begin(), other_names.begin() + n)};
        std::vector<Elem> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Elem>(i);
        do {
            for (const auto& q : quantifiers) {
                std::vector<std::vector<Relation>> slot_relations;
                for (int arity : q.qtype.arities) slot_relations.push_back(all_relations(n, arity));
                std::vector<std::size_t> idx(slot_relations.size(), 0);
                for (;;) {
                    std::vector<Relation> tuple, mapped;
                    for (std::size_t s = 0; s < idx.size(); ++s) {
                        tuple.push_back(slot_relations[s][idx[s]]);
                        mapped.push_back(permuted(tuple.back(), perm));
                    }
                    REQUIRE(q.oracle(d1, tuple) == q.oracle(d2, mapped));
                    std::size_t s = idx.size();
                    for (; s-- > 0;) {
                        if (++idx[s] < slot_relations[s].size()) break;
                        idx[s] = 0;
                    }
                    if (s == static_cast<std::size_t>(-1)) break;
                }
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("catalog: contents and provenance") {
    auto entries = catalog();
    auto find = [&](const std::string& name) {
        for (const auto& e : entries)
            if (e.name == name) return e;
        FAIL("missing catalog entry " + name);
        return entries.front();
    };
    REQUIRE(find("forall").provenance == "builtin");
    REQUIRE(find("exists").provenance == "builtin");
    REQUIRE(find("hartig").provenance == "builtin");
    REQUIRE(find("hartig").type == "<1,1>");
    REQUIRE(find("most").provenance == "extension");
    REQUIRE(find("divides:2").provenance == "extension");
    REQUIRE(find("aleph0").definition.find("finite") != std::string::npos);
    REQUIRE(find("aleph_alpha (alpha >= 1)").provenance == "stub");
}
