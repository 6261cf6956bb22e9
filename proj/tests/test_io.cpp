#include <catch2/catch_amalgamated.hpp>

#include "gqw/io.hpp"
#include "gqw/model.hpp"

#include "generators.hpp"

using namespace gqw;

TEST_CASE("model files: bare elements, tuples and string domains") {
    auto m = model_from_json(nlohmann::json::parse(
        R"({ "domain": [1, 2], "preds": { "1": [[], [1]], "2": [[[1,1],[1,2]]] } })"));
    REQUIRE(m.domain.names == std::vector<std::string>{"1", "2"});
    REQUIRE(m.family(1).size() == 2);
    REQUIRE(m.family(2).size() == 1);
    REQUIRE(m.family(2)[0].tuples == std::set<Tuple>{{0, 0}, {0, 1}});

    auto named = model_from_json(
        nlohmann::json::parse(R"({ "domain": ["a", "b"], "preds": { "1": [["b"]] } })"));
    REQUIRE(named.family(1)[0].tuples == std::set<Tuple>{{1}});

    auto nullary = model_from_json(
        nlohmann::json::parse(R"({ "domain": [1], "preds": { "0": [[], [[]]] } })"));
    REQUIRE(nullary.family(0).size() == 2);
    REQUIRE(nullary.family(0)[1].tuples == std::set<Tuple>{Tuple{}});
}

TEST_CASE("model files: malformed inputs") {
    auto parse_model = [](const char* text) {
        return model_from_json(nlohmann::json::parse(text));
    };
    REQUIRE_THROWS_AS(parse_model(R"({ "preds": {} })"), FileFormatError);
    REQUIRE_THROWS_AS(parse_model(R"({ "domain": [] })"), ArgumentError);
    REQUIRE_THROWS_AS(parse_model(R"({ "domain": [1,1] })"), ArgumentError);
    REQUIRE_THROWS_AS(parse_model(R"({ "domain": [1], "preds": { "x": [] } })"), FileFormatError);
    REQUIRE_THROWS_AS(parse_model(R"({ "domain": [1], "preds": { "1": [[3]] } })"),
                      FileFormatError);
    REQUIRE_THROWS_AS(parse_model(R"({ "domain": [1], "preds": { "2": [[[1]]] } })"),
                      FileFormatError);
    REQUIRE_THROWS_AS(parse_model(R"({ "domain": [1], "preds": { "2": [[1]] } })"),
                      FileFormatError);
}

TEST_CASE("model files: duplicate relations collapse") {
    auto m = model_from_json(
        nlohmann::json::parse(R"({ "domain": [1], "preds": { "1": [[1], [1], []] } })"));
    REQUIRE(m.family(1).size() == 2);
}

TEST_CASE("interpretation files: membership stays within the families") {
    auto m = model_from_json(
        nlohmann::json::parse(R"({ "domain": [1, 2], "preds": { "1": [[], [1]] } })"));
    auto x = interpretation_from_json(
        nlohmann::json::parse(R"({ "type": [1], "members": [[[1]]] })"), m);
    REQUIRE(x.qtype == QuantifierType{{1}});
    REQUIRE(x.members.size() == 1);

    REQUIRE_THROWS_AS(interpretation_from_json(
                          nlohmann::json::parse(R"({ "type": [1], "members": [[[2]]] })"), m),
                      FileFormatError);
    REQUIRE_THROWS_AS(interpretation_from_json(
                          nlohmann::json::parse(R"({ "type": [0], "members": [] })"), m),
                      ArgumentError);
    REQUIRE_THROWS_AS(interpretation_from_json(
                          nlohmann::json::parse(R"({ "type": [1], "members": [[[1],[1]]] })"), m),
                      FileFormatError);
}

TEST_CASE("property: model JSON round-trips and serializes stably") {
    gen::Rng rng(501);
    for (int i = 0; i < 100; ++i) {
        std::size_t n = 1 + gen::pick(rng, 3);
        HenkinModel m{Domain::canonical(n), {}};
        for (int arity : {0, 1, 2}) {
            if (gen::pick(rng, 2)) continue;
            std::vector<Relation> fam;
            for (const Relation& r : all_relations(n, arity))
                if (rng() & 1u) fam.push_back(r);
            m.preds[arity] = fam;
        }
        m.normalize();
        Json j = model_to_json(m);
        HenkinModel back = model_from_json(j);
        REQUIRE(back == m);
        REQUIRE(model_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("property: interpretation JSON round-trips") {
    gen::Rng rng(502);
    for (int i = 0; i < 50; ++i) {
        std::size_t n = 1 + gen::pick(rng, 2);
        HenkinModel full = full_powerset_model(Domain::canonical(n), {1});
        QuantifierInterpretation x{QuantifierType{{1}}, {}};
        for (const Relation& r : full.family(1))
            if (rng() & 1u) x.members.insert({r});
        Json j = interpretation_to_json(x, full.domain);
        REQUIRE(interpretation_from_json(j, full) == x);
    }
}

TEST_CASE("text rendering of relations and models") {
    Domain d = Domain::canonical(2);
    Relation r{2, {{0, 0}, {0, 1}}};
    REQUIRE(relation_to_text(r, d) == "{(1,1),(1,2)}");
    Relation u{1, {{1}}};
    REQUIRE(relation_to_text(u, d) == "{2}");
    REQUIRE(relation_to_text(Relation{1, {}}, d) == "{}");
    HenkinModel m{d, {{1, {Relation{1, {}}, u}}}};
    REQUIRE(model_to_text(m) == "domain={1,2} Pred_1={{},{2}}");
}

TEST_CASE("string element names that look octal stay strings") {
    Domain d{{"007", "x"}};
    Json j = domain_to_json(d);
    REQUIRE(j[0].is_string());
    HenkinModel m{d, {}};
    REQUIRE(model_from_json(model_to_json(m)) == m);
}
