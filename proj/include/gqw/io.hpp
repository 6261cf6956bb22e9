#pragma once

// File formats.
//
// Henkin model (JSON):
//   { "domain": [1, 2], "preds": { "1": [[], [1]], "2": [[[1,1],[1,2]]] } }
// "preds" maps an arity to the list of relations in its family; a relation
// is a list of tuples, and an arity-1 tuple may be written as the bare
// element. Domain elements are numbers or strings.
//
// Quantifier interpretation (JSON):
//   { "type": [1], "members": [[[1]], [[1,2]]] }
// Each member is one relation tuple (one relation per slot of the type).
//
// Emission is canonical: sorted families, sorted tuples, arity-1 tuples as
// bare elements, numeric-looking element names as numbers. Identical inputs
// therefore serialize byte for byte.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gqw/errors.hpp"
#include "gqw/model.hpp"
#include "gqw/quantifier.hpp"

namespace gqw {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string element_name(const nlohmann::json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw FileFormatError(std::string(what) + ": domain elements must be integers or strings");
}

inline Json element_json(const std::string& name) {
    if (!name.empty() && name.find_first_not_of("0123456789") == std::string::npos &&
        (name.size() == 1 || name[0] != '0'))
        return Json(std::stoll(name));
    return Json(name);
}

inline Elem element_index(const Domain& d, const nlohmann::json& j, const char* what) {
    std::string name = element_name(j, what);
    auto idx = d.index_of(name);
    if (!idx) throw FileFormatError(std::string(what) + ": element '" + name + "' is not in the domain");
    return *idx;
}

} // namespace detail

inline Json domain_to_json(const Domain& d) {
    Json out = Json::array();
    for (const auto& name : d.names) out.push_back(detail::element_json(name));
    return out;
}

inline Json relation_to_json(const Relation& r, const Domain& d) {
    Json out = Json::array();
    for (const auto& t : r.tuples) {
        if (r.arity == 1) {
            out.push_back(detail::element_json(d.names[t[0]]));
        } else {
            Json jt = Json::array();
            for (Elem e : t) jt.push_back(detail::element_json(d.names[e]));
            out.push_back(std::move(jt));
        }
    }
    return out;
}

inline Relation relation_from_json(const nlohmann::json& j, const Domain& d, int arity) {
    if (!j.is_array()) throw FileFormatError("a relation must be a JSON array of tuples");
    Relation r{arity, {}};
    for (const auto& jt : j) {
        Tuple t;
        if (jt.is_array()) {
            for (const auto& je : jt) t.push_back(detail::element_index(d, je, "relation"));
        } else if (arity == 1) {
            t.push_back(detail::element_index(d, jt, "relation"));
        } else {
            throw FileFormatError("bare elements are only allowed in arity-1 relations");
        }
        if (static_cast<int>(t.size()) != arity)
            throw FileFormatError("tuple of length " + std::to_string(t.size()) +
                                  " in a relation of arity " + std::to_string(arity));
        r.tuples.insert(std::move(t));
    }
    return r;
}

inline Json model_to_json(const HenkinModel& m) {
    Json out;
    out["domain"] = domain_to_json(m.domain);
    Json preds = Json::object();
    for (const auto& [arity, fam] : m.preds) {
        Json jf = Json::array();
        for (const auto& r : fam) jf.push_back(relation_to_json(r, m.domain));
        preds[std::to_string(arity)] = std::move(jf);
    }
    out["preds"] = std::move(preds);
    return out;
}

inline HenkinModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("domain"))
        throw FileFormatError("a model file must be a JSON object with a \"domain\" key");
    HenkinModel m;
    if (!j["domain"].is_array())
        throw FileFormatError("\"domain\" must be an array");
    for (const auto& je : j["domain"])
        m.domain.names.push_back(detail::element_name(je, "domain"));
    m.domain.check();
    if (j.contains("preds")) {
        if (!j["preds"].is_object()) throw FileFormatError("\"preds\" must be an object");
        for (const auto& [key, jf] : j["preds"].items()) {
            if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
                throw FileFormatError("\"preds\" keys must be nonnegative arities, found \"" +
                                      key + "\"");
            int arity = std::stoi(key);
            if (!jf.is_array()) throw FileFormatError("a relation family must be an array");
            std::vector<Relation> fam;
            for (const auto& jr : jf) fam.push_back(relation_from_json(jr, m.domain, arity));
            m.preds[arity] = std::move(fam);
        }
    }
    m.normalize();
    m.check();
    return m;
}

inline Json interpretation_to_json(const QuantifierInterpretation& x, const Domain& d) {
    Json out;
    Json type = Json::array();
    for (int a : x.qtype.arities) type.push_back(a);
    out["type"] = std::move(type);
    Json members = Json::array();
    for (const auto& tuple : x.members) {
        Json jt = Json::array();
        for (const auto& r : tuple) jt.push_back(relation_to_json(r, d));
        members.push_back(std::move(jt));
    }
    out["members"] = std::move(members);
    return out;
}

// Reads an interpretation and checks that every member stays within the
// model's relation families.
inline QuantifierInterpretation interpretation_from_json(const nlohmann::json& j,
                                                         const HenkinModel& model) {
    if (!j.is_object() || !j.contains("type") || !j.contains("members"))
        throw FileFormatError(
            "an interpretation file must be a JSON object with \"type\" and \"members\"");
    QuantifierInterpretation x;
    if (!j["type"].is_array()) throw FileFormatError("\"type\" must be an array of arities");
    for (const auto& ja : j["type"]) {
        if (!ja.is_number_integer()) throw FileFormatError("\"type\" entries must be integers");
        x.qtype.arities.push_back(ja.get<int>());
    }
    x.qtype.check();
    if (!j["members"].is_array()) throw FileFormatError("\"members\" must be an array");
    for (const auto& jt : j["members"]) {
        if (!jt.is_array() || jt.size() != x.qtype.slot_count())
            throw FileFormatError("each member must list one relation per slot of the type");
        std::vector<Relation> tuple;
        for (std::size_t i = 0; i < x.qtype.slot_count(); ++i) {
            Relation r = relation_from_json(jt[i], model.domain, x.qtype.arities[i]);
            if (!model.family_contains(x.qtype.arities[i], r))
                throw FileFormatError("a member relation is not in the model's arity-" +
                                      std::to_string(x.qtype.arities[i]) + " family");
            tuple.push_back(std::move(r));
        }
        x.members.insert(std::move(tuple));
    }
    return x;
}

// ---------------------------------------------------------------------------
// plain-text rendering (CLI output)

inline std::string tuple_to_text(const Tuple& t, const Domain& d) {
    if (t.size() == 1) return d.names[t[0]];
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += d.names[t[i]];
    }
    return out + ")";
}

inline std::string relation_to_text(const Relation& r, const Domain& d) {
    std::string out = "{";
    bool first = true;
    for (const auto& t : r.tuples) {
        if (!first) out += ",";
        first = false;
        out += tuple_to_text(t, d);
    }
    return out + "}";
}

inline std::string model_to_text(const HenkinModel& m) {
    std::string out = "domain={";
    for (std::size_t i = 0; i < m.domain.names.size(); ++i) {
        if (i) out += ",";
        out += m.domain.names[i];
    }
    out += "}";
    for (const auto& [arity, fam] : m.preds) {
        out += " Pred_" + std::to_string(arity) + "={";
        for (std::size_t i = 0; i < fam.size(); ++i) {
            if (i) out += ",";
            out += relation_to_text(fam[i], m.domain);
        }
        out += "}";
    }
    return out;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileFormatError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FileFormatError(path + ": " + e.what());
    }
    return j;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileFormatError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace gqw
