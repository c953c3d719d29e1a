#pragma once

#include <json.hpp>

#include "cosetforge/characters.hpp"
#include "cosetforge/fourier.hpp"
#include "cosetforge/rational.hpp"

namespace cosetforge {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) {
    return Json{{"num", r.num}, {"den", r.den}, {"value", r.value()}};
}

inline Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

/// {p, m, modulusPoly, generator}; the generator is the canonical element
/// index, which together with the deterministic construction pins the
/// instance exactly.
inline Json to_json(const FiniteField& f) {
    return Json{{"p", f.p()},
                {"m", f.m()},
                {"modulusPoly", f.modulus_poly()},
                {"generator", f.generator_index()}};
}

/// {n, factors, unitGenerators}.
inline Json to_json(const ResidueRing& ring) {
    Json factors = Json::array();
    Json gens = Json::array();
    for (const auto& f : ring.factors()) {
        factors.push_back(Json::array({f.prime, f.exponent}));
        gens.push_back(f.unit_generator);
    }
    return Json{{"n", ring.n()}, {"factors", factors}, {"unitGenerators", gens}};
}

inline Json to_json(const Domain& d) {
    if (d.is_field()) {
        Json j = to_json(d.field());
        j["type"] = "field";
        return j;
    }
    Json j = to_json(d.ring());
    j["type"] = "ring";
    return j;
}

inline Domain domain_from_json(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "field")
        return Domain::make_field(j.at("p").get<std::uint64_t>(), j.at("m").get<std::uint32_t>());
    if (type == "ring") return Domain::make_ring(j.at("n").get<std::uint64_t>());
    fail(Errc::config, "unknown domain type: " + type);
}

inline Json to_json(const AddCharacter& psi) {
    return Json{{"domain", to_json(psi.domain)}, {"kind", "add"}, {"index", psi.index}};
}

inline Json to_json(const MultCharacter& chi) {
    Json j{{"domain", to_json(chi.domain)}, {"kind", "mult"}};
    if (chi.domain.is_field())
        j["index"] = chi.indices[0];
    else
        j["index"] = chi.indices;
    if (chi.period) j["period"] = *chi.period;
    return j;
}

inline MultCharacter mult_character_from_json(const Json& j) {
    const Domain d = domain_from_json(j.at("domain"));
    if (d.is_field()) return mult_character_field(d, j.at("index").get<std::uint64_t>());
    return mult_character_ring(d, j.at("index").get<std::vector<std::uint64_t>>());
}

/// Domain descriptor plus a dense array of [re, im] pairs.
inline Json to_json(const GroupFunction& g) {
    Json values = Json::array();
    for (const auto& v : g.values) values.push_back(to_json(v));
    return Json{{"domain", to_json(g.domain)}, {"values", values}};
}

inline Json to_json(const SpectrumFunction& s) {
    Json values = Json::array();
    for (const auto& v : s.values) values.push_back(to_json(v));
    return Json{{"domain", to_json(s.domain)}, {"values", values}};
}

} // namespace cosetforge
