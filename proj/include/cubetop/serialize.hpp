#pragma once

#include <string>

#include "json.hpp"

#include "cubetop/fpgroup.hpp"

namespace cubetop {

inline nlohmann::json to_json(const AbelianGroup& g) {
    return {{"rank", g.rank}, {"torsion", g.torsion}};
}

inline AbelianGroup abelian_from_json(const nlohmann::json& j) {
    AbelianGroup g;
    g.rank = j.at("rank").get<long long>();
    g.torsion = j.at("torsion").get<std::vector<long long>>();
    return g;
}

inline nlohmann::json to_json(const InvariantValue& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const AbelianGroup& g : v) arr.push_back(to_json(g));
    return arr;
}

inline InvariantValue invariant_from_json(const nlohmann::json& j) {
    InvariantValue v;
    for (const auto& item : j) v.insert(abelian_from_json(item));
    return v;
}

inline nlohmann::json to_json(const GroupPresentation& p) {
    nlohmann::json gens = nlohmann::json::array();
    for (int i = 0; i < p.generators; ++i) gens.push_back(generator_name(i));
    nlohmann::json rels = nlohmann::json::array();
    for (const Word& r : p.relators) {
        nlohmann::json w = nlohmann::json::array();
        for (Letter l : r.letters) w.push_back(letter_sign(l) * (letter_id(l) + 1));
        rels.push_back(w);
    }
    return {{"generators", gens}, {"relators", rels}};
}

}  // namespace cubetop
