#pragma once

#include <json.hpp>

#include "eaf/fast.hpp"

namespace eaf {

// JSON field names are part of the CLI contract; keep them stable.

inline void to_json(nlohmann::json& j, const FastEaf& c) {
    j = nlohmann::json{{"alpha_p", c.alpha_p}, {"beta_p", c.beta_p},   {"k", c.k},
                       {"n_bound", c.n_bound}, {"epsilon", c.epsilon},
                       {"rounding", c.rounding == Rounding::Up ? "up" : "down"}};
}

inline void from_json(const nlohmann::json& j, FastEaf& c) {
    j.at("alpha_p").get_to(c.alpha_p);
    j.at("beta_p").get_to(c.beta_p);
    j.at("k").get_to(c.k);
    j.at("n_bound").get_to(c.n_bound);
    j.at("epsilon").get_to(c.epsilon);
    c.rounding = j.at("rounding").get<std::string>() == "up" ? Rounding::Up : Rounding::Down;
}

inline void to_json(nlohmann::json& j, const DivConstants& c) {
    j = nlohmann::json{{"delta", c.delta},
                       {"k", c.k},
                       {"alpha_p", c.alpha_p},
                       {"epsilon", c.epsilon},
                       {"n_bound", c.n_bound}};
}

inline void from_json(const nlohmann::json& j, DivConstants& c) {
    j.at("delta").get_to(c.delta);
    j.at("k").get_to(c.k);
    j.at("alpha_p").get_to(c.alpha_p);
    j.at("epsilon").get_to(c.epsilon);
    j.at("n_bound").get_to(c.n_bound);
}

inline void to_json(nlohmann::json& j, const RemConstants& c) {
    j = nlohmann::json{
        {"delta", c.delta}, {"k", c.k}, {"alpha_p", c.alpha_p}, {"m_bound", c.m_bound}};
}

inline void from_json(const nlohmann::json& j, RemConstants& c) {
    j.at("delta").get_to(c.delta);
    j.at("k").get_to(c.k);
    j.at("alpha_p").get_to(c.alpha_p);
    j.at("m_bound").get_to(c.m_bound);
}

}  // namespace eaf
