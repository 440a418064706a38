#pragma once

// Internal JSON helpers shared by the file-format sources.

#include "ksproof/errors.hpp"
#include "ksproof/rational.hpp"
#include "ksproof/ray.hpp"

#include <json.hpp>

#include <cmath>

namespace ksproof::detail {

using nlohmann::json;

inline json encode(const Ray & r)
{
    json comps = json::array();
    for (const auto & c : r.components())
        comps.push_back({c.real(), c.imag()});
    return {{"label", r.label()}, {"components", comps}};
}

inline double finite_number(const json & j, const char * what)
{
    if (!j.is_number())
        throw InputError(std::string(what) + " must be a number");
    const auto x = j.get<double>();
    if (!std::isfinite(x))
        throw InputError(std::string(what) + " is not finite");
    return x;
}

inline Ray decode_ray(const json & j, std::size_t dimension)
{
    if (!j.is_object() || !j.contains("components") || !j.at("components").is_array())
        throw InputError("each ray needs a components array");
    const auto & comps = j.at("components");
    if (comps.size() != dimension)
        throw InputError("ray has " + std::to_string(comps.size()) + " components, expected " +
                         std::to_string(dimension));
    CVector v;
    v.reserve(dimension);
    for (const auto & c : comps) {
        if (!c.is_array() || c.size() != 2)
            throw InputError("components are [re, im] pairs");
        v.emplace_back(finite_number(c[0], "component"), finite_number(c[1], "component"));
    }
    std::string label;
    if (j.contains("label")) {
        if (!j.at("label").is_string())
            throw InputError("ray label must be a string");
        label = j.at("label").get<std::string>();
    }
    return Ray(std::move(v), std::move(label));
}

inline json encode(const Rational & r)
{
    if (r.is_integer())
        return r.num();
    return r.str();
}

inline Rational decode_rational(const json & j)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        }
        catch (const std::logic_error & e) {
            throw InputError(std::string("bad weight: ") + e.what());
        }
    }
    throw InputError("weights are integers or \"p/q\" strings");
}

template <class T>
T field(const json & j, const char * name)
{
    if (!j.is_object() || !j.contains(name))
        throw InputError(std::string("missing field \"") + name + "\"");
    try {
        return j.at(name).get<T>();
    }
    catch (const json::exception & e) {
        throw InputError(std::string("field \"") + name + "\": " + e.what());
    }
}

inline json parse_json(const std::string & text)
{
    try {
        return json::parse(text);
    }
    catch (const json::exception & e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace ksproof::detail
