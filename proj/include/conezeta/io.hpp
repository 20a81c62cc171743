#ifndef CONEZETA_IO_HPP
#define CONEZETA_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "canonical.hpp"
#include "cone.hpp"
#include "cone_integral.hpp"
#include "lie_algebra.hpp"
#include "parse.hpp"
#include "rational_function_s.hpp"

namespace conezeta {

using Json = nlohmann::ordered_json;

/// Raised for inputs that are not valid JSON or do not match a schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(where + ": missing field '" + key + "'");
    }
    return j.at(key);
}

template <class T>
T get_as(const Json& j, const std::string& where)
{
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

inline IntVec int_vec(const Json& j, const std::string& where)
{
    return get_as<IntVec>(j, where);
}

inline PolyRecord poly_from_json(const Json& j, const std::vector<std::string>& vars, const std::string& where)
{
    PolyRecord p;
    if (j.is_string()) {
        p.monomial = false;
        p.text = j.get<std::string>();
        return p;
    }
    if (!j.is_object()) {
        throw SchemaError(where + ": expected an exponent object or a polynomial string");
    }
    p.exponents.assign(vars.size(), 0);
    for (const auto& [name, e] : j.items()) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) {
            throw SchemaError(where + ": unknown variable '" + name + "'");
        }
        const auto v = get_as<std::int64_t>(e, where);
        if (v < 0) {
            throw SchemaError(where + ": negative exponent for '" + name + "'");
        }
        p.exponents[static_cast<std::size_t>(it - vars.begin())] = v;
    }
    return p;
}

inline Json poly_to_json(const PolyRecord& p, const std::vector<std::string>& vars)
{
    if (!p.monomial) {
        return p.text;
    }
    Json j = Json::object();
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (p.exponents[i] != 0) {
            j[vars[i]] = p.exponents[i];
        }
    }
    return j;
}

inline Rational rational_from_json(const Json& j, const std::string& where)
{
    try {
        if (j.is_number_integer()) {
            return Rational(Integer(std::to_string(j.get<std::int64_t>())));
        }
        if (j.is_string()) {
            return parse_rational(j.get<std::string>());
        }
    } catch (const std::exception& e) {
        throw SchemaError(where + ": " + e.what());
    }
    throw SchemaError(where + ": expected an integer or a rational string");
}

} // namespace detail

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw SchemaError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

// ConeSpec: {"t": 3, "inequalities": [{"f": [0,0,1], "g": [1,1,0]}]}

inline ConeSpec cone_spec_from_json(const Json& j)
{
    ConeSpec c;
    c.t = detail::get_as<int>(detail::field(j, "t", "cone"), "cone.t");
    if (j.contains("inequalities")) {
        for (const auto& q : j.at("inequalities")) {
            c.inequalities.push_back({detail::int_vec(detail::field(q, "f", "inequality"), "inequality.f"),
                                      detail::int_vec(detail::field(q, "g", "inequality"), "inequality.g")});
        }
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("cone: ") + e.what());
    }
    return c;
}

inline Json to_json(const ConeSpec& c)
{
    Json j;
    j["t"] = c.t;
    j["inequalities"] = Json::array();
    for (const auto& q : c.inequalities) {
        j["inequalities"].push_back({{"f", q.f}, {"g", q.g}});
    }
    return j;
}

// ConeIntegralData: {"variables": [...], "f0": {var: exp}, "g0": {...},
// "conditions": [{"f": {...}, "g": {...}}]}; non-monomial polynomials as strings.

inline ConeIntegralData cone_data_from_json(const Json& j)
{
    ConeIntegralData d;
    d.variables = detail::get_as<std::vector<std::string>>(detail::field(j, "variables", "cone data"), "variables");
    d.f0 = detail::poly_from_json(detail::field(j, "f0", "cone data"), d.variables, "f0");
    d.g0 = detail::poly_from_json(detail::field(j, "g0", "cone data"), d.variables, "g0");
    if (j.contains("conditions")) {
        for (const auto& c : j.at("conditions")) {
            d.conditions.push_back({detail::poly_from_json(detail::field(c, "f", "condition"), d.variables, "condition.f"),
                                    detail::poly_from_json(detail::field(c, "g", "condition"), d.variables, "condition.g")});
        }
    }
    return d;
}

inline Json to_json(const ConeIntegralData& d)
{
    Json j;
    j["variables"] = d.variables;
    j["f0"] = detail::poly_to_json(d.f0, d.variables);
    j["g0"] = detail::poly_to_json(d.g0, d.variables);
    j["conditions"] = Json::array();
    for (const auto& c : d.conditions) {
        j["conditions"].push_back({{"f", detail::poly_to_json(c.f, d.variables)},
                                   {"g", detail::poly_to_json(c.g, d.variables)}});
    }
    return j;
}

// ResolutionData: {"ambient_dim": m, "divisors": [{"name", "nf", "ng", "nu"}],
// "strata": [{"I": [..], "class": "(L-1)^2", "euler": 0}], "notes": ""}

inline ResolutionData resolution_from_json(const Json& j)
{
    ResolutionData r;
    r.ambient_dim = detail::get_as<std::size_t>(detail::field(j, "ambient_dim", "resolution"), "ambient_dim");
    for (const auto& d : detail::field(j, "divisors", "resolution")) {
        Divisor div;
        div.name = detail::get_as<std::string>(detail::field(d, "name", "divisor"), "divisor.name");
        div.nf = detail::int_vec(detail::field(d, "nf", "divisor"), "divisor.nf");
        div.ng = detail::int_vec(detail::field(d, "ng", "divisor"), "divisor.ng");
        div.nu = d.contains("nu") ? detail::get_as<std::int64_t>(d.at("nu"), "divisor.nu") : 1;
        r.divisors.push_back(div);
    }
    for (const auto& s : detail::field(j, "strata", "resolution")) {
        auto I = detail::get_as<std::vector<int>>(detail::field(s, "I", "stratum"), "stratum.I");
        Stratum st;
        try {
            st.cls = parse_class(detail::get_as<std::string>(detail::field(s, "class", "stratum"), "stratum.class"));
        } catch (const ParseError& e) {
            throw SchemaError(e.what());
        }
        if (s.contains("euler")) {
            st.euler = detail::get_as<std::int64_t>(s.at("euler"), "stratum.euler");
        } else if (st.cls.symbol.empty()) {
            st.euler = to_int64(Integer(st.cls.coeff.at_one()));
        } else {
            throw SchemaError("stratum with class token needs an explicit euler number");
        }
        if (!r.strata.emplace(I, st).second) {
            throw SchemaError("duplicate stratum index set");
        }
    }
    if (j.contains("notes")) {
        r.notes = detail::get_as<std::string>(j.at("notes"), "notes");
    }
    try {
        r.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("resolution: ") + e.what());
    }
    return r;
}

inline Json to_json(const ResolutionData& r)
{
    Json j;
    j["ambient_dim"] = r.ambient_dim;
    j["divisors"] = Json::array();
    for (const auto& d : r.divisors) {
        j["divisors"].push_back({{"name", d.name}, {"nf", d.nf}, {"ng", d.ng}, {"nu", d.nu}});
    }
    j["strata"] = Json::array();
    for (const auto& [I, s] : r.strata) {
        j["strata"].push_back({{"I", I}, {"class", s.cls.to_string()}, {"euler", s.euler}});
    }
    j["notes"] = r.notes;
    return j;
}

// LieAlgebraZ: {"dim": d, "brackets": {"i,j": {"k": c}}}, 1-based, i < j.

inline LieAlgebraZ algebra_from_json(const Json& j)
{
    LieAlgebraZ a;
    a.d = detail::get_as<int>(detail::field(j, "dim", "algebra"), "dim");
    if (j.contains("brackets")) {
        for (const auto& [key, row] : j.at("brackets").items()) {
            const auto comma = key.find(',');
            int i = 0;
            int k = 0;
            try {
                if (comma == std::string::npos) {
                    throw std::invalid_argument(key);
                }
                i = std::stoi(key.substr(0, comma));
                k = std::stoi(key.substr(comma + 1));
            } catch (const std::exception&) {
                throw SchemaError("bracket key '" + key + "' is not of the form \"i,j\"");
            }
            for (const auto& [comp, c] : row.items()) {
                int l = 0;
                try {
                    l = std::stoi(comp);
                } catch (const std::exception&) {
                    throw SchemaError("bracket component '" + comp + "' is not an index");
                }
                const auto v = detail::get_as<std::int64_t>(c, "bracket coefficient");
                if (v != 0) {
                    a.brackets[{i, k}][l] = v;
                }
            }
        }
    }
    try {
        a.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("algebra: ") + e.what());
    }
    return a;
}

inline Json to_json(const LieAlgebraZ& a)
{
    Json j;
    j["dim"] = a.d;
    j["brackets"] = Json::object();
    for (const auto& [ij, row] : a.brackets) {
        Json r = Json::object();
        for (const auto& [k, c] : row) {
            r[std::to_string(k)] = c;
        }
        j["brackets"][std::to_string(ij.first) + "," + std::to_string(ij.second)] = r;
    }
    return j;
}

inline Json to_json(const Decomposition& d)
{
    Json j;
    j["t"] = d.t;
    j["edges"] = d.edges;
    j["extreme_count"] = d.extreme_count;
    j["pieces"] = Json::array();
    for (const auto& p : d.pieces) {
        j["pieces"].push_back({{"M", p.M}, {"I", p.I}});
    }
    return j;
}

// Product form: {"coeff": "(1 - L^-1)", "factors": [{"A": 1, "B": 3, "power": -1}]}
// meaning coeff * prod (1 - T^A L^-B)^power.

inline MotivicRational product_from_json(const Json& j)
{
    LaurentPoly c(1);
    if (j.contains("coeff")) {
        try {
            c = parse_laurent(detail::get_as<std::string>(j.at("coeff"), "coeff"));
        } catch (const ParseError& e) {
            throw SchemaError(e.what());
        }
    }
    std::vector<BinomialPower> fs;
    for (const auto& f : detail::field(j, "factors", "product")) {
        fs.push_back({detail::get_as<std::int64_t>(detail::field(f, "A", "factor"), "A"),
                      detail::get_as<std::int64_t>(detail::field(f, "B", "factor"), "B"),
                      detail::get_as<int>(detail::field(f, "power", "factor"), "power")});
    }
    return product_form(c, fs);
}

// Rational function of s: {"numerator": ["8", "3"], "denominator": [{"a": 1, "b": 3, "power": 1}]},
// numerator coefficients ascending in s.

inline RationalFunctionS rational_s_from_json(const Json& j)
{
    std::vector<Rational> coeffs;
    for (const auto& c : detail::field(j, "numerator", "rational function")) {
        coeffs.push_back(detail::rational_from_json(c, "numerator"));
    }
    RationalFunctionS r = RationalFunctionS::polynomial(UniPoly(coeffs));
    if (j.contains("denominator")) {
        for (const auto& f : j.at("denominator")) {
            const auto a = detail::get_as<std::int64_t>(detail::field(f, "a", "factor"), "a");
            const auto b = detail::get_as<std::int64_t>(detail::field(f, "b", "factor"), "b");
            const int k = f.contains("power") ? detail::get_as<int>(f.at("power"), "power") : 1;
            for (int i = 0; i < k; ++i) {
                r = r * RationalFunctionS::inverse_linear(a, b);
            }
        }
    }
    return r;
}

} // namespace conezeta

#endif // CONEZETA_IO_HPP
