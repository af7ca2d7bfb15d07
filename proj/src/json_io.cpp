#include <lcr/error.hpp>
#include <lcr/json_io.hpp>

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace lcr {

namespace {
    auto variables_to_json(const std::vector<Variable> & vars) -> Json
    {
        Json out = Json::array();
        for (const auto & v : vars) {
            Json jv;
            jv["name"] = v.name;
            jv["domain"] = Json::array();
            for (const auto & label : v.domain)
                jv["domain"].push_back(label);
            out.push_back(std::move(jv));
        }
        return out;
    }

    auto variables_from_json(const Json & j) -> std::vector<Variable>
    {
        if (! j.contains("variables") || ! j["variables"].is_array())
            throw Error(ErrorKind::InvalidInput, "instance needs a \"variables\" array");
        std::vector<Variable> vars;
        for (const auto & jv : j["variables"]) {
            if (! jv.is_object() || ! jv.contains("domain") || ! jv["domain"].is_array())
                throw Error(ErrorKind::InvalidInput, "every variable needs a \"domain\" array");
            Variable v;
            v.name = jv.contains("name") ? jv["name"].get<std::string>() : "v" + std::to_string(vars.size());
            for (const auto & label : jv["domain"])
                v.domain.push_back(label);
            vars.push_back(std::move(v));
        }
        return vars;
    }

    auto index_of(const Variable & v, const Json & atom) -> std::uint32_t
    {
        for (std::uint32_t i = 0; i < v.domain.size(); ++i)
            if (v.domain[i] == atom)
                return i;
        throw Error(ErrorKind::InvalidInput, "atom " + atom.dump() + " is not in the domain of " + v.name);
    }

    auto as_index(const Json & j) -> std::uint32_t
    {
        if (! j.is_number_integer() || j.get<std::int64_t>() < 0)
            throw Error(ErrorKind::InvalidInput, "expected a non-negative integer, got " + j.dump());
        return j.get<std::uint32_t>();
    }
}

auto to_json(const CspInstance & csp) -> Json
{
    Json out;
    out["variables"] = variables_to_json(csp.variables);
    out["constraints"] = Json::array();
    for (const auto & c : csp.constraints) {
        Json jc;
        jc["scope"] = c.scope;
        jc["relation"] = Json::array();
        for (const auto & tuple : c.relation) {
            Json jt = Json::array();
            for (std::size_t j = 0; j < tuple.size(); ++j)
                jt.push_back(csp.variables[c.scope[j]].domain[tuple[j]]);
            jc["relation"].push_back(std::move(jt));
        }
        out["constraints"].push_back(std::move(jc));
    }
    return out;
}

auto to_json(const LcInstance & d) -> Json
{
    Json out;
    out["variables"] = variables_to_json(d.variables);
    out["constraints"] = Json::array();
    for (const auto & c : d.constraints) {
        Json jc;
        jc["target"] = c.target;
        jc["source"] = c.source;
        jc["map"] = c.map;
        out["constraints"].push_back(std::move(jc));
    }
    return out;
}

auto csp_from_json(const Json & j) -> CspInstance
{
    CspInstance csp;
    csp.variables = variables_from_json(j);
    if (j.contains("constraints")) {
        for (const auto & jc : j["constraints"]) {
            if (! jc.contains("scope") || ! jc.contains("relation"))
                throw Error(ErrorKind::InvalidInput, "CSP constraints need \"scope\" and \"relation\"");
            CspConstraint c;
            for (const auto & s : jc["scope"]) {
                auto v = as_index(s);
                if (v >= csp.variables.size())
                    throw Error(ErrorKind::InvalidInput, "scope index out of range");
                c.scope.push_back(v);
            }
            for (const auto & jt : jc["relation"]) {
                if (! jt.is_array() || jt.size() != c.scope.size())
                    throw Error(ErrorKind::InvalidInput, "relation tuple arity differs from the scope");
                std::vector<std::uint32_t> tuple;
                for (std::size_t i = 0; i < jt.size(); ++i)
                    tuple.push_back(index_of(csp.variables[c.scope[i]], jt[i]));
                c.relation.push_back(std::move(tuple));
            }
            csp.constraints.push_back(std::move(c));
        }
    }
    csp.normalize();
    return csp;
}

auto lc_from_json(const Json & j) -> LcInstance
{
    LcInstance d;
    d.variables = variables_from_json(j);
    if (j.contains("constraints")) {
        for (const auto & jc : j["constraints"]) {
            if (! jc.contains("target") || ! jc.contains("source") || ! jc.contains("map"))
                throw Error(ErrorKind::InvalidInput, "LC constraints need \"target\", \"source\" and \"map\"");
            LcConstraint c;
            c.target = as_index(jc["target"]);
            c.source = as_index(jc["source"]);
            for (const auto & m : jc["map"])
                c.map.push_back(as_index(m));
            d.constraints.push_back(std::move(c));
        }
    }
    d.validate();
    return d;
}

auto is_csp_json(const Json & j) -> bool
{
    if (! j.contains("constraints") || j["constraints"].empty())
        return true;
    return j["constraints"].front().contains("scope");
}

auto read_json_file(const std::string & path) -> Json
{
    std::ifstream in(path);
    if (! in)
        throw Error(ErrorKind::InvalidInput, "cannot open " + path);
    try {
        return Json::parse(in);
    }
    catch (const nlohmann::json::exception & e) {
        throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
    }
}

auto canonical_dump(const Json & j) -> std::string
{
    return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

auto content_digest(const Json & j) -> std::string
{
    auto text = canonical_dump(j);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr);
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

}
