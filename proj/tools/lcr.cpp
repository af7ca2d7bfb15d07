// lcr: command-line front end. Every command prints one JSON report on standard output.
// Exit codes: 0 Accept/Solved, 1 Refute/None, 2 usage or cap error.

#include <lcr/caps.hpp>
#include <lcr/dihedral.hpp>
#include <lcr/error.hpp>
#include <lcr/fixtures.hpp>
#include <lcr/json_io.hpp>
#include <lcr/oracle.hpp>
#include <lcr/powers.hpp>
#include <lcr/relaxations.hpp>
#include <lcr/rounding.hpp>
#include <lcr/vector_minion.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>

using namespace lcr;

namespace {

struct Report {
    std::string verdict;
    Json artifacts = Json::object();
    std::optional<std::string> digest;
};

struct Instance {
    Json raw;
    std::optional<CspInstance> csp;
    LcInstance lc;
};

auto load_instance(const std::string & path) -> Instance
{
    Instance in;
    in.raw = read_json_file(path);
    if (is_csp_json(in.raw)) {
        in.csp = csp_from_json(in.raw);
        in.lc = lc_of_csp(*in.csp);
    }
    else {
        in.lc = lc_from_json(in.raw);
    }
    return in;
}

// Accepts a bare artifact or a report carrying it under artifacts.<key>.
auto unwrap(const Json & j, const std::string & key) -> const Json &
{
    if (j.is_object() && j.contains("artifacts") && j["artifacts"].contains(key))
        return j["artifacts"][key];
    return j;
}

auto exit_code(const std::string & verdict) -> int
{
    if (verdict == "Accept" || verdict == "Solved")
        return 0;
    if (verdict == "Refute" || verdict == "None")
        return 1;
    return 2;
}

auto labels_of(const LcInstance & d, std::uint32_t x, const std::vector<std::uint32_t> & elems) -> Json
{
    Json out = Json::array();
    for (auto a : elems)
        out.push_back(d.variables[x].domain[a]);
    return out;
}

auto cmd_convert(const std::string & path) -> Report
{
    auto in = load_instance(path);
    return {"Solved", {{"lc", to_json(in.lc)}}, content_digest(in.raw)};
}

auto cmd_power(const std::string & path, std::uint32_t k, bool partial, bool full, const Caps & caps) -> Report
{
    auto in = load_instance(path);
    Report r{"Solved", {}, content_digest(in.raw)};
    if (partial) {
        if (! in.csp)
            throw Error(ErrorKind::InvalidInput, "partial powers need a CSP instance");
        r.artifacts["power"] = to_json(partial_power(*in.csp, k, caps));
        return r;
    }
    auto pw = saturated_power(in.lc, k, full ? PowerMode::Full : PowerMode::Reduced, caps);
    r.artifacts["power"] = to_json(pw.instance);
    r.artifacts["meta"] = to_json(pw.meta);
    r.artifacts["type1_constraints"] = pw.type1_constraints;
    r.artifacts["type2_constraints"] = pw.type2_constraints;
    return r;
}

auto cmd_solve(const std::string & path, const std::string & relaxation, std::uint32_t p, std::int64_t n,
    std::uint32_t level, const std::string & encoding, const Caps & caps) -> Report
{
    auto in = load_instance(path);
    const auto & d = in.lc;
    Report r{"Refute", {}, content_digest(in.raw)};
    if (relaxation == "ac") {
        auto ac = arc_consistency(d);
        Json domains = Json::object();
        for (std::uint32_t x = 0; x < d.variables.size(); ++x)
            domains[d.variables[x].name] = labels_of(d, x, ac.domains[x]);
        r.artifacts["domains"] = std::move(domains);
        r.verdict = ac.emptied ? "Refute" : "Accept";
    }
    else if (relaxation == "zp" && level == 0) {
        if (auto s = solve_zp(d, p, caps)) {
            if (! check_zp_solution(d, *s))
                throw std::logic_error("Z_p solution failed re-verification");
            r.verdict = "Accept";
            r.artifacts["solution"] = to_json(*s);
        }
    }
    else if (relaxation == "zp") {
        LevelStats stats;
        auto enc = encoding == "direct" ? LevelEncoding::Direct : LevelEncoding::Canonical;
        if (auto t = solve_level(d, p, level, enc, caps, &stats)) {
            if (! check_tensor_solution(d, *t))
                throw std::logic_error("level tensor failed re-verification");
            r.verdict = "Accept";
            r.artifacts["tensor"] = to_json(*t);
        }
        r.artifacts["stats"] = {{"unknowns", stats.unknowns}, {"equations", stats.equations},
            {"components", stats.components}};
    }
    else if (relaxation == "zn") {
        if (auto s = solve_zn(d, n, caps)) {
            if (! check_zn_solution(d, *s))
                throw std::logic_error("Z_n solution failed re-verification");
            r.verdict = "Accept";
            r.artifacts["solution"] = to_json(*s);
        }
    }
    return r;
}

auto cmd_extract(const std::string & path, const std::string & tensor_path, std::uint32_t p, std::uint32_t k) -> Report
{
    auto in = load_instance(path);
    const auto & d = in.lc;
    auto t = tensor_from_json(unwrap(read_json_file(tensor_path), "tensor"), d);
    if (t.p != p || t.k != k)
        throw Error(ErrorKind::WrongParameters, "tensor parameters differ from --p/--k");
    if (! check_tensor_solution(d, t))
        throw Error(ErrorKind::InvalidTensor, "tensor does not solve the saturated power");
    Json comps = Json::array();
    for (const auto & comp : connected_components(d)) {
        auto sub = induced_subinstance(d, comp);
        auto s = extract_vectors(sub, restrict_tensor(t, comp));
        std::string why;
        if (! check_vector_solution(sub, s, &why))
            throw std::logic_error("extracted vectors failed verification: " + why);
        comps.push_back({{"variables", comp}, {"solution", to_json(s, sub)}});
    }
    return {"Solved", {{"components", std::move(comps)}}, content_digest(in.raw)};
}

auto cmd_round(const std::string & path, const std::string & vectors_path, std::uint32_t p) -> Report
{
    auto in = load_instance(path);
    const auto & d = in.lc;
    auto file = read_json_file(vectors_path);
    const auto & comps = unwrap(file, "components");
    ZnSolution z{std::int64_t{p} * p, std::vector<std::vector<std::int64_t>>(d.variables.size())};
    std::vector<bool> covered(d.variables.size(), false);
    try {
        for (const auto & c : comps) {
            auto vars = c.at("variables").get<std::vector<std::uint32_t>>();
            for (auto x : vars) {
                if (x >= d.variables.size() || covered[x])
                    throw Error(ErrorKind::InvalidInput, "component lists are not a partition of the variables");
                covered[x] = true;
            }
            auto sub = induced_subinstance(d, vars);
            auto s = vector_solution_from_json(c.at("solution"), sub);
            if (s.p != p)
                throw Error(ErrorKind::WrongParameters, "vector solution has a different prime");
            std::string why;
            if (! check_vector_solution(sub, s, &why))
                throw Error(ErrorKind::InvalidVectorSolution, why);
            auto part = round_vector_solution(s);
            for (std::size_t i = 0; i < vars.size(); ++i)
                z.values[vars[i]] = std::move(part.values[i]);
        }
    }
    catch (const Json::exception & e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed component list: ") + e.what());
    }
    for (bool c : covered)
        if (! c)
            throw Error(ErrorKind::InvalidInput, "component lists do not cover every variable");
    if (! check_zn_solution(d, z))
        throw std::logic_error("rounded tuples do not solve the instance over Z_{p^2}");
    Report r{"Solved", {{"rounded", to_json(z)}}, content_digest(in.raw)};
    if (in.csp) {
        try {
            auto values = decode_affine(*in.csp, z);
            Assignment a(values.begin(), values.end());
            bool ok = check_csp_solution(*in.csp, a);
            r.artifacts["decoded"] = values;
            r.artifacts["decoded_verified"] = ok;
            if (! ok)
                r.verdict = "Refute";
        }
        catch (const Error & e) {
            if (e.kind() != ErrorKind::DomainMismatch)
                throw;
            r.artifacts["decoded"] = nullptr;
        }
    }
    return r;
}

auto cmd_d4_gen(std::uint32_t vars, std::uint32_t constraints, std::uint32_t arity, std::uint64_t seed) -> Report
{
    auto csp = gen_coset_csp(vars, constraints, arity, seed);
    return {"Solved", {{"instance", to_json(csp)}}, std::nullopt};
}

auto cmd_d4_certify(const std::string & path, const Caps & caps) -> Report
{
    auto in = load_instance(path);
    const auto & d = in.lc;
    Report r{"Refute", {}, content_digest(in.raw)};
    auto t = solve_level(d, 2, 2, LevelEncoding::Canonical, caps);
    if (! t)
        return r;
    auto c = m_certificate_from_level(d, *t);
    if (! verify_m_certificate(d, c))
        throw std::logic_error("certificate failed verification");
    r.verdict = "Accept";
    r.artifacts["certificate"] = to_json(c, d);
    return r;
}

auto cmd_paper_props() -> Report
{
    Json checks = Json::object();
    bool carry = true;
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t b = 0; b < p; ++b)
                carry = carry && carry_polynomial(p, a, b) == (a + b) / p;
    checks["carry_tables"] = carry;
    checks["no_homo_v2z2_to_z8"] = check_no_homo_v2z2_to_z8();
    checks["no_homo_v2z3_to_z9"] = check_no_homo_v2zp_to_zp2(3);

    auto d3 = lc_of_csp(fixtures::three_constraint_csp());
    checks["arc_consistency_fixture"] = arc_consistency(d3).domains == fixtures::three_constraint_ac_domains();

    auto d5 = lc_of_csp(fixtures::cycle_csp());
    ZpSolution z2{2, {}};
    for (const auto & v : fixtures::cycle_z2_solution())
        z2.values.emplace_back(v.begin(), v.end());
    checks["cycle_z2_assignment"] = check_zp_solution(d5, z2);
    checks["cycle_level2_matrix"] = check_tensor_matrix(d5, 2, fixtures::cycle_level2_matrix());
    checks["cycle_zp_feasible"] = solve_zp(d5, 2).has_value();
    checks["cycle_level2_feasible"] = solve_level(d5, 2, 2).has_value();

    bool all = true;
    for (const auto & [name, ok] : checks.items())
        all = all && ok.get<bool>();
    return {all ? "Solved" : "Refute", {{"checks", std::move(checks)}}, std::nullopt};
}

auto cmd_oracle_solve(const std::string & path, const Caps & caps) -> Report
{
    auto in = load_instance(path);
    Report r{"None", {}, content_digest(in.raw)};
    if (in.csp) {
        if (auto a = brute_solve_csp(*in.csp, caps)) {
            r.verdict = "Solved";
            r.artifacts["assignment"] = *a;
        }
    }
    else if (auto a = brute_solve_lc(in.lc, caps)) {
        r.verdict = "Solved";
        r.artifacts["assignment"] = *a;
    }
    return r;
}

auto cmd_oracle_gen(std::int64_t n, std::uint32_t vars, std::uint32_t eqs, std::uint32_t arity, std::uint64_t seed,
    const Caps & caps) -> Report
{
    auto sys = gen_linear_system(n, vars, eqs, seed, arity);
    return {"Solved", {{"system", to_json(sys)}, {"instance", to_json(csp_of_linear_system(sys, caps))}}, std::nullopt};
}

auto cmd_fixture(const std::string & name) -> Report
{
    Report r{"Solved", {}, std::nullopt};
    if (name == "three-constraint") {
        r.artifacts["instance"] = to_json(fixtures::three_constraint_csp());
        r.artifacts["solution"] = fixtures::three_constraint_solution();
    }
    else if (name == "four-cycle") {
        r.artifacts["instance"] = to_json(fixtures::cycle_csp());
        r.artifacts["z2_solution"] = fixtures::cycle_z2_solution();
        auto d = lc_of_csp(fixtures::cycle_csp());
        r.artifacts["tensor"] = to_json(tensor_from_matrix(d, 2, fixtures::cycle_level2_matrix()));
    }
    else {
        throw Error(ErrorKind::InvalidInput, "unknown fixture " + name);
    }
    return r;
}

auto emit(const std::string & command, const Report & r, std::optional<double> ms) -> int
{
    Json out;
    out["command"] = command;
    out["digest"] = r.digest ? Json(*r.digest) : Json(nullptr);
    out["verdict"] = r.verdict;
    out["artifacts"] = r.artifacts.is_null() ? Json::object() : r.artifacts;
    if (ms)
        out["timings"] = {{"total_ms", *ms}};
    std::cout << out.dump() << '\n';
    return exit_code(r.verdict);
}

auto emit_error(const std::string & command, const std::string & kind, const std::string & message) -> int
{
    Json out;
    out["command"] = command;
    out["digest"] = nullptr;
    out["verdict"] = "Error";
    out["artifacts"] = {{"error", {{"kind", kind}, {"message", message}}}};
    std::cout << out.dump() << '\n';
    return 2;
}

}

int main(int argc, char ** argv)
{
    std::string command;
    for (int i = 1; i < argc; ++i)
        command += (i > 1 ? " " : "") + std::string(argv[i]);

    CLI::App app{"Label Cover relaxations: powers, Z_p levels, vector extraction, rounding and D4 certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    bool timings = false;
    app.add_option("--seed", seed, "Seed for every random choice");
    app.add_flag("--timings", timings, "Add wall-clock timings to the report");

    std::string input, tensor_path, vectors_path, relaxation = "zp", encoding = "canonical", fixture_name;
    std::uint32_t k = 2, p = 2, level = 0, vars = 3, eqs = 3, arity = 2, constraints = 3;
    std::int64_t n = 4;
    bool partial = false, full = false;

    auto * convert = app.add_subcommand("convert", "CSP JSON to LC JSON");
    convert->add_option("input", input)->required();

    auto * power = app.add_subcommand("power", "Saturated or partial-solution power");
    power->add_option("input", input)->required();
    power->add_option("--k", k, "Level")->check(CLI::PositiveNumber);
    power->add_flag("--partial", partial, "Partial-solution power of a CSP");
    power->add_flag("--full", full, "All k-tuples of arcs instead of the reduced form");

    auto * solve = app.add_subcommand("solve", "Run a relaxation");
    solve->add_option("input", input)->required();
    solve->add_option("--relaxation", relaxation)->check(CLI::IsMember({"ac", "zp", "zn"}));
    solve->add_option("--p", p, "Prime for zp");
    solve->add_option("--n", n, "Modulus for zn");
    solve->add_option("--level", level, "Saturated level for zp; 0 solves the instance itself");
    solve->add_option("--encoding", encoding)->check(CLI::IsMember({"canonical", "direct"}));

    auto * extract = app.add_subcommand("extract-vectors", "Level tensor to vector solutions per component");
    extract->add_option("input", input)->required();
    extract->add_option("--tensor", tensor_path, "Tensor JSON or a solve report")->required();
    extract->add_option("--p", p)->required();
    extract->add_option("--k", k)->required();

    auto * round = app.add_subcommand("round", "Level-p vectors to Z_{p^2}, decoded for linear templates");
    round->add_option("input", input)->required();
    round->add_option("--vectors", vectors_path, "extract-vectors report")->required();
    round->add_option("--p", p)->required();

    auto * d4 = app.add_subcommand("d4", "D4 coset templates");
    d4->require_subcommand(1);
    auto * d4_gen = d4->add_subcommand("gen", "Random coset CSP");
    d4_gen->add_option("--vars", vars);
    d4_gen->add_option("--constraints", constraints);
    d4_gen->add_option("--max-arity", arity);
    auto * d4_cert = d4->add_subcommand("certify", "Level-2 Z_2 solve and certificate");
    d4_cert->add_option("input", input)->required();

    auto * verify = app.add_subcommand("verify", "Built-in checks");
    verify->require_subcommand(1);
    auto * props = verify->add_subcommand("paper-props", "Carry tables, no-homomorphism systems and fixtures");

    auto * oracle = app.add_subcommand("oracle", "Brute-force ground truth");
    oracle->require_subcommand(1);
    auto * oracle_solve = oracle->add_subcommand("solve", "Brute-force a CSP or LC instance");
    oracle_solve->add_option("input", input)->required();
    auto * oracle_gen = oracle->add_subcommand("gen-linear", "Random linear system as a CSP");
    oracle_gen->add_option("--n", n);
    oracle_gen->add_option("--vars", vars);
    oracle_gen->add_option("--eqs", eqs);
    oracle_gen->add_option("--max-arity", arity);

    auto * fixture = app.add_subcommand("fixture", "Print a worked instance");
    fixture->add_option("name", fixture_name)->required()->check(CLI::IsMember({"three-constraint", "four-cycle"}));

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        return emit_error(command, "Usage", e.what());
    }

    auto start = std::chrono::steady_clock::now();
    try {
        auto caps = caps_from_env();
        Report r;
        if (*convert)
            r = cmd_convert(input);
        else if (*power)
            r = cmd_power(input, k, partial, full, caps);
        else if (*solve)
            r = cmd_solve(input, relaxation, p, n, level, encoding, caps);
        else if (*extract)
            r = cmd_extract(input, tensor_path, p, k);
        else if (*round)
            r = cmd_round(input, vectors_path, p);
        else if (*d4_gen)
            r = cmd_d4_gen(vars, constraints, arity, seed);
        else if (*d4_cert)
            r = cmd_d4_certify(input, caps);
        else if (*props)
            r = cmd_paper_props();
        else if (*oracle_solve)
            r = cmd_oracle_solve(input, caps);
        else if (*oracle_gen)
            r = cmd_oracle_gen(n, vars, eqs, arity, seed, caps);
        else if (*fixture)
            r = cmd_fixture(fixture_name);
        std::optional<double> ms;
        if (timings)
            ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return emit(command, r, ms);
    }
    catch (const Error & e) {
        return emit_error(command, std::string(error_kind_name(e.kind())), e.what());
    }
    catch (const std::exception & e) {
        return emit_error(command, "Internal", e.what());
    }
}
