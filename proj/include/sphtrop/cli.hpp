#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sphtrop/io_json.hpp"
#include "sphtrop/render_svg.hpp"

namespace sphtrop {

namespace cli {

struct Invocation {
    std::string subcommand;
    std::string input_path;
    std::string out_path;          // empty: stdout
    std::string format;            // "json" or "svg"; empty: per-op default
    bool exact_one = false;
    bool per_cone = false;
    bool global_mode = false;
    bool verbose = false;
};

inline const std::vector<std::string>& known_subcommands() {
    static const std::vector<std::string> kOps{"validate-fan", "build-z",      "valuation-cone",
                                               "trop",         "trop-closure", "push",
                                               "check-closure", "render"};
    return kOps;
}

inline Invocation parse_args(const std::vector<std::string>& args) {
    Invocation inv;
    std::size_t i = 0;
    if (i < args.size() && !args[i].empty() && args[i][0] != '-') inv.subcommand = args[i++];
    for (; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto need_value = [&](const char* flag) -> const std::string& {
            if (i + 1 >= args.size())
                throw SchemaError(std::string("missing value for ") + flag);
            return args[++i];
        };
        if (a == "--out") {
            inv.out_path = need_value("--out");
        } else if (a == "--format") {
            inv.format = need_value("--format");
            if (inv.format != "json" && inv.format != "svg")
                throw SchemaError("--format must be json or svg");
        } else if (a == "--exact-one-variant") {
            inv.exact_one = true;
        } else if (a == "--per-cone") {
            inv.per_cone = true;
        } else if (a == "--global") {
            inv.global_mode = true;
        } else if (a == "--verbose") {
            inv.verbose = true;
        } else if (!a.empty() && a[0] == '-') {
            throw SchemaError("unknown flag '" + a + "'");
        } else if (inv.input_path.empty()) {
            inv.input_path = a;
        } else {
            throw SchemaError("unexpected argument '" + a + "'");
        }
    }
    return inv;
}

struct ResolvedProblem {
    ProblemFile problem;
    std::optional<ColoredFan> fan;
    std::vector<TropicalPolynomial> subvariety;
};

inline ResolvedProblem resolve(const json& j) {
    ResolvedProblem rp{problem_from_json(j), std::nullopt, {}};
    const ProblemFile& p = rp.problem;
    if (p.has_fan()) {
        if (!p.descriptor) throw SchemaError("colored_fan requires a descriptor for its lattice");
        std::optional<Palette> palette = p.descriptor->palette();
        std::optional<Cone> vcone;
        if (!p.colored_fan.contains("valuation_cone")) vcone = valuation_cone(*p.descriptor);
        rp.fan = colored_fan_from_json(p.colored_fan, p.descriptor->layout.dim_script(),
                                       std::move(palette), std::move(vcone));
    }
    if (!p.subvariety_raw.empty()) {
        if (!p.descriptor) throw SchemaError("subvariety requires a descriptor");
        for (const auto& f : p.subvariety_raw)
            rp.subvariety.push_back(
                polynomial_from_json(f, p.descriptor->layout.dim_big(), "subvariety"));
    }
    return rp;
}

inline const SpaceDescriptor& need_descriptor(const ResolvedProblem& rp, const char* op) {
    if (!rp.problem.descriptor)
        throw SchemaError(std::string(op) + ": problem file has no descriptor");
    return *rp.problem.descriptor;
}

inline const ColoredFan& need_fan(const ResolvedProblem& rp, const char* op) {
    if (!rp.fan) throw SchemaError(std::string(op) + ": problem file has no colored_fan");
    return *rp.fan;
}

// --- per-operation handlers -------------------------------------------------

/// Exactness caveat: a single generator cuts out a hypersurface, where the
/// tropical prevariety is the tropical variety. With several generators the
/// engine certifies only the prevariety.
inline std::string certificate_for(std::size_t generator_count) {
    if (generator_count == 0) return "torus";
    if (generator_count == 1) return "hypersurface";
    return "prevariety-only";
}

inline json op_validate_fan(const ResolvedProblem& rp) {
    const ColoredFan& fan = need_fan(rp, "validate-fan");
    json payload;
    payload["validation"] = validation_report_to_json(validate_colored_fan(fan));
    payload["polyhedral"] = is_polyhedral(fan);
    payload["fan"] = colored_fan_to_json(fan);
    return make_result("validate-fan", payload,
                       json{{"validation", "computed"},
                            {"polyhedral", "computed"},
                            {"fan", "input-derived"}});
}

inline json op_build_z(const ResolvedProblem& rp, bool exact_one) {
    const SpaceDescriptor& d = need_descriptor(rp, "build-z");
    const ColoredFan& fan = need_fan(rp, "build-z");
    ToricFan z = build_fan_Z(fan, d.layout, exact_one);
    auto [hat, gamma] = build_fan_Zhat(fan, d.layout);
    json payload;
    payload["fan_z"] = toric_fan_to_json(z);
    payload["fan_zhat"] = hat_fan_to_json(hat);
    payload["gamma"] = matrix_to_json(gamma.exponents);
    payload["irrelevant_monomials"] = qvectors_to_json(irrelevant_monomials(hat));
    payload["variant"] = exact_one ? "exact-one" : "at-least-one";
    return make_result("build-z", payload,
                       json{{"fan_z", "computed"},
                            {"fan_zhat", "computed"},
                            {"gamma", "computed"},
                            {"irrelevant_monomials", "computed"},
                            {"variant", "input-derived"}});
}

inline json op_valuation_cone(const ResolvedProblem& rp) {
    const SpaceDescriptor& d = need_descriptor(rp, "valuation-cone");
    json payload;
    payload["valuation_cone"] = cone_to_json(valuation_cone(d));
    payload["descriptor"] = descriptor_to_json(d);
    payload["certificate"] = certificate_for(d.ideal.size());
    return make_result("valuation-cone", payload,
                       json{{"valuation_cone", "computed"},
                            {"descriptor", "input-derived"},
                            {"certificate", "computed"}});
}

inline json op_trop(const ResolvedProblem& rp) {
    const SpaceDescriptor& d = need_descriptor(rp, "trop");
    json payload;
    json provenance;
    if (rp.problem.pi_star) {
        auto res = trop_subvariety_lifted(d, *rp.problem.pi_star, rp.subvariety);
        payload["psi_image"] = complex_to_json(res.psi_image);
        payload["tropicalization"] = complex_to_json(res.pushed);
        provenance = json{{"psi_image", "computed"}, {"tropicalization", "computed"}};
    } else {
        payload["tropicalization"] = complex_to_json(trop_subvariety(d, rp.subvariety));
        provenance = json{{"tropicalization", "computed"}};
    }
    payload["certificate"] = certificate_for(d.ideal.size() + rp.subvariety.size());
    provenance["certificate"] = "computed";
    return make_result("trop", payload, provenance);
}

inline json op_trop_closure(const ResolvedProblem& rp, bool per_cone) {
    const SpaceDescriptor& d = need_descriptor(rp, "trop-closure");
    const ColoredFan& fan = need_fan(rp, "trop-closure");
    TropClosureResult res = trop_closure(d, fan, rp.subvariety, per_cone);
    json payload;
    payload["trop"] = spherical_trop_to_json(res.trop);
    json contributions = json::array();
    for (const auto& c : res.contributions)
        contributions.push_back({{"fan_cone", cone_to_json(c.fan_cone)},
                                 {"mask", c.mask},
                                 {"orbit", colored_cone_to_json(c.orbit)},
                                 {"cells", complex_to_json(c.cells)}});
    payload["contributions"] = contributions;
    payload["mode"] = per_cone ? "per-cone" : "global";
    payload["certificate"] = certificate_for(d.ideal.size() + rp.subvariety.size());
    return make_result("trop-closure", payload,
                       json{{"trop", "computed"},
                            {"contributions", "computed"},
                            {"mode", "input-derived"},
                            {"certificate", "computed"}});
}

inline json op_push(const ResolvedProblem& rp) {
    const json& block = rp.problem.push_block;
    if (block.is_null()) throw SchemaError("push: problem file has no push block");
    check_keys(block, {"matrix", "complex"}, "push");
    PolyhedralComplex input = complex_from_json(require(block, "complex", "push"), "push.complex");
    Matrix map = matrix_from_json(require(block, "matrix", "push"), input.dim, "push.matrix");
    json payload;
    payload["pushed"] = complex_to_json(linear_image(map, input));
    payload["input"] = complex_to_json(input);
    return make_result("push", payload,
                       json{{"pushed", "computed"}, {"input", "input-derived"}});
}

inline json op_check_closure(const ResolvedProblem& rp, bool per_cone) {
    const SpaceDescriptor& d = need_descriptor(rp, "check-closure");
    const ColoredFan& fan = need_fan(rp, "check-closure");
    ClosureCommuteReport report = check_closure_commutes(d, fan, rp.subvariety, per_cone);
    json orbits = json::array();
    for (const auto& oc : report.orbits)
        orbits.push_back({{"orbit", colored_cone_to_json(oc.orbit)},
                          {"equal", oc.equal},
                          {"lhs_cells", oc.lhs_cells},
                          {"rhs_cells", oc.rhs_cells}});
    json payload;
    payload["equal"] = report.equal;
    payload["orbits"] = orbits;
    return make_result("check-closure", payload,
                       json{{"equal", "computed"}, {"orbits", "computed"}});
}

inline std::string op_render(const ResolvedProblem& rp) {
    std::string target;
    if (rp.problem.options.contains("render_target"))
        target = rp.problem.options["render_target"].get<std::string>();
    else if (rp.fan)
        target = "colored-fan";
    else if (!rp.subvariety.empty())
        target = "trop";
    else
        target = "valuation-cone";

    if (target == "colored-fan") {
        return render_colored_fan_svg(need_fan(rp, "render"));
    }
    if (target == "fan-z") {
        const SpaceDescriptor& d = need_descriptor(rp, "render");
        ToricFan z = build_fan_Z(need_fan(rp, "render"), d.layout);
        std::vector<Cone> cones;
        for (const auto& tc : z.maximal) cones.push_back(tc.cone);
        return render_fan_svg(cones);
    }
    if (target == "trop") {
        const SpaceDescriptor& d = need_descriptor(rp, "render");
        return render_complex_svg(trop_subvariety(d, rp.subvariety));
    }
    if (target == "valuation-cone") {
        const SpaceDescriptor& d = need_descriptor(rp, "render");
        ColoredFan only_palette{d.palette(), valuation_cone(d), {}};
        return render_colored_fan_svg(only_palette);
    }
    throw SchemaError("render: unknown render_target '" + target + "'");
}

inline void write_output(const Invocation& inv, const std::string& text, std::ostream& out) {
    if (inv.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(inv.out_path, std::ios::binary);
    if (!f) throw SchemaError("cannot open output file '" + inv.out_path + "'");
    f << text;
}

/// Entry point used both by the binary and by the tests. Exit codes: 0 on
/// success, 2 on domain errors (e.g. a non-polyhedral fan), 1 on I/O or
/// schema problems.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::string op = "?";
    try {
        Invocation inv = parse_args(args);
        if (inv.subcommand.empty()) {
            err << "usage: sphtrop <subcommand> <problem.json> [--out PATH] [--format json|svg]\n"
                << "subcommands:";
            for (const auto& s : known_subcommands()) err << " " << s;
            err << "\n";
            return 1;
        }
        const auto& ops = known_subcommands();
        if (std::find(ops.begin(), ops.end(), inv.subcommand) == ops.end())
            throw SchemaError("unknown subcommand '" + inv.subcommand + "'");
        op = inv.subcommand;
        if (inv.input_path.empty()) throw SchemaError(op + ": no problem file given");
        std::ifstream in(inv.input_path);
        if (!in) throw SchemaError("cannot open problem file '" + inv.input_path + "'");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw SchemaError(std::string("problem file is not valid JSON: ") + e.what());
        }
        ResolvedProblem rp = resolve(j);
        if (inv.verbose)
            err << "sphtrop: running " << op << " on " << inv.input_path << "\n";

        if (op == "render") {
            if (inv.format == "json")
                throw SchemaError("render emits SVG; use --format svg");
            write_output(inv, op_render(rp), out);
            return 0;
        }
        if (inv.format == "svg") throw SchemaError(op + " emits JSON; --format svg is for render");

        json result;
        if (op == "validate-fan") {
            result = op_validate_fan(rp);
        } else if (op == "build-z") {
            result = op_build_z(rp, inv.exact_one);
        } else if (op == "valuation-cone") {
            result = op_valuation_cone(rp);
        } else if (op == "trop") {
            result = op_trop(rp);
        } else if (op == "trop-closure") {
            result = op_trop_closure(rp, inv.per_cone && !inv.global_mode);
        } else if (op == "push") {
            result = op_push(rp);
        } else if (op == "check-closure") {
            result = op_check_closure(rp, inv.per_cone && !inv.global_mode);
        }
        write_output(inv, result.dump(2) + "\n", out);
        return 0;
    } catch (const SchemaError& e) {
        err << make_error_result(op, "schema", e.what()).dump(2) << "\n";
        return 1;
    } catch (const NonPolyhedralFan& e) {
        err << make_error_result(op, "non-polyhedral-fan", e.what()).dump(2) << "\n";
        return 2;
    } catch (const Error& e) {
        err << make_error_result(op, "domain", e.what()).dump(2) << "\n";
        return 2;
    }
}

} // namespace cli

} // namespace sphtrop
