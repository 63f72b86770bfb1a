// scop: command-line front end for finite state-context-property systems.
// Subcommands: validate, analyze, complete, verify, product, morphism,
// demo, sample, generate. Reports are single-line JSON by default
// (--human pretty-prints); exit code 0 = clean, 1 = check failures,
// 2 = parse/IO errors.

#include "scop/demo.hpp"
#include "scop/dynamics.hpp"
#include "scop/error.hpp"
#include "scop/experiments.hpp"
#include "scop/generator.hpp"
#include "scop/io.hpp"
#include "scop/morphism.hpp"
#include "scop/preorder.hpp"
#include "scop/system.hpp"
#include "scop/wavefunction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using json = nlohmann::ordered_json;
using namespace scop;

json validation_section(const ValidationReport& report) {
    json issues = json::array();
    for (const auto& issue : report.issues)
        issues.push_back({{"kind", issue.kind}, {"detail", issue.detail}});
    return {{"ok", report.ok()}, {"issues", std::move(issues)}};
}

json classes_json(const std::vector<std::vector<std::string>>& classes) {
    json out = json::array();
    for (const auto& cls : classes) out.push_back(cls);
    return out;
}

json completeness_json(const CompletenessReport& report) {
    json missing = json::array();
    for (const auto& witness : report.missing) missing.push_back(witness);
    return {{"complete", report.complete}, {"missing", std::move(missing)}};
}

json order_section(const ScopSystem& sys) {
    const auto state_view = PreorderView::states(sys);
    const auto property_view = PreorderView::properties(sys);
    const auto proper = classify_proper(sys);

    const auto edges_json = [](const std::vector<std::pair<std::string, std::string>>& edges) {
        json out = json::array();
        for (const auto& [a, b] : edges) out.push_back({a, b});
        return out;
    };

    json out;
    out["states"] = {{"classes", classes_json(state_view.equivalence_classes())},
                     {"hasse", edges_json(state_view.hasse_edges())},
                     {"completeness", completeness_json(check_state_completeness(sys))},
                     {"improper", std::vector<std::string>(proper.improper_states.begin(),
                                                           proper.improper_states.end())}};
    out["properties"] = {{"classes", classes_json(property_view.equivalence_classes())},
                         {"hasse", edges_json(property_view.hasse_edges())},
                         {"completeness", completeness_json(check_property_completeness(sys))},
                         {"improper", std::vector<std::string>(proper.improper_properties.begin(),
                                                               proper.improper_properties.end())}};
    if (sys.destruction_state && sys.xi(*sys.destruction_state).empty())
        out["note"] = "destruction state '" + *sys.destruction_state +
                      "' has empty xi; property completeness over all of Sigma would require a "
                      "property actual in every state, including this one";
    return out;
}

json dynamics_section(const ScopSystem& sys) {
    const auto report = classify(sys);
    json couples = json::array();
    for (const auto& [couple, info] : report.couples) {
        json entry = {{"e", couple.first},
                      {"p", couple.second},
                      {"deterministic", info.deterministic},
                      {"eigenstate", info.eigenstate},
                      {"eigencontext", info.eigencontext}};
        if (info.image) entry["image"] = {{"f", info.image->first}, {"q", info.image->second}};
        couples.push_back(std::move(entry));
    }
    return {{"d_classical", report.d_classical},
            {"deterministic_contexts", report.context_deterministic},
            {"deterministic_states", report.state_deterministic},
            {"couples", std::move(couples)}};
}

json labels_json(const std::set<OutcomeLabel>& labels) {
    json out = json::array();
    for (const auto& label : labels) out.push_back(label.text());
    return out;
}

json experiments_section(const ScopSystem& sys) {
    json out = json::object();
    for (const auto& [e, spec] : sys.experiments) {
        json entry = {{"outcomes", labels_json(outcomes_total(sys, e))},
                      {"first_kind_context", is_first_kind_context(sys, e)},
                      {"first_kind_experiment", is_first_kind_experiment(sys, e)}};
        if (spec.spectrum) {
            try {
                const auto cascade = is_cascade_experiment(sys, e);
                entry["cascade"] = {{"ok", cascade.ok()},
                                    {"checked", cascade.checked_instances},
                                    {"violations", cascade.violations.size()}};
            } catch (const Error&) {
                entry["cascade"] = nullptr; // spectrum declared, no subset outcomes
            }
        }
        out[e] = std::move(entry);
    }
    return out;
}

json cascade_json(const CascadeReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"law", v.law},
                              {"p", v.p},
                              {"x", v.x.text()},
                              {"y", v.y.text()},
                              {"detail", v.detail}});
    return {{"context", report.context},
            {"ok", report.ok()},
            {"checked", report.checked_instances},
            {"violations", std::move(violations)}};
}

json operational_json(const OperationalityReport& report) {
    json witnesses = json::object();
    for (const auto& [a, test] : report.witnesses)
        witnesses[a] = {{"experiment", test.first}, {"outcomes", labels_json(test.second)}};
    return {{"operational", report.operational},
            {"witnesses", std::move(witnesses)},
            {"failures", report.failures}};
}

json morphism_report_json(const MorphismReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"kind", v.kind}, {"detail", v.detail}});
    return {{"ok", report.ok()}, {"violations", std::move(violations)}};
}

int emit(const json& report, bool human, int exit_code) {
    std::cout << report.dump(human ? 2 : -1) << "\n";
    return exit_code;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string current;
    for (const char c : text) {
        if (c == sep) {
            out.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) out.push_back(current);
    return out;
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("SCOP_SEED")) return std::strtoull(env, nullptr, 10);
    return cli_seed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite state-context-property systems toolkit"};
    app.require_subcommand(1);
    bool human = false;
    app.add_flag("--human", human, "pretty-print JSON reports");

    std::string file, out_path, start_arg, particles_arg;
    std::string contexts_arg, states_arg, weights_arg, new_id;
    std::string shape = "uniform", profile_name = "generic";
    std::size_t grid_cells = 1024, blocks = 4, steps = 10;
    double x0 = 0.0, x1 = 4.0, center = 0.0, sigma = 0.0;
    bool with_destruction = false;
    std::uint64_t seed = 1;
    std::size_t cap = 4096;
    GeneratorSizes sizes;

    auto* validate_cmd = app.add_subcommand("validate", "structural and semantic checks");
    validate_cmd->add_option("file", file)->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "validation, order, dynamics, experiments");
    analyze_cmd->add_option("file", file)->required();

    auto* complete_cmd = app.add_subcommand("complete", "completeness, s/t maps, interval law");
    complete_cmd->add_option("file", file)->required();

    auto* verify_cmd = app.add_subcommand("verify", "cascade / first-kind / operational checks");
    verify_cmd->add_option("file", file)->required();
    std::string cascade_ctx, first_kind_ctx;
    bool operational_flag = false;
    verify_cmd->add_option("--cascade", cascade_ctx, "verify the cascade laws of an experiment");
    verify_cmd->add_option("--first-kind", first_kind_ctx, "first-kind checks for a context");
    verify_cmd->add_flag("--operational", operational_flag, "operational-entity check");

    auto* product_cmd = app.add_subcommand("product", "extend with a product context or state");
    product_cmd->add_option("file", file)->required();
    product_cmd->add_option("--contexts", contexts_arg, "comma-separated factor contexts");
    product_cmd->add_option("--states", states_arg, "comma-separated factor states");
    product_cmd->add_option("--weights", weights_arg, "hidden-factor weights (rationals)");
    product_cmd->add_option("--id", new_id, "id of the new context/state")->required();
    product_cmd->add_option("--out", out_path, "output system file")->required();

    auto* construct_cmd =
        app.add_subcommand("construct", "derive testable properties from a state context system");
    std::string from_sco;
    construct_cmd->add_option("--from-sco", from_sco, "input system (properties ignored)")
        ->required();
    construct_cmd->add_option("--cap", cap, "max generated property count");
    construct_cmd->add_option("--out", out_path)->required();

    auto* morphism_cmd = app.add_subcommand("morphism", "verify or lift morphisms");
    morphism_cmd->require_subcommand(1);
    auto* morphism_verify = morphism_cmd->add_subcommand("verify", "check the covariance laws");
    morphism_verify->add_option("file", file)->required();
    std::size_t sample_count = 0;
    morphism_verify->add_option("--sample", sample_count,
                                "spot-check N random tuples instead of the exhaustive sweep");
    auto* morphism_lift = morphism_cmd->add_subcommand("lift", "lift a state-context morphism");
    std::string sco_file;
    morphism_lift->add_option("--sco", sco_file, "SCO morphism file")->required();
    morphism_lift->add_option("--cap", cap, "max generated property count");

    auto* demo_cmd = app.add_subcommand("demo", "built-in worked examples");
    demo_cmd->require_subcommand(1);
    auto* demo_quantum = demo_cmd->add_subcommand("quantum", "discretized position measurement");
    demo_quantum->add_option("--grid", grid_cells, "number of grid cells");
    demo_quantum->add_option("--shape", shape, "uniform|gaussian");
    demo_quantum->add_option("--blocks", blocks, "partition blocks (<= 16)");
    demo_quantum->add_option("--x0", x0, "domain start");
    demo_quantum->add_option("--x1", x1, "domain end");
    auto* center_opt = demo_quantum->add_option("--center", center, "gaussian center");
    auto* sigma_opt = demo_quantum->add_option("--sigma", sigma, "gaussian width");
    demo_quantum->add_flag("--destruction", with_destruction, "include a destruction state");
    demo_quantum->add_option("--out", out_path)->required();
    auto* demo_classical = demo_cmd->add_subcommand("classical", "point particle observation");
    demo_classical->add_option("--particles", particles_arg, "u1,mv1;u2,mv2;...")->required();
    demo_classical->add_option("--out", out_path)->required();

    auto* sample_cmd = app.add_subcommand("sample", "trajectory through the transition graph");
    sample_cmd->add_option("file", file)->required();
    sample_cmd->add_option("--start", start_arg, "start couple e,p")->required();
    sample_cmd->add_option("--steps", steps);
    sample_cmd->add_option("--seed", seed);

    auto* generate_cmd = app.add_subcommand("generate", "seeded random systems");
    generate_cmd->add_option("--seed", seed);
    generate_cmd->add_option("--states", sizes.states);
    generate_cmd->add_option("--contexts", sizes.contexts);
    generate_cmd->add_option("--properties", sizes.properties);
    generate_cmd->add_option("--profile", profile_name, "generic|d-classical|operational");
    generate_cmd->add_option("--out", out_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate_cmd) {
            const auto sys = load_system(file);
            const auto report = validate(sys);
            return emit({{"command", "validate"},
                         {"sections", {{"validation", validation_section(report)}}}},
                        human, report.ok() ? 0 : 1);
        }

        if (*analyze_cmd) {
            const auto sys = load_system(file);
            const auto report = validate(sys);
            json sections = {{"validation", validation_section(report)},
                             {"order", order_section(sys)},
                             {"dynamics", dynamics_section(sys)},
                             {"experiments", experiments_section(sys)}};
            return emit({{"command", "analyze"}, {"sections", std::move(sections)}}, human,
                        report.ok() ? 0 : 1);
        }

        if (*complete_cmd) {
            const auto sys = load_system(file);
            const auto prop = check_property_completeness(sys);
            const auto state = check_state_completeness(sys);
            json section = {{"property_completeness", completeness_json(prop)},
                            {"state_completeness", completeness_json(state)}};
            if (prop.complete && state.complete) {
                json s = json::object(), t = json::object();
                for (const auto& p : sys.states) s[p] = property_state(sys, p);
                for (const auto& a : sys.properties) t[a] = state_property(sys, a);
                bool interval_holds = true;
                for (const auto& p : sys.states) {
                    std::set<PropertyId> above;
                    for (const auto& a : sys.properties)
                        if (property_implies(sys, s[p].get<std::string>(), a)) above.insert(a);
                    if (above != sys.xi(p)) interval_holds = false;
                }
                for (const auto& a : sys.properties) {
                    std::set<StateId> below;
                    for (const auto& p : sys.states)
                        if (state_implies(sys, p, t[a].get<std::string>())) below.insert(p);
                    if (below != sys.kappa(a)) interval_holds = false;
                }
                section["s"] = std::move(s);
                section["t"] = std::move(t);
                section["interval_law"] = interval_holds;
            }
            const bool ok = prop.complete && state.complete;
            return emit({{"command", "complete"}, {"sections", {{"order", std::move(section)}}}},
                        human, ok ? 0 : 1);
        }

        if (*verify_cmd) {
            const auto sys = load_system(file);
            json section = json::object();
            bool ok = true;
            if (!cascade_ctx.empty()) {
                const auto report = is_cascade_experiment(sys, cascade_ctx);
                ok = ok && report.ok();
                section["cascade"] = cascade_json(report);
            }
            if (!first_kind_ctx.empty()) {
                const bool context_fk = is_first_kind_context(sys, first_kind_ctx);
                json entry = {{"context", first_kind_ctx}, {"context_of_first_kind", context_fk}};
                if (sys.is_experiment(first_kind_ctx)) {
                    const bool exp_fk = is_first_kind_experiment(sys, first_kind_ctx);
                    entry["experiment_of_first_kind"] = exp_fk;
                    ok = ok && exp_fk;
                } else {
                    ok = ok && context_fk;
                }
                section["first_kind"] = std::move(entry);
            }
            if (operational_flag) {
                const auto report = is_operational_entity(sys);
                ok = ok && report.operational;
                section["operational"] = operational_json(report);
            }
            if (section.empty()) {
                std::cerr << "verify needs --cascade, --first-kind or --operational\n";
                return 2;
            }
            return emit({{"command", "verify"}, {"sections", {{"experiments", std::move(section)}}}},
                        human, ok ? 0 : 1);
        }

        if (*product_cmd) {
            auto sys = load_system(file);
            if (contexts_arg.empty() == states_arg.empty()) {
                std::cerr << "product needs exactly one of --contexts/--states\n";
                return 2;
            }
            if (!contexts_arg.empty()) {
                const auto factors = split_list(contexts_arg, ',');
                std::optional<std::vector<Rational>> weights;
                if (!weights_arg.empty()) {
                    std::vector<Rational> parsed;
                    for (const auto& w : split_list(weights_arg, ','))
                        parsed.push_back(rational_from_string(w));
                    weights = std::move(parsed);
                }
                bool all_experiments = true;
                for (const auto& f : factors)
                    if (!sys.is_experiment(f)) all_experiments = false;
                sys = all_experiments ? product_experiment(sys, factors, new_id, weights)
                                      : product_context(sys, factors, new_id, weights);
            } else {
                sys = product_state(sys, split_list(states_arg, ','), new_id);
            }
            save_system(sys, out_path, human);
            return emit({{"command", "product"}, {"out", out_path}, {"id", new_id}}, human, 0);
        }

        if (*construct_cmd) {
            const auto input = load_system(from_sco);
            const auto sys = sco_to_scop(input.sco_part(), cap);
            save_system(sys, out_path, human);
            return emit({{"command", "construct"},
                         {"out", out_path},
                         {"properties", sys.properties.size()},
                         {"operational", is_operational_entity(sys).operational}},
                        human, 0);
        }

        if (*morphism_verify) {
            const auto mor = load_morphism(file);
            const auto report =
                sample_count ? verify_sampled(mor, sample_count, effective_seed(seed)) : verify(mor);
            json section = {{"covariance", morphism_report_json(report)}};
            if (sample_count) section["sampled"] = sample_count;
            bool ok = report.ok();
            if (ok && !sample_count) {
                const auto preservation = check_preservation(mor);
                section["preservation"] = {
                    {"order_ok", preservation.order_violations.empty()},
                    {"order_violations", preservation.order_violations},
                    {"meet_join_checked", preservation.meet_join_checked},
                    {"meet_join_violations", preservation.meet_join_violations}};
                ok = preservation.ok();
            }
            return emit({{"command", "morphism-verify"},
                         {"sections", {{"morphism", std::move(section)}}}},
                        human, ok ? 0 : 1);
        }

        if (*morphism_lift) {
            const auto sco = load_sco_morphism(sco_file);
            const auto lifted = lift(sco, cap);
            const auto report = verify(lifted);
            json n = json::object();
            for (const auto& [a, b] : lifted.n) n[a] = b;
            json section = {{"verify", morphism_report_json(report)}, {"n", std::move(n)}};
            return emit({{"command", "morphism-lift"},
                         {"sections", {{"morphism", std::move(section)}}}},
                        human, report.ok() ? 0 : 1);
        }

        if (*demo_quantum) {
            if (shape != "uniform" && shape != "gaussian") {
                std::cerr << "--shape must be uniform or gaussian\n";
                return 2;
            }
            const Grid grid{x0, x1, grid_cells};
            if (center_opt->count() == 0) center = (x0 + x1) / 2.0;
            if (sigma_opt->count() == 0) sigma = (x1 - x0) / 8.0;
            const auto psi = shape == "uniform" ? WaveFunction::uniform(grid)
                                                : WaveFunction::gaussian(grid, center, sigma);
            std::vector<Region> partition;
            for (std::size_t b = 0; b < blocks; ++b) {
                Region block;
                const std::size_t lo = b * grid_cells / blocks;
                const std::size_t hi = (b + 1) * grid_cells / blocks;
                for (std::size_t i = lo; i < hi; ++i) block.insert(i);
                partition.push_back(std::move(block));
            }
            const auto demo = build_quantum_scop(psi, partition, with_destruction);
            save_system(demo.system, out_path, human);
            return emit({{"command", "demo-quantum"},
                         {"out", out_path},
                         {"experiment", demo.experiment},
                         {"initial_state", demo.initial_state},
                         {"states", demo.system.states.size()}},
                        human, 0);
        }

        if (*demo_classical) {
            std::vector<std::pair<double, double>> particles;
            for (const auto& chunk : split_list(particles_arg, ';')) {
                const auto parts = split_list(chunk, ',');
                if (parts.size() != 2) {
                    std::cerr << "--particles entries are u,mv pairs\n";
                    return 2;
                }
                particles.emplace_back(std::stod(parts[0]), std::stod(parts[1]));
            }
            const auto demo = build_classical_scop(particles);
            save_system(demo.system, out_path, human);
            return emit({{"command", "demo-classical"},
                         {"out", out_path},
                         {"experiment", demo.experiment},
                         {"states", demo.system.states.size()}},
                        human, 0);
        }

        if (*sample_cmd) {
            const auto sys = load_system(file);
            const auto parts = split_list(start_arg, ',');
            if (parts.size() != 2) {
                std::cerr << "--start must be e,p\n";
                return 2;
            }
            const auto trajectory =
                sample_trajectory(sys, {parts[0], parts[1]}, steps, effective_seed(seed));
            for (const auto& [e, p] : trajectory) std::cout << e << "\t" << p << "\n";
            return 0;
        }

        if (*generate_cmd) {
            Profile profile;
            if (profile_name == "generic") profile = Profile::generic;
            else if (profile_name == "d-classical") profile = Profile::d_classical;
            else if (profile_name == "operational") profile = Profile::operational;
            else {
                std::cerr << "--profile must be generic|d-classical|operational\n";
                return 2;
            }
            const auto sys = generate_system(effective_seed(seed), sizes, profile);
            save_system(sys, out_path, human);
            return emit({{"command", "generate"},
                         {"out", out_path},
                         {"profile", profile_name},
                         {"states", sys.states.size()},
                         {"contexts", sys.contexts.size()},
                         {"properties", sys.properties.size()}},
                        human, 0);
        }
    } catch (const Error& err) {
        std::cerr << err.what() << "\n";
        return err.code() == errc::parse_error ? 2 : 1;
    } catch (const std::exception& err) {
        std::cerr << err.what() << "\n";
        return 2;
    }
    return 2;
}
