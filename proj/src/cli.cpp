// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include "propsel/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "propsel/analytics.hpp"
#include "propsel/json_io.hpp"
#include "propsel/montecarlo.hpp"
#include "propsel/scenario.hpp"
#include "propsel/selection.hpp"

namespace propsel::cli {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

struct Globals {
    std::string preset = "post-7251";
    std::optional<Gwei> max_eb;
    std::optional<std::uint32_t> rounds;
    bool paper_rounding = false;
    std::string out_dir;

    SelectionParams params() const {
        SelectionParams p = max_eb ? SelectionParams::with_max_eb(*max_eb)
                                   : SelectionParams::preset(preset);
        if (rounds) p.shuffle_rounds = *rounds;
        p.validate();
        return p;
    }

    EligibilityForm form() const {
        return paper_rounding ? EligibilityForm::paper_rounded : EligibilityForm::exact;
    }

    std::filesystem::path resolve(const std::string& file) const {
        std::filesystem::path p(file);
        if (p.is_relative() && !out_dir.empty()) return std::filesystem::path(out_dir) / p;
        return p;
    }
};

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Proposer selection simulator and analytics", "propsel"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    if (const char* env = std::getenv("PROPSEL_OUT_DIR")) g.out_dir = env;
    app.add_option("--preset", g.preset, "pre-7251 (MaxEB 32 ETH) or post-7251 (2048 ETH)")
        ->check(CLI::IsMember({"pre-7251", "post-7251"}));
    app.add_option("--max-eb", g.max_eb, "custom MaxEB in Gwei, overrides --preset");
    app.add_option("--rounds", g.rounds, "swap-or-not shuffle rounds (default 90)");
    app.add_flag("--paper-rounding", g.paper_rounding,
                 "use eligibility probabilities rounded to three decimals");
    app.add_option("--out-dir", g.out_dir, "directory for output files (env PROPSEL_OUT_DIR)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "closed-form probabilities");
    analyze->require_subcommand(1);

    auto* rounds = analyze->add_subcommand("rounds", "failures before the first passing check");
    std::optional<double> p_opt;
    std::optional<Gwei> rounds_eb;
    std::uint64_t kmax = 400;
    std::string rounds_format = "csv";
    auto* p_flag = rounds->add_option("--p", p_opt, "pass probability per round");
    auto* eb_flag = rounds->add_option("--eb", rounds_eb, "effective balance in Gwei");
    p_flag->excludes(eb_flag);
    rounds->add_option("--kmax", kmax, "largest failure count tabulated");
    rounds->add_option("--format", rounds_format)->check(CLI::IsMember({"csv", "json"}));

    auto* elig = analyze->add_subcommand("eligibility", "probability of passing the check");
    Gwei elig_eb = 0;
    std::string elig_format = "text";
    elig->add_option("--eb", elig_eb, "effective balance in Gwei")->required();
    elig->add_option("--format", elig_format)->check(CLI::IsMember({"text", "json"}));

    // scenario
    auto* scenario = app.add_subcommand("scenario", "consolidation scenarios");
    scenario->require_subcommand(1);
    auto* scen_run = scenario->add_subcommand("run", "consolidate and compute marginals");
    std::string scen_file;
    std::string evidence;
    scen_run->add_option("file", scen_file, "scenario config JSON")->required();
    scen_run->add_option("--evidence", evidence, "category name or fold factor");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo proposer selection");
    std::string sim_registry;
    std::uint64_t slots = 0;
    std::string seed_hex;
    unsigned threads = 1;
    std::string sim_out;
    bool sim_csv = false;
    bool sim_trace = false;
    std::optional<std::uint64_t> sim_max_iter;
    simulate->add_option("--registry", sim_registry, "registry spec file or inline JSON")->required();
    simulate->add_option("--slots", slots, "independent selections")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed_hex, "base seed, 64 hex digits")->required();
    simulate->add_option("--threads", threads)->check(CLI::PositiveNumber);
    simulate->add_option("--out", sim_out, "write the JSON report here");
    simulate->add_flag("--csv", sim_csv, "print the iteration histogram as CSV");
    simulate->add_flag("--trace", sim_trace, "keep per-slot proposer and iteration records");
    simulate->add_option("--max-iterations", sim_max_iter, "per-slot candidate bound");

    // vectors
    auto* vectors = app.add_subcommand("vectors", "test vectors");
    vectors->require_subcommand(1);
    auto* vshuffle = vectors->add_subcommand("shuffle", "shuffled index mapping");
    std::uint64_t count = 0;
    std::string vseed;
    vshuffle->add_option("--count", count, "index_count")->required()->check(CLI::PositiveNumber);
    vshuffle->add_option("--seed", vseed)->required();
    auto* vproposer = vectors->add_subcommand("proposer", "compute_proposer_index outcome");
    std::string vregistry;
    std::string pseed;
    bool vtrace = false;
    vproposer->add_option("--registry", vregistry, "registry spec file or inline JSON")->required();
    vproposer->add_option("--seed", pseed)->required();
    vproposer->add_flag("--trace", vtrace);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        const SelectionParams params = g.params();

        if (rounds->parsed()) {
            if (!p_opt && !rounds_eb) {
                err << "error: analyze rounds needs --p or --eb\n";
                return kUsageError;
            }
            const double p = p_opt ? *p_opt : eligibility_probability(*rounds_eb, params, g.form());
            const RoundDistribution dist(p);
            if (rounds_format == "json") {
                json tails = json::object();
                for (std::uint64_t k : {100, 200, 300, 400})
                    tails[std::to_string(k)] = dist.survival(k);
                out << json{{"pass_probability", p},
                            {"median_failures", dist.median()},
                            {"half_life", dist.half_life()},
                            {"mean_failures", dist.mean_failures()},
                            {"survival_more_than", tails}}
                           .dump(2)
                    << "\n";
            } else {
                out << "k,pmf,cdf,survival\n";
                for (std::uint64_t k = 0; k <= kmax; ++k)
                    out << k << ',' << fmt_double(dist.pmf(k)) << ',' << fmt_double(dist.cdf(k))
                        << ',' << fmt_double(dist.survival(k)) << '\n';
            }
            return kOk;
        }

        if (elig->parsed()) {
            const double q = eligibility_probability(elig_eb, params, g.form());
            if (elig_format == "json") {
                out << json{{"eb_gwei", elig_eb},
                            {"max_effective_balance_gwei", params.max_effective_balance},
                            {"probability", q},
                            {"exact", eligibility_probability(elig_eb, params)},
                            {"continuous", eligibility_probability(elig_eb, params,
                                                                   EligibilityForm::continuous)},
                            {"passing_bytes", passing_byte_count(elig_eb, params)}}
                           .dump(2)
                    << "\n";
            } else {
                out << fmt_double(q) << "\n";
            }
            return kOk;
        }

        if (scen_run->parsed()) {
            auto sc = scenario_from_json(load_json_file(scen_file));
            if (!evidence.empty()) sc = apply_evidence(sc, parse_evidence(evidence));
            const auto report = marginals(sc, params, g.form());
            const auto csv = scenario_report_csv(report);
            json block = scenario_report_to_json(report);
            block["evidence"] = evidence.empty() ? json(nullptr) : json(evidence);
            block["eligibility"] = g.paper_rounding ? "paper-rounded" : "exact";
            block["initial_set_size"] = sc.initial_set_size;
            if (!g.out_dir.empty()) {
                write_file(g.resolve("scenario.csv"), csv);
                write_file(g.resolve("marginals.json"), block.dump(2) + "\n");
            } else {
                out << csv << "\n" << block.dump(2) << "\n";
            }
            return kOk;
        }

        if (simulate->parsed()) {
            SimulationPlan plan;
            plan.registry = registry_spec_from_json(load_json_argument(sim_registry));
            plan.params = params;
            plan.slots = slots;
            plan.base_seed = Seed::from_hex(seed_hex);
            plan.threads = threads;
            plan.collect_trace = sim_trace;
            plan.max_iterations = sim_max_iter;
            const auto registry = build_registry(plan.registry, params);
            const auto report = run(plan, registry);
            const auto cmp = compare(report, registry);
            const auto doc = simulation_report_to_json(report, plan, &cmp);
            if (!sim_out.empty()) write_file(g.resolve(sim_out), doc.dump(2) + "\n");
            if (sim_csv)
                out << iteration_histogram_csv(report);
            else if (sim_out.empty())
                out << doc.dump(2) << "\n";
            if (!report.exhausted_slots.empty())
                err << report.exhausted_slots.size() << " slot(s) hit the iteration bound\n";
            return kOk;
        }

        if (vshuffle->parsed()) {
            out << shuffle_vector_to_json(Seed::from_hex(vseed), count, params).dump(2) << "\n";
            return kOk;
        }

        if (vproposer->parsed()) {
            const auto spec = registry_spec_from_json(load_json_argument(vregistry));
            const auto registry = build_registry(spec, params);
            const Seed seed = Seed::from_hex(pseed);
            SelectionOptions options;
            options.collect_trace = vtrace;
            const auto outcome = compute_proposer_index(registry, seed, options);
            out << proposer_vector_to_json(seed, spec, outcome).dump(2) << "\n";
            return kOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
    err << app.help();
    return kUsageError;
}

}  // namespace propsel::cli
