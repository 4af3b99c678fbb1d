// Copyright 2026 The propsel Authors
// SPDX-License-Identifier: Apache-2.0
#include "propsel/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace propsel {

SchemaError::SchemaError(std::string pointer, const std::string& message)
    : Error((pointer.empty() ? std::string("/") : pointer) + ": " + message),
      pointer_(std::move(pointer)) {}

namespace {

std::string child(const std::string& ptr, std::string_view key) {
    std::string out = ptr + "/";
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

std::string child(const std::string& ptr, std::size_t index) {
    return ptr + "/" + std::to_string(index);
}

const json& require_object(const json& v, const std::string& ptr) {
    if (!v.is_object()) throw SchemaError(ptr, "expected an object");
    return v;
}

const json& require_array(const json& v, const std::string& ptr) {
    if (!v.is_array()) throw SchemaError(ptr, "expected an array");
    return v;
}

const json& member(const json& obj, const std::string& ptr, const char* key) {
    require_object(obj, ptr);
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(child(ptr, key), "missing required member");
    return *it;
}

std::uint64_t as_uint(const json& v, const std::string& ptr) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    throw SchemaError(ptr, "expected a non-negative integer");
}

double as_number(const json& v, const std::string& ptr) {
    if (!v.is_number()) throw SchemaError(ptr, "expected a number");
    return v.get<double>();
}

const std::string& as_string(const json& v, const std::string& ptr) {
    if (!v.is_string()) throw SchemaError(ptr, "expected a string");
    return v.get_ref<const std::string&>();
}

std::uint64_t parse_uint_key(const std::string& key, const std::string& ptr) {
    if (key.empty() || key.size() > 19 ||
        !std::ranges::all_of(key, [](char c) { return c >= '0' && c <= '9'; }))
        throw SchemaError(ptr, "key must be a decimal integer");
    return std::stoull(key);
}

std::uint32_t parse_fold_key(const std::string& key, const std::string& ptr) {
    const auto v = parse_uint_key(key, ptr);
    if (v == 0 || v > 0xffffffffULL) throw SchemaError(ptr, "fold must be a positive integer");
    return static_cast<std::uint32_t>(v);
}

template <typename Map>
json keyed_object(const Map& m) {
    json out = json::object();
    for (const auto& [k, v] : m) out[std::to_string(k)] = v;
    return out;
}

Seed seed_member(const json& doc, const std::string& ptr, const char* key) {
    const auto& hex = as_string(member(doc, ptr, key), child(ptr, key));
    try {
        return Seed::from_hex(hex);
    } catch (const Error& e) {
        throw SchemaError(child(ptr, key), e.what());
    }
}

}  // namespace

RegistrySpec registry_spec_from_json(const json& doc) {
    require_object(doc, "");
    const bool has_h = doc.contains("homogeneous");
    const bool has_c = doc.contains("counts");
    if (has_h == has_c)
        throw SchemaError("", "expected exactly one of \"homogeneous\" or \"counts\"");
    if (has_h) {
        const auto& h = require_object(doc["homogeneous"], "/homogeneous");
        return HomogeneousSpec{as_uint(member(h, "/homogeneous", "n"), "/homogeneous/n"),
                               as_uint(member(h, "/homogeneous", "eb_gwei"),
                                       "/homogeneous/eb_gwei")};
    }
    const auto& c = require_object(doc["counts"], "/counts");
    FoldCounts counts;
    for (const auto& [key, value] : c.items()) {
        const auto ptr = child("/counts", key);
        counts[parse_fold_key(key, ptr)] = as_uint(value, ptr);
    }
    return counts;
}

json registry_spec_to_json(const RegistrySpec& spec, const ValidatorRegistry* built) {
    json out;
    if (const auto* h = std::get_if<HomogeneousSpec>(&spec)) {
        out["homogeneous"] = {{"n", h->n}, {"eb_gwei", h->effective_balance}};
    } else {
        out["counts"] = keyed_object(std::get<FoldCounts>(spec));
    }
    if (built) {
        out["totals"] = {{"n", built->size()},
                         {"total_effective_balance_gwei", built->total_effective_balance()}};
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("'" + path + "' is not valid JSON: " + e.what());
    }
}

json load_json_argument(std::string_view file_or_inline) {
    const auto first = file_or_inline.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && file_or_inline[first] == '{') {
        try {
            return json::parse(file_or_inline);
        } catch (const json::parse_error& e) {
            throw Error(std::string("inline JSON is invalid: ") + e.what());
        }
    }
    return load_json_file(std::string(file_or_inline));
}

json params_to_json(const SelectionParams& p) {
    return {{"max_effective_balance_gwei", p.max_effective_balance},
            {"max_random_byte", p.max_random_byte},
            {"shuffle_rounds", p.shuffle_rounds},
            {"balance_increment_gwei", p.balance_increment}};
}

SelectionParams params_from_json(const json& doc) {
    SelectionParams p;
    p.max_effective_balance = as_uint(member(doc, "", "max_effective_balance_gwei"),
                                      "/max_effective_balance_gwei");
    p.max_random_byte = as_uint(member(doc, "", "max_random_byte"), "/max_random_byte");
    p.shuffle_rounds =
        static_cast<std::uint32_t>(as_uint(member(doc, "", "shuffle_rounds"), "/shuffle_rounds"));
    p.balance_increment =
        as_uint(member(doc, "", "balance_increment_gwei"), "/balance_increment_gwei");
    p.validate();
    return p;
}

ConsolidationScenario scenario_from_json(const json& doc) {
    ConsolidationScenario s;
    s.initial_set_size = as_uint(member(doc, "", "initial_set_size"), "/initial_set_size");
    const auto& cats = require_array(member(doc, "", "categories"), "/categories");
    for (std::size_t i = 0; i < cats.size(); ++i) {
        const auto ptr = child("/categories", i);
        StakerCategory cat;
        cat.name = as_string(member(cats[i], ptr, "name"), child(ptr, "name"));
        cat.weight = as_number(member(cats[i], ptr, "weight"), child(ptr, "weight"));
        if (cat.weight < 0.0) throw SchemaError(child(ptr, "weight"), "must be non-negative");
        const auto sptr = child(ptr, "strategy");
        const auto& strat = require_object(member(cats[i], ptr, "strategy"), sptr);
        for (const auto& [key, value] : strat.items()) {
            const auto fptr = child(sptr, key);
            const double x = as_number(value, fptr);
            if (x < 0.0) throw SchemaError(fptr, "fraction must be non-negative");
            cat.strategy.fractions[parse_fold_key(key, fptr)] = x;
        }
        s.categories.push_back(std::move(cat));
    }
    return s;
}

json scenario_to_json(const ConsolidationScenario& s) {
    json cats = json::array();
    for (const auto& c : s.categories)
        cats.push_back({{"name", c.name}, {"weight", c.weight},
                        {"strategy", keyed_object(c.strategy.fractions)}});
    return {{"initial_set_size", s.initial_set_size}, {"categories", cats}};
}

json scenario_report_to_json(const ScenarioReport& r) {
    json per_type = json::object();
    for (const auto& [fold, t] : r.per_type)
        per_type[std::to_string(fold)] = {
            {"pass", t.pass}, {"candidate", t.candidate}, {"proposer", t.proposer}};
    return {{"counts", keyed_object(r.counts)},
            {"total", r.total},
            {"type_fractions_original", keyed_object(r.type_fractions_original)},
            {"pass_marginal", r.pass_marginal},
            {"candidate_marginal", r.candidate_marginal},
            {"proposer_marginal", r.proposer_marginal},
            {"per_type", per_type}};
}

ScenarioReport scenario_report_from_json(const json& doc) {
    ScenarioReport r;
    for (const auto& [key, v] : require_object(member(doc, "", "counts"), "/counts").items())
        r.counts[parse_fold_key(key, child("/counts", key))] = as_uint(v, child("/counts", key));
    r.total = as_uint(member(doc, "", "total"), "/total");
    std::uint64_t sum = 0;
    for (const auto& [f, c] : r.counts) sum += c;
    if (sum != r.total) throw SchemaError("/total", "does not equal the sum of counts");
    const std::string tf = "/type_fractions_original";
    for (const auto& [key, v] : require_object(member(doc, "", "type_fractions_original"), tf).items())
        r.type_fractions_original[parse_fold_key(key, child(tf, key))] = as_number(v, child(tf, key));
    r.pass_marginal = as_number(member(doc, "", "pass_marginal"), "/pass_marginal");
    r.candidate_marginal = as_number(member(doc, "", "candidate_marginal"), "/candidate_marginal");
    r.proposer_marginal = as_number(member(doc, "", "proposer_marginal"), "/proposer_marginal");
    for (const auto& [key, v] : require_object(member(doc, "", "per_type"), "/per_type").items()) {
        const auto ptr = child("/per_type", key);
        TypeProbabilities t;
        t.pass = as_number(member(v, ptr, "pass"), child(ptr, "pass"));
        t.candidate = as_number(member(v, ptr, "candidate"), child(ptr, "candidate"));
        t.proposer = as_number(member(v, ptr, "proposer"), child(ptr, "proposer"));
        r.per_type[parse_fold_key(key, ptr)] = t;
    }
    return r;
}

std::string scenario_report_csv(const ScenarioReport& r) {
    std::ostringstream out;
    out << std::setprecision(10);
    out << "fold,balance_eth,proportion_original,validators,p_candidate,p_pass,p_proposer\n";
    double proportion = 0.0, candidate = 0.0;
    for (const auto& [fold, t] : r.per_type) {
        const double w = r.type_fractions_original.at(fold);
        proportion += w;
        candidate += t.candidate;
        out << fold << ',' << 32 * fold << ',' << w << ',' << r.counts.at(fold) << ','
            << t.candidate << ',' << t.pass << ',' << t.proposer << '\n';
    }
    out << "TOTAL,," << proportion << ',' << r.total << ',' << candidate << ",,\n";
    return out.str();
}

json shuffle_vector_to_json(const Seed& seed, std::uint64_t index_count,
                            const SelectionParams& params) {
    ShuffledSequence order(index_count, seed, params);
    json mapping = json::array();
    for (std::uint64_t i = 0; i < index_count; ++i) mapping.push_back(order.at(i));
    return {{"seed_hex", seed.hex()},
            {"index_count", index_count},
            {"shuffle_rounds", params.shuffle_rounds},
            {"mapping", mapping}};
}

void validate_shuffle_vector(const json& doc) {
    seed_member(doc, "", "seed_hex");
    const auto n = as_uint(member(doc, "", "index_count"), "/index_count");
    as_uint(member(doc, "", "shuffle_rounds"), "/shuffle_rounds");
    const auto& mapping = require_array(member(doc, "", "mapping"), "/mapping");
    if (mapping.size() != n) throw SchemaError("/mapping", "length differs from index_count");
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < mapping.size(); ++i) {
        const auto v = as_uint(mapping[i], child("/mapping", i));
        if (v >= n || seen[v]) throw SchemaError(child("/mapping", i), "not a permutation");
        seen[v] = true;
    }
}

json proposer_vector_to_json(const Seed& seed, const RegistrySpec& spec,
                             const SelectionOutcome& outcome) {
    json out = {{"seed_hex", seed.hex()},
                {"registry_spec", registry_spec_to_json(spec)},
                {"proposer_index", outcome.proposer_index},
                {"iterations", outcome.iterations}};
    if (outcome.trace) {
        json trace = json::array();
        for (const auto& e : *outcome.trace)
            trace.push_back({{"candidate", e.candidate},
                             {"random_byte", e.random_byte},
                             {"passed", e.passed}});
        out["trace"] = trace;
    }
    return out;
}

void validate_proposer_vector(const json& doc) {
    seed_member(doc, "", "seed_hex");
    registry_spec_from_json(member(doc, "", "registry_spec"));
    as_uint(member(doc, "", "proposer_index"), "/proposer_index");
    const auto iterations = as_uint(member(doc, "", "iterations"), "/iterations");
    if (iterations == 0) throw SchemaError("/iterations", "must be at least 1");
    if (doc.contains("trace")) {
        const auto& trace = require_array(doc["trace"], "/trace");
        if (trace.size() != iterations)
            throw SchemaError("/trace", "length differs from iterations");
        for (std::size_t i = 0; i < trace.size(); ++i) {
            const auto ptr = child("/trace", i);
            as_uint(member(trace[i], ptr, "candidate"), child(ptr, "candidate"));
            if (as_uint(member(trace[i], ptr, "random_byte"), child(ptr, "random_byte")) > 255)
                throw SchemaError(child(ptr, "random_byte"), "must be a byte");
            const auto& passed = member(trace[i], ptr, "passed");
            if (!passed.is_boolean()) throw SchemaError(child(ptr, "passed"), "expected a boolean");
            if (passed.get<bool>() != (i + 1 == trace.size()))
                throw SchemaError(child(ptr, "passed"), "only the last entry may pass");
        }
    }
}

json simulation_report_to_json(const SimulationReport& r, const SimulationPlan& plan,
                               const ComparisonSummary* comparison) {
    json out = {{"base_seed_hex", r.base_seed.hex()},
                {"slots", r.slots},
                {"registry", registry_spec_to_json(plan.registry)},
                {"params", params_to_json(plan.params)},
                {"per_validator_counts", r.per_validator_counts},
                {"iteration_histogram", keyed_object(r.iteration_histogram)},
                {"per_balance_counts", keyed_object(r.per_balance_counts)},
                {"exhausted_slots", r.exhausted_slots},
                {"metadata", {{"elapsed_seconds", r.elapsed_seconds}, {"threads", plan.threads}}}};
    if (!r.slot_records.empty()) {
        json records = json::array();
        for (const auto& s : r.slot_records)
            records.push_back({{"slot", s.slot}, {"proposer", s.proposer}, {"iterations", s.iterations}});
        out["slot_records"] = records;
    }
    if (comparison) {
        json groups = json::array();
        for (const auto& g : comparison->groups)
            groups.push_back({{"balance_gwei", g.balance},
                              {"validators", g.validators},
                              {"observed", g.observed},
                              {"expected", g.expected},
                              {"z", g.z},
                              {"flagged", g.flagged}});
        out["comparisons"] = {{"groups", groups},
                              {"max_relative_deviation", comparison->max_relative_deviation},
                              {"chi_square", comparison->chi_square},
                              {"degrees_of_freedom", comparison->degrees_of_freedom},
                              {"any_flagged", comparison->any_flagged}};
    }
    return out;
}

SimulationReport simulation_report_from_json(const json& doc) {
    SimulationReport r;
    r.base_seed = seed_member(doc, "", "base_seed_hex");
    r.slots = as_uint(member(doc, "", "slots"), "/slots");
    const auto& counts = require_array(member(doc, "", "per_validator_counts"), "/per_validator_counts");
    std::uint64_t selected = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        r.per_validator_counts.push_back(as_uint(counts[i], child("/per_validator_counts", i)));
        selected += r.per_validator_counts.back();
    }
    std::uint64_t hist_total = 0;
    for (const auto& [key, v] :
         require_object(member(doc, "", "iteration_histogram"), "/iteration_histogram").items()) {
        const auto ptr = child("/iteration_histogram", key);
        const auto k = parse_uint_key(key, ptr);
        if (k == 0) throw SchemaError(ptr, "iteration counts start at 1");
        r.iteration_histogram[k] = as_uint(v, ptr);
        hist_total += r.iteration_histogram[k];
    }
    for (const auto& [key, v] :
         require_object(member(doc, "", "per_balance_counts"), "/per_balance_counts").items()) {
        const auto ptr = child("/per_balance_counts", key);
        r.per_balance_counts[parse_uint_key(key, ptr)] = as_uint(v, ptr);
    }
    const auto& ex = require_array(member(doc, "", "exhausted_slots"), "/exhausted_slots");
    for (std::size_t i = 0; i < ex.size(); ++i)
        r.exhausted_slots.push_back(as_uint(ex[i], child("/exhausted_slots", i)));
    if (selected + r.exhausted_slots.size() != r.slots)
        throw SchemaError("/per_validator_counts", "counts do not add up to slots");
    if (hist_total != selected)
        throw SchemaError("/iteration_histogram", "histogram total differs from selections");
    if (doc.contains("slot_records")) {
        const auto& recs = require_array(doc["slot_records"], "/slot_records");
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const auto ptr = child("/slot_records", i);
            r.slot_records.push_back({as_uint(member(recs[i], ptr, "slot"), child(ptr, "slot")),
                                      as_uint(member(recs[i], ptr, "proposer"), child(ptr, "proposer")),
                                      as_uint(member(recs[i], ptr, "iterations"), child(ptr, "iterations"))});
        }
    }
    return r;
}

std::string iteration_histogram_csv(const SimulationReport& r) {
    std::uint64_t total = 0;
    for (const auto& [k, c] : r.iteration_histogram) total += c;
    std::ostringstream out;
    out << std::setprecision(10);
    out << "iterations,failures,count,empirical_pmf\n";
    for (const auto& [k, c] : r.iteration_histogram)
        out << k << ',' << k - 1 << ',' << c << ',' << static_cast<double>(c) / total << '\n';
    return out.str();
}

}  // namespace propsel
