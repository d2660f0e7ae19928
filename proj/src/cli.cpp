#include "pwe/cli.hpp"

#include "pwe/delegation.hpp"
#include "pwe/equilibrium.hpp"
#include "pwe/errors.hpp"
#include "pwe/generators.hpp"
#include "pwe/instance.hpp"
#include "pwe/oracle.hpp"
#include "pwe/persuasion.hpp"
#include "pwe/schemes.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

namespace pwe {

using nlohmann::json;

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed JSON in ") + path + ": " + ex.what());
    }
    return j;
}

void emit(const json& j, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw InputError("cannot write " + out_path);
    file << j.dump(2) << "\n";
}

std::string ratio_string(const std::optional<Rational>& r) {
    return r ? rational_to_string(*r) : std::string("inf");
}

std::vector<long> parse_numbers(const std::string& csv) {
    std::vector<long> numbers;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            numbers.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw InputError("bad number list entry: " + item);
        }
    }
    if (numbers.empty()) throw InputError("empty number list");
    return numbers;
}

json delegation_result_json(const Instance& inst, const std::string& strategy,
                            const DecisionScheme& psi, const Rational& utility) {
    json j;
    j["mode"] = "delegation";
    j["strategy"] = strategy;
    j["psi"] = decision_to_json(inst, psi);
    j["utility"] = rational_to_string(utility);
    return j;
}

json persuasion_result_json(const Instance& inst, const std::string& strategy,
                            const SignalingScheme& phi, const Rational& utility) {
    json j;
    j["mode"] = "persuasion";
    j["strategy"] = strategy;
    j["phi"] = signaling_to_json(inst, phi);
    j["utility"] = rational_to_string(utility);
    return j;
}

std::string pick_delegation_auto(const InstanceProfile& p) {
    if (p.proof_of_membership_shape) return "membership";
    if (p.unique_accepts) return "unique-accepts";
    if (p.laminar_states) return "laminar-states";
    if (p.laminar_signals) return "laminar-signals";
    if (p.max_state_degree <= 2) return "sdp";
    return "lp";
}

std::string pick_persuasion_auto(const InstanceProfile& p) {
    if (p.proof_of_membership_shape) return "membership";
    if (p.unique_rejects) return "unique-rejects";
    if (p.laminar_states) return "laminar-states";
    if (p.has_global_signal) return "global";
    if (p.unique_accepts) return "ptas";
    return "2n";
}

json run_bench(std::uint64_t seed, int count);

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solvers and oracles for persuasion games with evidence"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::uint64_t seed = 1;
    std::string out_path;
    std::string format = "json";
    app.add_option("--seed", seed, "base seed for all randomness");
    app.add_option("-o,--output", out_path, "write the JSON result to a file");
    app.add_option("--format", format, "output format (json)")->check(CLI::IsMember({"json"}));

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance");
    std::string gen_kind, graph_path, numbers_csv, shape_name = "general";
    int gen_n = 4, gen_m = 4, gen_k = 1, gen_max_degree = 2;
    long gen_M = 0;
    double gen_density = 0.4, gen_frac = 0.5;
    gen->add_option("kind", gen_kind, "instance family")->required()->check(CLI::IsMember(
        {"independent-set", "independent-set-rejects", "vertex-cover", "partition", "cbve",
         "max-k-vertex-cover", "random"}));
    gen->add_option("--graph", graph_path, "graph JSON file (adjacency list)");
    gen->add_option("--numbers", numbers_csv, "comma-separated positive integers");
    gen->add_option("--n", gen_n, "number of states");
    gen->add_option("--m", gen_m, "number of signals");
    gen->add_option("--density", gen_density, "edge probability");
    gen->add_option("--frac-a", gen_frac, "acceptable fraction");
    gen->add_option("--shape", shape_name, "random shape class");
    gen->add_option("--max-degree", gen_max_degree, "degree bound for degree-bounded shape");
    gen->add_option("--k", gen_k, "cover size for max-k-vertex-cover");
    gen->add_option("--M", gen_M, "weight parameter for independent-set-rejects (default |V|^3)");

    // solve
    auto* solve = app.add_subcommand("solve", "run a solver");
    std::string solve_problem, solve_instance, strategy = "auto", accept_csv;
    double epsilon = 0.25, alpha = 0.8825, beta = 0.0384;
    int trials = 200, samples = 200;
    solve->add_option("problem", solve_problem, "delegation or persuasion")
        ->required()
        ->check(CLI::IsMember({"delegation", "persuasion"}));
    solve->add_option("instance", solve_instance, "instance JSON file")->required();
    solve->add_option("--strategy", strategy, "solver strategy (auto dispatches on structure)");
    solve->add_option("--epsilon", epsilon, "PTAS accuracy parameter");
    solve->add_option("--trials", trials, "LP-rounding trials");
    solve->add_option("--samples", samples, "SDP rounding samples");
    solve->add_option("--alpha", alpha, "threshold rounding slope");
    solve->add_option("--beta", beta, "threshold rounding offset");
    solve->add_option("--accept-signals", accept_csv, "accept set for the partition-lp strategy");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact brute-force optimum");
    std::string oracle_problem, oracle_instance;
    oracle->add_option("problem", oracle_problem, "delegation or persuasion")
        ->required()
        ->check(CLI::IsMember({"delegation", "persuasion"}));
    oracle->add_option("instance", oracle_instance, "instance JSON file")->required();

    // equilibrium
    auto* equil = app.add_subcommand("equilibrium", "sequential equilibrium via max flow");
    std::string equil_instance;
    equil->add_option("instance", equil_instance, "instance JSON file")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "check schemes and recompute utilities");
    std::string verify_instance, verify_result;
    verify->add_option("instance", verify_instance, "instance JSON file")->required();
    verify->add_option("result", verify_result, "solver or equilibrium output JSON")->required();

    // poa
    auto* poa = app.add_subcommand("poa", "price of anarchy/stability report");
    std::string poa_instance;
    poa->add_option("instance", poa_instance, "instance JSON file")->required();

    // sweep-sdp-ratio
    auto* sweep = app.add_subcommand("sweep-sdp-ratio", "per-term rounding ratio sweep");
    double sweep_alpha = 0.8825, sweep_beta = 0.0384, sweep_step = 0.05;
    sweep->add_option("--alpha", sweep_alpha, "nu slope");
    sweep->add_option("--beta", sweep_beta, "nu offset");
    sweep->add_option("--step", sweep_step, "grid step");

    // bench
    auto* bench = app.add_subcommand("bench", "corpus sweep with solver/oracle ratios");
    int bench_count = 4;
    bench->add_option("--count", bench_count, "instances per scenario");

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    storage.insert(storage.begin(), "pwe");
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << json{{"error", "invalid-arguments"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    }

    try {
        if (*gen) {
            GenOutput result{Instance{}, json::object()};
            if (gen_kind == "random") {
                RandomParams params;
                params.n = gen_n;
                params.m = gen_m;
                params.density = gen_density;
                params.frac_acceptable = gen_frac;
                params.shape = random_shape_from_string(shape_name);
                params.max_degree = gen_max_degree;
                result = gen_random(params, seed);
            } else if (gen_kind == "partition") {
                result = gen_partition(parse_numbers(numbers_csv));
            } else if (gen_kind == "cbve") {
                result = gen_cbve(colored_bipartite_from_json(load_json_file(graph_path)));
            } else {
                if (graph_path.empty()) throw InputError(gen_kind + " requires --graph");
                const Graph g = graph_from_json(load_json_file(graph_path));
                if (gen_kind == "independent-set") result = gen_independent_set(g);
                else if (gen_kind == "vertex-cover") result = gen_vertex_cover(g);
                else if (gen_kind == "max-k-vertex-cover") result = gen_max_k_vertex_cover(g, gen_k);
                else {
                    const long V = static_cast<long>(g.vertices.size());
                    result = gen_independent_set_rejects(g, gen_M > 0 ? gen_M : V * V * V);
                }
            }
            json j = instance_to_json(result.instance);
            j["metadata"] = result.metadata;
            emit(j, out_path, out);
            return 0;
        }

        if (*solve) {
            const Instance inst = load_instance_file(solve_instance);
            const InstanceProfile profile = classify(inst);
            if (solve_problem == "delegation") {
                std::string chosen = strategy == "auto" ? pick_delegation_auto(profile) : strategy;
                json j;
                if (chosen == "trivial") {
                    const auto r = trivial_scheme(inst);
                    j = delegation_result_json(inst, chosen, r.psi, r.utility);
                } else if (chosen == "lp") {
                    const auto r = lp_round_scheme(inst, trials, seed);
                    j = delegation_result_json(inst, chosen, r.psi, r.utility);
                    j["metadata"] = {{"trials", trials}, {"seed", seed}};
                } else if (chosen == "sdp") {
                    ThreshParams params;
                    params.alpha = alpha;
                    params.beta = beta;
                    params.samples = samples;
                    params.seed = seed;
                    const auto r = sdp_scheme_deg2(inst, params);
                    j = delegation_result_json(inst, chosen, r.psi, r.utility);
                    j["metadata"] = {{"sdp_objective", r.sdp_objective},
                                     {"sdp_residual", r.sdp.max_residual},
                                     {"samples", samples},
                                     {"seed", seed}};
                } else if (chosen == "unique-accepts") {
                    const auto r = unique_accepts_exact(inst);
                    j = delegation_result_json(inst, chosen, r.psi, r.utility);
                } else if (chosen == "membership") {
                    const auto r = membership_exact(inst);
                    j = delegation_result_json(inst, chosen, r.psi, r.utility);
                } else if (chosen == "laminar-states") {
                    const auto r = laminar_states_exact(inst);
                    j = delegation_result_json(inst, chosen, r.psi, r.utility);
                } else if (chosen == "laminar-signals") {
                    const auto r = laminar_signals_exact(inst);
                    j = delegation_result_json(inst, chosen, r.psi, r.utility);
                } else {
                    throw InputError("unknown delegation strategy: " + chosen);
                }
                emit(j, out_path, out);
                return 0;
            }
            std::string chosen = strategy == "auto" ? pick_persuasion_auto(profile) : strategy;
            json j;
            if (chosen == "partition-lp") {
                std::vector<int> accept;
                if (!accept_csv.empty()) {
                    std::stringstream ss(accept_csv);
                    std::string name;
                    while (std::getline(ss, name, ',')) {
                        const int g = inst.signal_index(name);
                        if (g < 0) throw InputError("unknown signal in --accept-signals: " + name);
                        accept.push_back(g);
                    }
                }
                const auto r = optimal_for_partition(inst, partition_from_accept_set(inst, accept));
                if (!r) {
                    err << json{{"error", "infeasible-partition"},
                                {"detail", "no scheme implements the requested partition"}}
                               .dump()
                        << "\n";
                    return 3;
                }
                j = persuasion_result_json(inst, chosen, r->phi, r->utility);
            } else if (chosen == "2n") {
                const auto r = approx_2n(inst);
                j = persuasion_result_json(inst, chosen, r.phi, r.utility);
            } else if (chosen == "ptas") {
                const auto r = ptas_unique_accepts(inst, epsilon);
                j = persuasion_result_json(inst, chosen, r.phi, r.utility);
                j["metadata"] = {{"epsilon", epsilon}};
            } else if (chosen == "unique-rejects") {
                const auto r = unique_rejects_exact(inst);
                j = persuasion_result_json(inst, chosen, r.phi, r.utility);
            } else if (chosen == "global") {
                const auto r = global_signal_exact(inst);
                j = persuasion_result_json(inst, chosen, r.phi, r.utility);
            } else if (chosen == "membership") {
                const auto r = membership_exact_persuasion(inst);
                j = persuasion_result_json(inst, chosen, r.phi, r.utility);
            } else if (chosen == "laminar-states") {
                const auto r = laminar_states_exact_persuasion(inst);
                j = persuasion_result_json(inst, chosen, r.phi, r.utility);
            } else {
                throw InputError("unknown persuasion strategy: " + chosen);
            }
            emit(j, out_path, out);
            return 0;
        }

        if (*oracle) {
            const Instance inst = load_instance_file(oracle_instance);
            json j;
            if (oracle_problem == "delegation") {
                const auto r = delegation_oracle(inst);
                j["mode"] = "delegation";
                j["psi"] = decision_to_json(inst, r.psi);
                j["utility"] = rational_to_string(r.utility);
            } else {
                const auto r = persuasion_oracle(inst);
                j["mode"] = "persuasion";
                j["phi"] = signaling_to_json(inst, r.phi);
                j["utility"] = rational_to_string(r.utility);
            }
            emit(j, out_path, out);
            return 0;
        }

        if (*equil) {
            const Instance inst = load_instance_file(equil_instance);
            const EquilibriumResult r = compute_equilibrium(inst);
            const EquilibriumVerdict verdict = verify_equilibrium(inst, r.phi, r.psi);
            const UtilityPair u = evaluate(inst, r.phi, r.psi);
            json j;
            j["phi"] = signaling_to_json(inst, r.phi);
            j["psi"] = decision_to_json(inst, r.psi);
            j["iterations"] = r.trace.size();
            j["verdict"] = {{"accepted", verdict.accepted}, {"violations", verdict.violations}};
            j["utilities"] = {{"sender", rational_to_string(u.sender)},
                              {"receiver", rational_to_string(u.receiver)}};
            json trace = json::array();
            for (const auto& it : r.trace) {
                json titem;
                titem["kind"] = it.kind;
                json sigs = json::array();
                for (int g : it.fixed_signals) sigs.push_back(inst.signals[g]);
                titem["fixed_signals"] = sigs;
                json racc = json::array(), rrej = json::array();
                for (int s : it.removed_accept_states) racc.push_back(inst.states[s].id);
                for (int s : it.removed_reject_states) rrej.push_back(inst.states[s].id);
                titem["removed_accept_states"] = racc;
                titem["removed_reject_states"] = rrej;
                trace.push_back(titem);
            }
            j["trace"] = trace;
            emit(j, out_path, out);
            return 0;
        }

        if (*verify) {
            const Instance inst = load_instance_file(verify_instance);
            const json r = load_json_file(verify_result);
            json j;
            const bool has_phi = r.contains("phi");
            const bool has_psi = r.contains("psi");
            if (!has_phi && !has_psi) throw InputError("result JSON has neither phi nor psi");
            std::optional<Rational> claimed;
            if (r.contains("utility")) claimed = rational_from_string(r.at("utility").get<std::string>());

            if (has_phi && has_psi) {
                const auto phi = signaling_from_json(inst, r.at("phi"));
                const auto psi = decision_from_json(inst, r.at("psi"));
                const auto verdict = verify_equilibrium(inst, phi, psi);
                const auto u = evaluate(inst, phi, psi);
                j["schemes_valid"] = true;
                j["equilibrium"] = {{"accepted", verdict.accepted}, {"violations", verdict.violations}};
                j["utilities"] = {{"sender", rational_to_string(u.sender)},
                                  {"receiver", rational_to_string(u.receiver)}};
            } else if (has_psi) {
                const auto psi = decision_from_json(inst, r.at("psi"));
                check_scheme(inst, psi);
                const auto phi = sender_best_response(inst, psi);
                const auto u = evaluate(inst, phi, psi);
                j["schemes_valid"] = true;
                j["recomputed_utility"] = rational_to_string(u.receiver);
                if (claimed) j["matches_claimed"] = (*claimed == u.receiver);
            } else {
                const auto phi = signaling_from_json(inst, r.at("phi"));
                check_scheme(inst, phi);
                const auto psi = receiver_best_response(inst, phi);
                const auto u = evaluate(inst, phi, psi);
                j["schemes_valid"] = true;
                j["recomputed_utility"] = rational_to_string(u.sender);
                if (claimed) j["matches_claimed"] = (*claimed == u.sender);
            }
            emit(j, out_path, out);
            return 0;
        }

        if (*poa) {
            const Instance inst = load_instance_file(poa_instance);
            const PriceReport r = price_report(inst);
            json j;
            j["receiver"] = {{"optimum", rational_to_string(r.receiver_optimum)},
                             {"poa", ratio_string(r.receiver_poa)},
                             {"pos", ratio_string(r.receiver_pos)}};
            j["sender"] = {{"optimum", rational_to_string(r.sender_optimum)},
                           {"poa", ratio_string(r.sender_poa)},
                           {"pos", ratio_string(r.sender_pos)}};
            emit(j, out_path, out);
            return 0;
        }

        if (*sweep) {
            const SweepResult r = thresh_ratio_sweep(sweep_alpha, sweep_beta, sweep_step);
            json j;
            j["or_supremum"] = r.or_supremum;
            j["and_supremum"] = r.and_supremum;
            j["or_argmax"] = {{"xi_i", r.or_argmax.xi_i}, {"xi_j", r.or_argmax.xi_j},
                              {"rho", r.or_argmax.rho}, {"ratio", r.or_argmax.ratio}};
            j["and_argmax"] = {{"xi_i", r.and_argmax.xi_i}, {"xi_j", r.and_argmax.xi_j},
                               {"rho", r.and_argmax.rho}, {"ratio", r.and_argmax.ratio}};
            j["feasible_points"] = r.feasible_points;
            json flagged = json::array();
            for (const auto& p : r.flagged)
                flagged.push_back({{"xi_i", p.xi_i}, {"xi_j", p.xi_j}, {"rho", p.rho}});
            j["flagged"] = flagged;
            emit(j, out_path, out);
            return 0;
        }

        if (*bench) {
            emit(run_bench(seed, bench_count), out_path, out);
            return 0;
        }
    } catch (const PreconditionError& ex) {
        err << json{{"error", "precondition-violation"}, {"detail", ex.what()}}.dump() << "\n";
        return 3;
    } catch (const InputError& ex) {
        err << json{{"error", "invalid-input"}, {"detail", ex.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        err << json{{"error", "internal"}, {"detail", ex.what()}}.dump() << "\n";
        return 2;
    }
    return 2;
}

namespace {

json run_bench(std::uint64_t seed, int count) {
    struct Row {
        std::string scenario;
        std::string solver;
        double worst_ratio = 1.0;
        double mean_ratio = 0.0;
        int instances = 0;
    };
    std::vector<Row> rows;

    auto add_ratio = [](Row& row, const Rational& oracle, const Rational& got) {
        const RatioReport rr = bounded_ratio_check(oracle, got);
        const double ratio = rr.infinite ? std::numeric_limits<double>::infinity()
                                         : rational_to_double(rr.ratio);
        row.worst_ratio = std::max(row.worst_ratio, ratio);
        row.mean_ratio += ratio;
        ++row.instances;
    };

    auto finish = [&](Row row) {
        if (row.instances > 0) row.mean_ratio /= row.instances;
        rows.push_back(std::move(row));
    };

    RandomParams base;
    base.n = 6;
    base.m = 6;
    base.density = 0.45;

    {
        Row trivial_row{"general", "trivial"}, lp_row{"general", "lp-round"}, nn_row{"general", "2n"};
        for (int i = 0; i < count; ++i) {
            const Instance inst = gen_random(base, derive_seed(seed, i)).instance;
            const Rational del = delegation_oracle(inst).utility;
            const Rational per = persuasion_oracle(inst).utility;
            add_ratio(trivial_row, del, trivial_scheme(inst).utility);
            add_ratio(lp_row, del, lp_round_scheme(inst, 64, derive_seed(seed, 1000 + i)).utility);
            add_ratio(nn_row, per, approx_2n(inst).utility);
        }
        finish(trivial_row);
        finish(lp_row);
        finish(nn_row);
    }
    {
        Row sdp_row{"degree-2", "sdp-thresh"};
        RandomParams params = base;
        params.shape = RandomShape::DegreeBounded;
        params.max_degree = 2;
        for (int i = 0; i < count; ++i) {
            const Instance inst = gen_random(params, derive_seed(seed, 100 + i)).instance;
            ThreshParams tp;
            tp.seed = derive_seed(seed, 2000 + i);
            add_ratio(sdp_row, delegation_oracle(inst).utility, sdp_scheme_deg2(inst, tp).utility);
        }
        finish(sdp_row);
    }
    {
        Row exact_row{"unique-accepts", "exact"}, ptas_row{"unique-accepts", "ptas(1/4)"};
        RandomParams params = base;
        params.shape = RandomShape::UniqueAccepts;
        for (int i = 0; i < count; ++i) {
            const Instance inst = gen_random(params, derive_seed(seed, 200 + i)).instance;
            add_ratio(exact_row, delegation_oracle(inst).utility, unique_accepts_exact(inst).utility);
            add_ratio(ptas_row, persuasion_oracle(inst).utility,
                      ptas_unique_accepts(inst, 0.25).utility);
        }
        finish(exact_row);
        finish(ptas_row);
    }
    {
        Row row{"unique-rejects", "exact"};
        RandomParams params = base;
        params.shape = RandomShape::UniqueRejects;
        for (int i = 0; i < count; ++i) {
            const Instance inst = gen_random(params, derive_seed(seed, 300 + i)).instance;
            add_ratio(row, persuasion_oracle(inst).utility, unique_rejects_exact(inst).utility);
        }
        finish(row);
    }
    {
        Row row{"global-signal", "exact"};
        RandomParams params = base;
        params.shape = RandomShape::GlobalSignal;
        for (int i = 0; i < count; ++i) {
            const Instance inst = gen_random(params, derive_seed(seed, 400 + i)).instance;
            add_ratio(row, persuasion_oracle(inst).utility, global_signal_exact(inst).utility);
        }
        finish(row);
    }
    {
        Row del_row{"membership", "exact"}, per_row{"membership", "exact-persuasion"};
        RandomParams params = base;
        params.shape = RandomShape::Membership;
        params.n = 3;
        for (int i = 0; i < count; ++i) {
            const Instance inst = gen_random(params, derive_seed(seed, 500 + i)).instance;
            add_ratio(del_row, delegation_oracle(inst).utility, membership_exact(inst).utility);
            add_ratio(per_row, persuasion_oracle(inst).utility,
                      membership_exact_persuasion(inst).utility);
        }
        finish(del_row);
        finish(per_row);
    }
    {
        Row del_row{"laminar-states", "exact"}, per_row{"laminar-states", "exact-persuasion"};
        RandomParams params = base;
        params.shape = RandomShape::LaminarStates;
        for (int i = 0; i < count; ++i) {
            const Instance inst = gen_random(params, derive_seed(seed, 600 + i)).instance;
            add_ratio(del_row, delegation_oracle(inst).utility, laminar_states_exact(inst).utility);
            add_ratio(per_row, persuasion_oracle(inst).utility,
                      laminar_states_exact_persuasion(inst).utility);
        }
        finish(del_row);
        finish(per_row);
    }
    {
        Row row{"laminar-signals", "exact"};
        RandomParams params = base;
        params.shape = RandomShape::LaminarSignals;
        for (int i = 0; i < count; ++i) {
            const Instance inst = gen_random(params, derive_seed(seed, 700 + i)).instance;
            add_ratio(row, delegation_oracle(inst).utility, laminar_signals_exact(inst).utility);
        }
        finish(row);
    }

    json table = json::array();
    for (const auto& row : rows)
        table.push_back({{"scenario", row.scenario},
                         {"solver", row.solver},
                         {"instances", row.instances},
                         {"worst_ratio", row.worst_ratio},
                         {"mean_ratio", row.mean_ratio}});
    return json{{"table", table}};
}

}  // namespace

}  // namespace pwe
