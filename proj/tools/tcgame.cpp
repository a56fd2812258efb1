// Experiment runner for the torus nonlocal game: sampled and exact quantum
// play, classical optimum tables, the closed-form probability cross-check,
// the ground-space uniqueness certificate, and simultaneous dual-direction
// play. All results are machine-readable (JSON / CSV / JSON-lines) and every
// artifact embeds the config hash and version.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcg/analysis.hpp"
#include "tcg/classical.hpp"
#include "tcg/dense.hpp"
#include "tcg/errors.hpp"
#include "tcg/game.hpp"
#include "tcg/json_io.hpp"
#include "tcg/lattice.hpp"
#include "tcg/tableau.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitCheckFailed = 2;

struct InstanceArgs {
    std::string config_path;
    int lx = 0, ly = 0;
    int team_count = 0;
    int dual_row = 0;
    int modulus = 2;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& args) {
    cmd->add_option("--config", args.config_path, "instance JSON file");
    cmd->add_option("--lx", args.lx, "lattice columns (generator mode)");
    cmd->add_option("--ly", args.ly, "lattice rows (generator mode)");
    cmd->add_option("--team-count", args.team_count,
                    "number of straight column teams (generator mode)");
    cmd->add_option("--dual-row", args.dual_row, "dual loop row (generator mode)");
    cmd->add_option("--modulus", args.modulus, "Z_M modulus M");
}

tcg::GameInstance resolve_instance(const InstanceArgs& args) {
    if (!args.config_path.empty()) {
        return tcg::instance_from_json_file(args.config_path);
    }
    if (args.lx == 0 || args.ly == 0) {
        throw std::invalid_argument("provide --config or --lx/--ly generator options");
    }
    tcg::TorusLattice lat(args.lx, args.ly);
    int t = args.team_count > 0 ? args.team_count : args.lx;
    std::vector<int> columns;
    for (int x = 0; x < t; ++x) columns.push_back(x);
    return tcg::make_straight_instance(lat, args.modulus, columns, args.dual_row);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
        out << text;
        if (text.empty() || text.back() != '\n') out << "\n";
    }
}

int config_error(const std::string& message) {
    ordered_json err;
    err["error"] = {{"kind", "config"}, {"message", message}};
    std::cerr << err.dump() << "\n";
    return kExitConfigError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"torus nonlocal game simulator"};
    app.require_subcommand(1);

    InstanceArgs inst_args;
    uint64_t seed = 0;
    uint64_t rounds = 1000;
    std::string out_path;
    std::string backend_name = "tableau";
    std::string log_path;

    auto* play = app.add_subcommand("play", "sampled quantum rounds on the cat state");
    add_instance_options(play, inst_args);
    play->add_option("--backend", backend_name, "tableau|dense");
    play->add_option("--rounds", rounds, "number of rounds");
    play->add_option("--seed", seed, "master seed");
    play->add_option("--out", out_path, "summary JSON path (default stdout)");
    play->add_option("--log", log_path, "JSON-lines round log path");

    auto* exact = app.add_subcommand("exact", "exact dense win probability of the cat state");
    add_instance_options(exact, inst_args);
    exact->add_option("--out", out_path, "result JSON path (default stdout)");

    auto* copt = app.add_subcommand("classical-opt",
                                    "exhaustive classical optimum vs the closed form");
    std::vector<int> copt_teams{3};
    int copt_modulus = 2;
    int copt_dual_size = 0;
    copt->add_option("--teams", copt_teams, "team counts to score");
    copt->add_option("--modulus", copt_modulus, "Z_M modulus M");
    copt->add_option("--dual-size", copt_dual_size,
                     "dual loop size (default: same as the team count)");
    copt->add_option("--out", out_path, "CSV path (default stdout)");

    auto* fid = app.add_subcommand(
        "closed-form", "closed-form fidelity win probability vs direct simulation");
    add_instance_options(fid, inst_args);
    int fid_states = 10;
    double fid_tol = 1e-9;
    fid->add_option("--states", fid_states, "number of random probe states");
    fid->add_option("--seed", seed, "state seed");
    fid->add_option("--tol", fid_tol, "agreement tolerance");
    fid->add_option("--out", out_path, "report JSON path (default stdout)");

    auto* uniq = app.add_subcommand("uniqueness",
                                    "fixed-subspace certificate over an instance family");
    int uniq_lx = 3, uniq_ly = 2, uniq_teams = 3, uniq_probes = 6;
    double uniq_tol = 1e-8;
    std::string family = "deformed";
    uniq->add_option("--lx", uniq_lx, "lattice columns");
    uniq->add_option("--ly", uniq_ly, "lattice rows");
    uniq->add_option("--team-count", uniq_teams, "teams per straight instance");
    uniq->add_option("--family", family, "straight|deformed");
    uniq->add_option("--probes", uniq_probes, "number of random probes");
    uniq->add_option("--tol", uniq_tol, "singular value cutoff (relative)");
    uniq->add_option("--seed", seed, "probe seed");
    uniq->add_option("--out", out_path, "certificate JSON path (default stdout)");

    auto* simul = app.add_subcommand("simul", "simultaneous dual-direction play");
    int sim_lx = 3, sim_ly = 3, sim_teams = 3;
    std::string sim_mode = "exact";
    simul->add_option("--lx", sim_lx, "lattice columns");
    simul->add_option("--ly", sim_ly, "lattice rows");
    simul->add_option("--team-count", sim_teams, "teams in each direction");
    simul->add_option("--mode", sim_mode, "exact|sample");
    simul->add_option("--rounds", rounds, "rounds in sample mode");
    simul->add_option("--seed", seed, "master seed");
    simul->add_option("--out", out_path, "result JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        ordered_json err;
        err["error"] = {{"kind", "config"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return kExitConfigError;
    }

    try {
        if (play->parsed()) {
            tcg::GameInstance inst = resolve_instance(inst_args);
            auto violations = tcg::validate_instance(inst);
            if (!violations.empty()) return config_error("invalid instance: " + violations[0]);
            if (rounds < 1) return config_error("rounds must be >= 1");
            tcg::BackendKind backend;
            if (backend_name == "tableau") {
                backend = tcg::BackendKind::tableau;
                if (inst.modulus != 2) {
                    return config_error("backend=tableau requires M=2");
                }
            } else if (backend_name == "dense") {
                backend = tcg::BackendKind::dense;
            } else {
                return config_error("unknown backend: " + backend_name);
            }

            tcg::PlayOptions options;
            options.rounds = rounds;
            options.seed = seed;
            std::ofstream log_file;
            if (!log_path.empty()) {
                log_file.open(log_path);
                if (!log_file) return config_error("cannot open log file: " + log_path);
                options.log = &log_file;
            }
            tcg::WinStats stats = tcg::play_rounds_quantum(inst, backend, options);

            ordered_json j;
            j["version"] = tcg::kArtifactVersion;
            std::string canonical = tcg::instance_to_json(inst) + "|" + backend_name + "|" +
                                    std::to_string(rounds) + "|" + std::to_string(seed);
            j["config_hash"] = tcg::config_hash_hex(canonical);
            j["backend"] = backend_name;
            j["seed"] = seed;
            j["rounds"] = stats.rounds;
            j["wins"] = stats.wins;
            j["win_rate"] = stats.win_rate();
            auto [lo, hi] = stats.wilson_interval();
            j["wilson95"] = {lo, hi};
            ordered_json per_input = ordered_json::array();
            for (const auto& [input, cell] : stats.per_input) {
                per_input.push_back(
                    {{"input", input}, {"rounds", cell.first}, {"wins", cell.second}});
            }
            j["per_input"] = std::move(per_input);
            emit(j.dump(2), out_path);
            return kExitOk;
        }

        if (exact->parsed()) {
            tcg::GameInstance inst = resolve_instance(inst_args);
            auto violations = tcg::validate_instance(inst);
            if (!violations.empty()) return config_error("invalid instance: " + violations[0]);
            tcg::DenseState cat = tcg::prepare_cat_dense(inst.lattice, inst.modulus);
            auto by_input = tcg::win_probability_quantum_by_input(inst, cat);
            double avg = 0.0;
            ordered_json rows = ordered_json::array();
            for (const auto& [input, p] : by_input) {
                avg += p;
                rows.push_back({{"input", input.a}, {"probability", p}});
            }
            avg /= static_cast<double>(by_input.size());
            ordered_json j;
            j["version"] = tcg::kArtifactVersion;
            j["config_hash"] = tcg::config_hash_hex(tcg::instance_to_json(inst) + "|exact");
            j["probability"] = avg;
            j["per_input"] = std::move(rows);
            emit(j.dump(2), out_path);
            return kExitOk;
        }

        if (copt->parsed()) {
            std::ostringstream canon;
            canon << "classical-opt|" << copt_modulus << "|" << copt_dual_size;
            for (int t : copt_teams) canon << "|" << t;
            std::ostringstream csv;
            csv << "# version=" << tcg::kArtifactVersion
                << " config_hash=" << tcg::config_hash_hex(canon.str()) << "\n";
            csv << "T,M,optimal_probability,closed_form,match\n";
            for (int t : copt_teams) {
                int dual_size = copt_dual_size > 0 ? copt_dual_size : t;
                tcg::ClassicalOptimum opt = tcg::optimal_classical(t, copt_modulus, dual_size);
                csv << t << "," << copt_modulus << "," << opt.probability.str() << ",";
                if (copt_modulus == 2) {
                    tcg::Rational cf = tcg::closed_form_classical(t);
                    csv << cf.str() << "," << (opt.probability == cf ? "true" : "false");
                } else {
                    csv << ",";
                }
                csv << "\n";
            }
            emit(csv.str(), out_path);
            return kExitOk;
        }

        if (fid->parsed()) {
            tcg::GameInstance inst = resolve_instance(inst_args);
            auto violations = tcg::validate_instance(inst);
            if (!violations.empty()) return config_error("invalid instance: " + violations[0]);
            if (inst.modulus != 2) return config_error("closed-form requires M=2");

            ordered_json rows = ordered_json::array();
            bool all_ok = true;
            auto check_state = [&](const std::string& name, const tcg::DenseState& s) {
                double closed = tcg::fidelity_win_probability(s, inst);
                double direct = tcg::win_probability_quantum_exact(inst, s);
                bool ok = std::abs(closed - direct) < fid_tol;
                all_ok = all_ok && ok;
                rows.push_back({{"state", name},
                                {"closed_form", closed},
                                {"direct", direct},
                                {"abs_diff", std::abs(closed - direct)},
                                {"ok", ok}});
            };

            check_state("cat", tcg::prepare_cat_dense(inst.lattice, 2));
            {
                tcg::DenseState basis(2, inst.lattice.bonds());
                check_state("basis_zero", basis);
            }
            tcg::Rng rng(seed);
            for (int i = 0; i < fid_states; ++i) {
                check_state("random_" + std::to_string(i),
                            tcg::random_unit_state(2, inst.lattice.bonds(), rng));
            }

            ordered_json j;
            j["version"] = tcg::kArtifactVersion;
            j["config_hash"] = tcg::config_hash_hex(tcg::instance_to_json(inst) + "|closed-form|" +
                                                    std::to_string(seed));
            j["tolerance"] = fid_tol;
            j["all_ok"] = all_ok;
            j["states"] = std::move(rows);
            emit(j.dump(2), out_path);
            return all_ok ? kExitOk : kExitCheckFailed;
        }

        if (uniq->parsed()) {
            tcg::TorusLattice lat(uniq_lx, uniq_ly);
            tcg::EnumerateOptions opts;
            if (family == "deformed") {
                opts.deform_duals = true;
                opts.deform_teams = true;
            } else if (family != "straight") {
                return config_error("unknown family: " + family);
            }
            auto instances = tcg::enumerate_instances(lat, uniq_teams, 2, opts);
            tcg::UniquenessOptions uo;
            uo.probes = uniq_probes;
            uo.tol = uniq_tol;
            uo.seed = seed ? seed : uo.seed;
            tcg::UniquenessReport report = tcg::uniqueness_certificate(lat, instances, uo);

            ordered_json j;
            j["version"] = tcg::kArtifactVersion;
            std::ostringstream canon;
            canon << "uniqueness|" << uniq_lx << "x" << uniq_ly << "|" << family << "|"
                  << uniq_probes << "|" << uo.seed;
            j["config_hash"] = tcg::config_hash_hex(canon.str());
            j["family"] = report.family_description;
            j["instances"] = instances.size();
            j["converged"] = report.converged;
            j["sweeps"] = report.sweeps;
            j["singular_values"] = report.singular_values;
            j["dimension"] = report.dimension;
            j["dimension_is_lower_bound"] = report.dimension_is_lower_bound;
            j["max_residual"] = report.max_residual;
            j["cat_even_residual"] = report.cat_even_residual;
            j["cat_odd_residual"] = report.cat_odd_residual;
            j["cat_even_span_residual"] = report.cat_even_span_residual;
            j["cat_odd_span_residual"] = report.cat_odd_span_residual;
            emit(j.dump(2), out_path);
            return report.converged ? kExitOk : kExitCheckFailed;
        }

        if (simul->parsed()) {
            tcg::TorusLattice lat(sim_lx, sim_ly);
            std::vector<int> idx;
            for (int i = 0; i < sim_teams; ++i) idx.push_back(i);
            tcg::GameInstance vertical = tcg::make_straight_instance(lat, 2, idx, sim_ly - 1);
            tcg::GameInstance horizontal = tcg::make_reflected_instance(lat, 2, idx, sim_lx - 1);

            ordered_json j;
            j["version"] = tcg::kArtifactVersion;
            std::ostringstream canon;
            canon << "simul|" << sim_lx << "x" << sim_ly << "|" << sim_teams << "|" << sim_mode
                  << "|" << seed;
            j["config_hash"] = tcg::config_hash_hex(canon.str());

            if (sim_mode == "exact") {
                tcg::DenseState full_cat = tcg::prepare_full_cat_dense(lat, 2);
                double min_p = 1.0;
                ordered_json rows = ordered_json::array();
                for (const auto& iv : tcg::enumerate_promised_inputs(sim_teams, 2)) {
                    for (const auto& ih : tcg::enumerate_promised_inputs(sim_teams, 2)) {
                        double p = tcg::simultaneous_win_probability_exact(vertical, horizontal,
                                                                           iv, ih, full_cat);
                        min_p = std::min(min_p, p);
                        rows.push_back(
                            {{"input_v", iv.a}, {"input_h", ih.a}, {"joint_win", p}});
                    }
                }
                j["mode"] = "exact";
                j["min_joint_win"] = min_p;
                j["pairs"] = std::move(rows);
                emit(j.dump(2), out_path);
                return min_p > 1.0 - 1e-9 ? kExitOk : kExitCheckFailed;
            }
            if (sim_mode != "sample") return config_error("unknown mode: " + sim_mode);

            uint64_t both_won = 0;
            for (uint64_t round = 0; round < rounds; ++round) {
                tcg::Rng rng = tcg::Rng::for_round(seed, round);
                tcg::InputVector iv = tcg::sample_promised_input(sim_teams, 2, rng);
                tcg::InputVector ih = tcg::sample_promised_input(sim_teams, 2, rng);
                tcg::DenseState full_cat = tcg::prepare_full_cat_dense(lat, 2);
                auto [rv, rh] = tcg::play_simultaneous(vertical, horizontal, iv, ih, full_cat, rng);
                if (rv.won && rh.won) ++both_won;
            }
            j["mode"] = "sample";
            j["rounds"] = rounds;
            j["both_won"] = both_won;
            emit(j.dump(2), out_path);
            return kExitOk;
        }
    } catch (const tcg::budget_error& e) {
        ordered_json err;
        err["error"] = {{"kind", "budget"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        return config_error(e.what());
    } catch (const std::exception& e) {
        ordered_json err;
        err["error"] = {{"kind", "internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}
