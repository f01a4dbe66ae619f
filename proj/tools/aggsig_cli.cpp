// Copyright 2026 The aggsig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment driver: single runs, parameter grids, property suites, and
// topology export.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aggsig/errors.hpp"
#include "aggsig/netsim/sim.hpp"
#include "aggsig/netsim/topology.hpp"
#include "aggsig/simd/kernels.hpp"
#include "aggsig/suites.hpp"

namespace {

using aggsig::ConfigError;
using aggsig::netsim::Behavior;
using aggsig::netsim::SimConfig;
using aggsig::netsim::SimRun;

constexpr int kExitConverged = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNotConverged = 2;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_fraction(const std::string& text) {
    std::string t = trim(text);
    bool percent = !t.empty() && t.back() == '%';
    if (percent) t.pop_back();
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: " + text);
    }
    if (used != t.size()) throw ConfigError("not a number: " + text);
    return percent ? v / 100.0 : v;
}

std::size_t parse_count(const std::string& text) {
    std::string t = trim(text);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError("not a non-negative integer: " + text);
    }
    return static_cast<std::size_t>(std::stoull(t));
}

Behavior parse_behavior_or_throw(const std::string& name) {
    auto b = aggsig::netsim::parse_behavior(trim(name));
    if (!b) throw ConfigError("unknown behavior: " + name + " (honest, silent, fake, inflate)");
    return *b;
}

// FIRST-LAST:FRACTION, e.g. 1-3:0.5
aggsig::netsim::PartitionWindow parse_partition(const std::string& text, std::size_t n,
                                                std::uint64_t seed) {
    auto colon = text.find(':');
    auto dash = text.find('-');
    if (colon == std::string::npos || dash == std::string::npos || dash > colon) {
        throw ConfigError("partition must look like FIRST-LAST:FRACTION, got " + text);
    }
    aggsig::netsim::PartitionWindow w;
    w.first_round = parse_count(text.substr(0, dash));
    w.last_round = parse_count(text.substr(dash + 1, colon - dash - 1));
    w.side = aggsig::netsim::random_bipartition(n, parse_fraction(text.substr(colon + 1)), seed);
    return w;
}

// key = value lines plus "cell = n degree byz behavior [seeds]"; '#' starts a comment
struct ConfigFile {
    std::map<std::string, std::string> values;
    std::vector<std::vector<std::string>> cells;
};

ConfigFile read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    ConfigFile cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "cell") {
            std::istringstream fields(value);
            std::vector<std::string> parts;
            for (std::string f; fields >> f;) parts.push_back(f);
            if (parts.size() < 4 || parts.size() > 5) {
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": cell needs n degree byz behavior [seeds]");
            }
            cfg.cells.push_back(std::move(parts));
        } else {
            cfg.values[key] = value;
        }
    }
    return cfg;
}

struct RunFlags {
    std::size_t n = 1000;
    std::size_t degree = 20;
    std::string byz = "0";
    std::string behavior = "silent";
    std::uint64_t seed = 1;
    std::size_t iterations = 0;
    std::string backend = "oracle";
    std::vector<std::string> partitions;
    std::string threshold = "strict";
    bool no_break = false;
    std::string config;
    std::string out;
};

SimConfig build_config(const RunFlags& f, const CLI::App& cmd) {
    std::map<std::string, std::string> v;
    if (!f.config.empty()) v = read_config(f.config).values;
    auto given = [&](const char* flag) { return cmd.count(flag) > 0; };
    auto pick = [&](const char* flag, const char* key, const std::string& flag_value) {
        if (given(flag) || v.find(key) == v.end()) return flag_value;
        return v[key];
    };

    SimConfig c;
    c.n = parse_count(pick("--n", "n", std::to_string(f.n)));
    c.degree = parse_count(pick("--degree", "degree", std::to_string(f.degree)));
    c.byz_fraction = parse_fraction(pick("--byz", "byz", f.byz));
    c.behavior = parse_behavior_or_throw(pick("--behavior", "behavior", f.behavior));
    c.seed = parse_count(pick("--seed", "seed", std::to_string(f.seed)));
    c.iterations = parse_count(pick("--iterations", "iterations", std::to_string(f.iterations)));
    auto backend = aggsig::crypto::parse_backend(pick("--backend", "backend", f.backend));
    if (!backend) throw ConfigError("unknown backend (pairing, oracle)");
    c.backend = *backend;
    std::string rule = pick("--threshold", "threshold", f.threshold);
    if (rule == "strict") {
        c.threshold_rule = aggsig::protocol::ThresholdRule::Strict;
    } else if (rule == "inclusive") {
        c.threshold_rule = aggsig::protocol::ThresholdRule::Inclusive;
    } else {
        throw ConfigError("unknown threshold rule: " + rule + " (strict, inclusive)");
    }
    if (given("--no-break")) {
        c.break_on_finalize = !f.no_break;
    } else if (v.count("break")) {
        c.break_on_finalize = v["break"] != "false";
    }

    std::vector<std::string> parts = f.partitions;
    if (!given("--partition") && v.count("partition")) parts.push_back(v["partition"]);
    for (const auto& p : parts) c.partitions.push_back(parse_partition(p, c.n, c.seed));
    aggsig::netsim::validate(c);
    return c;
}

std::string round_text(const std::optional<std::size_t>& r) {
    return r ? std::to_string(*r) : std::string("inf");
}

void print_summary(const SimRun& run, std::ostream& out) {
    const auto& c = run.config;
    out << "n=" << c.n << " degree=" << c.degree << " (realized " << std::fixed
        << std::setprecision(2) << run.mean_degree << ") byz=" << run.byzantine << " "
        << aggsig::netsim::behavior_name(c.behavior) << " backend="
        << aggsig::crypto::backend_name(c.backend) << " L=" << run.iterations
        << " threshold=" << run.threshold << " seed=" << c.seed << '\n';
    for (const auto& r : run.rounds) {
        out << "  round " << r.round << ": finalized " << r.finalized_honest << "/" << run.honest
            << ", messages " << r.messages_sent << ", bytes " << r.bytes_sent
            << ", max entry " << r.max_entry.to_decimal();
        if (r.messages_dropped) out << ", dropped " << r.messages_dropped;
        out << '\n';
    }
    out << "convergence round: " << round_text(run.convergence_round) << '\n'
        << "max entry: " << run.max_entry.to_decimal() << '\n'
        << "messages per honest node: " << std::setprecision(2) << run.honest_messages_mean()
        << " (median " << run.honest_messages_median() << ")\n"
        << "bytes per honest node: " << std::setprecision(0) << run.honest_bytes_mean() << '\n'
        << "largest message: " << run.max_message_bytes << " bytes\n";
    if (run.wrap_events) out << "entries reduced mod p: " << run.wrap_events << '\n';
}

int cmd_run(const RunFlags& f, const CLI::App& cmd) {
    SimConfig c = build_config(f, cmd);
    SimRun run = aggsig::netsim::run_simulation(c);
    print_summary(run, std::cout);
    if (!f.out.empty()) {
        std::ofstream out(f.out);
        if (!out) throw ConfigError("cannot write " + f.out);
        out << aggsig::netsim::to_json(run) << '\n';
        if (!out) throw ConfigError("cannot write " + f.out);
    }
    return run.converged() ? kExitConverged : kExitNotConverged;
}

struct Cell {
    std::size_t n;
    std::size_t degree;
    double byz;
    Behavior behavior;
    std::size_t seeds;
};

std::vector<Cell> preset_cells(const std::string& name, const std::string& behavior,
                               std::size_t seeds) {
    std::size_t degree = 0;
    if (name == "table1") {
        degree = 20;
    } else if (name == "table2") {
        degree = 30;
    } else {
        throw ConfigError("unknown preset: " + name + " (table1, table2)");
    }
    std::vector<Behavior> behaviors;
    if (behavior == "both") {
        behaviors = {Behavior::Silent, Behavior::FakeSignature};
    } else {
        behaviors = {parse_behavior_or_throw(behavior)};
    }
    std::vector<Cell> cells;
    for (std::size_t n : {1000UL, 2000UL, 3000UL}) {
        for (double byz : {0.0, 0.1, 0.2, 0.3}) {
            for (Behavior b : behaviors) cells.push_back({n, degree, byz, b, seeds});
        }
    }
    return cells;
}

std::string format_pct(double fraction) {
    std::ostringstream s;
    s << std::setprecision(6) << std::round(fraction * 100.0 * 1e6) / 1e6;
    return s.str();
}

std::string format_fixed(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << v;
    return s.str();
}

double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

struct GridFlags {
    std::string grid;
    std::string preset;
    std::string behavior = "silent";
    std::size_t seeds = 10;
    std::size_t workers = 1;
    std::size_t iterations = 0;
    std::string backend = "oracle";
    std::string out;
};

int cmd_grid(const GridFlags& f) {
    std::vector<Cell> cells;
    std::size_t iterations = f.iterations;
    std::string backend_name = f.backend;
    if (!f.grid.empty()) {
        ConfigFile cfg = read_config(f.grid);
        std::size_t default_seeds = cfg.values.count("seeds") ? parse_count(cfg.values["seeds"]) : f.seeds;
        if (cfg.values.count("iterations") && iterations == 0) iterations = parse_count(cfg.values["iterations"]);
        if (cfg.values.count("backend")) backend_name = cfg.values["backend"];
        if (cfg.values.count("preset")) {
            auto more = preset_cells(cfg.values["preset"],
                                     cfg.values.count("behavior") ? cfg.values["behavior"] : f.behavior,
                                     default_seeds);
            cells.insert(cells.end(), more.begin(), more.end());
        }
        for (const auto& parts : cfg.cells) {
            cells.push_back({parse_count(parts[0]), parse_count(parts[1]), parse_fraction(parts[2]),
                             parse_behavior_or_throw(parts[3]),
                             parts.size() == 5 ? parse_count(parts[4]) : default_seeds});
        }
    }
    if (!f.preset.empty()) {
        auto more = preset_cells(f.preset, f.behavior, f.seeds);
        cells.insert(cells.end(), more.begin(), more.end());
    }
    auto backend = aggsig::crypto::parse_backend(backend_name);
    if (!backend) throw ConfigError("unknown backend (pairing, oracle)");

    struct Job {
        std::size_t cell;
        SimConfig config;
    };
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const Cell& cell = cells[k];
        for (std::size_t s = 1; s <= cell.seeds; ++s) {
            SimConfig c;
            c.n = cell.n;
            c.degree = cell.degree;
            c.byz_fraction = cell.byz;
            c.behavior = cell.behavior;
            c.seed = s;
            c.iterations = iterations;
            c.backend = *backend;
            aggsig::netsim::validate(c);
            jobs.push_back({k, c});
        }
    }

    std::ofstream file;
    if (!f.out.empty()) {
        file.open(f.out);
        if (!file) throw ConfigError("cannot write " + f.out);
    }
    std::ostream& csv = f.out.empty() ? std::cout : file;

    std::vector<std::optional<SimRun>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            SimRun run = aggsig::netsim::run_simulation(jobs[j].config);
            run.trajectories.clear();
            run.final_state.clear();
            run.public_keys.clear();
            for (auto& r : run.rounds) r.node_max_entry.clear();
            results[j] = std::move(run);
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < std::max<std::size_t>(1, f.workers); ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    csv << "# aggsig grid cells=" << cells.size() << " runs=" << jobs.size()
        << " backend=" << aggsig::crypto::backend_name(*backend) << '\n';
    csv << "n,degree,byz_pct,behavior,seed,convergence_round,max_entry,msgs_per_node,bytes_per_node\n";
    bool all_converged = true;
    std::size_t j = 0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const Cell& cell = cells[k];
        std::vector<double> conv, maxe, msgs, bytes;
        std::string prefix;
        for (; j < jobs.size() && jobs[j].cell == k; ++j) {
            const SimRun& run = *results[j];
            const SimConfig& c = jobs[j].config;
            prefix = std::to_string(c.n) + "," + std::to_string(c.degree) + "," +
                     format_pct(c.byz_fraction) + "," +
                     std::string(aggsig::netsim::behavior_name(c.behavior));
            all_converged = all_converged && run.converged();
            csv << prefix << ',' << c.seed << ',' << round_text(run.convergence_round) << ','
                << (run.converged() ? run.max_entry_at_convergence : run.max_entry).to_decimal() << ','
                << format_fixed(run.honest_messages_mean()) << ','
                << format_fixed(run.honest_bytes_mean()) << '\n';
            conv.push_back(run.converged() ? static_cast<double>(*run.convergence_round) : INFINITY);
            const auto& me = run.converged() ? run.max_entry_at_convergence : run.max_entry;
            maxe.push_back(me.fits_u64() ? static_cast<double>(me.limbs[0]) : INFINITY);
            msgs.push_back(run.honest_messages_mean());
            bytes.push_back(run.honest_bytes_mean());
        }
        if (conv.empty()) continue;
        auto med = [](const std::vector<double>& v) {
            double m = median(v);
            if (std::isinf(m)) return std::string("inf");
            std::ostringstream s;
            s << std::setprecision(10) << m;
            return s.str();
        };
        csv << prefix << ",median," << med(conv) << ',' << med(maxe) << ','
            << format_fixed(median(msgs)) << ',' << format_fixed(median(bytes)) << '\n';
        if (!f.out.empty()) {
            std::cout << "n=" << cell.n << " degree=" << cell.degree << " byz="
                      << format_pct(cell.byz) << "% " << aggsig::netsim::behavior_name(cell.behavior)
                      << ": median convergence " << med(conv) << ", median max entry " << med(maxe)
                      << ", messages/node " << format_fixed(median(msgs)) << '\n';
        }
    }
    csv.flush();
    if (!csv) throw ConfigError("cannot write " + f.out);
    return all_converged ? kExitConverged : kExitNotConverged;
}

int cmd_suites(const std::vector<std::string>& names, std::uint64_t seed) {
    std::vector<std::string> selected = names;
    if (selected.empty() || (selected.size() == 1 && selected[0] == "all")) {
        selected.clear();
        for (auto n : aggsig::suites::suite_names()) selected.emplace_back(n);
    }
    for (const auto& name : selected) {
        auto known = aggsig::suites::suite_names();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            throw ConfigError("unknown suite: " + name);
        }
    }
    bool ok = true;
    for (const auto& name : selected) {
        auto r = *aggsig::suites::run_named(name, seed);
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)\n";
        for (const auto& note : r.notes) std::cout << "  " << note << '\n';
        ok = ok && r.passed;
    }
    return ok ? 0 : kExitNotConverged;
}

int cmd_topology(std::size_t n, std::size_t degree, std::uint64_t seed, const std::string& out) {
    auto topo = aggsig::netsim::generate_topology(n, degree, seed);
    std::string text = aggsig::netsim::to_edge_list(topo);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(out);
        if (!file || !(file << text)) throw ConfigError("cannot write " + out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Aggregated-signature gossip simulator"};
    app.require_subcommand(1);
    std::string simd;
    app.add_option("--simd", simd, "Kernel set: scalar or avx2 (default: best available)");

    RunFlags rf;
    auto* run = app.add_subcommand("run", "Run one simulation");
    run->add_option("--n", rf.n, "Guardians");
    run->add_option("--degree", rf.degree, "Target average degree");
    run->add_option("--byz", rf.byz, "Byzantine fraction (0.1 or 10%)");
    run->add_option("--behavior", rf.behavior, "silent, fake, inflate");
    run->add_option("--seed", rf.seed, "Seed");
    run->add_option("--iterations", rf.iterations, "Loop bound L (0: default)");
    run->add_option("--backend", rf.backend, "oracle or pairing");
    run->add_option("--partition", rf.partitions, "FIRST-LAST:FRACTION, repeatable");
    run->add_option("--threshold", rf.threshold, "strict or inclusive");
    run->add_flag("--no-break", rf.no_break, "Keep gossiping after finalization");
    run->add_option("--config", rf.config, "key = value file; flags override it");
    run->add_option("--out", rf.out, "Write the full run as JSON");

    GridFlags gf;
    auto* grid = app.add_subcommand("grid", "Sweep a grid of cells and write CSV");
    grid->add_option("--grid", gf.grid, "Grid file");
    grid->add_option("--preset", gf.preset, "table1 or table2");
    grid->add_option("--behavior", gf.behavior, "Behavior for preset cells (or both)");
    grid->add_option("--seeds", gf.seeds, "Seeds per cell");
    grid->add_option("--workers", gf.workers, "Parallel runs");
    grid->add_option("--iterations", gf.iterations, "Loop bound L (0: default)");
    grid->add_option("--backend", gf.backend, "oracle or pairing");
    grid->add_option("--out", gf.out, "CSV path (default: stdout)");

    std::vector<std::string> suite_names;
    std::uint64_t suite_seed = 1;
    auto* suites = app.add_subcommand("suites", "Run property suites");
    suites->add_option("selector", suite_names, "safety, liveness, oracle, crypto, backends, leapfrog, all");
    suites->add_option("--seed", suite_seed, "Seed");

    std::size_t tn = 100;
    std::size_t tdeg = 10;
    std::uint64_t tseed = 1;
    std::string tout;
    auto* topology = app.add_subcommand("topology", "Export a generated topology as an edge list");
    topology->add_option("--n", tn, "Guardians");
    topology->add_option("--degree", tdeg, "Target average degree");
    topology->add_option("--seed", tseed, "Seed");
    topology->add_option("--out", tout, "Edge list path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (!simd.empty()) {
            auto isa = aggsig::simd::parse_isa(simd);
            if (!isa || !aggsig::simd::set_active(*isa)) throw ConfigError("kernel set unavailable: " + simd);
        }
        if (run->parsed()) return cmd_run(rf, *run);
        if (grid->parsed()) return cmd_grid(gf);
        if (suites->parsed()) return cmd_suites(suite_names, suite_seed);
        if (topology->parsed()) return cmd_topology(tn, tdeg, tseed, tout);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
