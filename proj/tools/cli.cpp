// Copyright 2026 The fdmimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "fdmimo/asymptotics.hpp"
#include "fdmimo/config.hpp"
#include "fdmimo/geometry.hpp"
#include "fdmimo/linkbudget.hpp"
#include "fdmimo/montecarlo.hpp"
#include "fdmimo/sqinr.hpp"
#include "fdmimo/validation.hpp"

namespace fdmimo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Thrown for bad command lines and manifests; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string config;
    std::vector<std::string> named;  // key=value from the named flags
    std::vector<std::string> sets;   // --set key=value
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out_dir = ".";
    std::string manifest;
};

void add_common(CLI::App* cmd, CommonOptions& c, bool with_params) {
    cmd->add_option("--seed", c.seed, "Master seed; all randomness derives from it")->capture_default_str();
    cmd->add_option("--threads", c.threads, "Worker cap (0 = all cores); results do not depend on it")
        ->capture_default_str();
    cmd->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
    if (!with_params) return;
    cmd->add_option("--config", c.config, "JSON config file");
    cmd->add_option("--set", c.sets, "Override any config key: key=value (repeatable)");
    cmd->add_option("--manifest", c.manifest, "Replay the parameters, seed and options of a run manifest");
    auto named = [&c, cmd](const char* flag, const char* key, const char* help) {
        cmd->add_option_function<std::string>(
            flag, [&c, key](const std::string& v) { c.named.push_back(std::string(key) + "=" + v); }, help);
    };
    named("--si-power", "si_power_w", "SI transmit power P_SI in W");
    named("--si-gain-db", "si_channel_gain_db", "SI channel gain mu_SI^2 in dB");
    named("--antennas", "num_antennas", "BS antennas N_a");
    named("--ul-users", "users_ul_per_cell", "Uplink users per cell");
    named("--dl-users", "users_dl_per_cell", "Downlink users per cell");
    named("--antenna-gain-db", "bs_antenna_gain_db", "BS antenna gain in dB");
    named("--coherence-tile", "coherence_tile", "Coherence tile N_c in symbols");
    cmd->add_option_function<std::string>(
        "--bits",
        [&c](const std::string& v) {
            c.named.push_back("adc_bits=" + v);
            c.named.push_back("dac_bits=" + v);
        },
        "ADC and DAC resolution (integer or 'full')");
}

// defaults < config file < FDMIMO_* environment < named flags < --set
SystemParams resolve_params(const CommonOptions& c) {
    SystemParams p = c.config.empty() ? SystemParams{} : load_params(c.config);
    apply_env_overrides(p);
    apply_overrides(p, c.named);
    apply_overrides(p, c.sets);
    p.validate();
    return p;
}

json read_manifest(const std::string& path, const std::string& command) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open manifest " + path);
    json m;
    try {
        m = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("malformed manifest " + path + ": " + e.what());
    }
    if (!m.is_object() || m.value("command", "") != command) {
        throw UsageError("manifest " + path + " was not written by '" + command + "'");
    }
    return m;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class RunWriter {
public:
    RunWriter(std::string command, const fs::path& dir) : command_(std::move(command)), dir_(dir) {
        fs::create_directories(dir_);
    }

    std::ofstream open(const std::string& name) {
        std::ofstream f(dir_ / name);
        if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
        outputs_.push_back(name);
        return f;
    }

    fs::path finish(const SystemParams& params, std::uint64_t seed, const json& options) const {
        json m = {{"command", command_},
                  {"version", kVersion},
                  {"timestamp", utc_timestamp()},
                  {"seed", seed},
                  {"params", params_to_json(params)},
                  {"options", options},
                  {"outputs", outputs_}};
        const fs::path path = dir_ / (command_ + ".manifest.json");
        std::ofstream f(path);
        f << m.dump(2) << '\n';
        if (!f) throw std::runtime_error("cannot write " + path.string());
        return path;
    }

private:
    std::string command_;
    fs::path dir_;
    std::vector<std::string> outputs_;
};

// Parameters and seed either from the command line or from a manifest.
std::pair<SystemParams, std::uint64_t> run_setup(const CommonOptions& c, const json* manifest) {
    if (manifest == nullptr) return {resolve_params(c), c.seed};
    SystemParams p = params_from_json(manifest->at("params"));
    p.validate();
    return {p, manifest->at("seed").get<std::uint64_t>()};
}

std::vector<Resolution> parse_bits_list(const std::string& text, std::ostream& err) {
    std::vector<Resolution> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Resolution r = Resolution::full();
        try {
            r = Resolution::parse(item);
            if (!r.is_full()) rho_for_bits(r.bit_count());
        } catch (const std::invalid_argument& e) {
            throw ConfigError("bits", e.what());
        }
        if (std::find(out.begin(), out.end(), r) != out.end()) {
            err << "warning: duplicate bits entry '" << r.to_string() << "' ignored\n";
            continue;
        }
        out.push_back(r);
    }
    if (out.empty()) throw ConfigError("bits", "bits list must not be empty");
    return out;
}

Aggregation parse_aggregation(const std::string& s) {
    if (s == "cell_mean") return Aggregation::cell_mean;
    if (s == "per_user") return Aggregation::per_user;
    throw UsageError("aggregation must be cell_mean or per_user");
}

void print_report_line(std::ostream& out, const std::string& label, const SqinrReport& r) {
    out << std::setprecision(6) << label << ": samples=" << r.samples.size() << " se_gross=" << r.se_gross
        << " se_effective=" << r.se_effective << " median_db=" << quantile_db(r.samples, 0.5) << '\n';
}

// ---- simulate-cdf ----

struct CdfOptions {
    int drops = 10000;
    std::string aggregation = "cell_mean";
    bool export_drop = false;
    bool dump_budgets = false;
};

int cmd_simulate_cdf(const CommonOptions& c, CdfOptions o, std::ostream& out) {
    json manifest;
    if (!c.manifest.empty()) {
        manifest = read_manifest(c.manifest, "simulate-cdf");
        const auto& mo = manifest.at("options");
        o.drops = mo.at("drops").get<int>();
        o.aggregation = mo.at("aggregation").get<std::string>();
        o.export_drop = mo.value("export_drop", false);
        o.dump_budgets = mo.value("dump_budgets", false);
    }
    const auto [params, seed] = run_setup(c, c.manifest.empty() ? nullptr : &manifest);
    if (o.drops < 1) throw UsageError("--drops must be >= 1");

    EngineOptions eo;
    eo.threads = c.threads;
    eo.aggregation = parse_aggregation(o.aggregation);
    const SqinrReport report = run_cdf_experiment(params, o.drops, seed, eo);

    RunWriter w("simulate-cdf", c.out_dir);
    {
        auto f = w.open("cdf.csv");
        write_cdf_csv(report, f);
    }
    if (o.export_drop || o.dump_budgets) {
        auto lattice = std::make_shared<const CellLattice>(build_lattice(params));
        const NetworkDrop drop = drop_users(lattice, params, derive_seed(seed, Stream::drop, 0));
        if (o.export_drop) {
            auto f = w.open("drop.csv");
            write_drop_csv(drop, f);
        }
        if (o.dump_budgets) {
            const auto budgets = assemble_link_budgets(drop, params);
            auto f = w.open("budgets.csv");
            write_budgets_csv(budgets, f);
            auto g = w.open("breakdown.csv");
            write_breakdown_csv(budgets, g);
        }
    }
    const json opts = {{"drops", o.drops},
                       {"aggregation", o.aggregation},
                       {"export_drop", o.export_drop},
                       {"dump_budgets", o.dump_budgets}};
    const auto mpath = w.finish(params, seed, opts);
    print_report_line(out, "full-duplex", report);
    out << "wrote " << mpath.string() << '\n';
    return kSuccess;
}

// ---- sweep-bits ----

struct SweepOptions {
    int drops = 10000;
    std::string bits = "1,2,3,4,5,full";
    std::string aggregation = "cell_mean";
};

int cmd_sweep_bits(const CommonOptions& c, SweepOptions o, std::ostream& out, std::ostream& err) {
    json manifest;
    if (!c.manifest.empty()) {
        manifest = read_manifest(c.manifest, "sweep-bits");
        const auto& mo = manifest.at("options");
        o.drops = mo.at("drops").get<int>();
        o.bits = mo.at("bits").get<std::string>();
        o.aggregation = mo.at("aggregation").get<std::string>();
    }
    const auto [params, seed] = run_setup(c, c.manifest.empty() ? nullptr : &manifest);
    if (o.drops < 1) throw UsageError("--drops must be >= 1");
    const auto bits = parse_bits_list(o.bits, err);

    EngineOptions eo;
    eo.threads = c.threads;
    eo.aggregation = parse_aggregation(o.aggregation);
    const auto points = sweep_bits(params, bits, o.drops, seed, eo);

    RunWriter w("sweep-bits", c.out_dir);
    {
        auto f = w.open("sweep.csv");
        write_sweep_csv(points, f);
    }
    std::string canonical;
    for (const auto& b : bits) canonical += (canonical.empty() ? "" : ",") + b.to_string();
    const auto mpath = w.finish(params, seed, {{"drops", o.drops}, {"bits", canonical}, {"aggregation", o.aggregation}});
    for (const auto& p : points) print_report_line(out, "bits=" + p.resolution.to_string(), p.report);
    out << "wrote " << mpath.string() << '\n';
    return kSuccess;
}

// ---- hd-baseline ----

struct HdOptions {
    int drops = 10000;
    double prelog = 0.5;
    std::string aggregation = "cell_mean";
};

int cmd_hd_baseline(const CommonOptions& c, HdOptions o, std::ostream& out) {
    json manifest;
    if (!c.manifest.empty()) {
        manifest = read_manifest(c.manifest, "hd-baseline");
        const auto& mo = manifest.at("options");
        o.drops = mo.at("drops").get<int>();
        o.prelog = mo.at("prelog").get<double>();
        o.aggregation = mo.at("aggregation").get<std::string>();
    }
    const auto [params, seed] = run_setup(c, c.manifest.empty() ? nullptr : &manifest);
    if (o.drops < 1) throw UsageError("--drops must be >= 1");
    if (!(o.prelog > 0.0 && o.prelog <= 1.0)) throw UsageError("--prelog must lie in (0, 1]");

    EngineOptions eo;
    eo.threads = c.threads;
    eo.aggregation = parse_aggregation(o.aggregation);
    eo.hd_prelog = o.prelog;
    const SqinrReport fd = run_cdf_experiment(params, o.drops, seed, eo);
    const SqinrReport hd = run_hd_baseline(params, o.drops, seed, eo);

    RunWriter w("hd-baseline", c.out_dir);
    {
        auto f = w.open("hd_cdf.csv");
        write_cdf_csv(hd, f);
        auto g = w.open("se_summary.csv");
        g << "mode,se_gross,se_effective\n" << std::setprecision(12);
        g << "full_duplex," << fd.se_gross << ',' << fd.se_effective << '\n';
        g << "half_duplex," << hd.se_gross << ',' << hd.se_effective << '\n';
    }
    const auto mpath =
        w.finish(params, seed, {{"drops", o.drops}, {"prelog", o.prelog}, {"aggregation", o.aggregation}});
    print_report_line(out, "full-duplex", fd);
    print_report_line(out, "half-duplex", hd);
    out << "wrote " << mpath.string() << '\n';
    return kSuccess;
}

// ---- asymptotics ----

int cmd_asymptotics(const CommonOptions& c, std::ostream& out) {
    const auto reports = run_all_probes();
    RunWriter w("asymptotics", c.out_dir);
    {
        auto f = w.open("asymptotics.csv");
        write_limit_reports_csv(reports, f);
    }
    w.finish(SystemParams{}, c.seed, json::object());

    bool ok = true;
    out << std::left << std::setw(24) << "limit_id" << std::setw(16) << "limit_value" << std::setw(16)
        << "last_probe" << std::setw(14) << "gap" << "asserted\n";
    for (const auto& r : reports) {
        const double last = r.probes.empty() ? 0.0 : r.probes.back().second;
        const char* status = !r.assertable ? "report-only" : (r.converged ? "yes (pass)" : "yes (FAIL)");
        out << std::setprecision(8) << std::setw(24) << to_string(r.id) << std::setw(16) << r.limit_value
            << std::setw(16) << last << std::setw(14) << std::setprecision(3) << r.relative_gap << status << '\n';
        if (r.assertable && !r.converged) ok = false;
    }
    return ok ? kSuccess : kValidationFailure;
}

// ---- validate-oracle ----

int cmd_validate(const CommonOptions& c, bool quick, std::ostream& out) {
    ValidationOptions vo;
    vo.quick = quick;
    vo.seed = c.seed;
    vo.threads = c.threads;
    const auto results = run_validation(vo);
    const bool ok = all_passed(results);

    out << std::left << std::setw(12) << "suite" << std::setw(50) << "check" << std::setw(15) << "predicted"
        << std::setw(15) << "empirical" << std::setw(12) << "rel_error" << std::setw(10) << "tolerance"
        << "status\n";
    json checks = json::array();
    for (const auto& r : results) {
        const char* status = !r.asserted ? "report-only" : (r.passed ? "PASS" : "FAIL");
        out << std::setprecision(6) << std::setw(12) << r.suite << std::setw(50) << r.name << std::setw(15)
            << r.predicted << std::setw(15) << r.observed << std::setw(12) << std::setprecision(3)
            << r.relative_error << std::setw(10) << r.tolerance << status << '\n';
        checks.push_back({{"suite", r.suite},
                          {"check", r.name},
                          {"predicted", r.predicted},
                          {"empirical", r.observed},
                          {"relative_error", r.relative_error},
                          {"tolerance", r.tolerance},
                          {"status", status}});
    }

    RunWriter w("validate-oracle", c.out_dir);
    {
        auto f = w.open("validate.csv");
        f << "suite,check,predicted,empirical,relative_error,tolerance,status\n" << std::setprecision(12);
        for (const auto& r : results) {
            f << r.suite << ",\"" << r.name << "\"," << r.predicted << ',' << r.observed << ',' << r.relative_error
              << ',' << r.tolerance << ',' << (!r.asserted ? "report-only" : (r.passed ? "PASS" : "FAIL")) << '\n';
        }
        auto g = w.open("validate.json");
        g << json{{"passed", ok}, {"quick", quick}, {"checks", checks}}.dump(2) << '\n';
    }
    w.finish(SystemParams{}, c.seed, {{"quick", quick}});
    out << (ok ? "all assertable checks passed\n" : "validation FAILED\n");
    return ok ? kSuccess : kValidationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Uplink SQINR of full-duplex massive MIMO with low-resolution converters", "fdmimo"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOptions common;

    CdfOptions cdf;
    auto* sim = app.add_subcommand("simulate-cdf", "Monte Carlo CDF of the SQINR of cell 0 (writes cdf.csv)");
    add_common(sim, common, true);
    sim->add_option("--drops", cdf.drops, "Number of user drops")->capture_default_str();
    sim->add_option("--aggregation", cdf.aggregation, "cell_mean (one sample per drop) or per_user")
        ->capture_default_str();
    sim->add_flag("--export-drop", cdf.export_drop, "Also write drop.csv (positions of drop 0)");
    sim->add_flag("--dump-budgets", cdf.dump_budgets, "Also write budgets.csv and breakdown.csv for drop 0");

    SweepOptions sweep;
    auto* sw = app.add_subcommand("sweep-bits", "Spectral efficiency versus converter resolution (writes sweep.csv)");
    add_common(sw, common, true);
    sw->add_option("--drops", sweep.drops, "Number of user drops")->capture_default_str();
    sw->add_option("--bits-list", sweep.bits, "Comma-separated resolutions")->capture_default_str();
    sw->add_option("--aggregation", sweep.aggregation, "cell_mean or per_user")->capture_default_str();

    HdOptions hdo;
    auto* hd = app.add_subcommand("hd-baseline", "Half-duplex baseline on the same drops (writes hd_cdf.csv)");
    add_common(hd, common, true);
    hd->add_option("--drops", hdo.drops, "Number of user drops")->capture_default_str();
    hd->add_option("--prelog", hdo.prelog, "Half-duplex time-sharing prelog")->capture_default_str();
    hd->add_option("--aggregation", hdo.aggregation, "cell_mean or per_user")->capture_default_str();

    auto* asym = app.add_subcommand("asymptotics", "Limit probes (writes asymptotics.csv)");
    add_common(asym, common, false);

    bool quick = false;
    auto* val = app.add_subcommand("validate-oracle", "Moment, identity, oracle and limit checks");
    val->alias("validate");
    add_common(val, common, false);
    val->add_flag("--quick", quick, "Fewer samples, looser tolerances");

    auto* pc = app.add_subcommand("print-config", "Print the effective configuration as JSON");
    pc->add_option("--config", common.config, "JSON config file");
    pc->add_option("--set", common.sets, "Override any config key: key=value (repeatable)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    try {
        if (sim->parsed()) return cmd_simulate_cdf(common, cdf, out);
        if (sw->parsed()) return cmd_sweep_bits(common, sweep, out, err);
        if (hd->parsed()) return cmd_hd_baseline(common, hdo, out);
        if (asym->parsed()) return cmd_asymptotics(common, out);
        if (val->parsed()) return cmd_validate(common, quick, out);
        if (pc->parsed()) {
            out << params_to_json(resolve_params(common)).dump(2) << '\n';
            return kSuccess;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kUsageError;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const json::exception& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    }
    return kUsageError;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace fdmimo::cli
