#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <optional>
#include <sstream>

#include "noma/csv.hpp"
#include "noma/design.hpp"
#include "noma/errors.hpp"
#include "noma/farey.hpp"
#include "noma/pam.hpp"
#include "noma/rate.hpp"

namespace noma::cli {
namespace {

using json = nlohmann::json;

struct OutputOptions {
    std::string path;
    std::string summary;
};

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("-o,--output", o.path, "Write CSV here instead of stdout (relative to $NOMA_OUTPUT_DIR if set)");
    cmd->add_option("--summary", o.summary, "Also write a JSON summary of the run to this path");
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path p = resolve_output_path(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw ValidationError("cannot open output file " + p.string());
    f << text;
    if (!f) throw ValidationError("failed writing " + p.string());
}

void emit(const OutputOptions& o, const std::string& text, std::ostream& out) {
    if (o.path.empty()) {
        out << text;
    } else {
        write_text(o.path, text);
    }
}

void emit_summary(const OutputOptions& o, json summary) {
    if (o.summary.empty()) return;
    if (!o.path.empty()) summary["output"] = resolve_output_path(o.path);
    write_text(o.summary, summary.dump(2) + "\n");
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0) || !(hi >= lo) || !std::isfinite(hi)) throw ValidationError("log grid needs 0 < min <= max");
    if (n < 1) throw ValidationError("grid needs at least one point");
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n));
    if (n == 1) return {lo};
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (int i = 0; i < n; ++i) g.push_back(std::pow(10.0, a + (b - a) * i / (n - 1)));
    g.front() = lo;
    g.back() = hi;
    return g;
}

// "start:stop:step", inclusive of stop up to rounding.
std::vector<double> parse_range(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError("bad range '" + text + "', expected start:stop:step");
        }
    }
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
        throw ValidationError("bad range '" + text + "', expected start:stop:step with step > 0");
    }
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
}

// ---- farey ----------------------------------------------------------------

struct FareyArgs {
    std::int64_t k = 0;
    std::int64_t l = 0;
    bool verify = false;
    bool cross_mediant = false;
    bool csv = false;
    OutputOptions output;
};

void cmd_farey(const FareyArgs& a, std::ostream& out, std::ostream& err) {
    const auto seq = enumerate_punched_farey(a.k, a.l);
    std::string text = a.csv ? to_csv(seq) : to_compact_string(seq) + "\n";
    json summary{{"command", "farey"}, {"K", a.k}, {"L", a.l}, {"terms", seq.size()}};
    if (a.verify) {
        PropertyOptions opts;
        opts.cross_mediant = a.cross_mediant;
        const auto r = verify_properties(seq, opts);
        std::ostringstream os;
        os << "properties: ok (terms=" << r.terms << " pairs=" << r.pairs_checked << " triples=" << r.triples_checked;
        if (a.cross_mediant) os << " quadruples=" << r.quadruples_checked;
        os << ")\n";
        // Keep CSV output machine-readable: the report goes to the summary and stderr.
        if (a.csv) {
            err << os.str();
        } else {
            text += os.str();
        }
        summary["properties"] = {{"ok", true},
                                 {"pairs_checked", r.pairs_checked},
                                 {"triples_checked", r.triples_checked},
                                 {"quadruples_checked", r.quadruples_checked}};
    }
    emit(a.output, text, out);
    emit_summary(a.output, summary);
}

// ---- design ---------------------------------------------------------------

struct DesignArgs {
    double h1 = 1.0;
    double h2 = 1.0;
    double p1 = 1.0;
    double p2 = 1.0;
    int m1 = 2;
    int m2 = 2;
    bool oracle = false;
    int oracle_steps = 1000;
    OutputOptions output;
};

void cmd_design(const DesignArgs& a, std::ostream& out) {
    const auto channel = ChannelRealization::from_magnitudes(a.h1, a.h2);
    const PowerBudget power(a.p1, a.p2);
    const ConstellationPair sizes(a.m1, a.m2);
    const auto d = design_weights(channel, power, sizes);
    const double d_oma = oma_min_distance(channel, power, sizes);

    std::string header = design_csv_header();
    std::string row = design_csv_row(channel, power, sizes, d, d_oma);
    json summary{{"command", "design"}, {"case", to_string(d.regime)}, {"w1", d.w1},       {"w2", d.w2},
                 {"d_noma", d.d_noma},   {"d_oma", d_oma}};
    if (a.oracle) {
        if (!sizes.both_active()) throw ValidationError("--oracle needs both users active (M1, M2 >= 2)");
        if (a.oracle_steps < 1) throw ValidationError("--oracle-steps must be >= 1");
        const auto nc = normalize(channel, power, sizes);
        const auto g = grid_search_design(nc, sizes, a.oracle_steps);
        const double tol = 2.0 / a.oracle_steps * (nc.h1 + nc.h2);
        const bool ok = g.best_distance <= d.d_noma + tol;
        header += ",grid_best,grid_w1t,grid_w2t,grid_ok";
        row += "," + format_double(g.best_distance) + "," + format_double(g.w1_tilde) + "," +
               format_double(g.w2_tilde) + "," + (ok ? "1" : "0");
        summary["oracle"] = {{"steps", a.oracle_steps}, {"grid_best", g.best_distance}, {"tolerance", tol}, {"ok", ok}};
        if (!ok) throw InvariantViolation("grid search beat the closed form by more than the tolerance");
    }
    emit(a.output, header + "\n" + row + "\n", out);
    emit_summary(a.output, summary);
}

// ---- distance-sweep -------------------------------------------------------

struct SweepArgs {
    int m = 64;
    std::vector<int> m1s;
    double h1 = 1.0;
    double h2_min = 0.1;
    double h2_max = 100.0;
    int points = 200;
    double p1 = 1.0;
    double p2 = 1.0;
    OutputOptions output;
};

void cmd_distance_sweep(const SweepArgs& a, std::ostream& out) {
    if (a.m < 4 || !is_power_of_two(a.m)) throw ValidationError("--M must be a power of two >= 4");
    std::vector<int> m1s = a.m1s;
    if (m1s.empty()) {
        for (int m1 = 2; m1 <= a.m / 2; m1 *= 2) m1s.push_back(m1);
    }
    for (int m1 : m1s) {
        if (m1 < 2 || m1 > a.m / 2 || !is_power_of_two(m1)) {
            throw ValidationError("M1 = " + std::to_string(m1) + " must be a power of two with 2 <= M1 <= M/2");
        }
    }
    const PowerBudget power(a.p1, a.p2);
    const auto grid = log_grid(a.h2_min, a.h2_max, a.points);

    std::ostringstream os;
    os << design_csv_header() << '\n';
    std::size_t rows = 0;
    std::size_t violations = 0;
    for (int m1 : m1s) {
        const ConstellationPair sizes(m1, a.m / m1);
        for (double h2 : grid) {
            const auto channel = ChannelRealization::from_magnitudes(a.h1, h2);
            const auto d = design_weights(channel, power, sizes);
            const double d_oma = oma_min_distance(channel, power, sizes);
            if (!(d.d_noma >= d_oma)) ++violations;
            os << design_csv_row(channel, power, sizes, d, d_oma) << '\n';
            ++rows;
        }
    }
    if (violations) throw SuperiorityViolated(std::to_string(violations) + " sweep points with d_noma < d_oma");
    emit(a.output, os.str(), out);
    emit_summary(a.output, {{"command", "distance-sweep"}, {"M", a.m}, {"M1", m1s}, {"rows", rows}});
}

// ---- rate -----------------------------------------------------------------

struct RateArgs {
    int m = 8;
    std::vector<double> lambdas;
    std::string lambda_range;
    std::optional<double> h1, h2;
    double p1 = 1.0;
    double p2 = 1.0;
    bool all = false;
    OutputOptions output;
};

void cmd_rate(const RateArgs& a, std::ostream& out) {
    std::vector<double> lambdas = a.lambdas;
    if (!a.lambda_range.empty()) {
        std::stringstream ss(a.lambda_range);
        std::string lo, hi, n;
        if (!std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') || !std::getline(ss, n, ':')) {
            throw ValidationError("--lambda-range expects min:max:count");
        }
        try {
            const auto g = log_grid(std::stod(lo), std::stod(hi), std::stoi(n));
            lambdas.insert(lambdas.end(), g.begin(), g.end());
        } catch (const std::logic_error& e) {
            if (dynamic_cast<const ValidationError*>(&e)) throw;
            throw ValidationError("--lambda-range expects min:max:count");
        }
    }
    if (a.h1 || a.h2) {
        if (!a.h1 || !a.h2) throw ValidationError("--h1 and --h2 must be given together");
        const auto channel = ChannelRealization::from_magnitudes(*a.h1, *a.h2);
        const PowerBudget power(a.p1, a.p2);
        lambdas.push_back(power.p2 * std::norm(channel.h2) / (power.p1 * std::norm(channel.h1)));
    }
    if (lambdas.empty()) throw ValidationError("give --lambda, --lambda-range or --h1/--h2");

    std::ostringstream os;
    json rows = json::array();
    if (a.all) {
        os << "M,lambda,M1,M2,beta,optimal,asymptotic\n";
    } else {
        os << rate_csv_header() << '\n';
    }
    for (double lam : lambdas) {
        const RateProblem prob(a.m, lam);
        const auto opt = optimal_rate_allocation(prob);
        const auto asym = asymptotic_rate_allocation(prob);
        if (a.all) {
            for (const auto& c : enumerate_rate_allocations(prob)) {
                os << prob.m << ',' << format_double(lam) << ',' << c.m1 << ',' << prob.m / c.m1 << ','
                   << format_double(c.beta) << ',' << (c.m1 == opt.m1 ? 1 : 0) << ',' << (c.m1 == asym.m1 ? 1 : 0)
                   << '\n';
            }
        } else {
            os << rate_csv_row(prob, opt, asym) << '\n';
        }
        rows.push_back({{"lambda", lam},
                        {"M1_opt", opt.m1},
                        {"beta_opt", opt.beta},
                        {"M1_asym", asym.m1},
                        {"beta_asym", asym.beta}});
    }
    emit(a.output, os.str(), out);
    emit_summary(a.output, {{"command", "rate"}, {"M", a.m}, {"allocations", rows}});
}

// ---- ber ------------------------------------------------------------------

struct BerArgs {
    std::string preset;
    std::string config_path;
    std::vector<double> snr;
    std::string snr_range;
    std::optional<std::uint64_t> symbols;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> schemes;
    std::optional<int> m1, m2;
    std::optional<double> delta1_sq, delta2_sq;
    std::optional<double> p1, p2;
    std::optional<std::uint64_t> fading_block;
    std::optional<unsigned> threads;
    bool full_scale = false;
    OutputOptions output;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigInvalidError("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

SimConfig build_sim_config(const BerArgs& a) {
    SimConfig c = a.preset.empty() ? SimConfig{} : preset_config(a.preset);
    if (!a.config_path.empty()) apply_config_json(read_file(a.config_path), c);
    if (!a.snr.empty()) c.snr_db_grid = a.snr;
    if (!a.snr_range.empty()) c.snr_db_grid = parse_range(a.snr_range);
    if (a.symbols) c.symbols_per_point = *a.symbols;
    if (a.seed) c.seed = *a.seed;
    if (!a.schemes.empty()) {
        c.schemes.clear();
        for (const auto& s : a.schemes) c.schemes.push_back(scheme_from_string(s));
    }
    if (a.m1 || a.m2) c.sizes = ConstellationPair(a.m1.value_or(c.sizes.m1), a.m2.value_or(c.sizes.m2));
    if (a.delta1_sq) c.fading.delta1_sq = *a.delta1_sq;
    if (a.delta2_sq) c.fading.delta2_sq = *a.delta2_sq;
    if (a.p1 || a.p2) c.powers = PowerBudget(a.p1.value_or(c.powers.p1), a.p2.value_or(c.powers.p2));
    if (a.fading_block) c.fading_block = *a.fading_block;
    if (a.threads) c.threads = *a.threads;
    validate(c);
    return c;
}

void cmd_ber(const BerArgs& a, std::ostream& out, std::ostream& err) {
    const SimConfig c = build_sim_config(a);
    if (is_full_scale(c)) {
        if (!a.full_scale) {
            throw ValidationError("this configuration is a long paper-scale run; pass --full-scale to allow it");
        }
        err << "warning: full-scale run (" << c.sizes.m1 * c.sizes.m1 << "-QAM, up to "
            << *std::max_element(c.snr_db_grid.begin(), c.snr_db_grid.end()) << " dB, " << c.symbols_per_point
            << " symbols per point); expect a long runtime\n";
    }
    const auto curves = simulate_ber(c);
    emit(a.output, to_csv(curves), out);

    json sc = json::array();
    for (auto s : c.schemes) sc.push_back(to_string(s));
    json cj = json::array();
    for (const auto& curve : curves) {
        json pts = json::array();
        for (const auto& p : curve.points) pts.push_back({{"snr_db", p.snr_db}, {"ber", p.ber}, {"errors", p.errors}});
        cj.push_back({{"scheme", to_string(curve.scheme)}, {"points", pts}});
    }
    emit_summary(a.output, {{"command", "ber"},
                            {"seed", c.seed},
                            {"symbols_per_point", c.symbols_per_point},
                            {"M1", c.sizes.m1},
                            {"M2", c.sizes.m2},
                            {"delta1_sq", c.fading.delta1_sq},
                            {"delta2_sq", c.fading.delta2_sq},
                            {"schemes", sc},
                            {"curves", cj}});
}

}  // namespace

std::string resolve_output_path(const std::string& path) {
    const std::filesystem::path p(path);
    const char* dir = std::getenv("NOMA_OUTPUT_DIR");
    if (p.is_absolute() || dir == nullptr || *dir == '\0') return p.string();
    return (std::filesystem::path(dir) / p).string();
}

void apply_config_json(const std::string& text, SimConfig& config) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigInvalidError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigInvalidError("config must be a JSON object");
    try {
        int m1 = config.sizes.m1;
        int m2 = config.sizes.m2;
        double p1 = config.powers.p1;
        double p2 = config.powers.p2;
        for (const auto& [key, v] : j.items()) {
            if (key == "snr_db") {
                config.snr_db_grid = v.get<std::vector<double>>();
            } else if (key == "snr_range") {
                config.snr_db_grid = parse_range(v.get<std::string>());
            } else if (key == "symbols_per_point") {
                config.symbols_per_point = v.get<std::uint64_t>();
            } else if (key == "seed") {
                config.seed = v.get<std::uint64_t>();
            } else if (key == "schemes") {
                config.schemes.clear();
                for (const auto& s : v.get<std::vector<std::string>>()) config.schemes.push_back(scheme_from_string(s));
            } else if (key == "m1") {
                m1 = v.get<int>();
            } else if (key == "m2") {
                m2 = v.get<int>();
            } else if (key == "delta1_sq") {
                config.fading.delta1_sq = v.get<double>();
            } else if (key == "delta2_sq") {
                config.fading.delta2_sq = v.get<double>();
            } else if (key == "p1") {
                p1 = v.get<double>();
            } else if (key == "p2") {
                p2 = v.get<double>();
            } else if (key == "fading_block") {
                config.fading_block = v.get<std::uint64_t>();
            } else if (key == "threads") {
                config.threads = v.get<unsigned>();
            } else {
                throw ConfigInvalidError("unknown config key '" + key + "'");
            }
        }
        config.sizes = ConstellationPair(m1, m2);
        config.powers = PowerBudget(p1, p2);
    } catch (const json::exception& e) {
        throw ConfigInvalidError(std::string("bad config value: ") + e.what());
    } catch (const ConfigInvalidError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ConfigInvalidError(e.what());
    }
}

std::vector<std::string> preset_names() { return {"equal-gain", "near-far", "equal-gain-full", "near-far-full"}; }

SimConfig preset_config(const std::string& name) {
    SimConfig c;
    if (name == "equal-gain" || name == "near-far") {
        c.sizes = ConstellationPair(4, 4);
        c.snr_db_grid = parse_range("10:40:2");
        c.symbols_per_point = 100000;
        c.fading = name == "near-far" ? FadingVariances{1.0, 1.0 / 16.0} : FadingVariances{1.0, 1.0};
        return c;
    }
    if (name == "equal-gain-full" || name == "near-far-full") {
        c.sizes = ConstellationPair(8, 8);
        c.snr_db_grid = parse_range("20:55:5");
        c.symbols_per_point = 1000000;
        c.fading = name == "near-far-full" ? FadingVariances{1.0, 1.0 / 64.0} : FadingVariances{1.0, 1.0};
        return c;
    }
    throw ConfigInvalidError("unknown preset '" + name + "'");
}

bool is_full_scale(const SimConfig& config) {
    if (config.sizes.m1 >= 8 || config.sizes.m2 >= 8) return true;
    if (*std::max_element(config.snr_db_grid.begin(), config.snr_db_grid.end()) > 45.0) return true;
    const double uses = static_cast<double>(config.symbols_per_point) * static_cast<double>(config.snr_db_grid.size()) *
                        static_cast<double>(config.schemes.size());
    return uses > 1e8;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-user NOMA constellation design toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    FareyArgs fa;
    auto* farey = app.add_subcommand("farey", "Print the punched Farey sequence with denominators <= K, numerators <= L");
    farey->add_option("K", fa.k, "Denominator bound")->required();
    farey->add_option("L", fa.l, "Numerator bound")->required();
    farey->add_flag("--verify", fa.verify, "Check the neighbour identities and report");
    farey->add_flag("--cross-mediant", fa.cross_mediant, "With --verify, also check cross-mediant inequalities");
    farey->add_flag("--csv", fa.csv, "Emit num,den CSV instead of the compact form");
    add_output_flags(farey, fa.output);

    DesignArgs da;
    auto* design = app.add_subcommand("design", "Closed-form optimal weights for one channel");
    design->add_option("--h1", da.h1, "|h1|")->capture_default_str();
    design->add_option("--h2", da.h2, "|h2|")->capture_default_str();
    design->add_option("--p1", da.p1, "Power of user 1")->capture_default_str();
    design->add_option("--p2", da.p2, "Power of user 2")->capture_default_str();
    design->add_option("--m1", da.m1, "PAM size per branch of user 1 (1 = silent)")->capture_default_str();
    design->add_option("--m2", da.m2, "PAM size per branch of user 2 (1 = silent)")->capture_default_str();
    design->add_flag("--oracle", da.oracle, "Cross-check against a brute-force grid search");
    design->add_option("--oracle-steps", da.oracle_steps, "Grid points per axis for --oracle")->capture_default_str();
    add_output_flags(design, da.output);

    SweepArgs sa;
    auto* sweep = app.add_subcommand("distance-sweep", "d_noma and d_oma against |h2| on a log grid");
    sweep->add_option("--M", sa.m, "Sum-constellation PAM size M = M1 M2")->capture_default_str();
    sweep->add_option("--m1", sa.m1s, "M1 values (comma separated); default every M1 with both users active")
        ->delimiter(',');
    sweep->add_option("--h1", sa.h1, "|h1|")->capture_default_str();
    sweep->add_option("--h2-min", sa.h2_min, "Smallest |h2|")->capture_default_str();
    sweep->add_option("--h2-max", sa.h2_max, "Largest |h2|")->capture_default_str();
    sweep->add_option("--points", sa.points, "Grid points")->capture_default_str();
    sweep->add_option("--p1", sa.p1, "Power of user 1")->capture_default_str();
    sweep->add_option("--p2", sa.p2, "Power of user 2")->capture_default_str();
    add_output_flags(sweep, sa.output);

    RateArgs ra;
    auto* rate = app.add_subcommand("rate", "Optimal and asymptotic rate allocation under a sum-rate constraint");
    rate->add_option("--M", ra.m, "Sum-constellation PAM size, a power of two")->capture_default_str();
    rate->add_option("--lambda", ra.lambdas, "Disparity P2|h2|^2/(P1|h1|^2) (comma separated)")->delimiter(',');
    rate->add_option("--lambda-range", ra.lambda_range, "Log grid min:max:count");
    rate->add_option("--h1", ra.h1, "|h1|, used with --h2 to derive lambda");
    rate->add_option("--h2", ra.h2, "|h2|");
    rate->add_option("--p1", ra.p1, "Power of user 1")->capture_default_str();
    rate->add_option("--p2", ra.p2, "Power of user 2")->capture_default_str();
    rate->add_flag("--all", ra.all, "List beta for every divisor M1 instead of the two allocations");
    add_output_flags(rate, ra.output);

    BerArgs ba;
    auto* ber = app.add_subcommand("ber", "Monte Carlo bit error rate of NOMA, TDMA, FDMA and CR-NOMA");
    ber->add_option("--preset", ba.preset, "Starting configuration")->check(CLI::IsMember(preset_names()));
    ber->add_option("--config", ba.config_path, "JSON file of settings; flags override it")->check(CLI::ExistingFile);
    ber->add_option("--snr", ba.snr, "SNR grid in dB (comma separated) [default 0:40:5]")->delimiter(',');
    ber->add_option("--snr-range", ba.snr_range, "SNR grid as start:stop:step");
    ber->add_option("--symbols", ba.symbols, "Channel uses per SNR point [default 100000]");
    ber->add_option("--seed", ba.seed, "RNG seed [default 1]");
    ber->add_option("--schemes", ba.schemes, "Subset of noma,tdma,fdma,cr_noma [default all]")->delimiter(',');
    ber->add_option("--m1", ba.m1, "PAM size per branch of user 1 [default 4]");
    ber->add_option("--m2", ba.m2, "PAM size per branch of user 2 [default 4]");
    ber->add_option("--delta1", ba.delta1_sq, "Fading variance delta1^2, h1 ~ CN(0, 2 delta1^2) [default 1]");
    ber->add_option("--delta2", ba.delta2_sq, "Fading variance delta2^2 [default 1]");
    ber->add_option("--p1", ba.p1, "Power of user 1 [default 1]");
    ber->add_option("--p2", ba.p2, "Power of user 2 [default 1]");
    ber->add_option("--fading-block", ba.fading_block, "Channel uses per fading draw [default 1]");
    ber->add_option("--threads", ba.threads, "Worker threads, 0 = all cores; output does not depend on it [default 1]");
    ber->add_flag("--full-scale", ba.full_scale, "Allow long paper-scale runs (64-QAM and above, > 45 dB)");
    add_output_flags(ber, ba.output);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (*farey) cmd_farey(fa, out, err);
        if (*design) cmd_design(da, out);
        if (*sweep) cmd_distance_sweep(sa, out);
        if (*rate) cmd_rate(ra, out);
        if (*ber) cmd_ber(ba, out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}

}  // namespace noma::cli
