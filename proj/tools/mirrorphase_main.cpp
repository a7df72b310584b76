// mirrorphase CLI: SI-unit configuration in, CSV / plain-text records out.
//
// Subcommands: modfuncs, evolve, phase, sweep, verify.
// Configuration is line-oriented `key = value` text (# comments); flags are
// the same keys in kebab-case and override file values. All output is
// deterministic: identical configuration gives byte-identical output.
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mirrorphase/constants.hpp"
#include "mirrorphase/dissipator.hpp"
#include "mirrorphase/dynamics.hpp"
#include "mirrorphase/errors.hpp"
#include "mirrorphase/params.hpp"
#include "mirrorphase/phase.hpp"
#include "mirrorphase/spectral.hpp"
#include "mirrorphase/verify.hpp"

namespace {

using namespace mirrorphase;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const char* kUsage =
    "usage: mirrorphase <subcommand> [--config FILE] [--key value ...]\n"
    "\n"
    "subcommands:\n"
    "  modfuncs   boundary modulation functions fx, fz over a distance grid\n"
    "             (CSV: z_m,u,fx,fz)\n"
    "  evolve     RK4 trajectory of the reduced density matrix\n"
    "             (CSV: phi,ee,re_eg,im_eg,gg,purity)\n"
    "  phase      geometric phase record: total, geometric and environment\n"
    "             parts, first-order prediction\n"
    "  sweep      phase difference delta(z) against the reference distance z0\n"
    "             (CSV: z_m,delta_rad)\n"
    "  verify     built-in oracle suites; one check per line\n"
    "\n"
    "keys (file: snake_case, flag: --kebab-case):\n"
    "  omega0_si      atom transition frequency, rad/s      [3e9]\n"
    "  gamma_ratio    gamma0/omega0                          [1e-6]\n"
    "  theta_rad      initial superposition angle            [pi/2]\n"
    "  alpha          dipole weights ax,ay,az (sum 1)        [1/3,1/3,1/3]\n"
    "  z_m            atom-plane distance, m                 [1e-5]\n"
    "  z0_m           reference distance, m                  [1e-6]\n"
    "  time_s         evolution time, s (exclusive with cycles)\n"
    "  cycles         evolution horizon in quasi-cycles\n"
    "                 defaults: 1 cycle (evolve), time_s = 1e-3 (others)\n"
    "  beta_cm3       nonradiative-decay volume, cm^3 (phase)\n"
    "  steps          RK4 steps (evolve)                     [2000/cycle]\n"
    "  z_min, z_max   grid range, m (modfuncs, sweep)        [1e-6, 1e-4]\n"
    "  points         grid size                              [60]\n"
    "  scale          grid spacing: log | linear             [log]\n"
    "  out_path       output file (default: stdout)\n";

// ---------------------------------------------------------------------------
// configuration plumbing

using KeyValues = std::map<std::string, std::string>;

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "omega0_si", "gamma_ratio", "theta_rad", "alpha", "z_m", "z0_m",
        "time_s", "cycles", "beta_cm3", "steps", "z_min", "z_max", "points",
        "scale", "out_path", "inject_perturbation"};
    return keys;
}

bool is_known_key(const std::string& k) {
    for (const auto& known : known_keys())
        if (k == known) return true;
    return false;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

KeyValues parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!is_known_key(key))
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": unknown key `" + key + "`");
        kv[key] = value;
    }
    return kv;
}

std::string kebab_to_snake(std::string s) {
    for (char& c : s)
        if (c == '-') c = '_';
    return s;
}

// Flags override file values; --config may appear anywhere.
KeyValues parse_command_line(int argc, char** argv, int first) {
    KeyValues flags;
    std::optional<std::string> config_path;
    for (int i = first; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("--", 0) != 0)
            throw ConfigError("unexpected argument: " + arg);
        arg.erase(0, 2);
        std::string value;
        const auto eq = arg.find('=');
        if (eq != std::string::npos) {
            value = arg.substr(eq + 1);
            arg.erase(eq);
        } else {
            if (i + 1 >= argc) throw ConfigError("flag --" + arg + " needs a value");
            value = argv[++i];
        }
        const std::string key = kebab_to_snake(arg);
        if (key == "config") {
            config_path = value;
            continue;
        }
        if (!is_known_key(key)) throw ConfigError("unknown flag --" + arg);
        flags[key] = value;
    }
    KeyValues merged;
    if (config_path) merged = parse_config_file(*config_path);
    for (const auto& [k, v] : flags) merged[k] = v;
    return merged;
}

double to_double(const std::string& key, const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ConfigError("key `" + key + "`: not a number: " + s);
    return v;
}

long to_long(const std::string& key, const std::string& s) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw ConfigError("key `" + key + "`: not an integer: " + s);
    return v;
}

struct RunConfig {
    AtomParams params;
    double z_m = 1e-5;
    double z0_m = 1e-6;
    double phi_end = 0.0;  // resolved from time_s / cycles
    std::optional<double> time_s;
    std::optional<double> cycles;
    std::optional<double> beta_cm3;
    long steps = -1;
    double z_min = 1e-6, z_max = 1e-4;
    long points = 60;
    bool log_scale = true;
    std::string out_path;
    double inject_perturbation = 0.0;
};

RunConfig build_config(const KeyValues& kv, const std::string& subcommand) {
    RunConfig cfg;
    cfg.params.omega0 = 3e9;
    cfg.params.gamma_ratio = 1e-6;
    cfg.params.theta = 0.5 * std::numbers::pi;
    cfg.params.alpha = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

    for (const auto& [key, value] : kv) {
        if (key == "omega0_si") cfg.params.omega0 = to_double(key, value);
        else if (key == "gamma_ratio") cfg.params.gamma_ratio = to_double(key, value);
        else if (key == "theta_rad") cfg.params.theta = to_double(key, value);
        else if (key == "alpha") {
            std::stringstream ss(value);
            std::string tok;
            std::vector<double> parts;
            while (std::getline(ss, tok, ','))
                parts.push_back(to_double(key, trim(tok)));
            if (parts.size() != 3)
                throw ConfigError("alpha needs three comma-separated components");
            cfg.params.alpha = {parts[0], parts[1], parts[2]};
        } else if (key == "z_m") cfg.z_m = to_double(key, value);
        else if (key == "z0_m") cfg.z0_m = to_double(key, value);
        else if (key == "time_s") cfg.time_s = to_double(key, value);
        else if (key == "cycles") cfg.cycles = to_double(key, value);
        else if (key == "beta_cm3") cfg.beta_cm3 = to_double(key, value);
        else if (key == "steps") cfg.steps = to_long(key, value);
        else if (key == "z_min") cfg.z_min = to_double(key, value);
        else if (key == "z_max") cfg.z_max = to_double(key, value);
        else if (key == "points") cfg.points = to_long(key, value);
        else if (key == "scale") {
            if (value == "log") cfg.log_scale = true;
            else if (value == "linear") cfg.log_scale = false;
            else throw ConfigError("scale must be `log` or `linear`");
        } else if (key == "out_path") cfg.out_path = value;
        else if (key == "inject_perturbation")
            cfg.inject_perturbation = to_double(key, value);
    }

    if (cfg.time_s && cfg.cycles)
        throw ConfigError("exactly one of time_s / cycles may be given");
    if (cfg.time_s && !(*cfg.time_s > 0.0)) throw ConfigError("time_s must be > 0");
    if (cfg.cycles && !(*cfg.cycles > 0.0)) throw ConfigError("cycles must be > 0");
    if (!cfg.time_s && !cfg.cycles) {
        if (subcommand == "evolve") cfg.cycles = 1.0;
        else cfg.time_s = 1e-3;
    }
    cfg.phi_end = cfg.time_s ? phi_from_time(*cfg.time_s, cfg.params.omega0)
                             : *cfg.cycles * 2.0 * std::numbers::pi;

    // alpha: renormalize with a warning when the sum is off by more than 1e-9
    const double asum = cfg.params.alpha_sum();
    for (double ai : cfg.params.alpha)
        if (!(ai >= 0.0)) throw ConfigError("alpha components must be >= 0");
    if (!(asum > 0.0)) throw ConfigError("alpha must have a positive sum");
    if (std::abs(asum - 1.0) > 1e-9) {
        std::fprintf(stderr, "warning: alpha sums to %.17g; renormalizing\n", asum);
        for (double& ai : cfg.params.alpha) ai /= asum;
    }

    try {
        cfg.params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(cfg.z_m > 0.0) || !(cfg.z0_m > 0.0))
        throw ConfigError("z_m and z0_m must be > 0");
    if (cfg.beta_cm3 && !(*cfg.beta_cm3 >= 0.0))
        throw ConfigError("beta_cm3 must be >= 0");
    if (cfg.points < 1) throw ConfigError("points must be >= 1");
    if (cfg.points > 10'000'000) throw ConfigError("points too large");
    if (!(cfg.z_min > 0.0) || !(cfg.z_max >= cfg.z_min))
        throw ConfigError("need 0 < z_min <= z_max");
    if (cfg.steps != -1 && (cfg.steps < 10 || cfg.steps > 5'000'000))
        throw ConfigError("steps must lie in [10, 5e6]");
    return cfg;
}

std::vector<double> make_grid(const RunConfig& cfg) {
    std::vector<double> z(static_cast<std::size_t>(cfg.points));
    if (cfg.points == 1) {
        z[0] = cfg.z_min;
        return z;
    }
    for (long k = 0; k < cfg.points; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(cfg.points - 1);
        z[static_cast<std::size_t>(k)] =
            cfg.log_scale ? cfg.z_min * std::pow(cfg.z_max / cfg.z_min, t)
                          : cfg.z_min + t * (cfg.z_max - cfg.z_min);
    }
    z.back() = cfg.z_max;  // pin the endpoint against pow/rounding drift
    return z;
}

struct Output {
    FILE* f = stdout;
    bool owned = false;
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            f = std::fopen(path.c_str(), "w");
            if (!f) throw ConfigError("cannot open output file: " + path);
            owned = true;
        }
    }
    ~Output() {
        if (owned) std::fclose(f);
    }
};

void print_atom_metadata(FILE* f, const RunConfig& cfg) {
    std::fprintf(f, "# omega0_si = %.17g\n", cfg.params.omega0);
    std::fprintf(f, "# gamma_ratio = %.17g\n", cfg.params.gamma_ratio);
    std::fprintf(f, "# theta_rad = %.17g\n", cfg.params.theta);
    std::fprintf(f, "# alpha = %.17g,%.17g,%.17g\n", cfg.params.alpha[0],
                 cfg.params.alpha[1], cfg.params.alpha[2]);
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_modfuncs(const RunConfig& cfg) {
    Output out(cfg.out_path);
    std::fprintf(out.f, "# mirrorphase modfuncs\n");
    std::fprintf(out.f, "# omega0_si = %.17g\n", cfg.params.omega0);
    std::fprintf(out.f, "z_m,u,fx,fz\n");
    for (double z : make_grid(cfg)) {
        const double u = u_from_distance(z, cfg.params.omega0);
        std::fprintf(out.f, "%.17g,%.17g,%.17g,%.17g\n", z, u, mod_fx(u), mod_fz(u));
    }
    return kExitOk;
}

int cmd_evolve(const RunConfig& cfg) {
    const Geometry geom = Geometry::from_distance(cfg.z_m, cfg.params.omega0);
    const DissipatorCoeffs coeffs = build_coeffs(cfg.params, geom);
    long steps = cfg.steps;
    if (steps == -1) {
        const double cycles = cfg.phi_end / (2.0 * std::numbers::pi);
        steps = std::lround(std::min(2000.0 * std::max(cycles, 1.0), 2e6));
    }
    const Trajectory traj =
        evolve_numeric(cfg.params, coeffs, cfg.phi_end, static_cast<int>(steps));

    Output out(cfg.out_path);
    std::fprintf(out.f, "# mirrorphase evolve\n");
    print_atom_metadata(out.f, cfg);
    std::fprintf(out.f, "# z_m = %.17g\n# steps = %ld\n", cfg.z_m, steps);
    std::fprintf(out.f, "phi,ee,re_eg,im_eg,gg,purity\n");
    for (const TrajectoryPoint& p : traj)
        std::fprintf(out.f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.phi,
                     p.state.ee, p.state.eg.real(), p.state.eg.imag(), p.state.gg,
                     p.state.purity());
    return kExitOk;
}

int cmd_phase(const RunConfig& cfg) {
    const Geometry geom = Geometry::from_distance(cfg.z_m, cfg.params.omega0);
    const DissipatorCoeffs coeffs = build_coeffs(cfg.params, geom);
    const PhaseResult exact = gp_closed_form(cfg.params, coeffs, cfg.phi_end);
    const PhaseResult first = gp_first_order(cfg.params, geom);

    Output out(cfg.out_path);
    std::fprintf(out.f, "# mirrorphase phase\n");
    print_atom_metadata(out.f, cfg);
    std::fprintf(out.f, "# z_m = %.17g\n", cfg.z_m);
    std::fprintf(out.f, "phi_end = %.17g\n", cfg.phi_end);
    std::fprintf(out.f, "total_rad = %.17g\n", exact.total);
    std::fprintf(out.f, "geometric_rad = %.17g\n", exact.geometric_part);
    std::fprintf(out.f, "environment_rad = %.17g\n", exact.environment_part);
    std::fprintf(out.f, "first_order_total_rad = %.17g\n", first.total);
    std::fprintf(out.f, "first_order_geometric_rad = %.17g\n", first.geometric_part);
    std::fprintf(out.f, "first_order_environment_rad = %.17g\n",
                 first.environment_part);
    if (cfg.beta_cm3)
        std::fprintf(out.f, "nonradiative_ratio = %.17g\n",
                     nonradiative_ratio(cfg.z_m, *cfg.beta_cm3 * 1e-6));
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
    const std::vector<double> grid = make_grid(cfg);
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    const std::vector<SweepRow> rows =
        sweep_z(grid, cfg.z0_m, cfg.params,
                cfg.time_s ? *cfg.time_s
                           : cfg.phi_end / cfg.params.omega0,
                threads);

    Output out(cfg.out_path);
    std::fprintf(out.f, "# mirrorphase sweep\n");
    print_atom_metadata(out.f, cfg);
    std::fprintf(out.f, "# z0_m = %.17g\n# time_s = %.17g\n", cfg.z0_m,
                 cfg.phi_end / cfg.params.omega0);
    std::fprintf(out.f, "z_m,delta_rad\n");
    for (const SweepRow& r : rows)
        std::fprintf(out.f, "%.17g,%.17g\n", r.z_m, r.delta_rad);
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    const std::vector<CheckResult> checks =
        run_verification({cfg.inject_perturbation});
    Output out(cfg.out_path);
    bool all_pass = true;
    for (const CheckResult& c : checks) {
        std::fprintf(out.f, "%-34s residual=%.6e threshold=%.6e %s\n",
                     c.name.c_str(), c.residual, c.threshold,
                     c.pass ? "PASS" : "FAIL");
        all_pass = all_pass && c.pass;
    }
    std::fprintf(out.f, "%s: %zu checks\n", all_pass ? "PASS" : "FAIL",
                 checks.size());
    return all_pass ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fputs(kUsage, stderr);
        return kExitConfig;
    }
    const std::string sub = argv[1];
    if (sub == "--help" || sub == "-h" || sub == "help") {
        std::fputs(kUsage, stdout);
        return kExitOk;
    }
    try {
        const KeyValues kv = parse_command_line(argc, argv, 2);
        const RunConfig cfg = build_config(kv, sub);
        if (sub == "modfuncs") return cmd_modfuncs(cfg);
        if (sub == "evolve") return cmd_evolve(cfg);
        if (sub == "phase") return cmd_phase(cfg);
        if (sub == "sweep") return cmd_sweep(cfg);
        if (sub == "verify") return cmd_verify(cfg);
        std::fprintf(stderr, "unknown subcommand: %s\n\n%s", sub.c_str(), kUsage);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const mirrorphase::NumericalFailure& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
}
