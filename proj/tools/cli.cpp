#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "thermores/thermores.hpp"

namespace thermores::cli {
namespace {

constexpr const char* kCommands[] = {"steady", "evolve", "protocol", "sweep", "verify"};

Command command_from(const std::string& name) {
    if (name == "steady") return Command::Steady;
    if (name == "evolve") return Command::Evolve;
    if (name == "protocol") return Command::Protocol;
    if (name == "sweep") return Command::Sweep;
    return Command::Verify;
}

template <typename T>
bool parse_exact(std::string_view text, T& value) {
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

GridAxis parse_axis(const std::string& flag, const std::string& text, const std::string& usage) {
    GridAxis axis;
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? first : text.find(':', first + 1);
    const std::string_view view(text);
    const bool ok = second != std::string::npos && text.find(':', second + 1) == std::string::npos &&
                    parse_exact(view.substr(0, first), axis.min) &&
                    parse_exact(view.substr(first + 1, second - first - 1), axis.max) &&
                    parse_exact(view.substr(second + 1), axis.count);
    if (!ok || !std::isfinite(axis.min) || !std::isfinite(axis.max)) {
        throw UsageError(flag + ": expected min:max:count, got '" + text + "'", usage);
    }
    if (axis.count < 1) throw UsageError(flag + ": count must be at least 1", usage);
    if (axis.max < axis.min) throw UsageError(flag + ": max is below min", usage);
    return axis;
}

ReservoirSpec spec_of(const RunConfig& cfg) {
    return {cfg.omega0, cfg.g.value_or(0.0), cfg.gamma, cfg.temperature.value_or(0.0)};
}

DensityMatrix initial_state(InitialState which) {
    ComplexVector psi = ComplexVector::Zero(4);
    switch (which) {
        case InitialState::Excited: psi(3) = 1.0; break;
        case InitialState::Ground: psi(0) = 1.0; break;
        case InitialState::Bell: psi(0) = psi(3) = 1.0 / std::sqrt(2.0); break;
        case InitialState::Mixed: return DensityMatrix::maximally_mixed({2, 2});
    }
    return DensityMatrix::pure(psi, {2, 2});
}

DensityMatrix random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix g(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) g(i, j) = cplx(n(rng), n(rng));
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return validate_density(rho, {2, 2});
}

// Routes output to --out when given, otherwise to the supplied stream.
template <typename Fn>
void emit(const RunConfig& cfg, std::ostream& fallback, Fn&& body) {
    if (!cfg.out) {
        body(fallback);
        return;
    }
    std::ofstream file(*cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open '" + *cfg.out + "' for writing");
    body(file);
    file.flush();
    if (!file) throw Error("write to '" + *cfg.out + "' failed");
}

void print_populations(std::ostream& out, const std::array<double, 4>& q) {
    for (int k = 0; k < 4; ++k) out << 'q' << k << ' ' << format_number(q[k]) << '\n';
}

int run_steady(const RunConfig& cfg, std::ostream& out) {
    const ReservoirSpec spec = spec_of(cfg);
    const DensityMatrix rho = steady_state(engineered_liouvillian(spec), {2, 2});
    const double w = witness_w(rho, 2);
    emit(cfg, out, [&](std::ostream& os) {
        print_populations(os, dressed_populations(rho));
        os << "negativity " << format_number(negativity(rho)) << '\n'
           << "witness " << format_number(w) << '\n'
           << "witness_violated " << (w < 1.0 ? 1 : 0) << '\n';
    });
    return 0;
}

int run_evolve(const RunConfig& cfg, std::ostream& out) {
    const ReservoirSpec spec = spec_of(cfg);
    const Liouvillian L = engineered_liouvillian(spec);
    const DensityMatrix rho0 = initial_state(cfg.initial);
    const double t_end = *cfg.time;
    emit(cfg, out, [&](std::ostream& os) {
        os << "t,q0,q1,q2,q3,negativity,witness\n";
        for (int k = 0; k < cfg.samples; ++k) {
            const double t = cfg.samples == 1 ? t_end
                             : k == cfg.samples - 1
                                 ? t_end
                                 : t_end * static_cast<double>(k) / static_cast<double>(cfg.samples - 1);
            const DensityMatrix rho = evolve(rho0, L, t);
            const auto q = dressed_populations(rho);
            os << format_number(t);
            for (double x : q) os << ',' << format_number(x);
            os << ',' << format_number(negativity(rho)) << ',' << format_number(witness_w(rho, 2)) << '\n';
        }
    });
    return 0;
}

int run_protocol_command(const RunConfig& cfg, std::ostream& out) {
    const ReservoirSpec spec = spec_of(cfg);
    const DensityMatrix rho0 = initial_state(cfg.initial);
    const DensityMatrix via_protocol = run_protocol(rho0, ProtocolConfig::make(spec, *cfg.time));
    const DensityMatrix via_lindblad = evolve(rho0, engineered_liouvillian(spec), *cfg.time);
    const double distance = trace_distance(via_protocol, via_lindblad);
    const bool ok = distance < cfg.tol;
    emit(cfg, out, [&](std::ostream& os) {
        os << "state (real imag pairs, row-major)\n";
        const ComplexMatrix& m = via_protocol.matrix();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                os << (j ? "  " : "") << format_number(m(i, j).real()) << ' ' << format_number(m(i, j).imag());
            }
            os << '\n';
        }
        print_populations(os, dressed_populations(via_protocol));
        os << "trace_distance_to_lindblad " << format_number(distance) << '\n'
           << "tolerance " << format_number(cfg.tol) << '\n'
           << (ok ? "PASS" : "FAIL") << '\n';
    });
    return ok ? 0 : 1;
}

int run_sweep(const RunConfig& cfg, std::ostream& out) {
    const SweepGrid grid{cfg.grid_t->min, cfg.grid_t->max, cfg.grid_t->count,
                         cfg.grid_g->min, cfg.grid_g->max, cfg.grid_g->count};
    ReservoirSpec base;
    base.omega0 = cfg.omega0;
    base.gamma = cfg.gamma;
    const auto rows = sweep_phase_diagram(grid, base, cfg.threads);
    if (cfg.out) {
        write_csv(rows, *cfg.out);
    } else {
        write_csv(rows, out);
    }
    return 0;
}

struct Check {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
};

int run_verify(const RunConfig& cfg, std::ostream& out) {
    const double w0 = cfg.omega0, gamma = cfg.gamma;
    std::vector<Check> checks;

    Check triangle{"channel_triangle", 0.0, 1e-10};
    for (double T : {0.0, 0.5, 1.0, 2.0}) {
        for (double t : {0.2, 1.0, 5.0}) {
            const auto params = ThermalChannelParams::from_mode(thermal_mode(w0, T, gamma), t);
            const auto a = gad_kraus(params);
            const auto b = lindblad_to_channel(thermal_qubit_liouvillian(w0, T, gamma), t);
            const auto c = stage_channel(1, 0, params.p, params.lam);
            triangle.deviation = std::max({triangle.deviation, channel_distance(a, b),
                                           channel_distance(b, c), channel_distance(a, c)});
        }
    }
    checks.push_back(triangle);

    std::mt19937_64 rng(20240611);
    Check equivalence{"protocol_vs_lindblad", 0.0, cfg.tol};
    for (double T : {0.0, 0.5, 1.0, 2.0}) {
        for (double g : {0.3, 0.9, 1.5}) {
            const ReservoirSpec spec{w0, g * w0, gamma, T};
            const Liouvillian L = engineered_liouvillian(spec);
            for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
                const auto pc = ProtocolConfig::make(spec, t);
                for (int s = 0; s < 5; ++s) {
                    const auto rho = random_state(rng);
                    equivalence.deviation =
                        std::max(equivalence.deviation, trace_distance(run_protocol(rho, pc), evolve(rho, L, t)));
                }
            }
        }
    }
    checks.push_back(equivalence);

    Check steady{"steady_vs_gibbs", 0.0, 1e-10};
    for (double T : {0.0, 0.25, 0.5, 1.0, 2.0}) {
        for (double g : {0.0, 0.3, 0.6, 1.2, 1.8}) {
            const ReservoirSpec spec{w0, g * w0, gamma, T};
            steady.deviation = std::max(
                steady.deviation, trace_distance(steady_state(engineered_liouvillian(spec), {2, 2}), gibbs_dressed(spec)));
        }
    }
    checks.push_back(steady);

    Check order{"stage_order", 0.0, 1e-12};
    for (int s = 0; s < 20; ++s) {
        const auto pc = ProtocolConfig::make({w0, 0.05 * s * w0 + 0.01, gamma, 0.1 * s}, 0.7);
        const auto rho = random_state(rng);
        const auto a = run_protocol(rho, pc, {StageOrder::R1First, true});
        const auto b = run_protocol(rho, pc, {StageOrder::R2First, true});
        order.deviation = std::max(order.deviation, max_abs(a.matrix() - b.matrix()));
    }
    checks.push_back(order);

    bool all_ok = true;
    emit(cfg, out, [&](std::ostream& os) {
        for (const auto& c : checks) {
            const bool ok = c.deviation < c.tolerance;
            all_ok = all_ok && ok;
            os << (ok ? "PASS " : "FAIL ") << c.name << " max_deviation " << format_number(c.deviation)
               << " tolerance " << format_number(c.tolerance) << '\n';
        }
    });
    return all_ok ? 0 : 1;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"Finite-temperature engineered reservoirs on two qubits", "thermores"};
    app.set_help_flag("-h,--help", "Print this help and exit");

    std::string command;
    std::string grid_t, grid_g, initial = "11";
    double temperature = 0.0, g = 0.0, time = 0.0;
    std::string out;

    app.add_option("command", command, "steady | evolve | protocol | sweep | verify")
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>(std::begin(kCommands), std::end(kCommands))));
    app.add_option("--omega0", cfg.omega0, "Bare qubit frequency (default 1)");
    app.add_option("--gamma", cfg.gamma, "System-reservoir rate (default 1)");
    auto* t_opt = app.add_option("--temperature", temperature, "Reservoir temperature");
    auto* g_opt = app.add_option("--g", g, "Qubit-qubit coupling");
    auto* time_opt = app.add_option("--time", time, "Evolution time");
    auto* gt_opt = app.add_option("--grid-T", grid_t, "Temperature grid min:max:count");
    auto* gg_opt = app.add_option("--grid-g", grid_g, "Coupling grid min:max:count");
    auto* out_opt = app.add_option("--out", out, "Output path (default stdout)");
    app.add_option("--tol", cfg.tol, "Protocol vs Lindblad trace-distance tolerance (default 1e-8)");
    app.add_option("--samples", cfg.samples, "Time samples for evolve (default 11)");
    app.add_option("--initial", initial, "Initial state for evolve/protocol: 11 | 00 | bell | mixed")
        ->check(CLI::IsMember({"11", "00", "bell", "mixed"}));
    app.add_option("--threads", cfg.threads, "Sweep worker threads (default: all cores)");

    const std::string usage = app.help();
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(usage);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what(), usage);
    }

    cfg.command = command_from(command);
    if (*t_opt) cfg.temperature = temperature;
    if (*g_opt) cfg.g = g;
    if (*time_opt) cfg.time = time;
    if (*out_opt) cfg.out = out;
    if (*gt_opt) cfg.grid_t = parse_axis("--grid-T", grid_t, usage);
    if (*gg_opt) cfg.grid_g = parse_axis("--grid-g", grid_g, usage);
    cfg.initial = initial == "00"     ? InitialState::Ground
                  : initial == "bell" ? InitialState::Bell
                  : initial == "mixed" ? InitialState::Mixed
                                       : InitialState::Excited;

    for (double x : {cfg.omega0, cfg.gamma, cfg.tol, temperature, g, time}) {
        if (!std::isfinite(x)) throw UsageError("numeric parameters must be finite", usage);
    }
    if (cfg.samples < 1) throw UsageError("--samples must be at least 1", usage);

    auto require = [&](bool present, const char* flag) {
        if (!present) throw UsageError(command + " requires " + flag, usage);
    };
    switch (cfg.command) {
        case Command::Steady:
            require(cfg.temperature.has_value(), "--temperature");
            require(cfg.g.has_value(), "--g");
            break;
        case Command::Evolve:
        case Command::Protocol:
            require(cfg.temperature.has_value(), "--temperature");
            require(cfg.g.has_value(), "--g");
            require(cfg.time.has_value(), "--time");
            break;
        case Command::Sweep:
            require(cfg.grid_t.has_value(), "--grid-T");
            require(cfg.grid_g.has_value(), "--grid-g");
            break;
        case Command::Verify: break;
    }
    return cfg;
}

int run_command(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
        case Command::Steady: return run_steady(cfg, out);
        case Command::Evolve: return run_evolve(cfg, out);
        case Command::Protocol: return run_protocol_command(cfg, out);
        case Command::Sweep: return run_sweep(cfg, out);
        case Command::Verify: return run_verify(cfg, out);
    }
    return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const HelpRequested& help) {
        out << help.what();
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << e.usage();
        return 2;
    }
    try {
        return run_command(cfg, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    if (ec != std::errc{}) throw Error("format_number: conversion failed");
    return std::string(buf, ptr);
}

std::string csv_header() { return "T,g,q0,q1,q2,q3,negativity,witness,witness_violated"; }

void write_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    std::string line;
    os << csv_header() << '\n';
    for (const auto& r : rows) {
        line.clear();
        line += format_number(r.temperature);
        line += ',';
        line += format_number(r.g);
        for (double q : r.q) {
            line += ',';
            line += format_number(q);
        }
        line += ',';
        line += format_number(r.negativity);
        line += ',';
        line += format_number(r.witness);
        line += r.witness_violated ? ",1\n" : ",0\n";
        os << line;
    }
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("write_csv: cannot open '" + path + "'");
    write_csv(rows, file);
    file.flush();
    if (!file) throw Error("write_csv: write to '" + path + "' failed");
}

std::vector<SweepRow> read_csv(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error("read_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(file, line) || line != csv_header()) {
        throw Error("read_csv: '" + path + "' has an unexpected header");
    }
    std::vector<SweepRow> rows;
    int line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
            fields.push_back(rest.substr(0, pos));
        }
        fields.push_back(rest);
        SweepRow r;
        int flag = -1;
        bool ok = fields.size() == 9 && parse_exact(fields[0], r.temperature) && parse_exact(fields[1], r.g) &&
                  parse_exact(fields[6], r.negativity) && parse_exact(fields[7], r.witness) &&
                  parse_exact(fields[8], flag) && (flag == 0 || flag == 1);
        for (int k = 0; ok && k < 4; ++k) ok = parse_exact(fields[2 + k], r.q[k]);
        if (!ok) throw Error("read_csv: malformed line " + std::to_string(line_no) + " in '" + path + "'");
        r.witness_violated = flag == 1;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace thermores::cli
