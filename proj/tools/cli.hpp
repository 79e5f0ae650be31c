#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermores/metrics.hpp"

namespace thermores::cli {

enum class Command { Steady, Evolve, Protocol, Sweep, Verify };

enum class InitialState { Excited, Ground, Bell, Mixed };

/// min:max:count with inclusive endpoints.
struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    int count = 1;
};

struct RunConfig {
    Command command = Command::Steady;
    double omega0 = 1.0;
    double gamma = 1.0;
    std::optional<double> temperature;
    std::optional<double> g;
    std::optional<double> time;
    std::optional<GridAxis> grid_t;
    std::optional<GridAxis> grid_g;
    std::optional<std::string> out;
    double tol = 1e-8;  // protocol vs Lindblad trace distance
    int samples = 11;
    InitialState initial = InitialState::Excited;
    unsigned threads = 0;
};

/// Bad command line. what() carries the reason, usage() the help text.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& what, std::string usage)
        : std::runtime_error(what), usage_(std::move(usage)) {}
    const std::string& usage() const noexcept { return usage_; }

private:
    std::string usage_;
};

/// --help was given; what() is the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// args excludes the program name. Throws UsageError or HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes a parsed config. Returns 0 on success, 1 on a tolerance or
/// validation failure. Throws on I/O errors.
int run_command(const RunConfig& cfg, std::ostream& out);

/// Full entry point: parse, run, map failures to exit codes 0/1/2.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 12 significant digits, shortest general form; -0 is printed as 0.
std::string format_number(double x);

std::string csv_header();
void write_csv(const std::vector<SweepRow>& rows, std::ostream& os);
void write_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// Parses a file produced by write_csv. Throws thermores::Error on malformed input.
std::vector<SweepRow> read_csv(const std::string& path);

}  // namespace thermores::cli
