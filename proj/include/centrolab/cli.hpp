#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "centrolab/centro_core.hpp"
#include "centrolab/pairing_oracle.hpp"
#include "centrolab/polynomial.hpp"

namespace centrolab::cli {

enum class Command { sample, spectrum, clt, moments, oracle, variance };

Command parse_command(std::string_view name);
std::string to_string(Command command);

/// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kConfig = 1, kIo = 2, kSolver = 3, kBudget = 4 };

/// Everything a command needs. Unset optionals take per-command defaults in
/// resolve().
struct RunConfig {
    Command command = Command::sample;
    std::optional<std::size_t> n;
    std::optional<std::size_t> trials;
    std::optional<int> kmax;
    std::optional<Polynomial> f;
    std::vector<int> klist{2, 4};
    std::vector<int> llist;
    std::vector<std::size_t> nlist{2, 3, 4};
    EntryDist dist = EntryDist::gaussian;
    std::uint64_t seed = 1;
    double radius = 1.5;
    int nodes = 256;
    std::filesystem::path out = ".";
    std::size_t threads = 0;
    std::uint64_t budget = kDefaultTermBudget;
    std::size_t maxSweeps = 0;
    bool fullScale = false;  ///< clt: default n = 4000 instead of 1000

    /// Fills unset fields with the defaults of `command`.
    void resolve();
};

/// Validates and stores one setting. Keys: n, trials, kmax, f, klist, llist,
/// nlist, dist, seed, radius, nodes, out, threads, budget, max_sweeps,
/// full_scale. Unknown keys and invalid values raise ConfigError.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat "key = value" text, '#' starts a comment. Duplicate keys: last wins.
std::map<std::string, std::string> parse_config_text(std::string_view text);

/// Each command writes its artifacts under config.out and a short summary to
/// `log`. They return an ExitCode; library errors propagate as exceptions.
int cmd_sample(const RunConfig& config, std::ostream& log);
int cmd_spectrum(const RunConfig& config, std::ostream& log);
int cmd_clt(const RunConfig& config, std::ostream& log);
int cmd_moments(const RunConfig& config, std::ostream& log);
int cmd_oracle(const RunConfig& config, std::ostream& log);
int cmd_variance(const RunConfig& config, std::ostream& log);

/// Entry point: `centrolab <command> [--flags]`. Maps exceptions onto exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace centrolab::cli
