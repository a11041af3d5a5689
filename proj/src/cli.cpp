#include "centrolab/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "centrolab/eig_engine.hpp"
#include "centrolab/errors.hpp"
#include "centrolab/fluctuation_lab.hpp"
#include "centrolab/io.hpp"
#include "centrolab/variance_theory.hpp"

namespace centrolab::cli {

using nlohmann::json;

namespace {

constexpr double kMomentGate = 4.0;
constexpr std::size_t kFullScaleOrder = 4000;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_integer(std::string_view key, std::string_view raw) {
    const std::string text = trim(raw);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("config: '" + std::string(key) + "' expects an integer, got '" + text + "'");
    }
    return value;
}

template <typename T>
T parse_positive(std::string_view key, std::string_view raw) {
    if (trim(raw).starts_with('-')) throw ConfigError("config: '" + std::string(key) + "' must be positive");
    const T value = parse_integer<T>(key, raw);
    if (value <= 0) throw ConfigError("config: '" + std::string(key) + "' must be positive");
    return value;
}

double parse_real(std::string_view key, std::string_view raw) {
    const std::string text = trim(raw);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (text.empty() || used != text.size() || !std::isfinite(value)) {
        throw ConfigError("config: '" + std::string(key) + "' expects a finite number, got '" + text + "'");
    }
    return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view raw) {
    std::vector<T> out;
    const std::string text = trim(raw);
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_positive<T>(key, item));
    return out;
}

bool parse_bool(std::string_view key, std::string_view raw) {
    const std::string text = trim(raw);
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("config: '" + std::string(key) + "' expects true or false");
}

json coefficients_json(const Polynomial& f) {
    json arr = json::array();
    const bool real = f.is_real();
    for (const Complex& c : f.coeffs()) {
        if (real) {
            arr.push_back(c.real());
        } else {
            arr.push_back(json::array({c.real(), c.imag()}));
        }
    }
    return arr;
}

void write_json(const std::filesystem::path& path, const json& doc) { write_text_file(path, doc.dump(2) + "\n"); }

}  // namespace

Command parse_command(std::string_view name) {
    if (name == "sample") return Command::sample;
    if (name == "spectrum") return Command::spectrum;
    if (name == "clt") return Command::clt;
    if (name == "moments") return Command::moments;
    if (name == "oracle") return Command::oracle;
    if (name == "variance") return Command::variance;
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

std::string to_string(Command command) {
    switch (command) {
        case Command::sample:
            return "sample";
        case Command::spectrum:
            return "spectrum";
        case Command::clt:
            return "clt";
        case Command::moments:
            return "moments";
        case Command::oracle:
            return "oracle";
        case Command::variance:
            return "variance";
    }
    return "unknown";
}

void RunConfig::resolve() {
    if (!n) n = (command == Command::clt && fullScale) ? kFullScaleOrder : 1000;
    if (!trials) trials = command == Command::moments ? 2000 : 750;
    if (!kmax) kmax = 5;
    if (!f) {
        const std::vector<double> fig{0.0, 0.0, 1.0, 0.0, 0.0, 4.0};
        const std::vector<double> identity{0.0, 1.0};
        f = command == Command::variance ? Polynomial(identity) : Polynomial(fig);
    }
}

void apply_setting(RunConfig& config, std::string_view rawKey, std::string_view value) {
    const std::string key = trim(rawKey);
    if (key == "n") {
        config.n = parse_positive<std::size_t>(key, value);
    } else if (key == "trials") {
        config.trials = parse_positive<std::size_t>(key, value);
    } else if (key == "kmax") {
        config.kmax = parse_positive<int>(key, value);
    } else if (key == "f") {
        config.f = Polynomial::parse(value);
    } else if (key == "klist") {
        config.klist = parse_list<int>(key, value);
    } else if (key == "llist") {
        config.llist = parse_list<int>(key, value);
    } else if (key == "nlist") {
        config.nlist = parse_list<std::size_t>(key, value);
    } else if (key == "dist") {
        config.dist = parse_dist(trim(value));
    } else if (key == "seed") {
        config.seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "radius") {
        config.radius = parse_real(key, value);
    } else if (key == "nodes") {
        config.nodes = parse_positive<int>(key, value);
    } else if (key == "out") {
        const std::string path = trim(value);
        if (path.empty()) throw ConfigError("config: 'out' must not be empty");
        config.out = path;
    } else if (key == "threads") {
        config.threads = parse_positive<std::size_t>(key, value);
    } else if (key == "budget") {
        config.budget = parse_positive<std::uint64_t>(key, value);
    } else if (key == "max_sweeps") {
        config.maxSweeps = parse_positive<std::size_t>(key, value);
    } else if (key == "full_scale") {
        config.fullScale = parse_bool(key, value);
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> entries;
    std::stringstream ss{std::string(text)};
    std::string line;
    int lineNo = 0;
    while (std::getline(ss, line)) {
        ++lineNo;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineNo) + ": expected 'key = value'");
        }
        const std::string key = trim(content.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineNo) + ": empty key");
        entries[key] = trim(content.substr(eq + 1));
    }
    return entries;
}

int cmd_sample(const RunConfig& config, std::ostream& log) {
    const CentroMatrix m = sample_centro(*config.n, config.dist, config.seed);
    std::ostringstream csv;
    write_matrix_csv(csv, m.entries());
    const auto path = config.out / "matrix.csv";
    write_text_file(path, csv.str());
    const bool symmetric = assert_centrosymmetric(m.entries(), 0.0);
    log << path.string() << '\n' << "centrosymmetric: " << (symmetric ? "true" : "false") << '\n';
    return kOk;
}

int cmd_spectrum(const RunConfig& config, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const CentroMatrix m = sample_centro(*config.n, config.dist, config.seed);
    const Spectrum spec = eigenvalues(m.entries(), config.maxSweeps);
    const std::vector<double> radii{0.25, 0.5, 0.75, 1.0, 1.05};
    const std::vector<double> fractions = spectral_radial_cdf(spec, radii);

    std::ostringstream csv;
    write_spectrum_csv(csv, spec);
    write_text_file(config.out / "spectrum.csv", csv.str());
    json doc;
    doc["n"] = *config.n;
    doc["dist"] = to_string(config.dist);
    doc["seed"] = config.seed;
    doc["converged"] = spec.converged;
    doc["iterations"] = spec.iterations;
    doc["radii"] = radii;
    doc["fractions"] = fractions;
    doc["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_json(config.out / "radial.json", doc);

    log << "eigenvalues: " << spec.values.size() << (spec.converged ? "" : " (NOT converged, partial)") << '\n';
    for (std::size_t i = 0; i < radii.size(); ++i) {
        log << "  |lambda| <= " << radii[i] << ": " << fractions[i] << '\n';
    }
    return spec.converged ? kOk : kSolver;
}

int cmd_clt(const RunConfig& config, std::ostream& log) {
    const CltReport report = run_clt(*config.n, *config.trials, *config.f, config.dist, config.seed, config.threads);

    json doc;
    doc["n"] = report.n;
    doc["trials"] = report.trials;
    doc["dist"] = to_string(report.dist);
    doc["seed"] = report.seed;
    doc["f"] = coefficients_json(report.f);
    doc["empirical_variance"] = report.empiricalVariance;
    doc["variance_real"] = report.varianceReal;
    doc["variance_imag"] = report.varianceImag;
    doc["theoretical_variance"] = report.theoreticalVariance;
    doc["ks"] = report.ksStatistic;
    doc["ks_threshold"] = kKsThreshold;
    doc["normality_pass"] = report.ksStatistic < kKsThreshold;
    doc["runtime_seconds"] = report.runtimeSeconds;
    write_json(config.out / "clt_report.json", doc);

    std::vector<double> real;
    real.reserve(report.samples.size());
    std::ostringstream samples;
    samples << "trial,re,im\n";
    for (std::size_t t = 0; t < report.samples.size(); ++t) {
        real.push_back(report.samples[t].real());
        samples << t << ',' << format_double(report.samples[t].real()) << ','
                << format_double(report.samples[t].imag()) << '\n';
    }
    write_text_file(config.out / "samples.csv", samples.str());
    std::ostringstream hist;
    write_histogram_csv(hist, histogram(real));
    write_text_file(config.out / "histogram.csv", hist.str());

    log << "empirical variance " << report.empiricalVariance << " vs theoretical " << report.theoreticalVariance
        << ", KS " << report.ksStatistic << '\n';
    return kOk;
}

int cmd_moments(const RunConfig& config, std::ostream& log) {
    const MomentReport report =
        moment_suite(*config.n, *config.trials, *config.kmax, config.dist, config.seed, config.threads);
    json rows = json::array();
    bool allPass = true;
    for (const MomentRow& row : report.rows) {
        const bool pass = std::abs(row.zScore) <= kMomentGate;
        allPass = allPass && pass;
        json r;
        r["k"] = row.k;
        r["l"] = row.l == 0 ? json(nullptr) : json(row.l);
        r["estimate"] = row.estimate;
        r["standard_error"] = row.standardError;
        r["target"] = row.target;
        r["z"] = row.zScore;
        r["status"] = pass ? "PASS" : "FAIL";
        rows.push_back(r);
        log << (row.l == 0 ? "E[Tr M^" + std::to_string(row.k) + "]"
                           : "E[Tr M^" + std::to_string(row.k) + " Tr M^" + std::to_string(row.l) + "]")
            << " = " << row.estimate << " +- " << row.standardError << " (target " << row.target
            << ", z " << row.zScore << ") " << (pass ? "PASS" : "FAIL") << '\n';
    }
    json doc;
    doc["n"] = report.n;
    doc["trials"] = report.trials;
    doc["dist"] = to_string(report.dist);
    doc["seed"] = report.seed;
    doc["kmax"] = *config.kmax;
    doc["z_gate"] = kMomentGate;
    doc["rows"] = rows;
    doc["all_pass"] = allPass;
    doc["runtime_seconds"] = report.runtimeSeconds;
    write_json(config.out / "moments.json", doc);
    return kOk;
}

int cmd_oracle(const RunConfig& config, std::ostream& log) {
    const auto table = convergence_table(config.klist, config.llist, config.nlist, config.budget, config.threads);
    std::ostringstream csv;
    write_table_csv(csv, table);
    const auto path = config.out / "oracle.csv";
    write_text_file(path, csv.str());
    log << path.string() << ": " << table.size() << " rows\n";
    return kOk;
}

int cmd_variance(const RunConfig& config, std::ostream& log) {
    const VarianceReport report = variance_report(*config.f, config.radius, config.nodes);
    json quad = json::array();
    json discrepancy = json::object();
    json warnings = json::array();
    for (std::size_t i = 0; i < report.quadrature.size(); ++i) {
        const QuadratureResult& q = report.quadrature[i];
        json entry;
        entry["variant"] = to_string(q.variant);
        entry["radius"] = q.radius;
        entry["nodes"] = q.nodes;
        entry["value_re"] = q.value.real();
        entry["value_im"] = q.value.imag();
        quad.push_back(entry);
        discrepancy[to_string(q.variant)] = report.discrepancy[i];
        for (const auto& w : q.warnings) warnings.push_back(to_string(q.variant) + ": " + w);
        log << to_string(q.variant) << ": " << q.value.real() << (q.value.imag() < 0 ? " - " : " + ")
            << std::abs(q.value.imag()) << "i, discrepancy " << report.discrepancy[i] << '\n';
    }
    json doc;
    doc["f"] = coefficients_json(report.f);
    doc["closed_form"] = report.closedForm;
    doc["quadrature"] = quad;
    doc["discrepancy"] = discrepancy;
    doc["warnings"] = warnings;
    write_json(config.out / "variance.json", doc);
    log << "closed form " << report.closedForm << '\n';
    return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random centrosymmetric matrix laboratory: sampling, spectra, trace moments and LES fluctuations"};
    std::string command;
    std::string configPath;
    app.add_option("command", command, "sample | spectrum | clt | moments | oracle | variance")->required();
    app.add_option("--config", configPath, "flat 'key = value' config file");

    struct Flag {
        const char* name;
        const char* key;
        const char* help;
        std::string value;
    };
    std::vector<Flag> flags{
        {"--n", "n", "matrix order", {}},
        {"--trials", "trials", "Monte Carlo trials", {}},
        {"--seed", "seed", "master seed (u64)", {}},
        {"--f", "f", "polynomial coefficients c0,c1,...,cd", {}},
        {"--dist", "dist", "gaussian | uniform", {}},
        {"--radius", "radius", "contour radius (> 1)", {}},
        {"--nodes", "nodes", "quadrature nodes per circle", {}},
        {"--kmax", "kmax", "largest trace power", {}},
        {"--threads", "threads", "worker threads (fallback: CENTROLAB_THREADS)", {}},
        {"--out", "out", "output directory", {}},
        {"--klist", "klist", "oracle chain lengths k", {}},
        {"--llist", "llist", "oracle second chain lengths l (empty: single chains)", {}},
        {"--nlist", "nlist", "oracle matrix orders", {}},
        {"--budget", "budget", "oracle enumeration budget (terms)", {}},
        {"--max-sweeps", "max_sweeps", "eigensolver sweep budget (default 30 n)", {}},
    };
    std::vector<CLI::Option*> options;
    for (auto& flag : flags) options.push_back(app.add_option(flag.name, flag.value, flag.help));
    bool fullScale = false;
    auto* fullScaleOpt = app.add_flag("--full-scale", fullScale, "clt: default to n = 4000");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfig;
    }

    try {
        RunConfig config;
        config.command = parse_command(command);
        if (!configPath.empty()) {
            for (const auto& [key, value] : parse_config_text(read_text_file(configPath))) {
                apply_setting(config, key, value);
            }
        }
        for (std::size_t i = 0; i < flags.size(); ++i) {
            if (options[i]->count() > 0) apply_setting(config, flags[i].key, flags[i].value);
        }
        if (fullScaleOpt->count() > 0) config.fullScale = fullScale;
        config.resolve();

        switch (config.command) {
            case Command::sample:
                return cmd_sample(config, out);
            case Command::spectrum:
                return cmd_spectrum(config, out);
            case Command::clt:
                return cmd_clt(config, out);
            case Command::moments:
                return cmd_moments(config, out);
            case Command::oracle:
                return cmd_oracle(config, out);
            case Command::variance:
                return cmd_variance(config, out);
        }
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return kSolver;
    } catch (const DiagnosticError& e) {
        err << "solver error: " << e.what() << '\n';
        return kSolver;
    } catch (const ResourceError& e) {
        err << "budget error: " << e.what() << '\n';
        return kBudget;
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return kConfig;
    }
    return kConfig;
}

}  // namespace centrolab::cli
