// Command-line front end: deal shares, recover secrets from share CSVs,
// run verification suites, and trace density curves.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "iss/errors.hpp"
#include "iss/harness.hpp"

namespace {

struct CommonArgs {
    std::string scheme;
    long trials = -1;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out;
    std::string config;
    std::vector<std::string> params;
    bool trials_set = false;
    bool seed_set = false;
    bool threads_set = false;
};

// The scheme may come from the flag or from the config file; build_config
// rejects the case where neither provides one.
void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-s,--scheme", args.scheme, "scheme name");
    cmd->add_option("-n,--trials", args.trials, "number of trials")
        ->check(CLI::PositiveNumber)
        ->each([&args](const std::string&) { args.trials_set = true; });
    cmd->add_option("--seed", args.seed, "root seed")->each([&args](const std::string&) {
        args.seed_set = true;
    });
    cmd->add_option("-j,--threads", args.threads, "worker threads")
        ->check(CLI::PositiveNumber)
        ->each([&args](const std::string&) { args.threads_set = true; });
    cmd->add_option("-o,--out", args.out, "output CSV path (default stdout)");
    cmd->add_option("-c,--config", args.config, "key=value config file")
        ->check(CLI::ExistingFile);
    cmd->add_option("-p,--param", args.params, "extra scheme parameter key=value")
        ->take_all();
}

// Config file first, then explicit CLI flags on top.
iss::ExperimentConfig build_config(const CommonArgs& args) {
    iss::ExperimentConfig cfg;
    if (!args.config.empty()) {
        for (const auto& [key, value] : iss::parse_config_file(args.config)) {
            if (key == "scheme") {
                cfg.scheme = value;
            } else if (key == "trials") {
                cfg.trials = std::stol(value);
            } else if (key == "seed") {
                cfg.seed = std::stoull(value);
            } else if (key == "threads") {
                cfg.threads = std::stoi(value);
            } else {
                cfg.params[key] = value;
            }
        }
    }
    if (!args.scheme.empty()) cfg.scheme = args.scheme;
    if (args.trials_set) cfg.trials = args.trials;
    if (args.seed_set) cfg.seed = args.seed;
    if (args.threads_set) cfg.threads = args.threads;
    cfg.out_path = args.out;
    for (const std::string& kv : args.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw iss::BadParameter("--param expects key=value, got '" + kv + "'");
        }
        cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (cfg.scheme.empty()) throw iss::BadParameter("no scheme given (flag or config file)");
    return cfg;
}

// Stream for the chosen output: the file if requested, stdout otherwise.
class OutStream {
  public:
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw iss::BadParameter("cannot open output file " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"infinite secret-sharing laboratory"};
    app.require_subcommand(1);

    CommonArgs deal_args, recover_args, verify_args, density_args;
    std::string shares_path;

    CLI::App* deal = app.add_subcommand("deal", "deal shares and write them as CSV");
    add_common(deal, deal_args);

    CLI::App* recover = app.add_subcommand("recover", "recover the secret from a share CSV");
    add_common(recover, recover_args);
    recover->add_option("shares", shares_path, "share CSV from `deal`")
        ->required()
        ->check(CLI::ExistingFile);

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, verify_args);

    CLI::App* density = app.add_subcommand("density", "trace a density curve as CSV");
    add_common(density, density_args);

    try {
        app.parse(argc, argv);

        if (deal->parsed()) {
            iss::ExperimentConfig cfg = build_config(deal_args);
            std::vector<iss::Dealing> dealings = iss::run_deal(cfg);
            OutStream out(cfg.out_path);
            iss::emit_dealings_csv(out.get(), dealings);
            return 0;
        }

        if (recover->parsed()) {
            iss::ExperimentConfig cfg = build_config(recover_args);
            std::ifstream shares(shares_path);
            if (!shares) throw iss::BadParameter("cannot open " + shares_path);
            double secret = iss::run_recover(cfg, shares);
            std::cout << iss::format17(secret) << "\n";
            return 0;
        }

        if (verify->parsed()) {
            iss::ExperimentConfig cfg = build_config(verify_args);
            std::vector<iss::TrialReport> reports = iss::run_verify(cfg);
            OutStream out(cfg.out_path);
            iss::emit_reports_csv(out.get(), reports);
            bool all_pass = true;
            for (const auto& r : reports) {
                all_pass = all_pass && r.pass;
                std::cerr << (r.pass ? "pass" : "FAIL") << "  " << cfg.scheme << "/" << r.check
                          << "  expected " << iss::format17(r.expected) << "  observed "
                          << iss::format17(r.observed) << "\n";
            }
            return all_pass ? 0 : 1;
        }

        if (density->parsed()) {
            iss::ExperimentConfig cfg = build_config(density_args);
            iss::DensityCurve curve = iss::run_density(cfg);
            OutStream out(cfg.out_path);
            iss::emit_density_csv(out.get(), curve);
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const iss::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
