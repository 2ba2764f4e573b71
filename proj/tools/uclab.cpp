#include <uclab/config.hpp>
#include <uclab/criterion_engine.hpp>
#include <uclab/errors.hpp>
#include <uclab/parallel.hpp>
#include <uclab/reports.hpp>
#include <uclab/rotation_lab.hpp>
#include <uclab/sign_oracle.hpp>
#include <uclab/verify.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <map>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCriterion = 3;
constexpr int kExitBudget = 4;

struct CommonOptions {
    std::string config;
    std::string out;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string only;
    std::string replay;
};

using Outputs = std::map<std::string, std::string>; // file name -> bytes

struct RunResult {
    Outputs files;
    std::map<std::string, std::size_t> rows;
    std::map<std::string, std::string> parameters;
};

std::vector<const uclab::ConfigSection *> sections_of(const uclab::Config &config, const std::string &type,
                                                      const std::string &only) {
    auto sections = config.of_type(type);
    if (!only.empty()) {
        std::erase_if(sections, [&](const uclab::ConfigSection *s) { return s->name() != only; });
        if (sections.empty())
            throw uclab::ConfigError(0, "only", "no [" + type + " " + only + "] section");
    }
    if (sections.empty())
        throw uclab::ConfigError(0, "section", "config has no [" + type + " ...] sections");
    return sections;
}

enum class ScanMode { Auto, Sup, Profile };

uclab::ScanRow scan_row(const uclab::ScanJob &job, const uclab::SupremumEstimate &e) {
    return {job.kernel.name(), job.sequence.id(), e.K, job.exponent, e.argmax.value(), e.value,
            job.refine && e.refinement_gain > 0.0};
}

RunResult run_scan(const uclab::Config &config, const CommonOptions &opts, ScanMode mode, const std::string &command) {
    std::vector<uclab::ScanJob> jobs;
    for (const auto *section : sections_of(config, "scan", opts.only)) {
        auto job = uclab::make_scan_job(*section);
        if (mode == ScanMode::Profile && job.probes.empty())
            throw uclab::ConfigError(section->line(), "probes", "profile needs a nonempty probe list");
        jobs.push_back(std::move(job));
    }
    uclab::ScanTable table;
    for (const auto &job : jobs) {
        uclab::ScanOptions options;
        options.refine = job.refine;
        options.threads = opts.threads;
        const auto query = job.query();
        const bool profile = mode == ScanMode::Profile || (mode == ScanMode::Auto && !job.probes.empty());
        if (profile) {
            std::vector<uclab::Probe> probes;
            for (auto K : job.probes)
                probes.push_back({K, job.sampling});
            for (const auto &e : uclab::divergence_profile(query, probes, options))
                table.add(scan_row(job, e));
            continue;
        }
        const auto q = query.truncated(job.K);
        const auto e = uclab::estimate_supremum(q, job.sampling, options);
        table.add(scan_row(job, e));
        if (job.dump_samples)
            for (const auto &x : uclab::sample_frequencies(q, job.sampling))
                table.add({job.kernel.name(), job.sequence.id(), job.K, job.exponent, x.value(), uclab::difference_sum(q, x), false});
    }
    table.sort();
    RunResult result;
    const std::string csv = table.csv();
    result.files[command + ".csv"] = csv;
    result.rows[command + ".csv"] = table.rows().size();
    return result;
}

RunResult run_oracle(const uclab::Config &config, const CommonOptions &opts) {
    std::vector<uclab::OracleJob> jobs;
    for (const auto *section : sections_of(config, "oracle", opts.only))
        jobs.push_back(uclab::make_oracle_job(*section));
    uclab::CsvTable table;
    table.header = {"name", "mode", "K", "quantity", "value"};
    auto add = [&](const std::string &name, const std::string &mode, std::size_t K, const std::string &quantity, double v) {
        table.rows.push_back({name, mode, std::to_string(K), quantity, uclab::format_number(v)});
    };
    for (const auto &job : jobs) {
        if (job.sign) {
            const auto &s = *job.sign;
            const std::size_t K = s.diffs.K();
            const double aligned = uclab::aligned_coefficient_norm(s.diffs, s.profile);
            const double m2 = uclab::brute_force_sign_norm(s.diffs, s.profile, 2, opts.threads);
            const double m8 = uclab::brute_force_sign_norm(s.diffs, s.profile, 8, opts.threads);
            add(s.name, "sign", K, "aligned_norm", aligned);
            add(s.name, "sign", K, "brute_force_m2", m2);
            add(s.name, "sign", K, "brute_force_m8", m8);
            add(s.name, "sign", K, "ratio_m8", aligned > 0.0 ? m8 / aligned : 1.0);
        } else {
            const auto &k = *job.khintchine;
            const auto seq = uclab::build_sequence(k.sequence, k.K + 1);
            const auto diffs = uclab::difference_family(k.phi, seq, k.K);
            const auto r = uclab::rademacher_square_function(diffs, k.trials, opts.seed, opts.threads);
            add(k.name, "khintchine", k.K, "mean_l1", r.mean_l1);
            add(k.name, "khintchine", k.K, "square_fn_l1", r.square_fn_l1);
            add(k.name, "khintchine", k.K, "ratio", r.square_fn_l1 > 0.0 ? r.mean_l1 / r.square_fn_l1 : 1.0);
        }
    }
    RunResult result;
    result.files["oracle.csv"] = table.csv();
    result.rows["oracle.csv"] = table.rows.size();
    return result;
}

RunResult run_rotation(const uclab::Config &config, const CommonOptions &opts) {
    std::vector<uclab::RotationJob> jobs;
    for (const auto *section : sections_of(config, "rotation", opts.only))
        jobs.push_back(uclab::make_rotation_job(*section));
    uclab::CsvTable table;
    table.header = {"name", "k", "n", "sup", "A", "U", "ratio", "sampled"};
    RunResult result;
    for (const auto &job : jobs) {
        const uclab::RotationNumber rho(job.rho);
        const auto seq = uclab::build_sequence(job.sequence, job.K + 1);
        for (const auto &row : uclab::series_diagnostics(job.f, rho, seq, job.K))
            table.rows.push_back({job.name, std::to_string(row.k), std::to_string(row.n), uclab::format_number(row.sup_norm),
                                  uclab::format_number(row.absolute_sum), uclab::format_number(row.unconditional_sum),
                                  uclab::format_number(row.ratio()), row.sampled ? "1" : "0"});
        result.parameters[job.name + ".rho"] = uclab::format_number(job.rho);
        if (job.tent) {
            result.parameters[job.name + ".tent.L"] = std::to_string(job.tent->L);
            result.parameters[job.name + ".tent.arc_length"] = uclab::format_number(static_cast<double>(job.tent->arc_length));
            result.parameters[job.name + ".tent.centre_first"] = uclab::format_number(static_cast<double>(job.tent->centre_first));
            result.parameters[job.name + ".tent.centre_second"] = uclab::format_number(static_cast<double>(job.tent->centre_second));
        }
    }
    result.files["rotation.csv"] = table.csv();
    result.rows["rotation.csv"] = table.rows.size();
    return result;
}

// Runs a config-driven command, writes its outputs and manifest, and checks a replayed manifest.
int run_configured(const std::string &command, CommonOptions opts) {
    std::optional<uclab::RunManifest> replayed;
    std::string config_text, config_path = opts.config;
    if (!opts.replay.empty()) {
        replayed = uclab::read_manifest(opts.replay);
        if (replayed->command != command)
            throw uclab::ConfigError(0, "replay", "manifest was written by '" + replayed->command + "'");
        config_text = replayed->config_text;
        config_path = replayed->config_path;
        opts.seed = replayed->seed;
        if (auto it = replayed->parameters.find("only"); it != replayed->parameters.end())
            opts.only = it->second;
    } else {
        if (opts.config.empty())
            throw uclab::ConfigError(0, "config", "--config PATH or --replay MANIFEST is required");
        config_text = uclab::read_text_file(opts.config);
    }
    const auto config = uclab::parse_config(config_text);

    uclab::RunManifest manifest;
    manifest.command = command;
    manifest.config_path = config_path;
    manifest.config_text = config_text;
    manifest.seed = opts.seed;
    manifest.version = UCLAB_VERSION;
    manifest.started = uclab::utc_timestamp();

    RunResult result;
    if (command == "scan")
        result = run_scan(config, opts, ScanMode::Auto, command);
    else if (command == "sup")
        result = run_scan(config, opts, ScanMode::Sup, command);
    else if (command == "profile")
        result = run_scan(config, opts, ScanMode::Profile, command);
    else if (command == "oracle")
        result = run_oracle(config, opts);
    else
        result = run_rotation(config, opts);

    manifest.finished = uclab::utc_timestamp();
    manifest.parameters = result.parameters;
    if (!opts.only.empty())
        manifest.parameters["only"] = opts.only;
    manifest.rows = result.rows;
    for (const auto &[name, bytes] : result.files)
        manifest.digests[name] = uclab::digest_hex(bytes);
    manifest.status = "ok";

    int code = kExitOk;
    if (replayed) {
        for (const auto &[name, digest] : replayed->digests) {
            const auto it = manifest.digests.find(name);
            const bool same = it != manifest.digests.end() && it->second == digest;
            std::printf("replay %s %s (%s)\n", same ? "MATCH" : "MISMATCH", name.c_str(), digest.c_str());
            if (!same)
                code = kExitCriterion;
        }
        if (code != kExitOk)
            manifest.status = "replay-mismatch";
    }

    const std::filesystem::path out(opts.out.empty() ? "." : opts.out);
    for (const auto &[name, bytes] : result.files) {
        uclab::write_text_file((out / name).string(), bytes);
        std::printf("wrote %s (%zu rows, digest %s)\n", (out / name).c_str(), result.rows[name],
                    manifest.digests[name].c_str());
    }
    const auto manifest_path = out / (command + ".manifest.json");
    uclab::write_text_file(manifest_path.string(), manifest.json());
    std::printf("wrote %s\n", manifest_path.c_str());
    if (command == "scan" || command == "sup" || command == "profile")
        std::fputs(result.files.begin()->second.c_str(), stdout);
    return code;
}

int run_verify(const CommonOptions &opts) {
    uclab::VerifyContext context;
    context.seed = opts.seed;
    context.threads = opts.threads;
    uclab::CsvTable table;
    table.header = {"id", "name", "passed", "measured", "bound", "margin", "error"};
    int failures = 0;
    std::vector<const uclab::Criterion *> selected;
    if (opts.only.empty()) {
        for (const auto &c : uclab::criteria())
            selected.push_back(&c);
    } else {
        const auto *c = uclab::find_criterion(opts.only);
        if (!c)
            throw uclab::ConfigError(0, "only", "unknown criterion '" + opts.only + "'");
        selected.push_back(c);
    }
    for (const auto *criterion : selected) {
        const auto r = uclab::run_criterion(*criterion, context);
        std::printf("%s\n", uclab::format_result(r).c_str());
        std::fflush(stdout);
        failures += r.passed ? 0 : 1;
        table.rows.push_back({std::to_string(r.id), r.name, r.passed ? "1" : "0", uclab::format_number(r.measured),
                              uclab::format_number(r.bound), uclab::format_number(r.margin), r.error});
    }
    std::printf("%d of %zu criteria failed\n", failures, selected.size());
    if (!opts.out.empty()) {
        const auto path = std::filesystem::path(opts.out) / "verify.csv";
        uclab::write_text_file(path.string(), table.csv());
    }
    return failures == 0 ? kExitOk : kExitCriterion;
}

int run_plot(const CommonOptions &opts, const std::string &input, const std::string &kind_name) {
    const auto kind = uclab::parse_plot_kind(kind_name);
    const auto table = uclab::read_csv(input);
    const std::string svg = uclab::render_plot(table, kind);
    const auto path = std::filesystem::path(opts.out.empty() ? "." : opts.out) /
                      (std::filesystem::path(input).stem().string() + "-" + kind_name + ".svg");
    uclab::write_text_file(path.string(), svg);
    std::printf("wrote %s\n", path.c_str());
    return kExitOk;
}

void add_common(CLI::App *cmd, CommonOptions &opts, bool with_config) {
    if (with_config) {
        cmd->add_option("--config", opts.config, "Config file");
        cmd->add_option("--replay", opts.replay, "Re-run a manifest and compare output digests");
    }
    cmd->add_option("--out", opts.out, "Output directory");
    cmd->add_option("--seed", opts.seed, "Random seed");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware)");
    cmd->add_option("--only", opts.only, with_config ? "Run only the named section" : "Run only the named criterion");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Numerical laboratory for maximal differences of multiplier kernels"};
    app.require_subcommand(1);
    CommonOptions opts;
    std::string plot_input, plot_kind = "sup-vs-K";

    const std::vector<std::pair<std::string, std::string>> configured{
        {"scan", "Supremum or profile per [scan] section"},
        {"sup", "Supremum estimate per [scan] section"},
        {"profile", "Divergence profile per [scan] section"},
        {"oracle", "Sign and Khintchine oracles per [oracle] section"},
        {"rotation", "Rotation-average diagnostics per [rotation] section"},
    };
    for (const auto &[name, help] : configured)
        add_common(app.add_subcommand(name, help), opts, true);
    add_common(app.add_subcommand("verify", "Run the acceptance criteria"), opts, false);
    auto *plot = app.add_subcommand("plot", "Render a CSV table as SVG");
    add_common(plot, opts, false);
    plot->add_option("--input", plot_input, "CSV produced by another subcommand")->required();
    plot->add_option("--kind", plot_kind, "sup-vs-K, S-vs-frequency or AU-ratio");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        uclab::set_default_threads(opts.threads);
        const std::string command = app.get_subcommands().front()->get_name();
        if (command == "verify")
            return run_verify(opts);
        if (command == "plot")
            return run_plot(opts, plot_input, plot_kind);
        return run_configured(command, opts);
    } catch (const uclab::BudgetExceeded &e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitBudget;
    } catch (const uclab::BreakpointBudget &e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitBudget;
    } catch (const uclab::Error &e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitConfig;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
