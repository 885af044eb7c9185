#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hotstove/analytic.hpp"
#include "hotstove/checks.hpp"
#include "hotstove/config_io.hpp"
#include "hotstove/engine.hpp"
#include "hotstove/oracle.hpp"
#include "hotstove/version.hpp"

namespace {

using nlohmann::json;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << text;
}

std::string policy_echo(const hotstove::SamplingPolicy& policy) {
    using hotstove::format_double;
    if (const auto* s = policy.as_step()) {
        return "step{threshold=" + format_double(s->threshold) +
               ";high=" + std::to_string(s->high) + ";low=" + std::to_string(s->low) + "}";
    }
    if (const auto* a = policy.as_affine()) {
        return "affine{base=" + format_double(a->base) + ";slope=" + format_double(a->slope) + "}";
    }
    return "constant{n=" + std::to_string(policy.as_constant()->n) + "}";
}

// --- bias-closed-form -------------------------------------------------------

struct ClosedFormOpts {
    std::int32_t k = 2;
    std::int32_t high = 10;
    std::int32_t low = 1;
    double threshold = 0.0;
    double sigma = 1.0;
    bool as_json = false;
};

int cmd_closed_form(const ClosedFormOpts& opt) {
    const double value = hotstove::step_policy_bias_closed_form(opt.k, opt.high, opt.low,
                                                                opt.threshold, opt.sigma);
    if (opt.as_json) {
        hotstove::RunManifest manifest;
        manifest.config_echo = {{"k", opt.k},
                                {"high", opt.high},
                                {"low", opt.low},
                                {"threshold", opt.threshold},
                                {"sigma", opt.sigma}};
        manifest.version = hotstove::kVersion;
        manifest.backend = "analytic";
        const json doc = {{"manifest", hotstove::manifest_to_json(manifest)}, {"value", value}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << hotstove::format_double(value) << "\n";
    }
    return 0;
}

// --- simulate ----------------------------------------------------------------

struct SimulateOpts {
    std::string config_path;
    std::string output;
    std::string histogram_output;
    std::string format = "csv";
    int threads = 0;
};

json summary_json(const hotstove::ExperimentConfig& config, const hotstove::SummaryStats& s) {
    const double se_mean = s.count() >= 2 ? s.se_mean() : 0.0;
    return {{"config_id", config.id},
            {"trials", s.count()},
            {"seed", config.seed},
            {"mean_final_belief", s.mean()},
            {"se_mean", se_mean},
            {"prob_below_ref", s.prob_below_reference()},
            {"se_prob", s.se_prob()},
            {"ref_value", s.reference()}};
}

std::string summary_csv(const hotstove::RunManifest& manifest,
                        const hotstove::ExperimentConfig& config,
                        const hotstove::SummaryStats& s) {
    using hotstove::format_double;
    std::string out = hotstove::manifest_csv_comment(manifest);
    out += "config_id,trials,seed,mean_final_belief,se_mean,prob_below_ref,se_prob,ref_value\n";
    out += config.id + ',' + std::to_string(s.count()) + ',' + std::to_string(config.seed) + ',' +
           format_double(s.mean()) + ',' +
           format_double(s.count() >= 2 ? s.se_mean() : 0.0) + ',' +
           format_double(s.prob_below_reference()) + ',' + format_double(s.se_prob()) + ',' +
           format_double(s.reference()) + '\n';
    return out;
}

json histogram_json(const hotstove::Histogram& h) {
    json left = json::array(), right = json::array(), count = json::array();
    for (std::int32_t i = 0; i < h.bins(); ++i) {
        left.push_back(h.bin_left(i));
        right.push_back(h.bin_right(i));
        count.push_back(h.count(i));
    }
    return {{"bin_left", left},
            {"bin_right", right},
            {"count", count},
            {"underflow", h.underflow()},
            {"overflow", h.overflow()}};
}

std::string histogram_csv(const hotstove::RunManifest& manifest, const hotstove::Histogram& h) {
    using hotstove::format_double;
    std::string out = hotstove::manifest_csv_comment(manifest);
    out += "# underflow: " + std::to_string(h.underflow()) + "\n";
    out += "# overflow: " + std::to_string(h.overflow()) + "\n";
    out += "bin_left,bin_right,count\n";
    for (std::int32_t i = 0; i < h.bins(); ++i) {
        out += format_double(h.bin_left(i)) + ',' + format_double(h.bin_right(i)) + ',' +
               std::to_string(h.count(i)) + '\n';
    }
    return out;
}

int cmd_simulate(const SimulateOpts& opt) {
    const hotstove::ExperimentConfig config = hotstove::load_experiment_config(opt.config_path);
    hotstove::validate_config(config);

    const auto start = Clock::now();
    const hotstove::ExperimentResult result = hotstove::run_experiment(config, opt.threads);

    hotstove::RunManifest manifest;
    manifest.config_echo = hotstove::experiment_config_to_json(config);
    manifest.version = hotstove::kVersion;
    manifest.backend = "engine";
    manifest.seed = config.seed;
    manifest.duration_seconds = seconds_since(start);

    if (opt.format == "json") {
        json doc = {{"manifest", hotstove::manifest_to_json(manifest)},
                    {"summary", summary_json(config, result.summary)}};
        if (result.histogram) doc["histogram"] = histogram_json(*result.histogram);
        write_text(opt.output, doc.dump(2) + "\n");
        return 0;
    }

    write_text(opt.output, summary_csv(manifest, config, result.summary));
    if (result.histogram) {
        std::string hist_path = opt.histogram_output;
        if (hist_path.empty() && !opt.output.empty()) {
            std::filesystem::path p(opt.output);
            p.replace_extension();
            hist_path = p.string() + ".histogram.csv";
        }
        if (hist_path.empty()) std::cout << "\n";
        write_text(hist_path, histogram_csv(manifest, *result.histogram));
        if (!hist_path.empty()) std::cerr << "histogram written to " << hist_path << "\n";
    }
    return 0;
}

// --- oracle -------------------------------------------------------------------

struct OracleOpts {
    std::string config_path;
    std::string output;
};

int cmd_oracle(const OracleOpts& opt) {
    const hotstove::ExperimentConfig config = hotstove::load_experiment_config(opt.config_path);
    const auto* fixed = config.environment.as_fixed_mean();
    if (fixed == nullptr || !fixed->payoff.is_discrete())
        throw hotstove::IncompatibleConfigError(
            "exact enumeration requires a fixed-mean environment with a discrete payoff");

    const auto start = Clock::now();
    json body;
    if (config.learner.as_averaging() != nullptr) {
        const auto result =
            hotstove::enumerate_expected_final_average(fixed->payoff, config.k, config.policy);
        const auto identity =
            hotstove::enumerate_covariance_identity(fixed->payoff, config.k, config.policy);
        body = {{"learner", "averaging"},
                {"expected_final_belief", result.expected_final_belief},
                {"prob_final_above_u", result.prob_final_above_u},
                {"prob_final_below_u", result.prob_final_below_u},
                {"prob_final_equal_u", result.prob_final_equal_u},
                {"total_paths", result.total_paths},
                {"bias", identity.bias},
                {"covariance", identity.covariance}};
    } else if (const auto* recency = config.learner.as_recency()) {
        const auto result = hotstove::enumerate_expected_final_belief_recency(
            fixed->payoff, config.k, config.policy, recency->weight, recency->initial_belief);
        const auto identity = hotstove::enumerate_recency_covariance_identity(
            fixed->payoff, config.k, config.policy, recency->weight, recency->initial_belief);
        body = {{"learner", "recency"},
                {"expected_final_belief", result.expected_final_belief},
                {"prob_final_above_u", result.prob_final_above_u},
                {"prob_final_below_u", result.prob_final_below_u},
                {"prob_final_equal_u", result.prob_final_equal_u},
                {"total_paths", result.total_paths},
                {"bias", identity.bias},
                {"covariance", identity.covariance},
                {"prior_matches_mean", result.prior_matches_mean}};
        if (!result.prior_matches_mean)
            body["warning"] =
                "starting belief differs from the payoff mean; the bias-covariance identity "
                "does not apply";
    } else {
        throw hotstove::IncompatibleConfigError(
            "exact enumeration supports the averaging and recency learners");
    }

    hotstove::RunManifest manifest;
    manifest.config_echo = hotstove::experiment_config_to_json(config);
    manifest.version = hotstove::kVersion;
    manifest.backend = "oracle";
    manifest.seed = config.seed;
    manifest.duration_seconds = seconds_since(start);

    const json doc = {{"manifest", hotstove::manifest_to_json(manifest)}, {"result", body}};
    write_text(opt.output, doc.dump(2) + "\n");
    return 0;
}

// --- theorem-check -------------------------------------------------------------

struct TheoremOpts {
    std::string suite = "all";
    std::int64_t trials = 1'000'000;
    std::uint64_t seed = 42;
    int threads = 0;
    std::string output;
};

int cmd_theorem_check(const TheoremOpts& opt) {
    const hotstove::CheckBudget budget{opt.trials, opt.seed, opt.threads};
    const auto start = Clock::now();
    const std::vector<hotstove::CheckResult> results =
        opt.suite == "all" ? hotstove::run_all_theorem_suites(budget)
                           : hotstove::run_theorem_suite(std::stoi(opt.suite), budget);

    int failed = 0;
    for (const auto& check : results) {
        if (!check.passed) ++failed;
        std::cout << "suite " << check.suite << " | " << (check.passed ? "PASS" : "FAIL") << " | "
                  << check.name << " | observed=" << hotstove::format_double(check.observed)
                  << " threshold=" << hotstove::format_double(check.threshold) << " ("
                  << check.comparator << ")";
        if (!check.detail.empty()) std::cout << " [" << check.detail << "]";
        std::cout << "\n";
    }
    std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";

    if (!opt.output.empty()) {
        hotstove::RunManifest manifest;
        manifest.config_echo = {{"suite", opt.suite},
                                {"trials", opt.trials},
                                {"seed", opt.seed}};
        manifest.version = hotstove::kVersion;
        manifest.backend = "oracle+engine+analytic";
        manifest.seed = opt.seed;
        manifest.duration_seconds = seconds_since(start);

        json checks = json::array();
        for (const auto& check : results) {
            checks.push_back({{"suite", check.suite},
                              {"name", check.name},
                              {"observed", check.observed},
                              {"threshold", check.threshold},
                              {"comparator", check.comparator},
                              {"passed", check.passed},
                              {"detail", check.detail}});
        }
        const json doc = {{"manifest", hotstove::manifest_to_json(manifest)},
                          {"checks", checks},
                          {"all_passed", failed == 0}};
        write_text(opt.output, doc.dump(2) + "\n");
    }
    return failed == 0 ? 0 : 1;
}

// --- quadrature -----------------------------------------------------------------

struct QuadratureOpts {
    std::int32_t k = 2;
    std::string policy = "step";
    double threshold = 0.0;
    std::int32_t high = 10;
    std::int32_t low = 1;
    std::int32_t n = 5;
    double base = 5.0;
    double slope = 0.0;
    double sigma_u2 = 1.0;
    double sigma_e2 = 1.0;
    double rel_tol = 1e-9;
    std::int32_t max_subdivisions = 1 << 16;
    double halfwidth = 10.0;
    bool as_json = false;
};

int cmd_quadrature(const QuadratureOpts& opt) {
    hotstove::SamplingPolicy policy = [&] {
        if (opt.policy == "step")
            return hotstove::SamplingPolicy::step(opt.threshold, opt.high, opt.low);
        if (opt.policy == "affine") return hotstove::SamplingPolicy::affine(opt.base, opt.slope);
        return hotstove::SamplingPolicy::constant(opt.n);
    }();
    const hotstove::QuadratureSettings settings{opt.rel_tol, opt.max_subdivisions, opt.halfwidth};

    const auto start = Clock::now();
    const double pos_to_neg =
        hotstove::flip_prob_pos_to_neg(opt.k, policy, opt.sigma_u2, opt.sigma_e2, settings);
    const double neg_to_pos =
        hotstove::flip_prob_neg_to_pos(opt.k, policy, opt.sigma_u2, opt.sigma_e2, settings);
    const double prob_final_negative = 0.5 * pos_to_neg + 0.5 * (1.0 - neg_to_pos);

    hotstove::RunManifest manifest;
    manifest.config_echo = {{"k", opt.k},
                            {"policy", policy_echo(policy)},
                            {"sigma_u2", opt.sigma_u2},
                            {"sigma_e2", opt.sigma_e2},
                            {"relative_tolerance", opt.rel_tol},
                            {"max_subdivisions", opt.max_subdivisions},
                            {"integration_halfwidth_in_sds", opt.halfwidth}};
    manifest.version = hotstove::kVersion;
    manifest.backend = "analytic";
    manifest.duration_seconds = seconds_since(start);

    if (opt.as_json) {
        const json doc = {{"manifest", hotstove::manifest_to_json(manifest)},
                          {"result",
                           {{"flip_pos_to_neg", pos_to_neg},
                            {"flip_neg_to_pos", neg_to_pos},
                            {"prob_final_negative", prob_final_negative}}}};
        std::cout << doc.dump(2) << "\n";
        return 0;
    }

    using hotstove::format_double;
    std::string out = hotstove::manifest_csv_comment(manifest);
    out += "k,policy,sigma_u2,sigma_e2,flip_pos_to_neg,flip_neg_to_pos,prob_final_negative\n";
    out += std::to_string(opt.k) + ',' + policy_echo(policy) + ',' +
           format_double(opt.sigma_u2) + ',' + format_double(opt.sigma_e2) + ',' +
           format_double(pos_to_neg) + ',' + format_double(neg_to_pos) + ',' +
           format_double(prob_final_negative) + '\n';
    std::cout << out;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-period adaptive-sampling simulation toolkit"};
    app.require_subcommand(1);

    ClosedFormOpts closed_form;
    auto* cf = app.add_subcommand("bias-closed-form",
                                  "closed-form expected final average under a step policy");
    cf->add_option("--k", closed_form.k, "first-period sample size")
        ->check(CLI::Range(1, 1'000'000));
    cf->add_option("--high", closed_form.high, "second-period draws above the threshold")
        ->check(CLI::Range(1, INT32_MAX));
    cf->add_option("--low", closed_form.low, "second-period draws at or below the threshold")
        ->check(CLI::Range(1, INT32_MAX));
    cf->add_option("--threshold", closed_form.threshold, "policy threshold");
    cf->add_option("--sigma", closed_form.sigma, "payoff standard deviation")
        ->check(CLI::PositiveNumber);
    cf->add_flag("--json", closed_form.as_json, "emit JSON with manifest");

    SimulateOpts simulate;
    auto* sim = app.add_subcommand("simulate", "run a configured Monte Carlo experiment");
    sim->add_option("--config", simulate.config_path, "experiment config JSON")
        ->required()
        ->check(CLI::ExistingFile);
    sim->add_option("--output", simulate.output, "summary output path (default stdout)");
    sim->add_option("--histogram-output", simulate.histogram_output,
                    "histogram CSV path (csv format only)");
    sim->add_option("--format", simulate.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sim->add_option("--threads", simulate.threads,
                    "worker threads (default: HOTSTOVE_THREADS or hardware)");

    OracleOpts oracle;
    auto* orc = app.add_subcommand("oracle", "exact enumeration for discrete payoff configs");
    orc->add_option("--config", oracle.config_path, "experiment config JSON")
        ->required()
        ->check(CLI::ExistingFile);
    orc->add_option("--output", oracle.output, "JSON output path (default stdout)");

    TheoremOpts theorem;
    auto* thm = app.add_subcommand("theorem-check", "run the built-in property check suites");
    thm->add_option("--suite", theorem.suite, "which suite to run")
        ->check(CLI::IsMember({"1", "2", "3", "4", "5", "all"}));
    thm->add_option("--trials", theorem.trials, "Monte Carlo trials per check")
        ->check(CLI::Range(static_cast<std::int64_t>(1), static_cast<std::int64_t>(100'000'000)));
    thm->add_option("--seed", theorem.seed, "base seed for the Monte Carlo checks");
    thm->add_option("--threads", theorem.threads,
                    "worker threads (default: HOTSTOVE_THREADS or hardware)");
    thm->add_option("--output", theorem.output, "machine-readable JSON report path");

    QuadratureOpts quadrature;
    auto* quad = app.add_subcommand("quadrature",
                                    "sign-flip probabilities for the conjugate normal learner");
    quad->add_option("--k", quadrature.k, "first-period sample size")
        ->check(CLI::Range(1, 1'000'000));
    quad->add_option("--policy", quadrature.policy, "policy kind")
        ->check(CLI::IsMember({"step", "affine", "constant"}));
    quad->add_option("--threshold", quadrature.threshold, "step policy threshold");
    quad->add_option("--high", quadrature.high, "step policy draws above the threshold")
        ->check(CLI::Range(1, INT32_MAX));
    quad->add_option("--low", quadrature.low, "step policy draws at or below the threshold")
        ->check(CLI::Range(1, INT32_MAX));
    quad->add_option("--n", quadrature.n, "constant policy draws")->check(CLI::Range(1, INT32_MAX));
    quad->add_option("--base", quadrature.base, "affine policy base");
    quad->add_option("--slope", quadrature.slope, "affine policy slope");
    quad->add_option("--sigma-u2", quadrature.sigma_u2, "prior variance of the true mean")
        ->check(CLI::PositiveNumber);
    quad->add_option("--sigma-e2", quadrature.sigma_e2, "payoff noise variance")
        ->check(CLI::PositiveNumber);
    quad->add_option("--rel-tol", quadrature.rel_tol, "quadrature relative tolerance")
        ->check(CLI::PositiveNumber);
    quad->add_option("--max-subdivisions", quadrature.max_subdivisions,
                     "adaptive subdivision budget")
        ->check(CLI::Range(1, 1 << 24));
    quad->add_option("--halfwidth-sds", quadrature.halfwidth,
                     "integration range in standard deviations of the first-period sum")
        ->check(CLI::Range(6.0, 1000.0));
    quad->add_flag("--json", quadrature.as_json, "emit JSON with manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cf->parsed()) return cmd_closed_form(closed_form);
        if (sim->parsed()) return cmd_simulate(simulate);
        if (orc->parsed()) return cmd_oracle(oracle);
        if (thm->parsed()) return cmd_theorem_check(theorem);
        if (quad->parsed()) return cmd_quadrature(quadrature);
    } catch (const hotstove::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const hotstove::IncompatibleConfigError& e) {
        std::cerr << "incompatible config: " << e.what() << "\n";
        return 3;
    } catch (const hotstove::quadrature_error& e) {
        std::cerr << "quadrature failure: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
