// Command-line front end: reproduces the simulation tables, the
// heavy-tail variance scan, and the uniform-maximum demo, and exposes
// the weight/interval/expansion computations for ad-hoc use.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moonboot/edgeworth.hpp"
#include "moonboot/generators.hpp"
#include "moonboot/harness.hpp"
#include "moonboot/special.hpp"

namespace {

using namespace moonboot;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_or_write(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    const std::string tmp = out_path + ".tmp";
    std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
    if (!stream || !(stream << payload) || !stream.flush()) {
        throw std::runtime_error("cannot write " + out_path);
    }
    stream.close();
    std::error_code ec;
    std::filesystem::rename(tmp, out_path, ec);
    if (ec) throw std::runtime_error("cannot rename into " + out_path);
}

int cmd_simulate(std::size_t n, const std::string& rule_text,
                 const std::string& case_text, std::size_t replicates,
                 std::uint64_t seed, double p, const std::string& out,
                 const std::string& dump_draws, unsigned workers) {
    TrialConfig config;
    config.n = n;
    config.m_rule = MRule::parse(rule_text);
    config.chain_case = parse_case(case_text);
    config.replicates = replicates;
    config.master_seed = seed;
    config.p = p;
    std::vector<double> draws;
    const TrialRecord record =
        run_trial(config, workers, dump_draws.empty() ? nullptr : &draws);
    const std::string payload = format_records({record});
    if (out.empty()) {
        std::cout << payload;
    } else {
        emit_csv({record}, out);
    }
    if (!dump_draws.empty()) write_draws_csv(draws, dump_draws);
    return 0;
}

int cmd_table(const std::string& config_path, const std::string& out,
              unsigned workers) {
    const auto configs = parse_config(config_path);
    const auto records = run_table(configs, workers);
    if (out.empty()) {
        std::cout << format_records(records);
    } else {
        emit_csv(records, out);
    }
    return 0;
}

int cmd_ci(const std::string& input, double p, const std::string& rule_text,
           double level, std::uint64_t seed) {
    const auto series = read_series(input);
    const auto sample = sort_sample(series);
    const QuantileLevel q(p);
    const std::size_t m = choose_m(sample.size(), MRule::parse(rule_text));
    Stream stream = derive_stream(seed, 0);
    const Ci ci = moon_ci(sample, q, m, level, stream);
    std::cout << "n,m,p,level,point,lo,hi\n"
              << sample.size() << ',' << m << ',' << fmt17(p) << ','
              << fmt17(level) << ',' << fmt17(sample_quantile(sample, q)) << ','
              << fmt17(ci.lo) << ',' << fmt17(ci.hi) << '\n';
    return 0;
}

int cmd_weights(std::size_t n, std::size_t m, double p, const std::string& out) {
    const auto weights = moon_weights(n, m, QuantileLevel(p));
    std::string payload = "j,w\n";
    for (std::size_t j = 1; j <= n; ++j) {
        payload += std::to_string(j);
        payload += ',';
        payload += fmt17(weights.w[j - 1]);
        payload += '\n';
    }
    print_or_write(payload, out);
    return 0;
}

int cmd_edgeworth(std::size_t m, double p, double t, bool have_density,
                  double f_mu, double fprime_mu) {
    double value;
    if (have_density) {
        value = quantile_edgeworth_cdf(t, m, QuantileLevel(p),
                                       DensityHandle{f_mu, fprime_mu});
    } else {
        value = binomial_edgeworth_cdf(m, p, t);
    }
    std::cout << fmt17(value) << '\n';
    return 0;
}

int cmd_maxdemo(std::size_t n, double theta, const std::string& rule_text,
                std::size_t replicates, std::uint64_t seed) {
    const auto record =
        run_max_demo(n, theta, MRule::parse(rule_text), replicates, seed);
    std::cout << "n,m,theta,replicates,zero_fraction,ks_to_exponential\n"
              << record.n << ',' << record.m << ',' << fmt17(record.theta) << ','
              << record.replicates << ',' << fmt17(record.zero_fraction) << ','
              << fmt17(record.ks_to_exponential) << '\n';
    return 0;
}

int cmd_heavy_scan(const std::vector<std::size_t>& n_list,
                   const std::string& rule_text, std::size_t seeds, double C) {
    const auto records =
        run_heavy_tail_scan(n_list, MRule::parse(rule_text), seeds, C);
    std::cout << "n,m,seeds,median_var\n";
    for (const auto& r : records) {
        std::cout << r.n << ',' << r.m << ',' << r.seeds << ','
                  << fmt17(r.median_var) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Studentized m-out-of-n bootstrap for sample quantiles"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run one simulation cell");
    std::size_t sim_n = 10000;
    std::string sim_rule = "cbrt";
    std::string sim_case = "gaussian";
    std::size_t sim_b = 1000;
    std::uint64_t sim_seed = 0;
    double sim_p = 0.5;
    std::string sim_out;
    std::string sim_dump;
    unsigned sim_workers = 0;
    simulate->add_option("--n", sim_n, "Sample size")->required();
    simulate->add_option("--m-rule", sim_rule, "log|cbrt|sqrt|fixed:K")->required();
    simulate->add_option("--case", sim_case, "gaussian|reflected-rw|mh-rw")->required();
    simulate->add_option("--replicates", sim_b, "Monte Carlo replicates");
    simulate->add_option("--seed", sim_seed, "Master seed");
    simulate->add_option("--p", sim_p, "Quantile level");
    simulate->add_option("--out", sim_out, "Output CSV path (stdout if omitted)");
    simulate->add_option("--dump-draws", sim_dump, "Write the T draws to this CSV");
    simulate->add_option("--workers", sim_workers, "Thread count (0 = auto)");

    // table
    auto* table = app.add_subcommand("table", "Run a grid of simulation cells");
    std::string table_config;
    std::string table_out;
    unsigned table_workers = 0;
    table->add_option("--config", table_config, "JSON config file")->required();
    table->add_option("--out", table_out, "Output CSV path (stdout if omitted)");
    table->add_option("--workers", table_workers, "Thread count (0 = auto)");

    // ci
    auto* ci = app.add_subcommand("ci", "Bootstrap confidence interval for a quantile");
    std::string ci_input;
    double ci_p = 0.5;
    std::string ci_rule = "cbrt";
    double ci_level = 0.95;
    std::uint64_t ci_seed = 0;
    ci->add_option("--input", ci_input, "Newline-delimited series file")->required();
    ci->add_option("--p", ci_p, "Quantile level");
    ci->add_option("--m-rule", ci_rule, "log|cbrt|sqrt|fixed:K");
    ci->add_option("--level", ci_level, "Confidence level");
    ci->add_option("--seed", ci_seed, "Master seed");

    // weights
    auto* weights = app.add_subcommand("weights", "Order-statistic weights W_{m,j}");
    std::size_t w_n = 0;
    std::size_t w_m = 0;
    double w_p = 0.5;
    std::string w_out;
    weights->add_option("--n", w_n, "Sample size")->required();
    weights->add_option("--m", w_m, "Subsample size")->required();
    weights->add_option("--p", w_p, "Quantile level");
    weights->add_option("--out", w_out, "Output CSV path (stdout if omitted)");

    // edgeworth
    auto* edge = app.add_subcommand("edgeworth", "Two-term CDF approximations");
    std::size_t e_m = 0;
    double e_p = 0.5;
    double e_t = 0.0;
    double e_fmu = 0.0;
    double e_fprime = 0.0;
    edge->add_option("--m", e_m, "Trial/subsample count")->required();
    edge->add_option("--p", e_p, "Success probability / quantile level");
    edge->add_option("--t", e_t, "Evaluation point")->required();
    auto* fmu_opt = edge->add_option("--f-mu", e_fmu,
                                     "Density at the quantile (switches to the "
                                     "quantile expansion)");
    edge->add_option("--fprime-mu", e_fprime, "Density derivative at the quantile");

    // maxdemo
    auto* maxdemo = app.add_subcommand("maxdemo", "Uniform-maximum bootstrap demo");
    std::size_t x_n = 5000;
    double x_theta = 1.0;
    std::string x_rule = "fixed:292";
    std::size_t x_reps = 2000;
    std::uint64_t x_seed = 0;
    maxdemo->add_option("--n", x_n, "Sample size")->required();
    maxdemo->add_option("--theta", x_theta, "Upper endpoint of the uniform law");
    maxdemo->add_option("--m-rule", x_rule, "log|cbrt|sqrt|fixed:K")->required();
    maxdemo->add_option("--replicates", x_reps, "Replicates");
    maxdemo->add_option("--seed", x_seed, "Master seed");

    // heavy-scan
    auto* heavy = app.add_subcommand("heavy-scan", "Heavy-tail variance scan");
    std::vector<std::size_t> h_nlist;
    std::string h_rule = "fixed:9";
    std::size_t h_seeds = 20;
    double h_c = M_E * M_E;
    heavy->add_option("--n-list", h_nlist, "Ascending sample sizes")
        ->required()
        ->delimiter(',');
    heavy->add_option("--m-rule", h_rule, "log|cbrt|sqrt|fixed:K");
    heavy->add_option("--seeds", h_seeds, "Seeds per n");
    heavy->add_option("--C", h_c, "Tail threshold (must exceed e)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return cmd_simulate(sim_n, sim_rule, sim_case, sim_b, sim_seed, sim_p,
                                sim_out, sim_dump, sim_workers);
        }
        if (table->parsed()) return cmd_table(table_config, table_out, table_workers);
        if (ci->parsed()) return cmd_ci(ci_input, ci_p, ci_rule, ci_level, ci_seed);
        if (weights->parsed()) return cmd_weights(w_n, w_m, w_p, w_out);
        if (edge->parsed()) {
            return cmd_edgeworth(e_m, e_p, e_t, fmu_opt->count() > 0, e_fmu, e_fprime);
        }
        if (maxdemo->parsed()) return cmd_maxdemo(x_n, x_theta, x_rule, x_reps, x_seed);
        if (heavy->parsed()) return cmd_heavy_scan(h_nlist, h_rule, h_seeds, h_c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
