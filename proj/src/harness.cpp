#include "moonboot/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "moonboot/generators.hpp"
#include "moonboot/special.hpp"

namespace moonboot {

namespace {

// Summation order independent of scheduling; pairwise keeps the
// rounding error at O(log B).
double pairwise_sum(const double* data, std::size_t count) {
    if (count <= 8) {
        double acc = 0.0;
        for (std::size_t i = 0; i < count; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = count / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

ObservationSeries generate_case(CaseKind kind, std::size_t n, Stream& stream) {
    switch (kind) {
        case CaseKind::gaussian: return gen_gaussian_iid(n, stream);
        case CaseKind::reflected_rw: return gen_reflected_rw(n, kDefaultStepScale, stream);
        case CaseKind::mh_rw: return gen_rwmh(n, kDefaultProposalScale, kDefaultBurnIn, stream);
    }
    throw std::logic_error("generate_case: unknown case");
}

void format_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<ScanRecord> run_variance_scan(const std::vector<std::size_t>& n_list,
                                          const MRule& m_rule, std::size_t seeds,
                                          std::uint64_t master_seed,
                                          bool heavy_tail, double C) {
    if (n_list.empty() || seeds < 1) {
        throw std::invalid_argument("variance scan: need at least one n and one seed");
    }
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) {
            throw std::invalid_argument("variance scan: n list must be ascending");
        }
    }
    const QuantileLevel level(0.5);
    std::vector<ScanRecord> records;
    for (std::size_t n : n_list) {
        const std::size_t m = choose_m(n, m_rule);
        const auto weights = moon_weights(n, m, level);
        std::vector<double> vars(seeds);
        for (std::size_t s = 0; s < seeds; ++s) {
            Stream stream = derive_stream(
                master_seed, static_cast<std::uint64_t>(n) * 1000003ULL + s);
            const auto series = heavy_tail ? gen_heavy_tail(n, C, stream)
                                           : gen_gaussian_iid(n, stream);
            vars[s] = closed_form_variance(sort_sample(series), weights, level).sigma2;
        }
        records.push_back({n, m, seeds, median_of(std::move(vars))});
    }
    return records;
}

[[noreturn]] void config_error(std::size_t index, const std::string& field,
                               const std::string& what) {
    throw std::runtime_error("config entry " + std::to_string(index + 1) +
                             ", field '" + field + "': " + what);
}

TrialConfig parse_one_config(const nlohmann::json& entry, std::size_t index) {
    if (!entry.is_object()) {
        throw std::runtime_error("config entry " + std::to_string(index + 1) +
                                 ": expected an object");
    }
    static const char* known[] = {"n", "m_rule", "case", "B", "seed", "p"};
    for (const auto& [key, value] : entry.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) config_error(index, key, "unknown field");
    }
    TrialConfig config;
    try {
        config.n = entry.at("n").get<std::size_t>();
    } catch (const nlohmann::json::exception&) {
        config_error(index, "n", "missing or not a positive integer");
    }
    try {
        config.m_rule = MRule::parse(entry.at("m_rule").get<std::string>());
    } catch (const std::exception& e) {
        config_error(index, "m_rule", e.what());
    }
    try {
        config.chain_case = parse_case(entry.at("case").get<std::string>());
    } catch (const std::exception& e) {
        config_error(index, "case", e.what());
    }
    try {
        config.replicates = entry.at("B").get<std::size_t>();
    } catch (const nlohmann::json::exception&) {
        config_error(index, "B", "missing or not a positive integer");
    }
    try {
        config.master_seed = entry.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception&) {
        config_error(index, "seed", "missing or not an integer");
    }
    if (entry.contains("p")) {
        double p = 0.0;
        try {
            p = entry.at("p").get<double>();
        } catch (const nlohmann::json::exception&) {
            config_error(index, "p", "not a number");
        }
        if (!(p > 0.0 && p < 1.0)) config_error(index, "p", "must lie in (0, 1)");
        config.p = p;
    }
    if (config.replicates < 1) config_error(index, "B", "must be at least 1");
    if (config.n < 2) config_error(index, "n", "must be at least 2");
    return config;
}

void validate_config(const TrialConfig& config) {
    if (config.m_rule.kind == MRule::Kind::fixed && config.m_rule.fixed_k > config.n) {
        throw std::invalid_argument("config: fixed m=" +
                                    std::to_string(config.m_rule.fixed_k) +
                                    " exceeds n=" + std::to_string(config.n));
    }
    (void)choose_m(config.n, config.m_rule);
}

} // namespace

CaseKind parse_case(const std::string& text) {
    if (text == "gaussian") return CaseKind::gaussian;
    if (text == "reflected-rw") return CaseKind::reflected_rw;
    if (text == "mh-rw") return CaseKind::mh_rw;
    throw std::invalid_argument("case: unknown tag '" + text +
                                "' (expected gaussian|reflected-rw|mh-rw)");
}

std::string case_str(CaseKind kind) {
    switch (kind) {
        case CaseKind::gaussian: return "gaussian";
        case CaseKind::reflected_rw: return "reflected-rw";
        case CaseKind::mh_rw: return "mh-rw";
    }
    return "?";
}

TrialRecord run_trial(const TrialConfig& config, unsigned workers,
                      std::vector<double>* draws_out) {
    validate_config(config);
    const QuantileLevel level(config.p);
    const std::size_t n = config.n;
    const std::size_t b_total = config.replicates;
    const std::size_t m = choose_m(n, config.m_rule);
    const auto weights = moon_weights(n, m, level);

    std::vector<double> t_draws(b_total);
    std::atomic<std::size_t> next_replicate{0};
    std::atomic<std::size_t> retries{0};

    auto worker = [&] {
        std::vector<double> resample(m);
        const std::size_t k = quantile_order_index(m, level);
        for (;;) {
            const std::size_t rep = next_replicate.fetch_add(1);
            if (rep >= b_total) break;
            // Retries jump ahead by whole blocks of B so distinct
            // replicates can never share a stream.
            for (std::size_t attempt = 0;; ++attempt) {
                if (attempt > 100) {
                    throw std::runtime_error("run_trial: replicate variance is "
                                             "persistently degenerate");
                }
                Stream stream =
                    derive_stream(config.master_seed, rep + attempt * b_total);
                const auto sample =
                    sort_sample(generate_case(config.chain_case, n, stream));
                const double mu_hat = sample_quantile(sample, level);
                const auto variance = closed_form_variance(sample, weights, level);
                if (!(variance.sigma2 > 0.0) || !std::isfinite(variance.sigma2)) {
                    retries.fetch_add(1);
                    continue;
                }
                for (double& v : resample) {
                    v = sample.sorted[stream.uniform_index(n)];
                }
                std::nth_element(resample.begin(), resample.begin() + (k - 1),
                                 resample.end());
                t_draws[rep] = studentized_stat(resample[k - 1], mu_hat, variance, m);
                break;
            }
        }
    };

    unsigned thread_count = workers ? workers : std::thread::hardware_concurrency();
    if (thread_count < 1) thread_count = 1;
    thread_count = std::min<unsigned>(thread_count,
                                      static_cast<unsigned>(b_total));
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (unsigned i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (retries.load() * 100 > b_total) {
        std::cerr << "run_trial: " << retries.load() << " of " << b_total
                  << " replicates retried due to degenerate variance\n";
    }

    const double b = static_cast<double>(b_total);
    const double mean = pairwise_sum(t_draws.data(), b_total) / b;
    double var = 0.0;
    if (b_total > 1) {
        std::vector<double> sq(b_total);
        for (std::size_t i = 0; i < b_total; ++i) {
            const double d = t_draws[i] - mean;
            sq[i] = d * d;
        }
        var = pairwise_sum(sq.data(), b_total) / (b - 1.0);
    }
    const double ks =
        ks_distance(t_draws, [](double t) { return std_normal_cdf(t); });

    if (draws_out) *draws_out = std::move(t_draws);

    TrialRecord record;
    record.n = n;
    record.m_rule = config.m_rule.str();
    record.m = m;
    record.chain_case = case_str(config.chain_case);
    record.mean_t = mean;
    record.var_t = var;
    record.ks = ks;
    record.replicates = b_total;
    record.master_seed = config.master_seed;
    return record;
}

std::vector<TrialRecord> run_table(const std::vector<TrialConfig>& configs,
                                   unsigned workers) {
    if (configs.empty()) {
        throw std::invalid_argument("run_table: config list must be non-empty");
    }
    for (const auto& config : configs) validate_config(config);
    std::vector<TrialRecord> records;
    records.reserve(configs.size());
    for (const auto& config : configs) {
        records.push_back(run_trial(config, workers));
    }
    return records;
}

const char* const kTrialCsvHeader = "n,m_rule,m,case,mean_T,var_T,ks,B,seed";

std::string format_records(const std::vector<TrialRecord>& records) {
    std::string out = kTrialCsvHeader;
    out += '\n';
    for (const auto& r : records) {
        out += std::to_string(r.n);
        out += ',';
        out += r.m_rule;
        out += ',';
        out += std::to_string(r.m);
        out += ',';
        out += r.chain_case;
        out += ',';
        format_double(out, r.mean_t);
        out += ',';
        format_double(out, r.var_t);
        out += ',';
        format_double(out, r.ks);
        out += ',';
        out += std::to_string(r.replicates);
        out += ',';
        out += std::to_string(r.master_seed);
        out += '\n';
    }
    return out;
}

namespace {

void write_atomically(const std::string& path, const std::string& payload) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out || !(out << payload) || !out.flush()) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("emit_csv: write failed for " + path);
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("emit_csv: cannot rename into " + path);
    }
}

} // namespace

void emit_csv(const std::vector<TrialRecord>& records, const std::string& path) {
    write_atomically(path, format_records(records));
}

void write_draws_csv(const std::vector<double>& draws, const std::string& path) {
    std::string payload = "replicate,t\n";
    for (std::size_t i = 0; i < draws.size(); ++i) {
        payload += std::to_string(i);
        payload += ',';
        format_double(payload, draws[i]);
        payload += '\n';
    }
    write_atomically(path, payload);
}

std::vector<TrialConfig> parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("parse_config: cannot open " + path);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("parse_config: " + path + ": " + e.what());
    }
    const nlohmann::json* list = &doc;
    if (doc.is_object()) {
        if (!doc.contains("configs")) {
            throw std::runtime_error("parse_config: top-level object needs a "
                                     "'configs' array");
        }
        list = &doc.at("configs");
    }
    if (!list->is_array() || list->empty()) {
        throw std::runtime_error("parse_config: expected a non-empty array of "
                                 "trial configs");
    }
    std::vector<TrialConfig> configs;
    configs.reserve(list->size());
    for (std::size_t i = 0; i < list->size(); ++i) {
        configs.push_back(parse_one_config((*list)[i], i));
    }
    return configs;
}

std::vector<ScanRecord> run_heavy_tail_scan(const std::vector<std::size_t>& n_list,
                                            const MRule& m_rule,
                                            std::size_t seeds, double C,
                                            std::uint64_t master_seed) {
    return run_variance_scan(n_list, m_rule, seeds, master_seed, true, C);
}

std::vector<ScanRecord> run_gaussian_scan(const std::vector<std::size_t>& n_list,
                                          const MRule& m_rule, std::size_t seeds,
                                          std::uint64_t master_seed) {
    return run_variance_scan(n_list, m_rule, seeds, master_seed, false, 0.0);
}

MaxDemoRecord run_max_demo(std::size_t n, double theta, const MRule& m_rule,
                           std::size_t replicates, std::uint64_t master_seed) {
    if (replicates < 1) {
        throw std::invalid_argument("run_max_demo: need at least one replicate");
    }
    const std::size_t m = choose_m(n, m_rule);
    std::vector<double> draws(replicates);
    std::size_t zeros = 0;
    for (std::size_t rep = 0; rep < replicates; ++rep) {
        Stream stream = derive_stream(master_seed, rep);
        const auto sample = sort_sample(gen_uniform(n, theta, stream));
        draws[rep] = max_bootstrap_stat(sample, m, stream);
        if (draws[rep] == 0.0) ++zeros;
    }
    MaxDemoRecord record;
    record.n = n;
    record.m = m;
    record.theta = theta;
    record.replicates = replicates;
    record.zero_fraction =
        static_cast<double>(zeros) / static_cast<double>(replicates);
    record.ks_to_exponential = ks_distance(
        draws, [theta](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x / theta); });
    return record;
}

} // namespace moonboot
