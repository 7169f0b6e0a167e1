#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moonboot/bootstrap.hpp"

namespace moonboot {

enum class CaseKind { gaussian, reflected_rw, mh_rw };

CaseKind parse_case(const std::string& text);
std::string case_str(CaseKind kind);

// Chain defaults used by the simulation harness; the theory covers any
// admissible choice, so these are configuration, not estimates.
constexpr double kDefaultStepScale = 0.1;     // reflected-walk step sd
constexpr double kDefaultProposalScale = 1.0; // RWMH Laplace scale
constexpr std::size_t kDefaultBurnIn = 0;

// One simulation-table cell.
struct TrialConfig {
    std::size_t n = 0;
    MRule m_rule;
    CaseKind chain_case = CaseKind::gaussian;
    std::size_t replicates = 1000;
    std::uint64_t master_seed = 0;
    double p = 0.5;
};

struct TrialRecord {
    std::size_t n = 0;
    std::string m_rule;
    std::size_t m = 0;
    std::string chain_case;
    double mean_t = 0.0;
    double var_t = 0.0;
    double ks = 0.0;
    std::size_t replicates = 0;
    std::uint64_t master_seed = 0;
};

// Runs one cell: per replicate, a fresh length-n series, the sample
// quantile, the closed-form variance, one m-resample, one T value.
// Aggregates mean(T), var(T), and the KS distance of the T draws to
// the standard normal. The result is identical for any worker count
// (workers = 0 picks the hardware concurrency). Replicates with a
// degenerate variance are retried on the next derived stream; if more
// than 1% of replicates needed a retry a warning goes to stderr.
// `draws_out`, when non-null, receives the B Studentized draws in
// replicate order.
TrialRecord run_trial(const TrialConfig& config, unsigned workers = 0,
                      std::vector<double>* draws_out = nullptr);

// Runs each config in order. The CSV is written atomically: on
// failure no partial file remains.
std::vector<TrialRecord> run_table(const std::vector<TrialConfig>& configs,
                                   unsigned workers = 0);

extern const char* const kTrialCsvHeader; // n,m_rule,m,case,mean_T,var_T,ks,B,seed

std::string format_records(const std::vector<TrialRecord>& records);
void emit_csv(const std::vector<TrialRecord>& records, const std::string& path);
void write_draws_csv(const std::vector<double>& draws, const std::string& path);

// Parses a JSON config document: either an array of trial objects or
// an object with a "configs" array. Fields: n, m_rule, case, B, seed,
// and optional p. Errors name the offending field.
std::vector<TrialConfig> parse_config(const std::string& path);

// Median closed-form variance over independent seeds, per n. Heavy
// tails can push individual variances past the double range; such
// values propagate as +inf.
struct ScanRecord {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t seeds = 0;
    double median_var = 0.0;
};

std::vector<ScanRecord> run_heavy_tail_scan(const std::vector<std::size_t>& n_list,
                                            const MRule& m_rule,
                                            std::size_t seeds, double C,
                                            std::uint64_t master_seed = 1);

// Gaussian counterpart of the scan, for contrast with the divergence.
std::vector<ScanRecord> run_gaussian_scan(const std::vector<std::size_t>& n_list,
                                          const MRule& m_rule, std::size_t seeds,
                                          std::uint64_t master_seed = 1);

// Uniform-maximum demo: per replicate a fresh Uniform(0, theta)
// dataset and one draw of m * (X_(n) - max of m-resample). Reports the
// fraction of exact zeros and the KS distance of the draws to the
// exponential law with scale theta.
struct MaxDemoRecord {
    std::size_t n = 0;
    std::size_t m = 0;
    double theta = 1.0;
    std::size_t replicates = 0;
    double zero_fraction = 0.0;
    double ks_to_exponential = 0.0;
};

MaxDemoRecord run_max_demo(std::size_t n, double theta, const MRule& m_rule,
                           std::size_t replicates, std::uint64_t master_seed);

} // namespace moonboot
