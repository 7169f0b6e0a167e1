#include "moonboot/bootstrap.hpp"

#include <cmath>
#include <stdexcept>

#include "moonboot/special.hpp"

namespace moonboot {

MRule MRule::parse(const std::string& text) {
    MRule rule;
    if (text == "log") {
        rule.kind = Kind::log_n;
    } else if (text == "cbrt") {
        rule.kind = Kind::cbrt;
    } else if (text == "sqrt") {
        rule.kind = Kind::sqrt_n;
    } else if (text.rfind("fixed:", 0) == 0) {
        rule.kind = Kind::fixed;
        const std::string arg = text.substr(6);
        std::size_t pos = 0;
        unsigned long long k = 0;
        try {
            k = std::stoull(arg, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("m-rule: bad fixed size in '" + text + "'");
        }
        if (pos != arg.size() || k == 0) {
            throw std::invalid_argument("m-rule: bad fixed size in '" + text + "'");
        }
        rule.fixed_k = static_cast<std::size_t>(k);
    } else {
        throw std::invalid_argument("m-rule: unknown rule '" + text +
                                    "' (expected log|cbrt|sqrt|fixed:K)");
    }
    return rule;
}

std::string MRule::str() const {
    switch (kind) {
        case Kind::log_n: return "log";
        case Kind::cbrt: return "cbrt";
        case Kind::sqrt_n: return "sqrt";
        case Kind::fixed: return "fixed:" + std::to_string(fixed_k);
    }
    return "?";
}

std::size_t choose_m(std::size_t n, const MRule& rule) {
    if (n < 2) {
        throw std::invalid_argument("choose_m: n must be at least 2");
    }
    const double dn = static_cast<double>(n);
    double value = 0.0;
    switch (rule.kind) {
        case MRule::Kind::log_n: value = std::log(dn); break;
        case MRule::Kind::cbrt: value = rule.c * std::cbrt(dn); break;
        case MRule::Kind::sqrt_n: value = std::sqrt(dn); break;
        case MRule::Kind::fixed: {
            std::size_t m = rule.fixed_k;
            if (m < 1) m = 1;
            if (m > n) m = n;
            return m;
        }
    }
    const double floored = std::floor(value);
    if (!(floored >= 1.0)) {
        throw std::invalid_argument("choose_m: rule " + rule.str() +
                                    " yields m < 1 for n=" + std::to_string(n));
    }
    auto m = static_cast<std::size_t>(floored);
    return m > n ? n : m;
}

std::size_t quantile_order_index(std::size_t count, QuantileLevel level) {
    auto k = static_cast<std::size_t>(
                 std::floor(static_cast<double>(count) * level.p)) + 1;
    return k > count ? count : k;
}

std::size_t centering_index(std::size_t n, QuantileLevel level) {
    auto r = static_cast<std::size_t>(
                 std::floor(static_cast<double>(n) * level.p)) + 1;
    return r > n ? n : r;
}

std::vector<double> moon_resample(const SortedSample& sample, std::size_t m,
                                  Stream& stream) {
    if (m < 1 || m > sample.size()) {
        throw std::invalid_argument("moon_resample: need 1 <= m <= n");
    }
    std::vector<double> out(m);
    for (double& v : out) {
        v = sample.sorted[stream.uniform_index(sample.size())];
    }
    return out;
}

double bootstrap_quantile(std::vector<double> resample, QuantileLevel level) {
    if (resample.empty()) {
        throw std::invalid_argument("bootstrap_quantile: resample must be non-empty");
    }
    const std::size_t k = quantile_order_index(resample.size(), level);
    std::nth_element(resample.begin(), resample.begin() + (k - 1), resample.end());
    return resample[k - 1];
}

MoonWeights moon_weights(std::size_t n, std::size_t m, QuantileLevel level) {
    if (m < 1 || m > n) {
        throw std::invalid_argument("moon_weights: need 1 <= m <= n");
    }
    MoonWeights weights;
    weights.n = n;
    weights.m = m;
    weights.k = quantile_order_index(m, level);
    weights.p = level.p;
    weights.w.resize(n);
    // Incomplete-beta increments; C(m, k) is never formed, so there is
    // no overflow for large m.
    const auto a = static_cast<double>(weights.k);
    const auto b = static_cast<double>(m - weights.k + 1);
    double prev = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(n);
        const double cur = j == n ? 1.0 : reg_incomplete_beta(a, b, x);
        weights.w[j - 1] = std::max(cur - prev, 0.0);
        prev = cur;
    }
    return weights;
}

BootstrapVariance closed_form_variance(const SortedSample& sample,
                                       const MoonWeights& weights,
                                       QuantileLevel level) {
    if (weights.n != sample.size()) {
        throw std::invalid_argument("closed_form_variance: weights computed for a "
                                    "different n than the sample");
    }
    if (weights.p != level.p) {
        throw std::invalid_argument("closed_form_variance: weights computed for a "
                                    "different quantile level");
    }
    BootstrapVariance variance;
    variance.r = centering_index(sample.size(), level);
    const double center = sample.order_stat(variance.r);
    double acc = 0.0;
    for (std::size_t j = 0; j < sample.size(); ++j) {
        const double d = sample.sorted[j] - center;
        acc += weights.w[j] * d * d;
    }
    variance.sigma2 = static_cast<double>(weights.m) * acc;
    return variance;
}

double studentized_stat(double mu_boot, double mu_hat_n,
                        const BootstrapVariance& variance, std::size_t m) {
    if (!(variance.sigma2 > 0.0)) {
        throw std::domain_error("studentized_stat: degenerate bootstrap variance");
    }
    return (mu_boot - mu_hat_n) * std::sqrt(static_cast<double>(m)) /
           std::sqrt(variance.sigma2);
}

Ci moon_ci(const SortedSample& sample, QuantileLevel level, std::size_t m,
           double conf, Stream& stream) {
    if (!(conf > 0.0 && conf < 1.0)) {
        throw std::invalid_argument("moon_ci: confidence must lie in (0, 1)");
    }
    const double mu_hat = sample_quantile(sample, level);
    const auto weights = moon_weights(sample.size(), m, level);
    const auto variance = closed_form_variance(sample, weights, level);
    if (!(variance.sigma2 > 0.0)) {
        return Ci{mu_hat, mu_hat, conf};
    }
    const double mu_boot =
        bootstrap_quantile(moon_resample(sample, m, stream), level);
    const double z = std_normal_quantile(0.5 * (1.0 + conf));
    const double half =
        z * std::sqrt(variance.sigma2) / std::sqrt(static_cast<double>(m));
    return Ci{mu_boot - half, mu_boot + half, conf};
}

StudentizedDraws bootstrap_distribution(const SortedSample& sample,
                                        std::size_t m, QuantileLevel level,
                                        std::size_t replicates, Stream& stream) {
    if (replicates < 1) {
        throw std::invalid_argument("bootstrap_distribution: need at least one replicate");
    }
    const double mu_hat = sample_quantile(sample, level);
    const auto weights = moon_weights(sample.size(), m, level);
    const auto variance = closed_form_variance(sample, weights, level);
    if (!(variance.sigma2 > 0.0)) {
        throw std::domain_error("bootstrap_distribution: degenerate bootstrap variance");
    }
    StudentizedDraws draws;
    draws.m = m;
    draws.t.resize(replicates);
    std::vector<double> resample(m);
    const std::size_t k = quantile_order_index(m, level);
    for (std::size_t b = 0; b < replicates; ++b) {
        for (double& v : resample) {
            v = sample.sorted[stream.uniform_index(sample.size())];
        }
        std::nth_element(resample.begin(), resample.begin() + (k - 1), resample.end());
        draws.t[b] = studentized_stat(resample[k - 1], mu_hat, variance, m);
    }
    return draws;
}

} // namespace moonboot
