#include "moonboot/series.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace moonboot {

SortedSample sort_sample(const ObservationSeries& series) {
    if (series.values.empty()) {
        throw std::invalid_argument("sort_sample: series must contain at least one value");
    }
    for (double v : series.values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("sort_sample: series contains a non-finite value");
        }
    }
    SortedSample out{series.values};
    std::stable_sort(out.sorted.begin(), out.sorted.end());
    return out;
}

double empirical_cdf(const SortedSample& sample, double t) {
    const auto it = std::upper_bound(sample.sorted.begin(), sample.sorted.end(), t);
    return static_cast<double>(it - sample.sorted.begin()) /
           static_cast<double>(sample.size());
}

double sample_quantile(const SortedSample& sample, QuantileLevel level) {
    const double np = static_cast<double>(sample.size()) * level.p;
    auto j = static_cast<std::size_t>(std::ceil(np));
    j = std::clamp<std::size_t>(j, 1, sample.size());
    return sample.order_stat(j);
}

ObservationSeries read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_series: cannot open " + path);
    }
    ObservationSeries series;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(line, &pos);
        } catch (const std::exception&) {
            throw std::runtime_error("read_series: " + path + ":" +
                                     std::to_string(lineno) + ": not a number");
        }
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos != line.size() || !std::isfinite(v)) {
            throw std::runtime_error("read_series: " + path + ":" +
                                     std::to_string(lineno) + ": invalid value");
        }
        series.values.push_back(v);
    }
    if (series.values.empty()) {
        throw std::runtime_error("read_series: " + path + " contains no values");
    }
    return series;
}

void write_series(const std::string& path, const ObservationSeries& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_series: cannot open " + path);
    }
    char buf[40];
    for (double v : series.values) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out << buf;
    }
    if (!out) {
        throw std::runtime_error("write_series: write failed for " + path);
    }
}

} // namespace moonboot
