// Copyright 2026 The QKT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qkt/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <ostream>
#include <string>
#include <thread>

#include "qkt/errors.hpp"
#include "qkt/specfun.hpp"

namespace qkt::experiment {

namespace {

using nlohmann::json;

constexpr int kMaxNMax = 60;
constexpr int kDirectTesLimit = 50;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void check_unit(double v, const std::string &field) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ConfigError(field + " = " + std::to_string(v) + " outside [0,1]");
    }
}

// Cumulative distributions cdf[S][l][k] of the output k for input |l, S-l>.
using CdfTable = std::vector<std::vector<std::vector<double>>>;

CdfTable build_cdfs(double r, int s_max) {
    CdfTable cdf(s_max + 1);
    for (int S = 0; S <= s_max; ++S) {
        const Eigen::MatrixXd p = homsim::probability_table(S, r);
        cdf[S].assign(S + 1, std::vector<double>(S + 1));
        for (int l = 0; l <= S; ++l) {
            double acc = 0.0;
            for (int k = 0; k <= S; ++k) {
                acc += p(k, l);
                cdf[S][l][k] = acc;
            }
            cdf[S][l][S] = 1.0;
        }
    }
    return cdf;
}

int sample_index(const std::vector<double> &cdf, double u) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
}

int apply_crosstalk(int n, const CrosstalkModel &x, CounterRng &rng) {
    if (!x.enabled()) {
        return n;
    }
    const double u = rng.uniform();
    if (n > 0 && u < x.p_minus) {
        return n - 1;
    }
    if (u >= x.p_minus && u < x.p_minus + x.p_plus) {
        return n + 1;
    }
    return n;
}

void simulate_range(const ExperimentConfig &c, const CdfTable &cdf, std::uint64_t begin, std::uint64_t end,
                    EventHistogram &out) {
    const int cap = c.n_max;
    for (std::uint64_t shot = begin; shot < end; ++shot) {
        CounterRng rng(c.seed, shot);
        const int a = spdc_sample(c.source1, rng, cap).first;
        const int b = spdc_sample(c.source2, rng, cap).first;
        const int mode_a = rng.binomial(a, c.loss.tA);
        const int l = rng.binomial(a, c.loss.tB);
        const int m = rng.binomial(b, c.loss.tC);
        const int mode_d = rng.binomial(b, c.loss.tD);
        const int S = l + m;
        const int k = sample_index(cdf[S][l], rng.uniform());
        int n[4] = {
            rng.binomial(mode_a, c.detectors.eta[0]),
            rng.binomial(k, c.detectors.eta[1]),
            rng.binomial(S - k, c.detectors.eta[2]),
            rng.binomial(mode_d, c.detectors.eta[3]),
        };
        for (int &v : n) {
            v = std::min(apply_crosstalk(v, c.crosstalk, rng), cap);
        }
        out.add(n[0], n[1], n[2], n[3]);
    }
}

json to_json_value(const ExperimentConfig &c) {
    return json{
        {"sources", {{"g1", c.source1.g}, {"g2", c.source2.g}}},
        {"loss", {{"tA", c.loss.tA}, {"tB", c.loss.tB}, {"tC", c.loss.tC}, {"tD", c.loss.tD}}},
        {"bs", {{"r", c.bs.r}, {"phi", c.bs.phi}}},
        {"detectors",
         {{"eta1", c.detectors.eta[0]},
          {"eta2", c.detectors.eta[1]},
          {"eta3", c.detectors.eta[2]},
          {"eta4", c.detectors.eta[3]}}},
        {"crosstalk", {{"p_minus", c.crosstalk.p_minus}, {"p_plus", c.crosstalk.p_plus}}},
        {"shots", c.shots},
        {"seed", c.seed},
        {"n_max", c.n_max},
    };
}

double get_number(const json &obj, const std::string &key, const std::string &path, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json &v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(path + key + " must be a number");
    }
    return v.get<double>();
}

std::uint64_t get_unsigned(const json &obj, const std::string &key, std::uint64_t fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json &v = obj.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        throw ConfigError(key + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

const json &section(const json &root, const std::string &key, const std::vector<std::string> &allowed) {
    static const json empty = json::object();
    if (!root.contains(key)) {
        return empty;
    }
    const json &s = root.at(key);
    if (!s.is_object()) {
        throw ConfigError(key + " must be an object");
    }
    for (const auto &item : s.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ConfigError("unknown field " + key + "." + item.key());
        }
    }
    return s;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t counter)
    : state_(mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) + counter * 0x9e3779b97f4a7c15ULL)) {
}

std::uint64_t CounterRng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
}

double CounterRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int CounterRng::binomial(int n, double prob) {
    if (prob >= 1.0) {
        return n;
    }
    if (prob <= 0.0) {
        return 0;
    }
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        hits += uniform() < prob ? 1 : 0;
    }
    return hits;
}

double SpdcSource::mean_photon_number() const {
    const double s = std::sinh(g);
    return s * s;
}

double SpdcSource::ratio() const {
    const double t = std::tanh(g);
    return t * t;
}

double SpdcSource::pair_probability(int n) const {
    if (n < 0) {
        return 0.0;
    }
    const double t = ratio();
    return (1.0 - t) * std::pow(t, n);
}

SpdcSource SpdcSource::from_mean_photon_number(double nbar) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw DomainError("SpdcSource: mean photon number must be non-negative");
    }
    return {std::asinh(std::sqrt(nbar))};
}

ExperimentConfig ExperimentConfig::realistic_defaults() {
    ExperimentConfig c;
    c.source1 = SpdcSource::from_mean_photon_number(0.2);
    c.source2 = c.source1;
    c.loss = {0.5, 0.5, 0.5, 0.5};
    const double eta = 0.9 * 0.7;
    c.detectors.eta = {eta, eta, eta, eta};
    c.bs = {0.5, -std::numbers::pi / 2};
    c.shots = 1000000;
    c.seed = 1;
    c.n_max = 20;
    return c;
}

ExperimentConfig ExperimentConfig::lossless() {
    ExperimentConfig c = realistic_defaults();
    c.loss = {};
    c.detectors = {};
    return c;
}

void ExperimentConfig::validate() const {
    if (!(source1.g > 0.0) || !std::isfinite(source1.g)) {
        throw ConfigError("sources.g1 must be a positive finite gain");
    }
    if (!(source2.g > 0.0) || !std::isfinite(source2.g)) {
        throw ConfigError("sources.g2 must be a positive finite gain");
    }
    check_unit(loss.tA, "loss.tA");
    check_unit(loss.tB, "loss.tB");
    check_unit(loss.tC, "loss.tC");
    check_unit(loss.tD, "loss.tD");
    check_unit(bs.r, "bs.r");
    if (!std::isfinite(bs.phi)) {
        throw ConfigError("bs.phi must be finite");
    }
    for (int i = 0; i < 4; ++i) {
        check_unit(detectors.eta[i], "detectors.eta" + std::to_string(i + 1));
    }
    check_unit(crosstalk.p_minus, "crosstalk.p_minus");
    check_unit(crosstalk.p_plus, "crosstalk.p_plus");
    if (crosstalk.p_minus + crosstalk.p_plus > 1.0) {
        throw ConfigError("crosstalk.p_minus + crosstalk.p_plus exceeds 1");
    }
    if (shots < 1) {
        throw ConfigError("shots must be at least 1");
    }
    if (n_max < 1 || n_max > kMaxNMax) {
        throw ConfigError("n_max = " + std::to_string(n_max) + " outside [1, " + std::to_string(kMaxNMax) + "]");
    }
}

ExperimentConfig config_from_json(const std::string &text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    const std::vector<std::string> top = {"sources", "loss", "bs", "detectors", "crosstalk", "shots", "seed", "n_max"};
    for (const auto &item : root.items()) {
        if (std::find(top.begin(), top.end(), item.key()) == top.end()) {
            throw ConfigError("unknown field " + item.key());
        }
    }
    ExperimentConfig c = ExperimentConfig::realistic_defaults();
    const json &src = section(root, "sources", {"g1", "g2"});
    c.source1.g = get_number(src, "g1", "sources.", c.source1.g);
    c.source2.g = get_number(src, "g2", "sources.", c.source2.g);
    const json &loss = section(root, "loss", {"tA", "tB", "tC", "tD"});
    c.loss.tA = get_number(loss, "tA", "loss.", c.loss.tA);
    c.loss.tB = get_number(loss, "tB", "loss.", c.loss.tB);
    c.loss.tC = get_number(loss, "tC", "loss.", c.loss.tC);
    c.loss.tD = get_number(loss, "tD", "loss.", c.loss.tD);
    const json &bs = section(root, "bs", {"r", "phi"});
    c.bs.r = get_number(bs, "r", "bs.", c.bs.r);
    c.bs.phi = get_number(bs, "phi", "bs.", c.bs.phi);
    const json &det = section(root, "detectors", {"eta1", "eta2", "eta3", "eta4"});
    for (int i = 0; i < 4; ++i) {
        c.detectors.eta[i] = get_number(det, "eta" + std::to_string(i + 1), "detectors.", c.detectors.eta[i]);
    }
    const json &xt = section(root, "crosstalk", {"p_minus", "p_plus"});
    c.crosstalk.p_minus = get_number(xt, "p_minus", "crosstalk.", c.crosstalk.p_minus);
    c.crosstalk.p_plus = get_number(xt, "p_plus", "crosstalk.", c.crosstalk.p_plus);
    c.shots = get_unsigned(root, "shots", c.shots);
    c.seed = get_unsigned(root, "seed", c.seed);
    const std::uint64_t n_max = get_unsigned(root, "n_max", static_cast<std::uint64_t>(c.n_max));
    if (n_max > static_cast<std::uint64_t>(kMaxNMax)) {
        throw ConfigError("n_max = " + std::to_string(n_max) + " exceeds " + std::to_string(kMaxNMax));
    }
    c.n_max = static_cast<int>(n_max);
    return c;
}

std::string config_to_json(const ExperimentConfig &config, int indent) {
    return to_json_value(config).dump(indent);
}

EventHistogram::EventHistogram(int n_max) : n_max_(n_max) {
    if (n_max < 0) {
        throw ShapeError("EventHistogram: negative n_max");
    }
    const std::size_t side = static_cast<std::size_t>(n_max) + 1;
    counts_.assign(side * side * side * side, 0);
}

std::size_t EventHistogram::index(int n1, int n2, int n3, int n4) const {
    const std::size_t side = static_cast<std::size_t>(n_max_) + 1;
    return ((static_cast<std::size_t>(n1) * side + n2) * side + n3) * side + n4;
}

std::uint64_t EventHistogram::count(int n1, int n2, int n3, int n4) const {
    if (std::min({n1, n2, n3, n4}) < 0 || std::max({n1, n2, n3, n4}) > n_max_) {
        return 0;
    }
    return counts_[index(n1, n2, n3, n4)];
}

void EventHistogram::add(int n1, int n2, int n3, int n4, std::uint64_t c) {
    if (std::min({n1, n2, n3, n4}) < 0 || std::max({n1, n2, n3, n4}) > n_max_) {
        throw DomainError("EventHistogram::add: tuple outside [0, n_max]");
    }
    counts_[index(n1, n2, n3, n4)] += c;
}

void EventHistogram::merge(const EventHistogram &other) {
    if (other.n_max_ != n_max_) {
        throw ShapeError("EventHistogram::merge: n_max mismatch");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        counts_[i] += other.counts_[i];
    }
}

std::uint64_t EventHistogram::total() const {
    std::uint64_t t = 0;
    for (std::uint64_t c : counts_) {
        t += c;
    }
    return t;
}

std::pair<int, int> spdc_sample(const SpdcSource &source, CounterRng &rng, int n_cap) {
    const double t = source.ratio();
    const double u = rng.uniform();
    if (t <= 0.0) {
        return {0, 0};
    }
    // P(n >= m) = t^m, so n = floor(ln(1-u) / ln t).
    const double n = std::floor(std::log1p(-u) / std::log(t));
    const int v = n >= n_cap ? n_cap : static_cast<int>(n);
    return {v, v};
}

double tes_probability(int n_in, int n_d, double eta) {
    if (n_in < 0 || n_d < 0) {
        throw DomainError("tes_probability: negative photon number");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("tes_probability: eta outside [0,1]");
    }
    if (n_d > n_in) {
        return 0.0;
    }
    if (eta == 1.0) {
        return n_d == n_in ? 1.0 : 0.0;
    }
    if (eta == 0.0) {
        return n_d == 0 ? 1.0 : 0.0;
    }
    if (n_in <= kDirectTesLimit) {
        // C(n, k) is an exact integer here; the product rounds only a few times.
        std::uint64_t binom = 1;
        const int k = std::min(n_d, n_in - n_d);
        for (int i = 1; i <= k; ++i) {
            binom = binom * static_cast<std::uint64_t>(n_in - k + i) / static_cast<std::uint64_t>(i);
        }
        // p + q == 1 holds exactly for this pair, so the row is a normalized law.
        const double q = 1.0 - eta;
        const double p = 1.0 - q;
        return static_cast<double>(binom) * std::pow(p, n_d) * std::pow(q, n_in - n_d);
    }
    const specfun::LogScaledReal v = specfun::log_binomial(n_in, n_d) *
                                     specfun::LogScaledReal::from_double(1.0 - eta).pow(n_in - n_d) *
                                     specfun::LogScaledReal::from_double(eta).pow(n_d);
    return v.to_double();
}

int default_workers() {
    if (const char *env = std::getenv("KRAVCHUK_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<int>(std::min<long>(v, 1024));
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

EventHistogram run_experiment(const ExperimentConfig &config, int workers) {
    config.validate();
    const CdfTable cdf = build_cdfs(config.bs.r, 2 * config.n_max);
    if (workers <= 0) {
        workers = default_workers();
    }
    const std::uint64_t w =
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), config.shots));

    std::vector<EventHistogram> parts(w, EventHistogram(config.n_max));
    auto range = [&](std::uint64_t i) {
        return std::pair<std::uint64_t, std::uint64_t>{config.shots * i / w, config.shots * (i + 1) / w};
    };
    if (w == 1) {
        simulate_range(config, cdf, 0, config.shots, parts[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(w);
        for (std::uint64_t i = 0; i < w; ++i) {
            threads.emplace_back([&, i] {
                const auto [b, e] = range(i);
                simulate_range(config, cdf, b, e, parts[i]);
            });
        }
        for (auto &t : threads) {
            t.join();
        }
    }

    EventHistogram hist(config.n_max);
    for (const auto &p : parts) {
        hist.merge(p);
    }
    hist.shots = config.shots;
    hist.seed = config.seed;
    hist.config = config;
    return hist;
}

EventHistogram run_experiment(const SpdcSource &src1, const SpdcSource &src2, const LossModel &loss,
                              const homsim::BeamSplitterSpec &bs, const DetectorModel &det, std::uint64_t shots,
                              std::uint64_t seed, int workers) {
    ExperimentConfig c;
    c.source1 = src1;
    c.source2 = src2;
    c.loss = loss;
    c.bs = bs;
    c.detectors = det;
    c.shots = shots;
    c.seed = seed;
    return run_experiment(c, workers);
}

SelectionSummary post_selection_summary(const EventHistogram &hist) {
    SelectionSummary s;
    const int m = hist.n_max();
    for (int a = 0; a <= m; ++a) {
        for (int b = 0; b <= m; ++b) {
            for (int c = 0; c <= m; ++c) {
                for (int d = 0; d <= m; ++d) {
                    const std::uint64_t n = hist.count(a, b, c, d);
                    (a + d == b + c ? s.kept : s.discarded) += n;
                }
            }
        }
    }
    return s;
}

std::uint64_t selection_size(const EventHistogram &hist, int n1, int n4) {
    const int S = n1 + n4;
    std::uint64_t total = 0;
    for (int k = 0; k <= S; ++k) {
        total += hist.count(n1, k, S - k, n4);
    }
    return total;
}

homsim::PhotonStatistics estimate_statistics(const EventHistogram &hist, int n1, int n4) {
    if (n1 < 0 || n4 < 0 || n1 + n4 < 1) {
        throw DomainError("estimate_statistics: need n1, n4 >= 0 with n1 + n4 >= 1");
    }
    const int S = n1 + n4;
    const std::uint64_t total = selection_size(hist, n1, n4);
    if (total == 0) {
        throw EmptySelectionError("no records conform to (n1,n4) = (" + std::to_string(n1) + "," +
                                  std::to_string(n4) + ") with n2 + n3 = " + std::to_string(S));
    }
    homsim::PhotonStatistics st{S, std::vector<double>(S + 1), std::vector<double>(S + 1)};
    const double err = 1.0 / std::sqrt(static_cast<double>(total));
    for (int k = 0; k <= S; ++k) {
        st.probabilities[k] = static_cast<double>(hist.count(n1, k, S - k, n4)) / static_cast<double>(total);
        st.errors[k] = err;
    }
    return st;
}

double visibility(const std::vector<double> &values) {
    if (values.size() < 2) {
        throw ShapeError("visibility: need at least two bins");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*hi + *lo <= 0.0) {
        throw DegenerateError("visibility: all bins are zero");
    }
    return (*hi - *lo) / (*hi + *lo);
}

KlyshkoEfficiencies klyshko_efficiency(double C_A, double C_B, double C_AB) {
    if (!(C_A > 0.0) || !(C_B > 0.0)) {
        throw DivisionError("klyshko_efficiency: singles counts must be positive");
    }
    return {C_AB / C_B, C_AB / C_A};
}

BinaryCounts binary_counts(const EventHistogram &hist, int detector_i, int detector_j) {
    if (detector_i < 0 || detector_i > 3 || detector_j < 0 || detector_j > 3 || detector_i == detector_j) {
        throw DomainError("binary_counts: detectors must be two distinct indices in 0..3");
    }
    BinaryCounts b;
    const int m = hist.n_max();
    int n[4];
    for (n[0] = 0; n[0] <= m; ++n[0]) {
        for (n[1] = 0; n[1] <= m; ++n[1]) {
            for (n[2] = 0; n[2] <= m; ++n[2]) {
                for (n[3] = 0; n[3] <= m; ++n[3]) {
                    const double c = static_cast<double>(hist.count(n[0], n[1], n[2], n[3]));
                    if (c == 0.0) {
                        continue;
                    }
                    const bool ci = n[detector_i] > 0;
                    const bool cj = n[detector_j] > 0;
                    b.C_i += ci ? c : 0.0;
                    b.C_j += cj ? c : 0.0;
                    b.C_ij += (ci && cj) ? c : 0.0;
                }
            }
        }
    }
    return b;
}

std::vector<double> marginal(const EventHistogram &hist, int detector) {
    if (detector < 0 || detector > 3) {
        throw DomainError("marginal: detector index outside 0..3");
    }
    const int m = hist.n_max();
    std::vector<double> out(m + 1, 0.0);
    int n[4];
    for (n[0] = 0; n[0] <= m; ++n[0]) {
        for (n[1] = 0; n[1] <= m; ++n[1]) {
            for (n[2] = 0; n[2] <= m; ++n[2]) {
                for (n[3] = 0; n[3] <= m; ++n[3]) {
                    out[n[detector]] += static_cast<double>(hist.count(n[0], n[1], n[2], n[3]));
                }
            }
        }
    }
    return out;
}

double g2_from_counts(const std::vector<double> &counts) {
    double total = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t n = 0; n < counts.size(); ++n) {
        total += counts[n];
        m1 += counts[n] * static_cast<double>(n);
        m2 += counts[n] * static_cast<double>(n) * static_cast<double>(n);
    }
    if (!(total > 0.0) || !(m1 > 0.0)) {
        throw DegenerateError("g2_from_counts: mean photon number is zero");
    }
    m1 /= total;
    m2 /= total;
    return (m2 - m1) / (m1 * m1);
}

double schmidt_from_g2(double g2) {
    if (!(g2 > 1.0) || !std::isfinite(g2)) {
        throw DomainError("schmidt_from_g2: g2 must exceed 1");
    }
    return 1.0 / (g2 - 1.0);
}

void write_histogram_csv(std::ostream &out, const EventHistogram &hist) {
    out << "n1,n2,n3,n4,count\n";
    const int m = hist.n_max();
    for (int a = 0; a <= m; ++a) {
        for (int b = 0; b <= m; ++b) {
            for (int c = 0; c <= m; ++c) {
                for (int d = 0; d <= m; ++d) {
                    const std::uint64_t n = hist.count(a, b, c, d);
                    if (n != 0) {
                        out << a << ',' << b << ',' << c << ',' << d << ',' << n << '\n';
                    }
                }
            }
        }
    }
}

std::string histogram_sidecar_json(const EventHistogram &hist) {
    const SelectionSummary s = post_selection_summary(hist);
    json j{
        {"config", to_json_value(hist.config)},
        {"shots", hist.shots},
        {"seed", hist.seed},
        {"n_max", hist.n_max()},
        {"total_counts", hist.total()},
        {"post_selection", {{"kept", s.kept}, {"discarded", s.discarded}}},
    };
    return j.dump(2);
}

}  // namespace qkt::experiment
