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


#ifndef QKT_EXPERIMENT_HPP
#define QKT_EXPERIMENT_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qkt/homsim.hpp"

namespace qkt::experiment {

/// Counter-based stream: the state is derived from (seed, counter) alone, so
/// shot i draws the same numbers whichever worker simulates it.
class CounterRng {
   public:
    CounterRng(std::uint64_t seed, std::uint64_t counter);

    std::uint64_t next_u64();
    /// Uniform on [0,1).
    double uniform();
    /// Number of successes in n Bernoulli(prob) trials.
    int binomial(int n, double prob);

   private:
    std::uint64_t state_;
};

/// Two-mode squeezed vacuum sum_n lambda_n |n,n>, lambda_n = tanh^n(g) / cosh(g).
struct SpdcSource {
    double g = 0.0;

    /// n-bar = sinh^2 g.
    double mean_photon_number() const;
    /// lambda_n^2 / lambda_(n-1)^2 = tanh^2 g.
    double ratio() const;
    /// lambda_n^2.
    double pair_probability(int n) const;
    /// DomainError for nbar < 0.
    static SpdcSource from_mean_photon_number(double nbar);
};

/// Transmission of modes A (herald 1), B, C (beam-splitter inputs), D (herald 2).
struct LossModel {
    double tA = 1.0;
    double tB = 1.0;
    double tC = 1.0;
    double tD = 1.0;
};

/// TES efficiencies for detectors 1..4 (modes A, port 1, port 2, D).
struct DetectorModel {
    std::array<double, 4> eta{1.0, 1.0, 1.0, 1.0};
};

/// Optional neighbour misregistration n -> n-1 (p_minus) or n -> n+1 (p_plus).
struct CrosstalkModel {
    double p_minus = 0.0;
    double p_plus = 0.0;
    bool enabled() const {
        return p_minus > 0.0 || p_plus > 0.0;
    }
};

struct ExperimentConfig {
    SpdcSource source1{0.0};
    SpdcSource source2{0.0};
    LossModel loss;
    homsim::BeamSplitterSpec bs;
    DetectorModel detectors;
    CrosstalkModel crosstalk;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    int n_max = 20;

    /// n-bar = 0.2 per source, 50% transmission in every mode, detector
    /// efficiency 0.9 times fiber coupling 0.7, r = 1/2.
    static ExperimentConfig realistic_defaults();
    /// Unit transmissions and efficiencies, n-bar = 0.2.
    static ExperimentConfig lossless();

    /// ConfigError naming the offending field.
    void validate() const;
};

/// Parses {sources:{g1,g2}, loss:{tA,tB,tC,tD}, bs:{r,phi}, detectors:{eta1..eta4},
/// shots, seed, n_max} plus the optional crosstalk:{p_minus,p_plus}. Missing
/// fields keep realistic_defaults(); unknown keys are a ConfigError.
ExperimentConfig config_from_json(const std::string &text);
std::string config_to_json(const ExperimentConfig &config, int indent = 2);

/// Dense counts over (n1,n2,n3,n4) with every n_i in [0, n_max].
class EventHistogram {
   public:
    EventHistogram() = default;
    explicit EventHistogram(int n_max);

    int n_max() const {
        return n_max_;
    }
    std::uint64_t count(int n1, int n2, int n3, int n4) const;
    void add(int n1, int n2, int n3, int n4, std::uint64_t c = 1);
    /// Elementwise sum; ShapeError on mismatched n_max.
    void merge(const EventHistogram &other);
    std::uint64_t total() const;
    const std::vector<std::uint64_t> &counts() const {
        return counts_;
    }

    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    ExperimentConfig config;

   private:
    std::size_t index(int n1, int n2, int n3, int n4) const;
    int n_max_ = 0;
    std::vector<std::uint64_t> counts_;
};

/// Photon-number pair (n, n) drawn with probability lambda_n^2. Values above
/// n_cap are folded into n_cap.
std::pair<int, int> spdc_sample(const SpdcSource &source, CounterRng &rng, int n_cap = 1 << 20);

/// Binomial TES response: C(n_in, n_d) (1-eta)^(n_in - n_d) eta^n_d, zero for n_d > n_in.
double tes_probability(int n_in, int n_d, double eta);

/// Worker count: KRAVCHUK_THREADS when set to a positive integer, else the
/// hardware concurrency.
int default_workers();

/// Simulates config.shots events. The histogram depends only on the config
/// (seed included), never on `workers`. workers <= 0 means default_workers().
EventHistogram run_experiment(const ExperimentConfig &config, int workers = 0);

EventHistogram run_experiment(const SpdcSource &src1, const SpdcSource &src2, const LossModel &loss,
                              const homsim::BeamSplitterSpec &bs, const DetectorModel &det, std::uint64_t shots,
                              std::uint64_t seed, int workers = 0);

/// Records kept and dropped by the n1 + n4 = n2 + n3 filter.
struct SelectionSummary {
    std::uint64_t kept = 0;
    std::uint64_t discarded = 0;
};
SelectionSummary post_selection_summary(const EventHistogram &hist);

/// p(k) = N(n1, k, S-k, n4) / S(n1,n4) with S = n1 + n4 and uniform error
/// 1/sqrt(S(n1,n4)). DomainError for S < 1; EmptySelectionError when no
/// record conforms.
homsim::PhotonStatistics estimate_statistics(const EventHistogram &hist, int n1, int n4);

/// Number of records that enter estimate_statistics(hist, n1, n4).
std::uint64_t selection_size(const EventHistogram &hist, int n1, int n4);

/// (max - min) / (max + min). ShapeError for fewer than two bins,
/// DegenerateError when every bin is zero.
double visibility(const std::vector<double> &values);

struct KlyshkoEfficiencies {
    double eta_A = 0.0;
    double eta_B = 0.0;
};

/// eta_B = C_AB / C_A, eta_A = C_AB / C_B. DivisionError on zero singles.
KlyshkoEfficiencies klyshko_efficiency(double C_A, double C_B, double C_AB);

/// Binary click counts for detectors i and j (0-based, 0..3): singles and coincidences.
struct BinaryCounts {
    double C_i = 0.0;
    double C_j = 0.0;
    double C_ij = 0.0;
};
BinaryCounts binary_counts(const EventHistogram &hist, int detector_i, int detector_j);

/// Counts of n for one detector (0-based), summed over the other three.
std::vector<double> marginal(const EventHistogram &hist, int detector);

/// (<n^2> - <n>) / <n>^2 of a photon-number distribution given as counts
/// indexed by n. DegenerateError when <n> = 0.
double g2_from_counts(const std::vector<double> &counts);

/// K = 1 / (g2 - 1). DomainError for g2 <= 1.
double schmidt_from_g2(double g2);

/// CSV `n1,n2,n3,n4,count` with every nonzero cell in lexicographic order.
void write_histogram_csv(std::ostream &out, const EventHistogram &hist);
/// Sidecar with config snapshot and totals.
std::string histogram_sidecar_json(const EventHistogram &hist);

}  // namespace qkt::experiment

#endif  // QKT_EXPERIMENT_HPP
