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


#include "qkt/homsim.hpp"

#include <cmath>
#include <string>

#include "qkt/errors.hpp"
#include "qkt/kravchuk.hpp"
#include "qkt/specfun.hpp"

namespace qkt::homsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNormTolerance = 1e-6;

void check_r(double r, const char *where) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError(std::string(where) + ": reflectivity r = " + std::to_string(r) + " outside [0,1]");
    }
}

void check_normalized(const TwoModeFockState &state, const char *where) {
    if (state.amplitudes.size() != state.S + 1) {
        throw ShapeError(std::string(where) + ": state has " + std::to_string(state.amplitudes.size()) +
                         " amplitudes, expected S+1 = " + std::to_string(state.S + 1));
    }
    const double n = state.norm();
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw NormalizationError(std::string(where) + ": input norm " + std::to_string(n) + " differs from 1");
    }
}

Complex i_pow(int m) {
    static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((m % 4) + 4) % 4];
}

}  // namespace

double BeamSplitterSpec::theta() const {
    return 2.0 * std::asin(std::sqrt(r));
}

double BeamSplitterSpec::alpha() const {
    return 2.0 * theta() / kPi;
}

BeamSplitterSpec BeamSplitterSpec::from_alpha(double alpha, double phi) {
    if (!(alpha >= 0.0 && alpha <= 2.0)) {
        throw DomainError("BeamSplitterSpec::from_alpha: alpha = " + std::to_string(alpha) + " outside [0,2]");
    }
    if (alpha == 1.0) {
        return {0.5, phi};
    }
    const double s = std::sin(kPi * alpha / 4.0);
    return {s * s, phi};
}

TwoModeFockState TwoModeFockState::fock(int a, int b) {
    if (a < 0 || b < 0) {
        throw DomainError("TwoModeFockState::fock: negative photon number");
    }
    TwoModeFockState s{a + b, Eigen::VectorXcd::Zero(a + b + 1)};
    s.amplitudes(a) = 1.0;
    return s;
}

TwoModeFockState TwoModeFockState::from_sequence(const transforms::ComplexSequence &x) {
    if (x.size() == 0) {
        throw ShapeError("TwoModeFockState::from_sequence: empty sequence");
    }
    return {static_cast<int>(x.size()) - 1, x};
}

double TwoModeFockState::norm() const {
    return amplitudes.norm();
}

Complex bs_amplitude(int S, int k, int l, const BeamSplitterSpec &bs, PhaseConvention convention) {
    if (S < 0 || k < 0 || k > S || l < 0 || l > S) {
        throw DomainError("bs_amplitude: indices (S,k,l) = (" + std::to_string(S) + "," + std::to_string(k) + "," +
                          std::to_string(l) + ") out of range");
    }
    check_r(bs.r, "bs_amplitude");
    const Complex global = std::polar(1.0, -bs.theta() * S / 2.0);
    auto relative = [&](int kk, int ll) {
        if (convention == PhaseConvention::FixedPhase) {
            return i_pow(ll - kk);
        }
        return std::polar(1.0, bs.phi * (ll - kk)) * (((kk + ll) % 2 == 0) ? 1.0 : -1.0);
    };
    if (bs.r == 0.0) {
        return k == l ? Complex(1.0) : Complex(0.0);
    }
    if (bs.r == 1.0) {
        // phi_k^(1)(l - S) = (-1)^k delta_(l, S-k)
        if (l != S - k) {
            return 0.0;
        }
        return global * relative(k, l) * ((k % 2 == 0) ? 1.0 : -1.0);
    }
    return global * relative(k, l) * kravchuk::kravchuk_function(k, l, S, bs.r);
}

Eigen::MatrixXcd bs_amplitude_matrix(int S, const BeamSplitterSpec &bs, PhaseConvention convention) {
    if (S < 0) {
        throw DomainError("bs_amplitude_matrix: negative S");
    }
    Eigen::MatrixXcd a(S + 1, S + 1);
    for (int k = 0; k <= S; ++k) {
        for (int l = 0; l <= S; ++l) {
            a(k, l) = bs_amplitude(S, k, l, bs, convention);
        }
    }
    return a;
}

Eigen::MatrixXd probability_table(int S, double r) {
    if (S < 0) {
        throw DomainError("probability_table: negative S");
    }
    check_r(r, "probability_table");
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(S + 1, S + 1);
    if (r == 0.0 || r == 1.0) {
        for (int l = 0; l <= S; ++l) {
            p(r == 0.0 ? l : S - l, l) = 1.0;
        }
        return p;
    }
    for (int k = 0; k <= S; ++k) {
        const std::vector<double> row = kravchuk::kravchuk_function_row(S, r, k);
        for (int l = 0; l <= S; ++l) {
            p(k, l) = row[l] * row[l];
        }
    }
    return p;
}

PhotonStatistics photon_statistics(const TwoModeFockState &input, const BeamSplitterSpec &bs) {
    check_normalized(input, "photon_statistics");
    const Eigen::VectorXcd out = bs_amplitude_matrix(input.S, bs) * input.amplitudes;
    PhotonStatistics st{input.S, std::vector<double>(input.S + 1), std::vector<double>(input.S + 1, 0.0)};
    for (int k = 0; k <= input.S; ++k) {
        st.probabilities[k] = std::norm(out(k));
    }
    return st;
}

PhotonStatistics qkt_via_bs(const transforms::ComplexSequence &x, double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw DomainError("qkt_via_bs: alpha = " + std::to_string(alpha) + " outside (0,2)");
    }
    return photon_statistics(TwoModeFockState::from_sequence(x), BeamSplitterSpec::from_alpha(alpha));
}

double SphereGrid::theta(int i) const {
    return (i + 0.5) * kPi / n_theta;
}

double SphereGrid::phi(int j) const {
    return (j + 0.5) * 2.0 * kPi / n_phi;
}

double QFunction::integral() const {
    const double dt = kPi / grid.n_theta;
    const double dp = 2.0 * kPi / grid.n_phi;
    double total = 0.0;
    for (int i = 0; i < grid.n_theta; ++i) {
        total += values.row(i).sum() * std::sin(grid.theta(i));
    }
    return total * dt * dp;
}

QFunction dicke_qfunction(const TwoModeFockState &state, const SphereGrid &grid) {
    if (grid.n_theta <= 0 || grid.n_phi <= 0) {
        throw ShapeError("dicke_qfunction: empty grid");
    }
    check_normalized(state, "dicke_qfunction");
    const int S = state.S;
    std::vector<double> sqrt_binom(S + 1);
    for (int l = 0; l <= S; ++l) {
        sqrt_binom[l] = specfun::log_binomial(S, l).sqrt().to_double();
    }
    QFunction q{grid, Eigen::MatrixXd(grid.n_theta, grid.n_phi)};
    const double pref = (S + 1) / (4.0 * kPi);
    std::vector<double> radial(S + 1);
    for (int i = 0; i < grid.n_theta; ++i) {
        const double c = std::cos(grid.theta(i) / 2.0);
        const double s = std::sin(grid.theta(i) / 2.0);
        for (int l = 0; l <= S; ++l) {
            radial[l] = sqrt_binom[l] * std::pow(c, S - l) * std::pow(s, l);
        }
        for (int j = 0; j < grid.n_phi; ++j) {
            const double ph = grid.phi(j);
            Complex overlap = 0.0;
            for (int l = 0; l <= S; ++l) {
                overlap += radial[l] * std::polar(1.0, -l * ph) * state.amplitudes(l);
            }
            q.values(i, j) = pref * std::norm(overlap);
        }
    }
    return q;
}

std::vector<double> xy_couplings(int N, double lambda) {
    if (N < 2) {
        throw DomainError("xy_couplings: chain length N = " + std::to_string(N) + " below 2");
    }
    std::vector<double> j(N - 1);
    for (int n = 1; n < N; ++n) {
        j[n - 1] = 0.5 * lambda * std::sqrt(static_cast<double>(n) * (N - n));
    }
    return j;
}

Eigen::MatrixXd xy_single_excitation_hamiltonian(int N, double lambda) {
    const std::vector<double> j = xy_couplings(N, lambda);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(N, N);
    for (int n = 1; n < N; ++n) {
        h(n - 1, n) = j[n - 1];
        h(n, n - 1) = j[n - 1];
    }
    return h;
}

}  // namespace qkt::homsim
