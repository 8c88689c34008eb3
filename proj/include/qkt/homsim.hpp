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


#ifndef QKT_HOMSIM_HPP
#define QKT_HOMSIM_HPP

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <vector>

#include "qkt/transforms.hpp"

namespace qkt::homsim {

using Complex = std::complex<double>;

/// Lossless beam splitter: single-photon reflection probability r and the
/// reflected/transmitted phase phi.
struct BeamSplitterSpec {
    double r = 0.5;
    double phi = -std::numbers::pi / 2;

    /// theta = 2 arcsin(sqrt(r)).
    double theta() const;
    /// Fractionality alpha = 2 theta / pi.
    double alpha() const;
    /// r = sin^2(pi alpha / 4); DomainError outside [0,2].
    static BeamSplitterSpec from_alpha(double alpha, double phi = -std::numbers::pi / 2);
};

/// Which closed form bs_amplitude returns. Probabilities are identical.
///
/// ExplicitPhase: exp(-i theta S/2) exp(i phi (l-k)) (-1)^(k+l) phi_k^(r)(l - Sr, S),
/// valid for any phi; at phi = -pi/2 it equals the Kravchuk kernel entry.
/// FixedPhase: exp(-i theta S/2) i^(l-k) phi_k^(r)(l - Sr, S), phi ignored.
enum class PhaseConvention { ExplicitPhase, FixedPhase };

/// Amplitudes over |l, S-l>, l = 0..S.
struct TwoModeFockState {
    int S = 0;
    Eigen::VectorXcd amplitudes;

    /// |a, b> with S = a + b.
    static TwoModeFockState fock(int a, int b);
    /// Wraps a sequence of length S+1 as a state without normalizing it.
    static TwoModeFockState from_sequence(const transforms::ComplexSequence &x);
    double norm() const;
};

/// Output photon-number distribution over k = 0..S with per-bin errors
/// (zero for exact results).
struct PhotonStatistics {
    int S = 0;
    std::vector<double> probabilities;
    std::vector<double> errors;
};

/// A_S(k,l): amplitude of |k, S-k> behind the splitter for input |l, S-l>.
/// r in {0,1} are exact identity / reversal limits. DomainError on indices
/// outside [0,S] or r outside [0,1].
Complex bs_amplitude(int S, int k, int l, const BeamSplitterSpec &bs,
                     PhaseConvention convention = PhaseConvention::ExplicitPhase);

/// Matrix A with entry (k,l) = bs_amplitude(S,k,l,bs).
Eigen::MatrixXcd bs_amplitude_matrix(int S, const BeamSplitterSpec &bs,
                                     PhaseConvention convention = PhaseConvention::ExplicitPhase);

/// p_S(k,l) = |A_S(k,l)|^2 as a matrix indexed (k,l). Built from the
/// Kravchuk function recurrence, so it is cheap for large S.
Eigen::MatrixXd probability_table(int S, double r);

/// probabilities[k] = |sum_l A_S(k,l) x_l|^2. NormalizationError if the
/// input norm differs from 1 by more than 1e-6.
PhotonStatistics photon_statistics(const TwoModeFockState &input, const BeamSplitterSpec &bs);

/// The beam-splitter realization of the alpha-fractional Kravchuk transform:
/// encode x as sum_l x_l |l, S-l>, interfere at r = sin^2(pi alpha/4),
/// count photons. DomainError for alpha outside (0,2).
PhotonStatistics qkt_via_bs(const transforms::ComplexSequence &x, double alpha);

/// Midpoint grid on the sphere: theta_i = (i + 1/2) pi / n_theta,
/// phi_j = (j + 1/2) 2 pi / n_phi.
struct SphereGrid {
    int n_theta = 0;
    int n_phi = 0;

    double theta(int i) const;
    double phi(int j) const;
};

struct QFunction {
    SphereGrid grid;
    /// values(i, j) at (theta_i, phi_j).
    Eigen::MatrixXd values;

    /// Quadrature of Q over the sphere with sin(theta) weights.
    double integral() const;
};

/// Spin-coherent Q-function (S+1)/(4 pi) |<theta,phi|psi>|^2 with
///     |theta,phi> = sum_l sqrt(C(S,l)) cos^(S-l)(theta/2) sin^l(theta/2) e^(i l phi) |l, S-l>.
/// ShapeError on an empty grid; NormalizationError on an unnormalized state.
QFunction dicke_qfunction(const TwoModeFockState &state, const SphereGrid &grid);

/// J_n = (lambda/2) sqrt(n (N-n)) for n = 1..N-1. DomainError for N < 2.
std::vector<double> xy_couplings(int N, double lambda);

/// N x N tridiagonal single-excitation XY Hamiltonian with H(n-1, n) = J_n.
Eigen::MatrixXd xy_single_excitation_hamiltonian(int N, double lambda);

}  // namespace qkt::homsim

#endif  // QKT_HOMSIM_HPP
