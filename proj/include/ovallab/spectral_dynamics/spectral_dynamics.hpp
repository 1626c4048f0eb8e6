/// @file spectral_dynamics.hpp
/// @brief Finite-dimensional dynamics of the neutral spectral coefficients:
///        the matrix Riccati flow for the coefficient matrix A(tau), the
///        symmetric-polynomial xi-system with its constant companion matrix B,
///        fixed-step integrators for both, and an empirical phase portrait of
///        the xi fixed point at the origin.
///
/// The scalar model for every eigenvalue of A is  da/dtau = -a^2/beta, whose
/// solution through (tau1, a1) is  a(tau) = a1*beta / (beta + a1*(tau-tau1));
/// in particular A(tau) = (beta/tau) I is an exact trajectory.  The xi
/// variables compare the elementary symmetric polynomials S_j of eig(A)
/// against that special trajectory:
///
///     xi_j = binom(k,j)^{-1} * (tau/beta)^j * S_j  -  1,
///
/// so xi == 0 exactly on A = (beta/tau) I.  In the slow time sigma = log(-tau)
/// (ancient end at sigma -> +inf) the mapped variables obey
///
///     d(xi)/d(sigma) = B xi - k*xi_1*xi             (no forcing),
///
/// which is the field integrate_xi advances; under the opposite orientation
/// sigma = -log(-tau) the same trajectory follows the negated field.
/// phase_portrait integrates both directions and reports what it sees instead
/// of assuming a stability convention.

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "ovallab/core/params.hpp"

namespace ovallab {

/// One record of the matrix Riccati flow  dA/dtau = -A^2/beta + E(tau).
/// The matrix is kept exactly symmetric by construction (symmetrized after
/// every step, so a == a.transpose() bit-for-bit).
struct RiccatiState {
  Eigen::MatrixXd a;
  double tau = 0.0;
};

/// One record of the xi-system in slow time sigma.
struct XiState {
  Eigen::VectorXd xi;
  double sigma = 0.0;
};

struct RiccatiOptions {
  double step = 1e-3;      ///< fixed RK4 step in tau (positive; trimmed to land on tau_to)
  double norm_cap = 1e6;   ///< Frobenius-norm threshold treated as blow-up
  int record_stride = 16;  ///< keep every Nth step (first and last always kept)
};

struct XiOptions {
  double step = 1e-3;      ///< fixed RK4 step in |sigma| (positive)
  double norm_cap = 1e6;   ///< Euclidean-norm threshold treated as blow-up
  int record_stride = 16;  ///< keep every Nth step (first and last always kept)
  /// When false the quadratic term -k*xi_1*xi is dropped, leaving the exact
  /// linearization d(xi)/d(sigma) = B xi.  Used to validate the integrator
  /// against a dense matrix exponential.
  bool include_quadratic = true;
};

/// Companion matrix of the linearized xi-system.  Integer entries:
/// row 1 has diagonal -(2k-1) and superdiagonal k-1; every later row j has
/// -k in column 1, -(k-j) on the diagonal and k-j on the superdiagonal, so
/// the last row is (-k, 0, ..., 0).  Its eigenvalues are -1, -2, ..., -k.
/// @throws LabError{invalid_argument} if k < 1.
Eigen::MatrixXd build_b_matrix(int k);

/// Optional forcing term E(tau) for the Riccati flow.  An empty function
/// means E == 0.  The result is symmetrized together with the state, so a
/// slightly asymmetric forcing cannot break the symmetry invariant.
using RiccatiForcing = std::function<Eigen::MatrixXd(double tau)>;

/// Advance dA/dtau = -A^2/beta + E(tau) from tau_from to tau_to with fixed-step
/// RK4, re-symmetrizing after every step.
/// @param a0    symmetric square initial matrix (asymmetry above 1e-12 of its
///              scale is rejected rather than silently averaged away)
/// @throws LabError{invalid_argument} on bad ranges (need tau_from < tau_to < 0),
///         non-finite/asymmetric a0, beta <= 0, or bad options
/// @throws LabError{blow_up} when the Frobenius norm passes opts.norm_cap or a
///         non-finite entry appears; the message carries the tau of failure
std::vector<RiccatiState> integrate_riccati(const Eigen::MatrixXd& a0,
                                            double tau_from, double tau_to,
                                            double beta,
                                            const RiccatiOptions& opts = {},
                                            const RiccatiForcing& e_fn = {});

/// Map a coefficient matrix to the xi-vector at time tau:
/// xi_j = binom(k,j)^{-1} (tau/beta)^j S_j - 1 with S_j the j-th elementary
/// symmetric polynomial of the eigenvalues of a (k = params.k, beta =
/// params.beta).  Depends on the spectrum only, so it is invariant under
/// orthogonal conjugation of a.
/// @throws LabError{invalid_argument} if tau >= 0, a is not k x k, or a is
///         asymmetric/non-finite
Eigen::VectorXd xi_from_a(const Eigen::MatrixXd& a, double tau,
                          const CylinderParams& params);

/// Optional forcing for the xi-system (same shape as the state).
using XiForcing = std::function<Eigen::VectorXd(double sigma)>;

/// Advance d(xi)/d(sigma) = B xi - k*xi_1*xi + error_fn(sigma) from sigma_from
/// to sigma_to with fixed-step RK4.  Either direction is allowed (the step
/// sign follows the endpoints); sigma_from == sigma_to yields the single
/// initial record.
/// @throws LabError{invalid_argument} on empty/non-finite xi0 or bad options
/// @throws LabError{blow_up} when |xi| passes opts.norm_cap or turns
///         non-finite; the message carries the sigma of failure
std::vector<XiState> integrate_xi(const Eigen::VectorXd& xi0,
                                  double sigma_from, double sigma_to,
                                  const XiOptions& opts = {},
                                  const XiForcing& error_fn = {});

/// Outcome of one phase-portrait probe.
enum class XiFate {
  fixed_point,  ///< started exactly at xi = 0 and stays there
  to_zero,      ///< |xi| fell below max(1e-9, 1e-3 |xi0|) by the end of the span
  elsewhere,    ///< survived the span without approaching 0
  blow_up,      ///< hit the norm cap (or a non-finite entry) inside the span
};

/// Short stable name for report files: "fixed", "to-zero", "elsewhere",
/// "blow-up".
const char* xi_fate_name(XiFate fate);

/// One row of the phase-portrait classification table.
struct PhasePortraitRow {
  Eigen::VectorXd xi0;
  bool forward = true;  ///< integrated toward larger sigma?
  XiFate fate = XiFate::elsewhere;
  /// Decay rate of |xi| per unit of elapsed sigma, from a least-squares fit of
  /// log|xi| over the tail of the recorded trajectory: positive means decay
  /// toward 0, negative means growth.  NaN when too little was recorded.
  double rate = 0.0;
  double final_norm = 0.0;  ///< |xi| at the last recorded state
};

/// Probe the neighborhood of xi = 0: integrate every seed over [0, sigma_span]
/// and [0, -sigma_span] and classify the outcome.  Purely descriptive - a
/// blow-up is a classification here, not an error.
/// @param seeds  initial vectors, each of dimension k with |xi0| <= 0.2
/// @throws LabError{invalid_argument} on k < 1, wrong seed dimension, a seed
///         outside the 0.2 ball, or sigma_span <= 0
std::vector<PhasePortraitRow> phase_portrait(int k,
                                             const std::vector<Eigen::VectorXd>& seeds,
                                             double sigma_span,
                                             const XiOptions& opts = {});

/// CSV dump of a Riccati trajectory: header
/// tau,a_1_1,...,a_k_k,frobenius_norm with the matrix flattened row-major.
void write_riccati_csv(const std::string& path,
                       const std::vector<RiccatiState>& trajectory);

/// CSV dump of a xi trajectory: header sigma,xi_1,...,xi_k,norm.
void write_xi_csv(const std::string& path,
                  const std::vector<XiState>& trajectory);

/// JSON dump of a phase-portrait table: {"k": ..., "sigma_span": ...,
/// "rows": [{"xi0": [...], "direction": "forward"|"backward",
/// "fate": ..., "rate": ..., "final_norm": ...}, ...]}.
/// Non-finite rates serialize as null.  Output is deterministic.
void write_phase_portrait_json(const std::string& path,
                               const std::vector<PhasePortraitRow>& rows,
                               int k, double sigma_span);

}  // namespace ovallab
