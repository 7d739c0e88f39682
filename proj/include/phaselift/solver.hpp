#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phaselift/eigensolver.hpp"
#include "phaselift/measurement.hpp"
#include "phaselift/noise.hpp"
#include "phaselift/signal.hpp"

namespace phaselift {

enum class Objective { Gaussian, Poisson };
enum class StepRule { Fixed, Backtracking };
/// Converged: residual tolerance met or the iterates settled in the final
/// round. MaxIters: an iteration budget ran out first. Stalled: no step
/// decreasing the objective could be found. Diverged: non-finite objective.
enum class SolveStatus { Converged, MaxIters, Stalled, Diverged };
enum class Initialization { Spectral, Zero };

std::string to_string(SolveStatus status);

/// Iterative reweighting W_{k+1} = (X_k + eps I)^{-1}.
struct ReweightConfig {
  bool enabled = false;
  double epsilon = 0.1;
  int max_rounds = 10;  ///< reweighting steps after the initial W_0 = I solve
};

struct SolverConfig {
  Objective objective = Objective::Gaussian;
  double lambda = 0.05;
  int rank_cap = 10;
  int max_iters = 4000;            ///< FISTA iterations over all rounds
  int max_iters_per_round = 1500;
  StepRule step_rule = StepRule::Fixed;  ///< Poisson always backtracks
  double backtrack_factor = 0.5;
  double tol_residual = 1e-6;      ///< stop once ||A(x x^*) - b|| <= tol ||b||
  double tol_inner = 1e-8;         ///< relative change of X that ends a round
  ReweightConfig reweight;
  /// lambda multiplier per round. Unset: 0.5 for clean data, 1 otherwise.
  std::optional<double> continuation_factor;
  /// Plain-trace rounds when reweighting is off. Unset: 10 for clean data, 0 otherwise.
  std::optional<int> continuation_rounds;
  double reweight_tol = 1e-6;      ///< relative change of X between rounds
  bool real_valued = false;
  std::vector<std::size_t> support;  ///< flat indices; empty means the whole grid
  Eigen::VectorXd sigma;           ///< Gaussian per-measurement std dev; empty means ones
  Initialization init = Initialization::Spectral;
  int lipschitz_iterations = 30;
  std::uint64_t seed = 0;
  bool record_trace = false;
  EigenOptions eigen;
};

struct TraceRecord {
  int iteration = 0;
  int round = 0;
  double lambda = 0.0;
  double objective = 0.0;
  double residual = 0.0;
  double step = 0.0;
  std::array<double, 3> top_eigenvalues{0.0, 0.0, 0.0};
};

struct SolverResult {
  FactoredPsd X;
  ComplexSignal x_hat;
  int iterations = 0;
  std::vector<double> objective_trace;  ///< accepted iterates, per iteration
  std::vector<int> objective_round;     ///< round index of each objective_trace entry
  double residual = 0.0;                ///< ||A(x_hat x_hat^*) - b|| / ||b||
  double lifted_residual = 0.0;         ///< ||A(X) - b|| / ||b||
  int reweight_rounds = 0;
  int rounds = 0;
  double final_lambda = 0.0;
  double target_norm = 0.0;
  SolveStatus status = SolveStatus::MaxIters;
  std::string message;
  std::vector<double> logdet_trace;     ///< log det(X_k + eps I) after each round (reweighting only)
  std::vector<double> surrogate_trace;  ///< nll + lambda log det after each round (reweighting only)
  std::vector<TraceRecord> trace;

  double rank_gap() const;
};

/// Trace-penalized maximum likelihood over rank-capped PSD matrices,
///   minimize nll(b; A(X)) + lambda Tr(W X),  X >= 0, rank X <= rank_cap,
/// by accelerated projected gradient, optional reweighting and lambda
/// continuation. `target_norm` scales the extracted signal; when absent it
/// is estimated from the data.
SolverResult solve(const MeasurementEnsemble& ensemble, const IntensityData& b, const SolverConfig& config,
                   std::optional<double> target_norm = std::nullopt);

/// ||x|| implied by the data when sum_j |w_j[t]|^2 is constant over t
/// (exact for any ensemble that contains only unimodular masks).
double estimate_norm_from_data(const MeasurementEnsemble& ensemble, const IntensityData& b);

/// theta_k = 2 / (1 + sqrt(1 + 4 / theta_{k-1}^2))
double fista_next_theta(double theta);
/// beta_k = theta_k (1 / theta_{k-1} - 1)
double fista_beta(double theta_new, double theta_old);

/// Weight matrix V diag(1/(lambda_j + eps)) V^* + (1/eps)(I - V V^*), or I.
class ReweightMatrix {
 public:
  static ReweightMatrix identity(std::size_t dimension);
  static ReweightMatrix from(const FactoredPsd& X, double epsilon);

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& v) const;
  /// Tr(W X) for X = U diag(c) U^*.
  double trace_product(const LowRankHermitian& X) const;
  bool is_identity() const noexcept { return identity_; }

 private:
  bool identity_ = true;
  double epsilon_ = 1.0;
  Eigen::MatrixXcd vectors_;
  Eigen::VectorXd inverse_values_;
};

/// Smooth data term, penalty and constraints seen by one FISTA iteration.
/// Works in the reduced coordinates of the support (all of C^N without one).
class LiftedProblem {
 public:
  LiftedProblem(const MeasurementEnsemble& ensemble, const IntensityData& b, const SolverConfig& config);

  std::size_t dimension() const noexcept { return index_.empty() ? ensemble_.signal_size() : index_.size(); }
  const MeasurementEnsemble& ensemble() const noexcept { return ensemble_; }
  const IntensityData& data() const noexcept { return data_; }
  const SolverConfig& config() const noexcept { return config_; }

  /// Reduced vectors back to the full signal grid (zeros outside the support).
  Eigen::MatrixXcd embed(const Eigen::MatrixXcd& reduced) const;
  Eigen::MatrixXcd restrict_to_support(const Eigen::MatrixXcd& full) const;

  Eigen::VectorXd forward(const LowRankHermitian& X) const;
  Eigen::MatrixXcd adjoint(const Eigen::VectorXd& y, const Eigen::MatrixXcd& v) const;
  /// v -> A^*(y) v on the support; materialized densely for small problems.
  HermitianAction adjoint_operator(const Eigen::VectorXd& y) const;
  NllValue nll(const Eigen::VectorXd& mu) const;

  void set_penalty(double lambda, ReweightMatrix weight);
  double lambda() const noexcept { return lambda_; }
  const ReweightMatrix& weight() const noexcept { return weight_; }

  /// nll(A(X)) + lambda Tr(W X)
  double objective(const LowRankHermitian& X) const;
  double objective(const LowRankHermitian& X, const Eigen::VectorXd& mu) const;

 private:
  const MeasurementEnsemble& ensemble_;
  const IntensityData& data_;
  SolverConfig config_;
  std::vector<std::size_t> index_;
  double lambda_ = 0.0;
  ReweightMatrix weight_;
};

struct FistaState {
  FactoredPsd X;
  FactoredPsd X_prev;
  LowRankHermitian Y;
  double theta = 1.0;
  double beta = 0.0;
  double step = 1.0;
  double objective = 0.0;  ///< composite objective at X
  int backtracks = 0;
  bool restarted = false;
  bool stalled = false;  ///< no admissible step was found; X is unchanged

  static FistaState start(const FactoredPsd& X0, double step);
};

/// One accelerated update: X_k = P_k(Y - t grad g(Y)), theta/beta recursion,
/// Y_k = X_k + beta_k (X_k - X_{k-1}). Steps that raise the objective are
/// redone from X_{k-1} with the momentum reset (and halved step when even
/// that fails).
FistaState fista_step(const FistaState& state, const LiftedProblem& problem);

/// sum_{i<=k} max(lambda_i, 0) u_i u_i^* over the k algebraically largest
/// eigenpairs of the Hermitian action. Retries once with a larger search
/// space before giving up.
FactoredPsd psd_project_rank_k(const HermitianAction& action, std::size_t n, int k, const EigenOptions& options = {},
                               const Eigen::MatrixXcd& warm_start = {});

/// Top eigenvector of X scaled to ||x|| = target_norm; zero when X has no
/// positive eigenvalue. Phase fixed so the largest-magnitude entry is real
/// and positive.
ComplexSignal extract_rank_one(const FactoredPsd& X, double target_norm, const Shape& shape);

/// log det(X + eps I) over an N-dimensional space: sum_j log(eps + lambda_j)
/// plus (N - r) log eps for the implicit zero eigenvalues.
double logdet_objective(const FactoredPsd& X, double epsilon, std::size_t ambient_dim);

}  // namespace phaselift
