#include "phaselift/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "phaselift/error.hpp"
#include "phaselift/metrics.hpp"

namespace phaselift {
namespace {

constexpr double kStepGrowth = 1.2;
// Above this reduced dimension the adjoint stays matrix-free.
constexpr std::size_t kDenseAdjointLimit = 1024;

LowRankHermitian difference(const LowRankHermitian& a, const LowRankHermitian& b) {
  LowRankHermitian out;
  out.dimension = a.dimension;
  out.basis.resize(static_cast<Eigen::Index>(a.dimension), a.basis.cols() + b.basis.cols());
  out.basis << a.basis, b.basis;
  out.coeffs.resize(a.coeffs.size() + b.coeffs.size());
  out.coeffs << a.coeffs, -b.coeffs;
  return out;
}

double relative_change(const FactoredPsd& now, const FactoredPsd& before) {
  const double diff = std::sqrt(std::max(LowRankHermitian::combine(1.0, now, -1.0, before).frobenius_norm_squared(), 0.0));
  const double scale = std::max(now.frobenius_norm(), before.frobenius_norm());
  if (scale == 0.0) return 0.0;
  return diff / scale;
}

bool is_clean(const IntensityData& b) { return std::holds_alternative<CleanNoise>(b.noise); }

Eigen::VectorXd effective_sigma(const SolverConfig& config, const IntensityData& b) {
  if (config.sigma.size() > 0) return config.sigma;
  if (const auto* g = std::get_if<GaussianNoise>(&b.noise)) return g->sigma;
  return {};
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIters: return "max-iters";
    case SolveStatus::Stalled: return "stalled";
    case SolveStatus::Diverged: return "diverged";
  }
  return "unknown";
}

double SolverResult::rank_gap() const {
  if (X.rank() < 2 || X.values[0] <= 0.0) return 0.0;
  return X.values[1] / X.values[0];
}

double fista_next_theta(double theta) {
  if (!(theta > 0.0)) throw ArgumentError("fista_next_theta: theta must be positive");
  return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 / (theta * theta)));
}

double fista_beta(double theta_new, double theta_old) { return theta_new * (1.0 / theta_old - 1.0); }

// ---------------------------------------------------------------------------

ReweightMatrix ReweightMatrix::identity(std::size_t) { return ReweightMatrix{}; }

ReweightMatrix ReweightMatrix::from(const FactoredPsd& X, double epsilon) {
  if (!(epsilon > 0.0)) throw ArgumentError("ReweightMatrix: epsilon must be positive");
  ReweightMatrix w;
  w.identity_ = false;
  w.epsilon_ = epsilon;
  w.vectors_ = X.vectors;
  w.inverse_values_ = (X.values.array() + epsilon).inverse().matrix();
  return w;
}

Eigen::MatrixXcd ReweightMatrix::apply(const Eigen::MatrixXcd& v) const {
  if (identity_) return v;
  Eigen::MatrixXcd out = v / epsilon_;
  if (vectors_.cols() == 0) return out;
  const Eigen::MatrixXcd proj = vectors_.adjoint() * v;
  const Eigen::VectorXd d = inverse_values_.array() - 1.0 / epsilon_;
  out += vectors_ * (d.asDiagonal() * proj);
  return out;
}

double ReweightMatrix::trace_product(const LowRankHermitian& X) const {
  if (X.coeffs.size() == 0) return 0.0;
  const Eigen::VectorXd col_norms = X.basis.colwise().squaredNorm().transpose();
  if (identity_) return X.coeffs.dot(col_norms);
  double total = X.coeffs.dot(col_norms) / epsilon_;
  if (vectors_.cols() > 0) {
    const Eigen::MatrixXd overlap = (vectors_.adjoint() * X.basis).cwiseAbs2();
    const Eigen::VectorXd d = inverse_values_.array() - 1.0 / epsilon_;
    total += d.dot(overlap * X.coeffs);
  }
  return total;
}

// ---------------------------------------------------------------------------

LiftedProblem::LiftedProblem(const MeasurementEnsemble& ensemble, const IntensityData& b, const SolverConfig& config)
    : ensemble_(ensemble), data_(b), config_(config), index_(config.support) {
  if (b.size() != ensemble.measurement_count()) throw ShapeError("LiftedProblem: data length does not match the ensemble");
  std::sort(index_.begin(), index_.end());
  index_.erase(std::unique(index_.begin(), index_.end()), index_.end());
  for (std::size_t t : index_) {
    if (t >= ensemble.signal_size()) throw ArgumentError("LiftedProblem: support index out of range");
  }
  if (index_.size() == ensemble.signal_size()) index_.clear();
  if (config_.sigma.size() == 0) config_.sigma = effective_sigma(config, b);
  if (config_.sigma.size() > 0 && config_.sigma.size() != b.values.size())
    throw ShapeError("LiftedProblem: sigma length does not match the data");
}

Eigen::MatrixXcd LiftedProblem::embed(const Eigen::MatrixXcd& reduced) const {
  if (index_.empty()) return reduced;
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(ensemble_.signal_size()), reduced.cols());
  for (std::size_t i = 0; i < index_.size(); ++i) full.row(static_cast<Eigen::Index>(index_[i])) = reduced.row(static_cast<Eigen::Index>(i));
  return full;
}

Eigen::MatrixXcd LiftedProblem::restrict_to_support(const Eigen::MatrixXcd& full) const {
  if (index_.empty()) return full;
  Eigen::MatrixXcd reduced(static_cast<Eigen::Index>(index_.size()), full.cols());
  for (std::size_t i = 0; i < index_.size(); ++i) reduced.row(static_cast<Eigen::Index>(i)) = full.row(static_cast<Eigen::Index>(index_[i]));
  return reduced;
}

Eigen::VectorXd LiftedProblem::forward(const LowRankHermitian& X) const {
  LowRankHermitian full = X;
  full.dimension = ensemble_.signal_size();
  full.basis = embed(X.basis);
  return apply_lifted(ensemble_, full);
}

Eigen::MatrixXcd LiftedProblem::adjoint(const Eigen::VectorXd& y, const Eigen::MatrixXcd& v) const {
  return restrict_to_support(apply_adjoint_action(ensemble_, y, embed(v)));
}

HermitianAction LiftedProblem::adjoint_operator(const Eigen::VectorXd& y) const {
  if (dimension() > kDenseAdjointLimit) {
    return [this, y](const Eigen::MatrixXcd& v) -> Eigen::MatrixXcd { return adjoint(y, v); };
  }
  Eigen::MatrixXcd G = adjoint_matrix(ensemble_, y);
  if (!index_.empty()) {
    const auto k = static_cast<Eigen::Index>(index_.size());
    Eigen::MatrixXcd reduced(k, k);
    for (Eigen::Index c = 0; c < k; ++c)
      for (Eigen::Index r = 0; r < k; ++r) reduced(r, c) = G(static_cast<Eigen::Index>(index_[r]), static_cast<Eigen::Index>(index_[c]));
    G = std::move(reduced);
  }
  auto dense = std::make_shared<const Eigen::MatrixXcd>(std::move(G));
  return [dense](const Eigen::MatrixXcd& v) -> Eigen::MatrixXcd { return (*dense) * v; };
}

NllValue LiftedProblem::nll(const Eigen::VectorXd& mu) const {
  if (config_.objective == Objective::Poisson) return nll_poisson(data_.values, mu);
  return nll_gaussian(data_.values, mu, config_.sigma);
}

void LiftedProblem::set_penalty(double lambda, ReweightMatrix weight) {
  if (!(lambda >= 0.0)) throw ArgumentError("LiftedProblem: lambda must be nonnegative");
  lambda_ = lambda;
  weight_ = std::move(weight);
}

double LiftedProblem::objective(const LowRankHermitian& X) const { return objective(X, forward(X)); }

double LiftedProblem::objective(const LowRankHermitian& X, const Eigen::VectorXd& mu) const {
  return nll(mu).value + lambda_ * weight_.trace_product(X);
}

// ---------------------------------------------------------------------------

FistaState FistaState::start(const FactoredPsd& X0, double step) {
  FistaState s;
  s.X = X0;
  s.X_prev = X0;
  s.Y = LowRankHermitian::from(X0);
  s.step = step;
  return s;
}

FactoredPsd psd_project_rank_k(const HermitianAction& action, std::size_t n, int k, const EigenOptions& options,
                               const Eigen::MatrixXcd& warm_start) {
  EigenOptions opts = options;
  opts.positive_only = true;
  EigenPairs pairs;
  try {
    pairs = top_eigenpairs(action, n, k, warm_start, opts);
  } catch (const EigensolverError&) {
    opts.krylov_blocks *= 2;
    opts.max_restarts *= 2;
    pairs = top_eigenpairs(action, n, k, warm_start, opts);
  }
  FactoredPsd out;
  out.dimension = n;
  const double top = pairs.values.size() > 0 ? pairs.values[0] : 0.0;
  Eigen::Index keep = 0;
  while (keep < pairs.values.size() && pairs.values[keep] > 0.0 && pairs.values[keep] > 1e-14 * top) ++keep;
  out.values = pairs.values.head(keep);
  out.vectors = pairs.vectors.leftCols(keep);
  // Ritz vectors are orthonormal up to rounding; re-orthonormalize for the factored invariants.
  if (keep > 0) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(out.vectors);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(out.vectors.rows(), keep);
    for (Eigen::Index c = 0; c < keep; ++c) {
      const cplx phase = q.col(c).dot(out.vectors.col(c));
      if (std::abs(phase) > 0.0) q.col(c) *= phase / std::abs(phase);
    }
    out.vectors = q;
  }
  return out;
}

FistaState fista_step(const FistaState& state, const LiftedProblem& problem) {
  const SolverConfig& cfg = problem.config();
  const bool backtracking = cfg.objective == Objective::Poisson || cfg.step_rule == StepRule::Backtracking;
  const double shrink = (cfg.backtrack_factor > 0.0 && cfg.backtrack_factor < 1.0) ? cfg.backtrack_factor : 0.5;
  const std::size_t n = problem.dimension();
  const double slack = 1e-12 * std::max(std::abs(state.objective), 1.0);

  FistaState next = state;
  next.backtracks = 0;
  next.restarted = false;
  next.stalled = false;
  LowRankHermitian Y = state.Y;
  bool momentum = state.beta != 0.0;
  double t = state.step;
  // Let the step recover after backtracking; a rejected trial costs one extra projection.
  if (backtracking && state.backtracks == 0) t *= kStepGrowth;
  EigenOptions eig = cfg.eigen;
  eig.real_symmetric = eig.real_symmetric || cfg.real_valued;

  for (int attempt = 0; attempt < 60; ++attempt) {
    const Eigen::VectorXd mu_y = problem.forward(Y);
    const NllValue at_y = problem.nll(mu_y);
    const double lam = problem.lambda();
    const ReweightMatrix& W = problem.weight();
    const HermitianAction grad_action = problem.adjoint_operator(at_y.gradient);
    HermitianAction action = [&](const Eigen::MatrixXcd& v) -> Eigen::MatrixXcd {
      Eigen::MatrixXcd grad = grad_action(v);
      if (lam > 0.0) grad += lam * W.apply(v);
      return Y.apply(v) - t * grad;
    };
    FactoredPsd Xn = psd_project_rank_k(action, n, cfg.rank_cap, eig, state.X.vectors);
    const LowRankHermitian XnL = LowRankHermitian::from(Xn);
    const Eigen::VectorXd mu_x = problem.forward(XnL);
    const NllValue at_x = problem.nll(mu_x);
    const double F = at_x.value + lam * W.trace_product(XnL);

    if (backtracking) {
      const double dist2 = difference(XnL, Y).frobenius_norm_squared();
      const double model = at_y.value + at_y.gradient.dot(mu_x - mu_y) + dist2 / (2.0 * t);
      if (!(at_x.value <= model + slack)) {
        t *= shrink;
        ++next.backtracks;
        continue;
      }
    }
    if (!(F <= state.objective + slack)) {
      if (momentum) {
        Y = LowRankHermitian::from(state.X);
        momentum = false;
        next.restarted = true;
      } else {
        t *= shrink;
        ++next.backtracks;
      }
      continue;
    }

    const double theta_old = next.restarted ? 1.0 : state.theta;
    next.theta = fista_next_theta(theta_old);
    next.beta = fista_beta(next.theta, theta_old);
    next.X_prev = state.X;
    next.X = std::move(Xn);
    next.Y = next.beta == 0.0 ? LowRankHermitian::from(next.X)
                              : LowRankHermitian::combine(1.0 + next.beta, next.X, -next.beta, next.X_prev);
    next.step = t;
    next.objective = F;
    return next;
  }
  next.stalled = true;
  next.X_prev = state.X;
  next.Y = LowRankHermitian::from(state.X);
  next.theta = 1.0;
  next.beta = 0.0;
  next.step = t;
  return next;
}

ComplexSignal extract_rank_one(const FactoredPsd& X, double target_norm, const Shape& shape) {
  if (X.dimension != shape.size()) throw ShapeError("extract_rank_one: dimension does not match the shape");
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.size()));
  if (X.rank() > 0 && X.values[0] > 0.0) {
    Eigen::Index best = 0;
    const Eigen::VectorXcd v = X.vectors.col(0);
    v.cwiseAbs().maxCoeff(&best);
    const cplx phase = std::abs(v[best]) > 0.0 ? std::conj(v[best]) / std::abs(v[best]) : cplx(1.0, 0.0);
    x = v * (phase * (target_norm / v.norm()));
    x[best] = cplx(x[best].real(), 0.0);
  }
  return ComplexSignal(shape, x);
}

double logdet_objective(const FactoredPsd& X, double epsilon, std::size_t ambient_dim) {
  if (!(epsilon > 0.0)) throw ArgumentError("logdet_objective: epsilon must be positive");
  if (X.rank() > ambient_dim) throw ShapeError("logdet_objective: rank exceeds the ambient dimension");
  double total = 0.0;
  for (Eigen::Index j = 0; j < X.values.size(); ++j) total += std::log(epsilon + std::max(X.values[j], 0.0));
  return total + static_cast<double>(ambient_dim - X.rank()) * std::log(epsilon);
}

double estimate_norm_from_data(const MeasurementEnsemble& ensemble, const IntensityData& b) {
  // sum_k b_k = sum_t D_t |x_t|^2 with D_t = sum_j |w_j[t]|^2.
  Eigen::VectorXd D = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ensemble.signal_size()));
  for (const auto& ill : ensemble.illuminations()) D += ill.mask.weights().cwiseAbs2();
  const double mean_d = D.mean();
  if (!(mean_d > 0.0)) throw ZeroMaskWeightError("estimate_norm_from_data: masks carry no energy");
  return std::sqrt(std::max(b.values.sum(), 0.0) / mean_d);
}

// ---------------------------------------------------------------------------

SolverResult solve(const MeasurementEnsemble& ensemble, const IntensityData& b, const SolverConfig& config,
                   std::optional<double> target_norm) {
  if (config.rank_cap < 1) throw ArgumentError("solve: rank_cap must be >= 1");
  if (!(config.lambda >= 0.0)) throw ArgumentError("solve: lambda must be nonnegative");
  if (config.max_iters < 1 || config.max_iters_per_round < 1) throw ArgumentError("solve: iteration limits must be positive");
  if (config.reweight.enabled && !(config.reweight.epsilon > 0.0)) throw ArgumentError("solve: reweighting epsilon must be positive");
  if (b.values.minCoeff() < 0.0 && config.objective == Objective::Poisson)
    throw ArgumentError("solve: Poisson data must be nonnegative");

  LiftedProblem problem(ensemble, b, config);
  const std::size_t n = problem.dimension();
  const Shape& shape = ensemble.signal_shape();

  SolverResult result;
  result.target_norm = target_norm.value_or(estimate_norm_from_data(ensemble, b));
  result.X = FactoredPsd::zero(ensemble.signal_size());
  result.x_hat = ComplexSignal(shape, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ensemble.signal_size())));
  const double bnorm = b.values.norm();
  if (bnorm == 0.0) {
    result.status = SolveStatus::Converged;
    result.message = "zero data";
    return result;
  }

  const bool clean = is_clean(b);
  const double factor = config.continuation_factor.value_or(clean ? 0.5 : 1.0);
  const int plain_rounds = config.continuation_rounds.value_or(clean ? 10 : 0);
  const int total_rounds = config.reweight.enabled ? 1 + std::max(config.reweight.max_rounds, 0) : 1 + std::max(plain_rounds, 0);

  EigenOptions eig = config.eigen;
  eig.real_symmetric = eig.real_symmetric || config.real_valued;

  // Initial point.
  FactoredPsd X0 = FactoredPsd::zero(n);
  if (config.init == Initialization::Spectral) {
    const EigenPairs top = top_eigenpairs(problem.adjoint_operator(b.values), n, 1, Eigen::MatrixXcd(), eig);
    FactoredPsd unit;
    unit.dimension = n;
    unit.vectors = top.vectors.leftCols(1);
    unit.values = Eigen::VectorXd::Ones(1);
    const Eigen::VectorXd mu = problem.forward(LowRankHermitian::from(unit));
    const double denom = mu.squaredNorm();
    const double alpha = denom > 0.0 ? mu.dot(b.values) / denom : 0.0;
    if (alpha > 0.0) {
      X0 = unit;
      X0.values[0] = alpha;
    }
  }

  // Step size from the curvature of the data term.
  Eigen::VectorXd weights;
  if (config.objective == Objective::Poisson) {
    const double floor = std::max(b.values.mean() * 1e-3, poisson_floor(b.values));
    weights = b.values.cwiseMax(floor).cwiseInverse();
  } else if (problem.config().sigma.size() > 0) {
    weights = problem.config().sigma.cwiseAbs2().cwiseInverse();
  }
  const double L = (ensemble.signal_size() <= 1024)
                       ? lipschitz_estimate(ensemble, config.lipschitz_iterations, config.seed, weights)
                       : lipschitz_upper_bound(ensemble, weights);
  if (!(L > 0.0)) throw ArgumentError("solve: measurement operator is zero");

  FistaState state = FistaState::start(X0, 1.0 / L);
  FactoredPsd round_start = X0;
  int iterations = 0;
  bool done = false;
  double lambda = config.lambda;

  auto finish_iterate = [&](int round) {
    result.X = state.X;
    result.X.vectors = problem.embed(state.X.vectors);
    result.X.dimension = ensemble.signal_size();
    result.x_hat = extract_rank_one(result.X, result.target_norm, shape);
    result.residual = residual(ensemble, result.x_hat, b);
    result.objective_trace.push_back(state.objective);
    result.objective_round.push_back(round);
    if (config.record_trace) {
      TraceRecord rec;
      rec.iteration = iterations;
      rec.round = round;
      rec.lambda = problem.lambda();
      rec.objective = state.objective;
      rec.residual = result.residual;
      rec.step = state.step;
      for (Eigen::Index i = 0; i < std::min<Eigen::Index>(3, state.X.values.size()); ++i) rec.top_eigenvalues[i] = state.X.values[i];
      result.trace.push_back(rec);
    }
  };

  for (int round = 0; round < total_rounds && !done; ++round) {
    if (round > 0) lambda *= factor;
    ReweightMatrix W = (config.reweight.enabled && round > 0) ? ReweightMatrix::from(state.X, config.reweight.epsilon)
                                                             : ReweightMatrix::identity(n);
    problem.set_penalty(lambda, std::move(W));
    state = FistaState::start(state.X, state.step);
    state.objective = problem.objective(LowRankHermitian::from(state.X));
    round_start = state.X;
    result.rounds = round + 1;
    result.final_lambda = lambda;
    if (config.reweight.enabled) result.reweight_rounds = round;

    bool settled = false;
    for (int it = 0; it < config.max_iters_per_round; ++it) {
      if (iterations >= config.max_iters) {
        result.status = SolveStatus::MaxIters;
        result.message = "iteration budget exhausted";
        done = true;
        break;
      }
      const FactoredPsd before = state.X;
      state = fista_step(state, problem);
      ++iterations;
      if (!std::isfinite(state.objective)) {
        result.status = SolveStatus::Diverged;
        result.message = "objective is not finite";
        result.iterations = iterations;
        return result;
      }
      finish_iterate(round);
      if (result.residual <= config.tol_residual) {
        result.status = SolveStatus::Converged;
        result.message = "residual tolerance reached";
        done = true;
        break;
      }
      if (state.stalled) {
        result.status = SolveStatus::Stalled;
        result.message = "no decreasing step found";
        done = true;
        break;
      }
      if (relative_change(state.X, before) <= config.tol_inner) {
        settled = true;
        break;
      }
    }

    if (config.reweight.enabled) {
      const LowRankHermitian XL = LowRankHermitian::from(state.X);
      const double ld = logdet_objective(state.X, config.reweight.epsilon, n);
      result.logdet_trace.push_back(ld);
      result.surrogate_trace.push_back(problem.nll(problem.forward(XL)).value + lambda * ld);
    }
    if (done) break;
    const bool last_round = round + 1 == total_rounds;
    if (round > 0 && relative_change(state.X, round_start) <= config.reweight_tol) {
      result.status = SolveStatus::Converged;
      result.message = "iterates stopped changing between rounds";
      done = true;
    } else if (last_round) {
      result.status = settled ? SolveStatus::Converged : SolveStatus::MaxIters;
      result.message = settled ? "iterates settled in the final round" : "per-round iteration budget exhausted";
      done = true;
    }
  }
  if (result.objective_trace.empty()) finish_iterate(0);
  result.iterations = iterations;
  result.lifted_residual = lifted_residual(ensemble, result.X, b);
  return result;
}

}  // namespace phaselift
