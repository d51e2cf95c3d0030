#include "rnmf/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rnmf/random.hpp"

namespace rnmf {

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::l2: return "l2";
    case SolverKind::l21: return "l21";
    case SolverKind::l1: return "l1";
  }
  return "unknown";
}

SolverKind parse_solver_kind(const std::string& name) {
  if (name == "l2") return SolverKind::l2;
  if (name == "l21") return SolverKind::l21;
  if (name == "l1") return SolverKind::l1;
  throw std::invalid_argument("unknown solver '" + name + "' (expected l1, l2 or l21)");
}

void SolverConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("SolverConfig: epsilon must be positive");
  if (record_objective_every < 1) throw std::invalid_argument("SolverConfig: record_objective_every must be >= 1");
}

Factors init_factors(Index m, Index n, Index k, std::uint64_t seed, double epsilon) {
  if (k < 1 || k > std::min(m, n)) {
    throw std::invalid_argument("init_factors: rank " + std::to_string(k) + " outside [1, min(m, n)]");
  }
  Rng rng(seed);
  auto draw = [&] { return epsilon + (1.0 - epsilon) * rng.uniform_open_closed(); };
  Factors f{DenseMatrix(m, k), DenseMatrix(k, n)};
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < m; ++i) f.W(i, j) = draw();
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < k; ++i) f.H(i, j) = draw();
  return f;
}

namespace mur {

void update_basis(const DenseMatrix& X, DenseMatrix& W, const DenseMatrix& H, double eps) {
  const DenseMatrix numer = X * H.transpose();
  const DenseMatrix denom = W * (H * H.transpose());
  W = W.cwiseProduct(numer).cwiseQuotient((denom.array() + eps).matrix());
}

void update_coefficients(const DenseMatrix& X, const DenseMatrix& W, DenseMatrix& H, double eps) {
  const DenseMatrix numer = W.transpose() * X;
  const DenseMatrix denom = (W.transpose() * W) * H;
  H = H.cwiseProduct(numer).cwiseQuotient((denom.array() + eps).matrix());
}

Eigen::VectorXd l21_weights(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H, double eps) {
  const Eigen::VectorXd norms = (X - W * H).colwise().norm().transpose();
  return norms.cwiseMax(eps).cwiseInverse();
}

void update_basis_weighted(const DenseMatrix& X, DenseMatrix& W, const DenseMatrix& H,
                           const Eigen::VectorXd& weights, double eps) {
  const DenseMatrix h_weighted = H * weights.asDiagonal();
  const DenseMatrix numer = X * h_weighted.transpose();
  const DenseMatrix denom = W * (h_weighted * H.transpose());
  W = W.cwiseProduct(numer).cwiseQuotient((denom.array() + eps).matrix());
}

void update_coefficients_weighted(const DenseMatrix& X, const DenseMatrix& W, DenseMatrix& H,
                                  const Eigen::VectorXd& weights, double eps) {
  const DenseMatrix numer = (W.transpose() * X) * weights.asDiagonal();
  const DenseMatrix denom = ((W.transpose() * W) * H) * weights.asDiagonal();
  H = H.cwiseProduct(numer).cwiseQuotient((denom.array() + eps).matrix());
}

void update_augmented(const DenseMatrix& X, const DenseMatrix& W, DenseMatrix& H, DenseMatrix& noise_pos,
                      DenseMatrix& noise_neg, double lambda, double eps) {
  const DenseMatrix& P = noise_pos;
  const DenseMatrix& N = noise_neg;
  const DenseMatrix gram = W.transpose() * W;
  const DenseMatrix wh = W * H;
  const DenseMatrix gram_h = gram * H;
  // lambda * (column sums of Ep and En), broadcast down each column.
  const Eigen::RowVectorXd penalty = lambda * (P.colwise().sum() + N.colwise().sum());
  // Off-identity diagonal of |-I + lambda J| relative to lambda J.
  const double diag_shift = std::abs(lambda - 1.0) - lambda;

  // (U~' U~ V~), (S V~) and (U~' X~), block by block.
  const DenseMatrix grad_h = gram_h + W.transpose() * (P - N);
  const DenseMatrix scale_h = gram_h + W.transpose() * (P + N);
  const DenseMatrix target_h = W.transpose() * X;

  DenseMatrix grad_p = wh + P - N;
  grad_p.rowwise() += penalty;
  DenseMatrix grad_n = -wh - P + N;
  grad_n.rowwise() += penalty;

  DenseMatrix scale_p = wh + P + diag_shift * N;
  scale_p.rowwise() += penalty;
  DenseMatrix scale_n = wh + diag_shift * P + N;
  scale_n.rowwise() += penalty;

  auto step = [eps](DenseMatrix& v, const DenseMatrix& grad, const DenseMatrix& scale, const auto& target) {
    const Eigen::ArrayXXd denom = scale.array() + eps;
    v = (v.array() - v.array() * grad.array() / denom + v.array() * target.array() / denom).cwiseMax(0.0).matrix();
  };
  step(H, grad_h, scale_h, target_h);
  step(noise_pos, grad_p, scale_p, X);
  step(noise_neg, grad_n, scale_n, -X);
}

void project_noise(const DenseMatrix& X, DenseMatrix& noise_pos, const DenseMatrix& noise_neg) {
  for (Index j = 0; j < X.cols(); ++j) {
    for (Index i = 0; i < X.rows(); ++i) {
      double& p = noise_pos(i, j);
      const double n = noise_neg(i, j), x = X(i, j);
      if (x - (p - n) >= 0.0) continue;
      // Step down by ulps until the rounded difference is non-negative.
      p = x + n;
      while (p > 0.0 && x - (p - n) < 0.0) p = std::nextafter(p, 0.0);
    }
  }
}

double l2_objective(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H) {
  return (X - W * H).squaredNorm();
}

double l21_objective(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H) {
  return (X - W * H).colwise().norm().sum();
}

double l1_objective(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H, const DenseMatrix& noise_pos,
                    const DenseMatrix& noise_neg, double lambda) {
  const double fit = (X - W * H - noise_pos + noise_neg).squaredNorm();
  const Eigen::RowVectorXd col_l1 = noise_pos.colwise().sum() + noise_neg.colwise().sum();
  return fit + lambda * col_l1.squaredNorm();
}

}  // namespace mur

namespace {

void check_input(const DenseMatrix& X, Index k, const SolverConfig& cfg) {
  cfg.validate();
  if (X.size() == 0) throw std::invalid_argument("solver: empty input matrix");
  if (!X.allFinite()) throw std::invalid_argument("solver: input contains non-finite entries");
  if (X.minCoeff() < 0.0) throw std::invalid_argument("solver: input must be non-negative");
  if (k < 1 || k > std::min(X.rows(), X.cols())) {
    throw std::invalid_argument("solver: rank " + std::to_string(k) + " outside [1, min(m, n)]");
  }
}

bool should_record(int iter, const SolverConfig& cfg) {
  return iter % cfg.record_objective_every == 0 || iter == cfg.max_iters;
}

void notify(const SolverConfig& cfg, int iter, SolverStep step, const DenseMatrix& W, const DenseMatrix& H,
            const DenseMatrix* pos = nullptr, const DenseMatrix* neg = nullptr,
            const Eigen::VectorXd* weights = nullptr) {
  if (cfg.observer) cfg.observer(SolverEvent{iter, step, W, H, pos, neg, weights});
}

}  // namespace

FactorizationResult solve_l2(const DenseMatrix& X, Index k, const SolverConfig& cfg) {
  check_input(X, k, cfg);
  auto [W, H] = init_factors(X.rows(), X.cols(), k, cfg.seed, cfg.epsilon);
  FactorizationResult r;
  r.objective_history.push_back(mur::l2_objective(X, W, H));
  notify(cfg, 0, SolverStep::initialized, W, H);
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    mur::update_basis(X, W, H, cfg.epsilon);
    notify(cfg, iter, SolverStep::basis_updated, W, H);
    mur::update_coefficients(X, W, H, cfg.epsilon);
    notify(cfg, iter, SolverStep::coefficients_updated, W, H);
    if (should_record(iter, cfg)) r.objective_history.push_back(mur::l2_objective(X, W, H));
  }
  r.W = std::move(W);
  r.H = std::move(H);
  r.iterations_run = cfg.max_iters;
  return r;
}

FactorizationResult solve_l21(const DenseMatrix& X, Index k, const SolverConfig& cfg) {
  check_input(X, k, cfg);
  auto [W, H] = init_factors(X.rows(), X.cols(), k, cfg.seed, cfg.epsilon);
  FactorizationResult r;
  r.objective_history.push_back(mur::l21_objective(X, W, H));
  notify(cfg, 0, SolverStep::initialized, W, H);
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const Eigen::VectorXd weights = mur::l21_weights(X, W, H, cfg.epsilon);
    notify(cfg, iter, SolverStep::weights_computed, W, H, nullptr, nullptr, &weights);
    mur::update_basis_weighted(X, W, H, weights, cfg.epsilon);
    notify(cfg, iter, SolverStep::basis_updated, W, H, nullptr, nullptr, &weights);
    mur::update_coefficients_weighted(X, W, H, weights, cfg.epsilon);
    notify(cfg, iter, SolverStep::coefficients_updated, W, H, nullptr, nullptr, &weights);
    if (should_record(iter, cfg)) r.objective_history.push_back(mur::l21_objective(X, W, H));
  }
  r.W = std::move(W);
  r.H = std::move(H);
  r.iterations_run = cfg.max_iters;
  return r;
}

FactorizationResult solve_l1(const DenseMatrix& X, Index k, double lambda, const SolverConfig& cfg) {
  check_input(X, k, cfg);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("solve_l1: lambda must be positive");
  const Index m = X.rows(), n = X.cols();
  auto [W, H] = init_factors(m, n, k, cfg.seed, cfg.epsilon);
  // Ep and En start strictly positive (zero entries could never grow under a
  // multiplicative rule), drawn from their own stream.
  DenseMatrix pos(m, n), neg(m, n);
  {
    Rng rng(derive_seed(cfg.seed, 1));
    auto draw = [&] { return cfg.epsilon + (1.0 - cfg.epsilon) * rng.uniform_open_closed(); };
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < m; ++i) pos(i, j) = draw();
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < m; ++i) neg(i, j) = draw();
  }
  mur::project_noise(X, pos, neg);

  FactorizationResult r;
  r.objective_history.push_back(mur::l1_objective(X, W, H, pos, neg, lambda));
  notify(cfg, 0, SolverStep::initialized, W, H, &pos, &neg);
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const DenseMatrix clean = (X - pos + neg).cwiseMax(0.0);
    mur::update_basis(clean, W, H, cfg.epsilon);
    notify(cfg, iter, SolverStep::basis_updated, W, H, &pos, &neg);
    mur::update_augmented(X, W, H, pos, neg, lambda, cfg.epsilon);
    notify(cfg, iter, SolverStep::augmented_updated, W, H, &pos, &neg);
    mur::project_noise(X, pos, neg);
    notify(cfg, iter, SolverStep::noise_projected, W, H, &pos, &neg);
    if (should_record(iter, cfg)) r.objective_history.push_back(mur::l1_objective(X, W, H, pos, neg, lambda));
  }
  r.W = std::move(W);
  r.H = std::move(H);
  r.E = pos - neg;
  r.iterations_run = cfg.max_iters;
  return r;
}

FactorizationResult solve(SolverKind kind, const DenseMatrix& X, Index k, double lambda, const SolverConfig& cfg) {
  switch (kind) {
    case SolverKind::l2: return solve_l2(X, k, cfg);
    case SolverKind::l21: return solve_l21(X, k, cfg);
    case SolverKind::l1: return solve_l1(X, k, lambda, cfg);
  }
  throw std::invalid_argument("solve: unknown solver kind");
}

DenseMatrix reconstruct(const FactorizationResult& r) { return r.W * r.H; }

}  // namespace rnmf
