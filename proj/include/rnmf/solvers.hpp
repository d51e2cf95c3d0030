#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rnmf/types.hpp"

namespace rnmf {

enum class SolverKind { l2, l21, l1 };

std::string to_string(SolverKind kind);
SolverKind parse_solver_kind(const std::string& name);

/// Stage reported to an IterationObserver.
enum class SolverStep {
  initialized,         // after init_factors (and the initial noise projection for l1)
  weights_computed,    // l21: per-sample weights refreshed from residuals
  basis_updated,       // W update
  coefficients_updated,  // H update (l2, l21)
  augmented_updated,   // l1: joint H / Ep / En update
  noise_projected,     // l1: E clamped so that X - E >= 0
};

/// Read-only view of solver state handed to an observer. Pointers are null
/// when the quantity does not exist for the running solver.
struct SolverEvent {
  int iteration;  // 0 for `initialized`, otherwise 1-based
  SolverStep step;
  const DenseMatrix& W;
  const DenseMatrix& H;
  const DenseMatrix* noise_pos = nullptr;
  const DenseMatrix* noise_neg = nullptr;
  const Eigen::VectorXd* weights = nullptr;
};

using IterationObserver = std::function<void(const SolverEvent&)>;

struct SolverConfig {
  int max_iters = 200;
  double epsilon = 1e-9;  // added to every update denominator
  std::uint64_t seed = 0;
  int record_objective_every = 1;
  IterationObserver observer;  // optional instrumentation hook

  void validate() const;
};

/// Result of one factorization X ~= W H (+ E for the l1 solver).
///
/// objective_history[0] is the objective at initialization; one further entry
/// is appended every `record_objective_every` iterations and after the last
/// iteration. The l2 objective is ||X - WH||_F^2 without the conventional 1/2.
struct FactorizationResult {
  DenseMatrix W;  // m x k basis
  DenseMatrix H;  // k x n coefficients
  std::optional<DenseMatrix> E;  // m x n noise estimate (l1 only)
  std::vector<double> objective_history;
  int iterations_run = 0;
};

struct Factors {
  DenseMatrix W;
  DenseMatrix H;
};

/// Seeded uniform draws on (epsilon, 1]; requires 1 <= k <= min(m, n).
Factors init_factors(Index m, Index n, Index k, std::uint64_t seed, double epsilon = 1e-9);

/// Frobenius-loss NMF with the Lee-Seung multiplicative updates.
FactorizationResult solve_l2(const DenseMatrix& X, Index k, const SolverConfig& cfg);

/// L2,1-loss NMF: each iteration reweights samples by the inverse of their
/// residual norm, then applies the weighted multiplicative updates.
FactorizationResult solve_l21(const DenseMatrix& X, Index k, const SolverConfig& cfg);

/// Robust NMF X ~= WH + E with an L1 penalty on E, E = Ep - En.
FactorizationResult solve_l1(const DenseMatrix& X, Index k, double lambda, const SolverConfig& cfg);

/// Dispatch; lambda is ignored by l2 and l21.
FactorizationResult solve(SolverKind kind, const DenseMatrix& X, Index k, double lambda, const SolverConfig& cfg);

/// Clean reconstruction W H. E is deliberately left out.
DenseMatrix reconstruct(const FactorizationResult& r);

/// Single update steps and objectives, exposed so they can be checked in
/// isolation. All functions update in place.
namespace mur {

void update_basis(const DenseMatrix& X, DenseMatrix& W, const DenseMatrix& H, double eps);
void update_coefficients(const DenseMatrix& X, const DenseMatrix& W, DenseMatrix& H, double eps);

/// 1 / max(||x_i - W h_i||_2, eps) per column.
Eigen::VectorXd l21_weights(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H, double eps);
void update_basis_weighted(const DenseMatrix& X, DenseMatrix& W, const DenseMatrix& H,
                           const Eigen::VectorXd& weights, double eps);
void update_coefficients_weighted(const DenseMatrix& X, const DenseMatrix& W, DenseMatrix& H,
                                  const Eigen::VectorXd& weights, double eps);

/// Joint multiplicative update of the stacked [H; Ep; En] against the
/// augmented system [[W, I, -I], [0, sqrt(lambda) 1, sqrt(lambda) 1]].
/// The augmented matrices are never formed; their block structure is used.
void update_augmented(const DenseMatrix& X, const DenseMatrix& W, DenseMatrix& H, DenseMatrix& noise_pos,
                      DenseMatrix& noise_neg, double lambda, double eps);

/// Lowers Ep where needed so that X - (Ep - En) >= 0 entrywise.
void project_noise(const DenseMatrix& X, DenseMatrix& noise_pos, const DenseMatrix& noise_neg);

double l2_objective(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H);
double l21_objective(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H);
double l1_objective(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H, const DenseMatrix& noise_pos,
                    const DenseMatrix& noise_neg, double lambda);

}  // namespace mur
}  // namespace rnmf
