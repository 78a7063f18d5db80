#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gradopt/box.hpp"
#include "gradopt/dataset.hpp"
#include "gradopt/folds.hpp"
#include "gradopt/objective.hpp"

namespace gradopt {

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hyperparameters of the cross-validated kernel ridge regression score.
/// Exponents: the regularizer used is 10^lambda_exp, the kernel bandwidth
/// 10^sigma_exp. Optional per-sample weights live in [0,1]^n.
struct KrrHyperparams {
  double lambda_exp = 0.0;  // clamped into [-2, 4] before use
  double sigma_exp = 0.0;   // clamped into [-5, 5] before use
  std::optional<Eigen::VectorXd> weights;  // clamped into [0,1] before use

  static constexpr double kLambdaLo = -2.0, kLambdaHi = 4.0;
  static constexpr double kSigmaLo = -5.0, kSigmaHi = 5.0;
};

/// Gaussian kernel matrix K_ij = exp(-|a_i - b_j|^2 / (2 s^2)).
inline Eigen::MatrixXd gaussian_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                       double bandwidth) {
  if (bandwidth <= 0.0) throw std::invalid_argument("gaussian_kernel: bandwidth must be positive");
  Eigen::MatrixXd k(a.rows(), b.rows());
  const double inv = 1.0 / (2.0 * bandwidth * bandwidth);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      k(i, j) = std::exp(-(a.row(i) - b.row(j)).squaredNorm() * inv);
    }
  }
  return k;
}

/// Dual weighted kernel ridge regression solve: returns alpha with
///   (W K + n * reg * I) alpha = W y,   W = diag(w),
/// the stationarity system of
///   (1/n) sum_i w_i (f(X_i) - Y_i)^2 + reg * |f|_H^2,  f = sum_j alpha_j k(., X_j).
/// All-ones weights reduce to standard kernel ridge regression. Throws
/// NumericError if the solve degrades beyond tolerance.
inline Eigen::VectorXd solve_weighted_krr(const Eigen::MatrixXd& kernel,
                                          const Eigen::VectorXd& y,
                                          const Eigen::VectorXd& w, double reg) {
  const Eigen::Index n = kernel.rows();
  if (kernel.cols() != n || y.size() != n || w.size() != n) {
    throw std::invalid_argument("solve_weighted_krr: dimension mismatch");
  }
  if (reg <= 0.0) throw std::invalid_argument("solve_weighted_krr: reg must be positive");
  if ((w.array() < 0.0).any()) {
    throw std::invalid_argument("solve_weighted_krr: weights must be nonnegative");
  }
  Eigen::MatrixXd a = w.asDiagonal() * kernel;
  a.diagonal().array() += static_cast<double>(n) * reg;
  Eigen::VectorXd rhs = w.cwiseProduct(y);
  Eigen::VectorXd alpha = a.partialPivLu().solve(rhs);
  if (!alpha.allFinite()) throw NumericError("solve_weighted_krr: non-finite solution");
  double residual = (a * alpha - rhs).norm();
  double scale = rhs.norm() + a.norm() * alpha.norm();
  if (residual > 1e-8 * std::max(scale, 1.0)) {
    throw NumericError("solve_weighted_krr: solve residual beyond tolerance");
  }
  return alpha;
}

struct KrrCvDiagnostics {
  int failed_folds = 0;  // folds that contributed ratio 1 after a numeric failure
};

/// Precomputed state for repeated evaluations of the cross-validation score
/// on one (dataset, fold split): pairwise squared distances and fold index
/// lists are hyperparameter-independent. Immutable and safely shareable.
class KrrCvScorer {
 public:
  KrrCvScorer(Dataset dataset, FoldSplit folds)
      : dataset_(std::move(dataset)), folds_(std::move(folds)) {
    const Eigen::Index n = dataset_.n();
    if (static_cast<std::size_t>(n) != folds_.assignments.size()) {
      throw std::invalid_argument("KrrCvScorer: fold split does not match dataset size");
    }
    sqdist_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      sqdist_(i, i) = 0.0;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        double d2 = (dataset_.features.row(i) - dataset_.features.row(j)).squaredNorm();
        sqdist_(i, j) = d2;
        sqdist_(j, i) = d2;
      }
    }
    y_bar_ = dataset_.targets.mean();
    for (int fold = 0; fold < folds_.num_folds; ++fold) {
      test_idx_.push_back(folds_.fold_indices(fold));
      train_idx_.push_back(folds_.complement_indices(fold));
    }
  }

  const Dataset& dataset() const { return dataset_; }
  const FoldSplit& folds() const { return folds_; }

  /// The 10-fold cross-validation score
  ///   1 - (1/K) sum_k [ sum_{i in D_k} (fhat_k(X_i) - Y_i)^2
  ///                     / sum_{i in D_k} (ybar - Y_i)^2 ].
  /// Always <= 1, can be negative; a fold whose solve fails contributes
  /// ratio 1 (zero skill) so the score stays total over the domain.
  double score(const KrrHyperparams& hp, KrrCvDiagnostics* diag = nullptr) const {
    const Eigen::Index n = dataset_.n();
    const double lambda = std::clamp(hp.lambda_exp, KrrHyperparams::kLambdaLo,
                                     KrrHyperparams::kLambdaHi);
    const double sigma = std::clamp(hp.sigma_exp, KrrHyperparams::kSigmaLo,
                                    KrrHyperparams::kSigmaHi);
    const double reg = std::pow(10.0, lambda);
    const double bandwidth = std::pow(10.0, sigma);

    Eigen::VectorXd weights;
    if (hp.weights) {
      if (hp.weights->size() != n) {
        throw std::invalid_argument("KrrCvScorer: weight vector length must equal n");
      }
      weights = hp.weights->array().min(1.0).max(0.0);
    } else {
      weights = Eigen::VectorXd::Ones(n);
    }

    Eigen::MatrixXd kernel =
        (-sqdist_.array() / (2.0 * bandwidth * bandwidth)).exp().matrix();

    double ratio_sum = 0.0;
    for (int fold = 0; fold < folds_.num_folds; ++fold) {
      const auto& tr = train_idx_[static_cast<std::size_t>(fold)];
      const auto& te = test_idx_[static_cast<std::size_t>(fold)];
      double denom = 0.0;
      for (std::size_t i : te) {
        double d = y_bar_ - dataset_.targets[static_cast<Eigen::Index>(i)];
        denom += d * d;
      }
      double ratio = 1.0;
      if (denom > 0.0) {
        try {
          const Eigen::Index m = static_cast<Eigen::Index>(tr.size());
          Eigen::MatrixXd k_tr(m, m);
          Eigen::VectorXd y_tr(m), w_tr(m);
          for (Eigen::Index i = 0; i < m; ++i) {
            const auto ti = static_cast<Eigen::Index>(tr[static_cast<std::size_t>(i)]);
            y_tr[i] = dataset_.targets[ti];
            w_tr[i] = weights[ti];
            for (Eigen::Index j = 0; j < m; ++j) {
              k_tr(i, j) = kernel(ti, static_cast<Eigen::Index>(tr[static_cast<std::size_t>(j)]));
            }
          }
          Eigen::VectorXd alpha = solve_weighted_krr(k_tr, y_tr, w_tr, reg);
          double num = 0.0;
          for (std::size_t i : te) {
            double pred = 0.0;
            for (Eigen::Index j = 0; j < m; ++j) {
              pred += kernel(static_cast<Eigen::Index>(i),
                             static_cast<Eigen::Index>(tr[static_cast<std::size_t>(j)])) *
                      alpha[j];
            }
            double err = pred - dataset_.targets[static_cast<Eigen::Index>(i)];
            num += err * err;
          }
          ratio = num / denom;
          if (!std::isfinite(ratio)) throw NumericError("non-finite fold ratio");
        } catch (const NumericError&) {
          ratio = 1.0;
          if (diag) ++diag->failed_folds;
        }
      } else if (diag) {
        ++diag->failed_folds;
      }
      ratio_sum += ratio;
    }
    return 1.0 - ratio_sum / static_cast<double>(folds_.num_folds);
  }

 private:
  Dataset dataset_;
  FoldSplit folds_;
  Eigen::MatrixXd sqdist_;
  double y_bar_ = 0.0;
  std::vector<std::vector<std::size_t>> test_idx_;
  std::vector<std::vector<std::size_t>> train_idx_;
};

/// One-shot form of the cross-validation score.
inline double krr_cv_score(const Dataset& dataset, const FoldSplit& folds,
                           const KrrHyperparams& hp, KrrCvDiagnostics* diag = nullptr) {
  return KrrCvScorer(dataset, folds).score(hp, diag);
}

/// Decision box of the KRR tuning problem: [-2,4] x [-5,5], extended by
/// [0,1]^n when per-sample weights are tuned too.
inline Box krr_box(Eigen::Index n_samples, bool weighted) {
  Eigen::Index d = weighted ? 2 + n_samples : 2;
  Eigen::VectorXd lo(d), hi(d);
  lo[0] = KrrHyperparams::kLambdaLo;
  hi[0] = KrrHyperparams::kLambdaHi;
  lo[1] = KrrHyperparams::kSigmaLo;
  hi[1] = KrrHyperparams::kSigmaHi;
  for (Eigen::Index i = 2; i < d; ++i) {
    lo[i] = 0.0;
    hi[i] = 1.0;
  }
  return Box(lo, hi);
}

/// Maximization objective mapping a decision vector to the CV score:
/// x = (lambda_exp, sigma_exp[, w_1..w_n]). Inputs are clamped into their
/// ranges inside the scorer, so the objective is total even on probe points
/// outside the box. One Objective per concurrent run; the scorer is shared.
inline Objective make_krr_objective(std::shared_ptr<const KrrCvScorer> scorer,
                                    bool weighted, std::string name = {}) {
  const Eigen::Index n = scorer->dataset().n();
  if (name.empty()) {
    name = scorer->dataset().name + (weighted ? "-hd" : "");
  }
  return Objective(
      name, krr_box(n, weighted), [scorer, weighted](const Eigen::VectorXd& x) {
        KrrHyperparams hp;
        hp.lambda_exp = x[0];
        hp.sigma_exp = x[1];
        if (weighted) hp.weights = x.tail(x.size() - 2);
        return scorer->score(hp);
      });
}

}  // namespace gradopt
