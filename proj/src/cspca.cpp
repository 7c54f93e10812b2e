#include "cspca/cspca.hpp"

#include <Eigen/QR>
#include <cmath>

#include "cspca/linalg.hpp"
#include "cspca/rng.hpp"

namespace cspca {

namespace {

// The supervised term of the objective is F F^T for a thin factor F:
//   regression:      F = Xc^T Yc                       (p x k)
//   classification:  F = Xc^T [g_0 g_1]                (p x 2)
// where g_c indicates membership of class c, so that
// Xc^T Delta Xc = sum_c (Xc^T g_c)(Xc^T g_c)^T. Double-centering the delta
// kernel replaces g_c by g_c - (n_c / n) 1.
Matrix supervised_factor(const Matrix& xc, const ResponseSet& response, bool center_delta) {
  if (response.task() == Task::kRegression) {
    return xc.transpose() * response.values();
  }
  const Vector labels = response.labels();
  const Index n = labels.size();
  Matrix indicators(n, 2);
  indicators.col(0) = (1.0 - labels.array()).matrix();
  indicators.col(1) = labels;
  if (center_delta) {
    const Vector class_fractions = indicators.colwise().mean();
    indicators.rowwise() -= class_fractions.transpose();
  }
  return xc.transpose() * indicators;
}

void check_rows_match(const Matrix& x, const ResponseSet& response) {
  if (x.rows() != response.rows()) {
    throw DimensionMismatch("X has " + std::to_string(x.rows()) + " rows but the response has " +
                            std::to_string(response.rows()));
  }
}

void check_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw Error("kappa must be a positive finite number");
  }
}

void apply_sign_convention(Matrix& w) {
  for (Index j = 0; j < w.cols(); ++j) {
    const double colmax = w.col(j).cwiseAbs().maxCoeff();
    if (colmax == 0.0) continue;
    const double tol = 1e-12 * colmax;
    for (Index i = 0; i < w.rows(); ++i) {
      if (std::abs(w(i, j)) > tol) {
        if (w(i, j) < 0.0) w.col(j) = -w.col(j);
        break;
      }
    }
  }
}

}  // namespace

Matrix delta_kernel(const Vector& labels) {
  const Index n = labels.size();
  if (n < 1) throw Error("labels must be nonempty");
  Matrix delta(n, n);
  for (Index i = 0; i < n; ++i) {
    const double li = labels[i];
    if (li != 0.0 && li != 1.0) {
      throw NonBinaryLabels("label at row " + std::to_string(i) + " is " + std::to_string(li));
    }
    for (Index j = 0; j <= i; ++j) {
      const double value = (li == labels[j]) ? 1.0 : 0.0;
      delta(i, j) = value;
      delta(j, i) = value;
    }
  }
  return delta;
}

Matrix build_objective(const Matrix& xc, const ResponseSet& response, double kappa,
                       bool center_delta) {
  check_rows_match(xc, response);
  check_kappa(kappa);
  const Matrix factor = supervised_factor(xc, response, center_delta);
  Matrix c = factor * factor.transpose();
  c.noalias() += kappa * (xc.transpose() * xc);
  // Exact symmetry, not merely within round-off, keeps the eigensolver path
  // and golden tests deterministic.
  c = 0.5 * (c + c.transpose()).eval();
  return c;
}

NystromResult nystrom_eigvecs(const std::function<Vector(Index)>& column_oracle, Index p, Index m,
                              std::uint64_t seed, Index q, bool allow_fewer) {
  if (m < 1 || m > p) {
    throw BadRank("Nystrom landmark count m = " + std::to_string(m) +
                  " out of range for p = " + std::to_string(p));
  }
  if (q < 1 || q > m) {
    throw BadRank("q = " + std::to_string(q) + " out of range for m = " + std::to_string(m));
  }

  Rng rng(seed);
  std::vector<Index> sampled = rng.sample_without_replacement(p, m);
  std::sort(sampled.begin(), sampled.end());

  Matrix s(p, m);
  for (Index t = 0; t < m; ++t) {
    s.col(t) = column_oracle(sampled[static_cast<std::size_t>(t)]);
  }
  Matrix c_m(m, m);
  for (Index t = 0; t < m; ++t) {
    c_m.row(t) = s.row(sampled[static_cast<std::size_t>(t)]);
  }

  const linalg::EigenPairs pairs = linalg::sym_eig_topq(0.5 * (c_m + c_m.transpose()), m);

  const double lambda_max = pairs.values.size() > 0 ? pairs.values[0] : 0.0;
  Index survivors = 0;
  while (survivors < m && pairs.values[survivors] > 1e-10 * lambda_max &&
         pairs.values[survivors] > 0.0) {
    ++survivors;
  }
  if (survivors < q && !allow_fewer) {
    throw RankDeficient("only " + std::to_string(survivors) +
                        " surrogate eigenvalues survive the cutoff; q = " + std::to_string(q));
  }

  const Index kept = std::min(q, survivors);
  if (kept == 0) {
    throw RankDeficient("no surrogate eigenvalue survives the cutoff");
  }

  NystromResult out;
  out.truncated = kept < q;
  out.eigenvalues = pairs.values.head(kept);
  out.vectors.resize(p, kept);
  for (Index j = 0; j < kept; ++j) {
    Vector column = s * pairs.vectors.col(j) / std::sqrt(pairs.values[j]);
    const double norm = column.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw RankDeficient("degenerate extension column for surrogate eigenvalue " +
                          std::to_string(pairs.values[j]));
    }
    out.vectors.col(j) = column / norm;
  }
  apply_sign_convention(out.vectors);
  return out;
}

ProjectionModel fit(const Matrix& x, const ResponseSet& response, Index q, double kappa,
                    const SolverSpec& solver, const FitOptions& options) {
  ensure_finite(x, "X");
  check_rows_match(x, response);
  check_kappa(kappa);
  const Index n = x.rows();
  const Index p = x.cols();
  if (n < 2) throw Error("need at least two rows to fit");
  if (q < 1 || q > p) {
    throw BadRank("q = " + std::to_string(q) + " out of range for p = " + std::to_string(p));
  }

  ProjectionModel model;
  model.kappa = kappa;
  model.q = q;
  model.task = response.task();
  model.solver = solver;

  auto [xc, x_means] = linalg::center_columns(x);
  model.x_means = std::move(x_means);
  model.x_scales = Vector::Ones(p);
  if (options.standardize) {
    for (Index j = 0; j < p; ++j) {
      const double sd = std::sqrt(xc.col(j).squaredNorm() / static_cast<double>(n));
      if (sd > 0.0) {
        model.x_scales[j] = sd;
        xc.col(j) /= sd;
      }
    }
  }

  ResponseSet centered_response = response;
  if (response.task() == Task::kRegression) {
    auto [yc, y_means] = linalg::center_columns(response.values());
    model.y_means = std::move(y_means);
    centered_response = ResponseSet::regression(std::move(yc));
  }

  if (solver.kind == SolverSpec::Kind::kExact) {
    const Matrix c = build_objective(xc, centered_response, kappa, options.center_delta);
    linalg::EigenPairs pairs = linalg::sym_eig_topq(c, q);
    model.w = std::move(pairs.vectors);
    model.eigenvalues = std::move(pairs.values);
    return model;
  }

  // Nystrom path: column j of C is F (F^T e_j) + kappa Xc^T (Xc e_j), which
  // costs O(n p + p k) per sampled column; the p x p matrix never exists.
  Index m = solver.m > 0 ? solver.m : static_cast<Index>(std::ceil(std::sqrt(static_cast<double>(p))));
  model.solver.m = m;
  const Matrix factor = supervised_factor(xc, centered_response, options.center_delta);
  const auto column_oracle = [&](Index j) -> Vector {
    Vector column = factor * factor.row(j).transpose();
    column.noalias() += kappa * (xc.transpose() * xc.col(j));
    return column;
  };
  NystromResult approx = nystrom_eigvecs(column_oracle, p, m, solver.seed, q);
  if (options.orthonormalize_nystrom) {
    Eigen::HouseholderQR<Matrix> qr(approx.vectors);
    Matrix thin_q = qr.householderQ() * Matrix::Identity(p, approx.vectors.cols());
    approx.vectors = std::move(thin_q);
    apply_sign_convention(approx.vectors);
  }
  model.w = std::move(approx.vectors);
  model.eigenvalues = std::move(approx.eigenvalues);
  return model;
}

Matrix transform(const ProjectionModel& model, const Matrix& x_new) {
  if (x_new.cols() != model.w.rows()) {
    throw DimensionMismatch("X_new has " + std::to_string(x_new.cols()) +
                            " columns; the model expects " + std::to_string(model.w.rows()));
  }
  Matrix centered = x_new.rowwise() - model.x_means.transpose();
  centered.array().rowwise() /= model.x_scales.transpose().array();
  return centered * model.w;
}

}  // namespace cspca
