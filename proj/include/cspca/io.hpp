#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cspca/baselines.hpp"
#include "cspca/cspca.hpp"
#include "cspca/predict.hpp"
#include "cspca/types.hpp"

namespace cspca::io {

struct CsvOptions {
  char delimiter = ',';
  bool header = true;
  bool standardize = false;  // scale loaded feature columns to unit variance
  // Unset: a response column with exactly two distinct values becomes
  // classification labels. Set: force the task either way.
  std::optional<bool> force_classification;
};

struct Dataset {
  Matrix x;
  ResponseSet response;
  std::vector<std::string> feature_names;
  std::vector<std::string> response_names;
  // Original label values mapped to {0, 1} by sorted order (classification).
  std::array<double, 2> label_values{0.0, 1.0};
  Vector applied_scales;  // per-feature scales applied at load; empty if none
};

// Column references are header names, or 0-based indices when there is no
// header (or when the name is all digits and absent from the header).
Dataset load_csv(const std::string& path, const std::vector<std::string>& response_cols,
                 const CsvOptions& options = {});

// Numeric matrix with no response extraction.
Matrix load_matrix_csv(const std::string& path, const CsvOptions& options = {},
                       std::vector<std::string>* column_names = nullptr);

void save_matrix_csv(const std::string& path, const Matrix& m,
                     const std::vector<std::string>& column_names);

// One fitted pipeline on disk: the projection, the head trained on the
// training scores, and the response declaration it was fitted with.
struct ModelFile {
  std::string format_version = "1";
  std::string method;  // cspca | pca | hsic | bair | pls | lda
  Task task = Task::kRegression;
  std::variant<ProjectionModel, baselines::BaselineModel> model;
  std::optional<predict::RegressionHead> ols_head;
  std::optional<predict::LogisticHead> logistic_head;
  std::vector<std::string> response_cols;
  std::array<double, 2> label_values{0.0, 1.0};

  Index q() const;
  Index feature_count() const;
};

void save_model(const ModelFile& model, const std::string& path);

// Validates format_version and the stored invariants (finite payload,
// kappa > 0, unit-norm or orthonormal W columns); throws VersionMismatch or
// CorruptModel.
ModelFile load_model(const std::string& path);

// Projects new rows with whichever model the file holds.
Matrix project(const ModelFile& model, const Matrix& x_new);

}  // namespace cspca::io
