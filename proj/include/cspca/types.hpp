#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cspca/errors.hpp"

namespace cspca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class Task { kRegression, kClassification };

std::string task_name(Task task);
Task task_from_name(const std::string& name);

// Throws NonFiniteData if any entry is NaN or infinite.
void ensure_finite(const Matrix& m, const std::string& name);

// Continuous n-by-k responses, or a length-n column of {0,1} labels,
// tagged by task. Construction validates labels once; downstream code
// can rely on the tag.
class ResponseSet {
 public:
  static ResponseSet regression(Matrix y);
  static ResponseSet classification(Vector labels);

  Task task() const { return task_; }
  const Matrix& values() const { return values_; }
  Vector labels() const { return values_.col(0); }
  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }

  ResponseSet take_rows(const std::vector<Index>& idx) const;

 private:
  ResponseSet(Task task, Matrix values) : task_(task), values_(std::move(values)) {}

  Task task_;
  Matrix values_;  // n x k; classification stores the labels as an n x 1 column
};

}  // namespace cspca
