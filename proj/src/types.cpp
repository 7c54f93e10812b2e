#include "cspca/types.hpp"

#include <cmath>

namespace cspca {

std::string task_name(Task task) {
  return task == Task::kRegression ? "regression" : "classification";
}

Task task_from_name(const std::string& name) {
  if (name == "regression") return Task::kRegression;
  if (name == "classification") return Task::kClassification;
  throw Error("unknown task '" + name + "'");
}

void ensure_finite(const Matrix& m, const std::string& name) {
  if (!m.allFinite()) {
    throw NonFiniteData(name + " contains NaN or infinite entries");
  }
}

ResponseSet ResponseSet::regression(Matrix y) {
  if (y.rows() < 1 || y.cols() < 1) {
    throw Error("regression responses must be a nonempty matrix");
  }
  ensure_finite(y, "response matrix");
  return ResponseSet(Task::kRegression, std::move(y));
}

ResponseSet ResponseSet::classification(Vector labels) {
  if (labels.size() < 1) {
    throw Error("labels must be nonempty");
  }
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0.0 && labels[i] != 1.0) {
      throw NonBinaryLabels("label at row " + std::to_string(i) + " is " +
                            std::to_string(labels[i]) + "; expected 0 or 1");
    }
  }
  Matrix column = labels;
  return ResponseSet(Task::kClassification, std::move(column));
}

ResponseSet ResponseSet::take_rows(const std::vector<Index>& idx) const {
  Matrix out(static_cast<Index>(idx.size()), values_.cols());
  for (Index i = 0; i < out.rows(); ++i) {
    out.row(i) = values_.row(idx[static_cast<std::size_t>(i)]);
  }
  return ResponseSet(task_, std::move(out));
}

}  // namespace cspca
