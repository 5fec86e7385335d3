#pragma once

#include <string>

#include <Eigen/Dense>

#include "tagdistill/errors.hpp"

namespace tagdistill {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline void ensure_finite(const Matrix& m, const char* name) {
  if (!m.allFinite())
    throw InvariantViolation(std::string(name) + " has non-finite entries");
}

inline void ensure_cols(const Matrix& m, Eigen::Index cols, const char* ctx) {
  if (m.cols() != cols)
    throw DimensionMismatch(std::string(ctx) + ": expected " +
                            std::to_string(cols) + " columns, got " +
                            std::to_string(m.cols()));
}

}  // namespace tagdistill
