#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "rocinf/errors.hpp"

namespace rocinf {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Raw numeric table with named columns, as read from CSV.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const;  // -1 when absent
};

Table read_csv(const std::string& path);
Table parse_csv(const std::string& text);

/// Validated binary-outcome sample. Immutable after construction.
class Dataset {
 public:
  Dataset(VectorXd y, MatrixXd x, std::vector<std::string> names = {});

  const VectorXd& y() const { return y_; }
  const MatrixXd& x() const { return x_; }
  const std::vector<std::string>& names() const { return names_; }

  int n() const { return static_cast<int>(y_.size()); }
  int k() const { return static_cast<int>(x_.cols()); }
  int n1() const { return n1_; }
  int n0() const { return n0_; }
  double pi_hat() const { return static_cast<double>(n1_) / n(); }
  bool positive(int i) const { return y_[i] > 0.5; }

  /// Rows with y = 1 / y = 0, in input order.
  const std::vector<int>& positives() const { return pos_; }
  const std::vector<int>& negatives() const { return neg_; }

  /// Design matrix with a leading intercept column.
  MatrixXd design() const;

  /// Dataset restricted to the given predictor columns (same rows).
  Dataset select(const std::vector<int>& columns) const;
  int column_index(const std::string& name) const;

 private:
  VectorXd y_;
  MatrixXd x_;
  std::vector<std::string> names_;
  std::vector<int> pos_, neg_;
  int n1_ = 0, n0_ = 0;
};

/// Builds a Dataset; every column other than `outcome_column` becomes a
/// predictor, in table order.
Dataset load_dataset(const Table& table, const std::string& outcome_column);

/// Evaluated predictive index G(X_i, beta) for every observation.
struct IndexValues {
  VectorXd g;
  VectorXd beta;

  IndexValues() = default;
  IndexValues(VectorXd g_, VectorXd beta_ = {});
};

struct GridConfig {
  double tau_l = 0.05;
  double tau_u = 0.95;
  double step = 0.01;
  double epsilon = 0.01;
  double alpha = 0.10;

  void validate() const;
};

std::vector<double> make_t_grid(const GridConfig& cfg);

/// Strictly increasing map applied to index values before ROC evaluation.
using MonotoneMap = std::function<double(double)>;

MonotoneMap make_transform(const std::string& name);  // identity | exp | cube

}  // namespace rocinf
