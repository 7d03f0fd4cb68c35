#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "xyzglass/disorder.hpp"
#include "xyzglass/quadrature.hpp"

namespace xyzglass {

enum class Method { mc, quadrature, exact };

const char* method_name(Method m);
Method parse_method(const std::string& name);

/// Disorder-averaged quantity. std_error is zero only for deterministic methods.
struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  Method method = Method::mc;

  /// mean / std_error; NaN when std_error is zero.
  double z_score() const;
};

/// How the disorder average is taken.
struct SamplingPlan {
  Method method = Method::mc;
  std::int64_t n_samples = 1000;  ///< mc
  int nodes_per_dim = 16;         ///< quadrature
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Per-sample values of several quantities, with the averaging weights
/// (1/n for Monte Carlo, node weights for quadrature). Row k belongs to
/// sample_index k (mc) or node k (quadrature).
class EnsembleTable {
 public:
  EnsembleTable(Method method, std::size_t n_columns, std::vector<double> weights, std::vector<double> values);

  Method method() const { return method_; }
  std::size_t rows() const { return weights_.size(); }
  std::size_t columns() const { return n_columns_; }
  double at(std::size_t row, std::size_t col) const { return values_[row * n_columns_ + col]; }
  std::vector<double> column(std::size_t col) const;

  /// Weighted mean of a per-sample series with its standard error.
  EstimatorResult estimate(std::span<const double> per_sample) const;
  EstimatorResult estimate_column(std::size_t col) const;
  /// Paired difference of two columns.
  EstimatorResult estimate_difference(std::size_t lhs, std::size_t rhs) const;
  double mean(std::size_t col) const;

 private:
  Method method_;
  std::size_t n_columns_;
  std::vector<double> weights_;
  std::vector<double> values_;
};

/// Counts square-root arguments that sampling noise pushed below zero.
struct ClipStats {
  std::int64_t clipped = 0;
  std::int64_t total = 0;

  double fraction() const { return total == 0 ? 0.0 : static_cast<double>(clipped) / total; }
  ClipStats& operator+=(const ClipStats& o) {
    clipped += o.clipped;
    total += o.total;
    return *this;
  }
};

/// Negative square-root arguments no larger in magnitude than this are
/// rounding of an exactly vanishing mean; they are zeroed but not counted.
inline constexpr double kClipRoundingFloor = 1e-12;

/// scale * sum_c sqrt(max(mean_c, 0)) over the given columns. The standard
/// error comes from the linearized per-sample influence (delta method).
EstimatorResult estimate_sqrt_sum(const EnsembleTable& table, std::span<const std::size_t> cols, double scale,
                                  ClipStats& clips);

/// sqrt(max(scale * sum_c mean_c, 0)), delta-method standard error.
EstimatorResult estimate_sqrt_of_sum(const EnsembleTable& table, std::span<const std::size_t> cols, double scale,
                                     ClipStats& clips);

/// Evaluates `per_sample` on every disorder sample / quadrature node of the
/// plan and stores n_columns outputs per row. Reduction order is fixed by
/// the row index, so the table is independent of the thread count.
using SampleEvaluator = std::function<void(const DisorderSample&, std::span<double>)>;

EnsembleTable evaluate_ensemble(const Model& model, const SamplingPlan& plan, std::size_t n_columns,
                                const SampleEvaluator& per_sample);

}  // namespace xyzglass
