#include "xyzglass/estimator.hpp"

#include <cmath>
#include <limits>

#include "xyzglass/parallel.hpp"

namespace xyzglass {

const char* method_name(Method m) {
  switch (m) {
    case Method::mc: return "mc";
    case Method::quadrature: return "quadrature";
    case Method::exact: return "exact";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "mc") return Method::mc;
  if (name == "quadrature") return Method::quadrature;
  if (name == "exact") return Method::exact;
  throw ConfigError("unknown method '" + name + "' (expected mc, quadrature or exact)");
}

double EstimatorResult::z_score() const {
  if (std_error > 0.0) return mean / std_error;
  return std::numeric_limits<double>::quiet_NaN();
}

EnsembleTable::EnsembleTable(Method method, std::size_t n_columns, std::vector<double> weights,
                             std::vector<double> values)
    : method_(method), n_columns_(n_columns), weights_(std::move(weights)), values_(std::move(values)) {
  if (values_.size() != weights_.size() * n_columns_) throw ConfigError("ensemble table shape mismatch");
}

std::vector<double> EnsembleTable::column(std::size_t col) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, col);
  return out;
}

EstimatorResult EnsembleTable::estimate(std::span<const double> per_sample) const {
  if (per_sample.size() != rows()) throw ConfigError("per-sample series length mismatch");
  std::vector<double> terms(rows());
  for (std::size_t r = 0; r < rows(); ++r) terms[r] = weights_[r] * per_sample[r];
  EstimatorResult res;
  res.mean = pairwise_sum(terms);
  res.n_samples = static_cast<std::int64_t>(rows());
  res.method = method_;
  if (method_ == Method::mc && rows() > 1) {
    for (std::size_t r = 0; r < rows(); ++r) {
      const double d = per_sample[r] - res.mean;
      terms[r] = d * d;
    }
    const double n = static_cast<double>(rows());
    res.std_error = std::sqrt(pairwise_sum(terms) / (n - 1.0) / n);
  }
  return res;
}

EstimatorResult EnsembleTable::estimate_column(std::size_t col) const { return estimate(column(col)); }

EstimatorResult EnsembleTable::estimate_difference(std::size_t lhs, std::size_t rhs) const {
  std::vector<double> d(rows());
  for (std::size_t r = 0; r < rows(); ++r) d[r] = at(r, lhs) - at(r, rhs);
  return estimate(d);
}

double EnsembleTable::mean(std::size_t col) const { return estimate_column(col).mean; }

EstimatorResult estimate_sqrt_sum(const EnsembleTable& table, std::span<const std::size_t> cols, double scale,
                                  ClipStats& clips) {
  std::vector<double> influence(table.rows(), 0.0);
  double value = 0.0;
  for (std::size_t c : cols) {
    const double m = table.mean(c);
    ++clips.total;
    if (m < 0.0) {
      if (m < -kClipRoundingFloor) ++clips.clipped;
      continue;
    }
    const double root = std::sqrt(m);
    value += root;
    if (root > 0.0) {
      for (std::size_t r = 0; r < table.rows(); ++r) influence[r] += table.at(r, c) / (2.0 * root);
    }
  }
  EstimatorResult res = table.estimate(influence);
  res.std_error *= std::abs(scale);
  res.mean = scale * value;
  return res;
}

EstimatorResult estimate_sqrt_of_sum(const EnsembleTable& table, std::span<const std::size_t> cols, double scale,
                                     ClipStats& clips) {
  std::vector<double> series(table.rows(), 0.0);
  for (std::size_t c : cols) {
    for (std::size_t r = 0; r < table.rows(); ++r) series[r] += scale * table.at(r, c);
  }
  EstimatorResult inner = table.estimate(series);
  ++clips.total;
  EstimatorResult res = inner;
  if (inner.mean < 0.0) {
    if (inner.mean < -kClipRoundingFloor) ++clips.clipped;
    res.mean = 0.0;
    return res;
  }
  res.mean = std::sqrt(inner.mean);
  res.std_error = res.mean > 0.0 ? inner.std_error / (2.0 * res.mean) : inner.std_error;
  return res;
}

EnsembleTable evaluate_ensemble(const Model& model, const SamplingPlan& plan, std::size_t n_columns,
                                const SampleEvaluator& per_sample) {
  model.validate();
  const int threads = resolve_threads(plan.threads);
  if (plan.method == Method::exact) {
    bool random = false;
    for (const auto& t : model.params.terms()) {
      for (double d : t.stddev) random = random || d > 0.0;
    }
    if (random) {
      throw ConfigError("method 'exact' requires every coupling to be a point mass (Delta = 0)");
    }
    std::vector<double> values(n_columns);
    per_sample(mean_sample(model), values);
    return EnsembleTable(Method::exact, n_columns, {1.0}, std::move(values));
  }
  if (plan.method == Method::quadrature) {
    const QuadratureSpec spec = make_quadrature_spec(model, plan.nodes_per_dim);
    const std::uint64_t total = spec.total_nodes();
    if (static_cast<double>(total) * static_cast<double>(n_columns) > 4e8) {
      throw CapacityError("quadrature table of " + std::to_string(total) + " nodes is too large to store");
    }
    std::vector<double> weights(total);
    std::vector<double> values(total * n_columns);
    const std::uint64_t chunk = 1024;
    const std::size_t n_chunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
    parallel_for(n_chunks, threads, [&](std::size_t c) {
      const std::uint64_t lo = c * chunk;
      const std::uint64_t hi = std::min(total, lo + chunk);
      for_each_node(spec, lo, hi, [&](std::uint64_t node, double w, const DisorderSample& s) {
        weights[node] = w;
        per_sample(s, std::span<double>(&values[node * n_columns], n_columns));
      });
    });
    return EnsembleTable(Method::quadrature, n_columns, std::move(weights), std::move(values));
  }

  if (plan.n_samples < 1) throw ConfigError("Monte Carlo needs at least one sample");
  const auto n = static_cast<std::size_t>(plan.n_samples);
  std::vector<double> values(n * n_columns);
  const std::size_t chunk = 256;
  const std::size_t n_chunks = (n + chunk - 1) / chunk;
  parallel_for(n_chunks, threads, [&](std::size_t c) {
    const std::size_t lo = c * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    for (std::size_t k = lo; k < hi; ++k) {
      const DisorderSample s = sample_disorder(model, plan.seed, k);
      per_sample(s, std::span<double>(&values[k * n_columns], n_columns));
    }
  });
  return EnsembleTable(Method::mc, n_columns, std::vector<double>(n, 1.0 / static_cast<double>(n)), std::move(values));
}

}  // namespace xyzglass
