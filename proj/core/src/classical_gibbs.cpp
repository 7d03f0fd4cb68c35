#include "xyzglass/classical_gibbs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "xyzglass/parallel.hpp"

namespace xyzglass {

void ClassicalModel::validate() const {
  if (sites < 1) throw ConfigError("classical model needs at least one site");
  if (sites > kClassicalSiteCap) {
    throw CapacityError("classical enumeration over " + std::to_string(sites) +
                        " sites exceeds the cap of " + std::to_string(kClassicalSiteCap));
  }
  if (couplings.size() != families.size() || betas.size() != families.size()) {
    throw ConfigError("classical couplings do not match the bond families");
  }
  for (std::size_t f = 0; f < families.size(); ++f) {
    if (couplings[f].size() != families[f].size()) {
      throw ConfigError("classical couplings do not match the bond families");
    }
    if (!(betas[f] >= 0.0)) throw ConfigError("classical inverse temperatures must be >= 0");
  }
}

ClassicalModel nishimori_classical_model(const Model& model, const NishimoriData& data) {
  return ClassicalModel{model.sites(), model.families, data.K, data.betas};
}

double classical_energy(const ClassicalModel& model, const SpinConfiguration& tau) {
  if (tau.size() != model.sites) throw ConfigError("spin configuration length does not match the model");
  double e = 0.0;
  for (std::size_t f = 0; f < model.families.size(); ++f) {
    for (std::size_t b = 0; b < model.families[f].size(); ++b) {
      e -= model.couplings[f][b] * tau.product(model.families[f].bonds[b]);
    }
  }
  return e;
}

namespace {

struct WeightedBond {
  std::uint64_t mask;
  double coupling;  // beta_p K
};

class Enumerator {
 public:
  explicit Enumerator(const ClassicalModel& model) : n_(model.sites) {
    model.validate();
    touching_.resize(n_);
    for (std::size_t f = 0; f < model.families.size(); ++f) {
      for (std::size_t b = 0; b < model.families[f].size(); ++b) {
        const double c = model.betas[f] * model.couplings[f][b];
        if (c == 0.0) continue;
        const auto& sites = model.families[f].bonds[b];
        bonds_.push_back({site_mask(sites), c});
        for (int s : sites) touching_[s].push_back(bonds_.size() - 1);
      }
    }
    chunk_bits_ = std::min(n_, 14);
  }

  std::size_t chunks() const { return std::size_t{1} << (n_ - chunk_bits_); }

  /// Visits every configuration of a chunk in Gray order with its exponent.
  template <typename Fn>
  void visit(std::size_t chunk, Fn&& fn) const {
    const std::uint64_t per = std::uint64_t{1} << chunk_bits_;
    const std::uint64_t g0 = chunk * per;
    std::uint64_t config = g0 ^ (g0 >> 1);
    std::vector<int> sign(bonds_.size());
    double exponent = 0.0;
    for (std::size_t b = 0; b < bonds_.size(); ++b) {
      sign[b] = (std::popcount(config & bonds_[b].mask) & 1) ? -1 : 1;
      exponent += bonds_[b].coupling * sign[b];
    }
    fn(config, exponent);
    for (std::uint64_t g = g0 + 1; g < g0 + per; ++g) {
      const int site = std::countr_zero(g);
      config ^= std::uint64_t{1} << site;
      for (std::size_t b : touching_[site]) {
        exponent -= 2.0 * bonds_[b].coupling * sign[b];
        sign[b] = -sign[b];
      }
      fn(config, exponent);
    }
  }

 private:
  int n_;
  int chunk_bits_ = 0;
  std::vector<WeightedBond> bonds_;
  std::vector<std::vector<std::size_t>> touching_;
};

}  // namespace

ClassicalAverages classical_averages(const ClassicalModel& model, std::span<const std::uint64_t> masks,
                                     int threads) {
  const Enumerator en(model);
  const std::size_t n_chunks = en.chunks();

  // Pass 1: the largest exponent keeps every weight in (0, 1].
  std::vector<double> chunk_max(n_chunks, -std::numeric_limits<double>::infinity());
  parallel_for(n_chunks, threads, [&](std::size_t c) {
    double m = -std::numeric_limits<double>::infinity();
    en.visit(c, [&](std::uint64_t, double e) { m = std::max(m, e); });
    chunk_max[c] = m;
  });
  const double e_max = *std::max_element(chunk_max.begin(), chunk_max.end());

  // Pass 2: per-chunk sums, reduced in chunk order.
  const std::size_t width = masks.size() + 1;
  std::vector<double> partial(n_chunks * width, 0.0);
  parallel_for(n_chunks, threads, [&](std::size_t c) {
    double* out = &partial[c * width];
    en.visit(c, [&](std::uint64_t config, double e) {
      const double wgt = std::exp(e - e_max);
      out[0] += wgt;
      for (std::size_t k = 0; k < masks.size(); ++k) {
        out[k + 1] += (std::popcount(config & masks[k]) & 1) ? -wgt : wgt;
      }
    });
  });

  std::vector<double> column(n_chunks);
  auto reduce = [&](std::size_t k) {
    for (std::size_t c = 0; c < n_chunks; ++c) column[c] = partial[c * width + k];
    return pairwise_sum(column);
  };
  const double z = reduce(0);
  ClassicalAverages out;
  out.log_z = e_max + std::log(z);
  out.values.resize(masks.size());
  for (std::size_t k = 0; k < masks.size(); ++k) out.values[k] = reduce(k + 1) / z;
  return out;
}

double classical_expectation(const ClassicalModel& model, std::span<const int> x, int threads) {
  const std::uint64_t m = site_mask(x);
  return classical_averages(model, std::span<const std::uint64_t>(&m, 1), threads).values[0];
}

double classical_expectation(const ClassicalModel& model, std::span<const int> x, std::span<const int> y,
                             int threads) {
  const std::uint64_t m = site_mask(x) ^ site_mask(y);
  return classical_averages(model, std::span<const std::uint64_t>(&m, 1), threads).values[0];
}

Eigen::MatrixXd classical_correlation_matrix(const ClassicalModel& model, int threads) {
  const int n = model.sites;
  std::vector<std::uint64_t> masks;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) masks.push_back((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
  }
  const auto avg = classical_averages(model, masks, threads);
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(n, n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) c(i, j) = c(j, i) = avg.values[k++];
  }
  return c;
}

}  // namespace xyzglass
