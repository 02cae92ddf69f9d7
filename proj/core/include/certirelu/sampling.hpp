#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace certirelu {

using Rng = std::mt19937_64;

/// One random input parameter pair: a direction on the unit sphere and an
/// offset in [-R, R].
struct DirectionOffsetSample {
  Eigen::VectorXd alpha;
  double t = 0.0;
};

using SampleSet = std::vector<DirectionOffsetSample>;

/// Density on S^{n-1} x [-R, R].
///
/// The bounds only ever consume the floor `p_min`, so a custom density is
/// described by a sampler plus its declared floor; the density itself is
/// never evaluated.
class SamplingDensity {
 public:
  enum class Kind { uniform, custom };
  using Sampler = std::function<DirectionOffsetSample(Rng&)>;

  static SamplingDensity uniform(int n, double radius);
  static SamplingDensity custom(int n, double radius, double p_min, Sampler sampler);

  int dimension() const { return n_; }
  double radius() const { return radius_; }
  Kind kind() const { return kind_; }
  double p_min() const { return p_min_; }

  DirectionOffsetSample draw(Rng& rng) const;

 private:
  SamplingDensity(int n, double radius, Kind kind, double p_min, Sampler sampler);

  int n_;
  double radius_;
  Kind kind_;
  double p_min_;
  Sampler sampler_;
};

/// Uniform direction on S^{n-1}; for n = 1 this is +1 or -1 with equal odds.
Eigen::VectorXd sample_sphere(int n, Rng& rng);

/// m i.i.d. draws from `density`. Throws EmptyRequest for m = 0.
SampleSet sample_pairs(const SamplingDensity& density, int m, Rng& rng);

/// Positive lower bound of the density. Throws InvalidDensity otherwise.
double density_floor(const SamplingDensity& density);

/// Independent stream for trial `index` under `root_seed`. The result depends
/// only on the pair, so sweeps do not depend on execution order.
Rng derive_stream(std::uint64_t root_seed, std::uint64_t index);

}  // namespace certirelu
