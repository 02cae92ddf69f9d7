#include "certirelu/sampling.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "certirelu/bounds.hpp"
#include "certirelu/errors.hpp"

namespace certirelu {

namespace {

constexpr double kUnitNormTolerance = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_sample(const DirectionOffsetSample& s, int n, double radius) {
  if (s.alpha.size() != n) {
    throw InvalidDimension("sampler returned direction of dimension " +
                           std::to_string(s.alpha.size()) + ", expected " + std::to_string(n));
  }
  if (std::abs(s.alpha.norm() - 1.0) > kUnitNormTolerance) {
    throw InvalidDensity("sampler returned a direction that is not a unit vector");
  }
  if (!(s.t >= -radius && s.t <= radius)) {
    throw InvalidDensity("sampler returned an offset outside [-R, R]");
  }
}

}  // namespace

SamplingDensity::SamplingDensity(int n, double radius, Kind kind, double p_min, Sampler sampler)
    : n_(n), radius_(radius), kind_(kind), p_min_(p_min), sampler_(std::move(sampler)) {
  if (n < 1) throw InvalidDimension("dimension must be at least 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidDensity("radius must be positive");
  if (!(p_min > 0.0) || !std::isfinite(p_min)) throw InvalidDensity("density floor must be positive");
}

SamplingDensity SamplingDensity::uniform(int n, double radius) {
  if (n < 1) throw InvalidDimension("dimension must be at least 1");
  if (!(radius > 0.0)) throw InvalidDensity("radius must be positive");
  return SamplingDensity(n, radius, Kind::uniform, 1.0 / (2.0 * radius * sphere_area(n)), {});
}

SamplingDensity SamplingDensity::custom(int n, double radius, double p_min, Sampler sampler) {
  if (!sampler) throw InvalidDensity("custom density requires a sampler");
  return SamplingDensity(n, radius, Kind::custom, p_min, std::move(sampler));
}

DirectionOffsetSample SamplingDensity::draw(Rng& rng) const {
  if (kind_ == Kind::uniform) {
    DirectionOffsetSample s;
    s.alpha = sample_sphere(n_, rng);
    std::uniform_real_distribution<double> offset(-radius_, radius_);
    s.t = offset(rng);
    return s;
  }
  DirectionOffsetSample s = sampler_(rng);
  check_sample(s, n_, radius_);
  return s;
}

Eigen::VectorXd sample_sphere(int n, Rng& rng) {
  if (n < 1) throw InvalidDimension("sphere dimension must be at least 1");
  if (n == 1) {
    std::bernoulli_distribution coin(0.5);
    return Eigen::VectorXd::Constant(1, coin(rng) ? 1.0 : -1.0);
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) v[i] = normal(rng);
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

SampleSet sample_pairs(const SamplingDensity& density, int m, Rng& rng) {
  if (m < 1) throw EmptyRequest("sample_pairs requires m >= 1");
  SampleSet out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out.push_back(density.draw(rng));
  return out;
}

double density_floor(const SamplingDensity& density) {
  const double p = density.p_min();
  if (!(p > 0.0)) throw InvalidDensity("density floor must be positive");
  return p;
}

Rng derive_stream(std::uint64_t root_seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(root_seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

}  // namespace certirelu
