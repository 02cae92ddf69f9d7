#include "certirelu/network.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include <json.hpp>

#include "certirelu/errors.hpp"

namespace certirelu {

namespace {

constexpr double kUnitNormTolerance = 1e-12;

void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw InvalidDimension(std::string(what) + ": dimension " + std::to_string(got) +
                           " does not match " + std::to_string(want));
  }
}

Eigen::MatrixXd directions_from(const SampleSet& samples, Eigen::Index n) {
  Eigen::MatrixXd d(static_cast<Eigen::Index>(samples.size()), n);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    require_dim(samples[i].alpha.size(), n, "sample direction");
    d.row(static_cast<Eigen::Index>(i)) = samples[i].alpha.transpose();
  }
  return d;
}

Eigen::VectorXd offsets_from(const SampleSet& samples) {
  Eigen::VectorXd t(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) t[static_cast<Eigen::Index>(i)] = samples[i].t;
  return t;
}

}  // namespace

ShallowReluNetwork::ShallowReluNetwork(Eigen::VectorXd a, double b)
    : a_(std::move(a)),
      b_(b),
      directions_(0, a_.size()),
      offsets_(0),
      coefficients_(0) {
  validate();
}

ShallowReluNetwork::ShallowReluNetwork(Eigen::VectorXd a, double b, const SampleSet& samples,
                                       const Eigen::VectorXd& coefficients)
    : a_(std::move(a)),
      b_(b),
      directions_(directions_from(samples, a_.size())),
      offsets_(offsets_from(samples)),
      coefficients_(coefficients) {
  validate();
}

ShallowReluNetwork::ShallowReluNetwork(Eigen::VectorXd a, double b, Eigen::MatrixXd directions,
                                       Eigen::VectorXd offsets, Eigen::VectorXd coefficients)
    : a_(std::move(a)),
      b_(b),
      directions_(std::move(directions)),
      offsets_(std::move(offsets)),
      coefficients_(std::move(coefficients)) {
  validate();
}

void ShallowReluNetwork::validate() const {
  if (a_.size() < 1) throw InvalidDimension("network dimension must be at least 1");
  if (directions_.rows() > 0) require_dim(directions_.cols(), a_.size(), "unit direction");
  require_dim(offsets_.size(), directions_.rows(), "unit offsets");
  require_dim(coefficients_.size(), directions_.rows(), "unit coefficients");
  for (Eigen::Index i = 0; i < directions_.rows(); ++i) {
    if (std::abs(directions_.row(i).norm() - 1.0) > kUnitNormTolerance) {
      throw InvalidDimension("unit " + std::to_string(i) + " direction is not a unit vector");
    }
  }
}

RidgeUnit ShallowReluNetwork::unit(int i) const {
  return RidgeUnit{directions_.row(i).transpose(), offsets_[i], coefficients_[i]};
}

double ShallowReluNetwork::eval(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  require_dim(x.size(), a_.size(), "eval input");
  double y = a_.dot(x) + b_;
  if (width() == 0) return y;
  const Eigen::VectorXd z = directions_ * x - offsets_;
  for (Eigen::Index i = 0; i < z.size(); ++i) y += coefficients_[i] * relu(z[i]);
  return y;
}

Eigen::VectorXd ShallowReluNetwork::eval_grad(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  require_dim(x.size(), a_.size(), "eval_grad input");
  Eigen::VectorXd g = a_;
  if (width() == 0) return g;
  const Eigen::VectorXd z = directions_ * x - offsets_;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (relu_step(z[i]) != 0.0) g += coefficients_[i] * directions_.row(i).transpose();
  }
  return g;
}

double ShallowReluNetwork::kink_distance(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  require_dim(x.size(), a_.size(), "kink_distance input");
  if (width() == 0) return std::numeric_limits<double>::infinity();
  return (directions_ * x - offsets_).cwiseAbs().minCoeff();
}

StackedParameters stack_parameters(const ShallowReluNetwork& net) {
  const int n = net.dimension();
  const int m = net.width();
  StackedParameters p;
  p.n = n;
  p.W = Eigen::MatrixXd::Zero(m + n + 1, n);
  p.W.block(1, 0, n, n).setIdentity();
  if (m > 0) p.W.bottomRows(m) = net.directions();
  p.b_vec = Eigen::VectorXd::Zero(m + n + 1);
  p.b_vec[0] = 1.0;
  if (m > 0) p.b_vec.tail(m) = -net.offsets();
  p.theta.resize(m + n + 1);
  p.theta[0] = net.b();
  p.theta.segment(1, n) = net.a().transpose();
  if (m > 0) p.theta.tail(m) = net.coefficients().transpose();
  return p;
}

Eigen::VectorXd stacked_activation(const Eigen::VectorXd& z, int n) {
  Eigen::VectorXd out = z;
  for (Eigen::Index i = n + 1; i < out.size(); ++i) out[i] = relu(out[i]);
  return out;
}

double eval_stacked(const StackedParameters& p, const Eigen::Ref<const Eigen::VectorXd>& x) {
  require_dim(x.size(), p.n, "stacked input");
  return p.theta.dot(stacked_activation(p.W * x + p.b_vec, p.n));
}

Eigen::VectorXd feature_vector(const SampleSet& samples, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index n = x.size();
  const Eigen::Index m = static_cast<Eigen::Index>(samples.size());
  Eigen::VectorXd phi(m + n + 1);
  phi[0] = 1.0;
  phi.segment(1, n) = x;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    require_dim(s.alpha.size(), n, "feature_vector sample");
    phi[n + 1 + i] = relu(s.alpha.dot(x) - s.t);
  }
  return phi;
}

Eigen::MatrixXd feature_jacobian(const SampleSet& samples, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index n = x.size();
  const Eigen::Index m = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m + n + 1, n);
  jac.block(1, 0, n, n).setIdentity();
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    require_dim(s.alpha.size(), n, "feature_jacobian sample");
    if (relu_step(s.alpha.dot(x) - s.t) != 0.0) jac.row(n + 1 + i) = s.alpha.transpose();
  }
  return jac;
}

std::string network_to_json(const ShallowReluNetwork& net) {
  using nlohmann::json;
  auto to_array = [](const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
  };
  json doc;
  doc["n"] = net.dimension();
  doc["a"] = to_array(net.a());
  doc["b"] = net.b();
  json units = json::array();
  for (int i = 0; i < net.width(); ++i) {
    const RidgeUnit u = net.unit(i);
    units.push_back({{"alpha", to_array(u.alpha)}, {"t", u.t}, {"c", u.c}});
  }
  doc["units"] = std::move(units);
  return doc.dump(2);
}

ShallowReluNetwork network_from_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("network JSON: ") + e.what());
  }
  try {
    const int n = doc.at("n").get<int>();
    auto to_vector = [n](const json& arr) {
      if (!arr.is_array() || static_cast<int>(arr.size()) != n) {
        throw InvalidDimension("network JSON: vector length does not match n");
      }
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v[i] = arr[static_cast<std::size_t>(i)].get<double>();
      return v;
    };
    Eigen::VectorXd a = to_vector(doc.at("a"));
    const double b = doc.at("b").get<double>();
    const json& units = doc.at("units");
    const auto m = static_cast<Eigen::Index>(units.size());
    Eigen::MatrixXd directions(m, n);
    Eigen::VectorXd offsets(m), coeffs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const json& u = units[static_cast<std::size_t>(i)];
      directions.row(i) = to_vector(u.at("alpha")).transpose();
      offsets[i] = u.at("t").get<double>();
      coeffs[i] = u.at("c").get<double>();
    }
    return ShallowReluNetwork(std::move(a), b, std::move(directions), std::move(offsets),
                              std::move(coeffs));
  } catch (const json::exception& e) {
    throw IoError(std::string("network JSON: ") + e.what());
  }
}

}  // namespace certirelu
