#include "certirelu/targets.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "certirelu/errors.hpp"
#include "certirelu/sampling.hpp"

namespace certirelu {

namespace {

std::vector<double> parse_csv_line(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(cell, &used));
  }
  return out;
}

// Numeric rows of a CSV file; a non-numeric first line is taken as a header.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      rows.push_back(parse_csv_line(line));
    } catch (const std::exception&) {
      if (!first) throw IoError(path.string() + ": malformed row '" + line + "'");
    }
    first = false;
  }
  return rows;
}

}  // namespace

SampledFunction sample_model(const ValueModel& model, const std::vector<Eigen::VectorXd>& points) {
  SampledFunction s;
  s.points = points;
  s.values.reserve(points.size());
  s.gradients.reserve(points.size());
  for (const auto& x : points) {
    s.values.push_back(model.value(x));
    s.gradients.push_back(model.gradient(x));
  }
  return s;
}

SampledFunction load_sampled_function(const std::filesystem::path& path, int n) {
  if (n < 1) throw InvalidDimension("sample file dimension must be >= 1");
  const auto rows = read_numeric_csv(path);
  if (rows.empty()) throw IoError(path.string() + ": no samples");
  SampledFunction s;
  const auto width = static_cast<std::size_t>(2 * n + 1);
  for (const auto& r : rows) {
    if (r.size() != width) {
      throw IoError(path.string() + ": expected " + std::to_string(width) + " columns per row");
    }
    Eigen::VectorXd x(n), g(n);
    for (int i = 0; i < n; ++i) {
      x[i] = r[static_cast<std::size_t>(i)];
      g[i] = r[static_cast<std::size_t>(n + 1 + i)];
    }
    s.points.push_back(x);
    s.values.push_back(r[static_cast<std::size_t>(n)]);
    s.gradients.push_back(g);
  }
  return s;
}

ValueModel vmod_model(std::shared_ptr<const Multiplier> r) {
  if (!r) r = std::make_shared<const Multiplier>();
  ValueModel m;
  m.value = [r](const Eigen::VectorXd& x) { return log_cosh(5.0 * x[0]) / 5.0 * r->value(x[0]); };
  m.gradient = [r](const Eigen::VectorXd& x) {
    const double v = log_cosh(5.0 * x[0]) / 5.0;
    const double dv = std::tanh(5.0 * x[0]);
    return Eigen::VectorXd::Constant(1, dv * r->value(x[0]) + v * r->derivative(x[0]));
  };
  m.provenance = ValueModel::Provenance::analytic;
  return m;
}

Target paper_vmod_target(std::shared_ptr<const Multiplier> r) {
  Target t;
  t.id = "paper_vmod";
  t.model = vmod_model(std::move(r));
  t.cert = SmoothnessCertificate{1, 4, 2.0, 1.0, SamplingDensity::uniform(1, 1.0).p_min()};
  return t;
}

Target gaussian_target(int n, double R, int k) {
  Target t;
  t.id = "gaussian";
  t.model.value = [](const Eigen::VectorXd& x) { return std::exp(-std::numbers::pi * x.squaredNorm()); };
  t.model.gradient = [](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(-2.0 * std::numbers::pi * std::exp(-std::numbers::pi * x.squaredNorm()) * x);
  };
  std::vector<double> radius, magnitude;
  for (double w = 0.0; w <= 10.0; w += 1e-4) {
    radius.push_back(w);
    magnitude.push_back(std::exp(-std::numbers::pi * w * w));
  }
  const double rho = estimate_rho_radial(radius, magnitude, k);
  t.cert = SmoothnessCertificate{n, k, rho, R, SamplingDensity::uniform(n, R).p_min()};
  return t;
}

std::vector<Eigen::VectorXd> ball_grid(int n, double R, int points_per_axis) {
  if (n < 1) throw InvalidDimension("ball_grid requires n >= 1");
  if (points_per_axis < 2) throw PreconditionError("ball_grid requires at least 2 points per axis");
  const double h = 2.0 * R / (points_per_axis - 1);
  std::vector<Eigen::VectorXd> out;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) {
      // Mirror the upper half so the grid is exactly symmetric about 0.
      const int j = idx[static_cast<std::size_t>(i)];
      const int mirrored = points_per_axis - 1 - j;
      x[i] = j <= mirrored ? -R + j * h : R - mirrored * h;
    }
    if (n == 1 || x.norm() <= R * (1.0 + 1e-12)) out.push_back(x);
    int d = 0;
    while (d < n && ++idx[static_cast<std::size_t>(d)] == points_per_axis) idx[static_cast<std::size_t>(d++)] = 0;
    if (d == n) break;
  }
  return out;
}

Spectrum target_spectrum(const std::string& id, const RhoGrid& grid) {
  const std::vector<double> omega = symmetric_grid(grid.omega_max, grid.omega_step);
  const Interval support{-grid.x_half_width, grid.x_half_width};
  if (id == "paper_vmod") {
    const ValueModel vmod = vmod_model(nullptr);
    Eigen::VectorXd x(1);
    return forward_ft([&](double s) { x[0] = s; return vmod.value(x); }, support, omega, grid.x_step);
  }
  if (id == "gaussian") {
    return forward_ft([](double s) { return std::exp(-std::numbers::pi * s * s); }, support, omega,
                      grid.x_step);
  }
  throw PreconditionError("unknown target id '" + id + "'");
}

Spectrum sample_file_spectrum(const std::filesystem::path& path, const RhoGrid& grid) {
  const auto rows = read_numeric_csv(path);
  if (rows.size() < 3 || rows.size() % 2 == 0) {
    throw IoError(path.string() + ": need an odd number (>= 3) of x,f rows");
  }
  std::vector<double> values;
  for (const auto& r : rows) {
    if (r.size() != 2) throw IoError(path.string() + ": expected rows x,f");
    values.push_back(r[1]);
  }
  const double x0 = rows.front()[0];
  const double h = (rows.back()[0] - x0) / static_cast<double>(rows.size() - 1);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (std::abs(rows[j][0] - (x0 + static_cast<double>(j) * h)) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw IoError(path.string() + ": samples are not equispaced");
    }
  }
  const std::vector<double> omega = symmetric_grid(grid.omega_max, grid.omega_step);
  if (h > 1.0 / (8.0 * grid.omega_max)) {
    throw ResolutionError("sample spacing too coarse for the largest requested frequency");
  }
  return forward_ft_sampled(x0, h, values, omega);
}

}  // namespace certirelu
