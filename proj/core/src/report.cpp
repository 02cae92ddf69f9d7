#include "certirelu/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "certirelu/errors.hpp"
#include "certirelu/policy_eval.hpp"

namespace certirelu {

namespace {

using nlohmann::json;

json bound_report_object(const BoundReport& r, const std::vector<int>& m_list, double delta,
                         FunctionBoundForm form) {
  json j;
  j["certificate"] = {{"n", r.cert.n}, {"k", r.cert.k}, {"rho", r.cert.rho}, {"R", r.cert.R},
                      {"p_min", r.cert.p_min}};
  j["constants"] = {{"A", r.A},           {"beta", r.beta},     {"L", r.L},
                    {"kappa1", r.kappa1}, {"kappa2", r.kappa2}, {"zeta0", r.zeta0},
                    {"zeta1", r.zeta1},   {"a_cap", r.a_cap},   {"b_cap", r.b_cap}};
  j["delta"] = delta;
  j["function_bound_form"] = to_string(form);
  json table = json::array();
  for (int m : m_list) {
    json row;
    row["m"] = m;
    row["c_cap"] = r.c_cap(m);
    row["rhs_function"] = rhs_function(r, m, delta, form);
    if (m >= r.cert.n + 1) {
      row["rhs_grad_2"] = rhs_grad(r, m, delta, GradNorm::two);
      row["rhs_grad_inf"] = rhs_grad(r, m, delta, GradNorm::inf);
      row["rhs_policy_eval"] = rhs_policy_eval(r, m, delta);
    } else {
      row["rhs_grad_2"] = nullptr;
      row["rhs_grad_inf"] = nullptr;
      row["rhs_policy_eval"] = nullptr;
    }
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  return j;
}

std::string svg_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.m) + ',' + std::to_string(r.seed);
    for (double v : {r.err_f, r.err_g2, r.err_ginf, r.rhs_f, r.rhs_g2, r.rhs_ginf, r.c_max, r.fit_rmse,
                     r.wall_ms}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string bound_report_json(const BoundReport& report, const std::vector<int>& m_list, double delta,
                              FunctionBoundForm form) {
  return bound_report_object(report, m_list, delta, form).dump(2) + "\n";
}

std::string vmod_csv() {
  const PolicyEvalExample ex = paper_example();
  const ValueModel vmod = vmod_model(nullptr);
  std::string out = "x,V_phi,V_mod\n";
  Eigen::VectorXd x(1);
  for (int i = -500; i <= 500; ++i) {
    x[0] = i / 200.0;
    out += format_double(x[0]) + ',' + format_double(ex.model.value(x)) + ',' +
           format_double(vmod.value(x)) + '\n';
  }
  return out;
}

std::string loglog_svg(const std::string& title, const std::string& y_label,
                       const std::vector<Series>& series) {
  constexpr double width = 640, height = 420, left = 80, right = 170, top = 40, bottom = 50;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, std::log10(s.x[i]));
      xmax = std::max(xmax, std::log10(s.x[i]));
      ymin = std::min(ymin, std::log10(s.y[i]));
      ymax = std::max(ymax, std::log10(s.y[i]));
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  xmin = std::floor(xmin);
  xmax = std::max(std::ceil(xmax), xmin + 1);
  ymin = std::floor(ymin);
  ymax = std::max(std::ceil(ymax), ymin + 1);
  const double pw = width - left - right;
  const double ph = height - top - bottom;
  auto px = [&](double lx) { return left + (lx - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double ly) { return top + (ymax - ly) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
    << xml_escape(title) << "</text>\n";
  for (int d = static_cast<int>(xmin); d <= static_cast<int>(xmax); ++d) {
    o << "<line x1=\"" << svg_number(px(d)) << "\" y1=\"" << top << "\" x2=\"" << svg_number(px(d))
      << "\" y2=\"" << top + ph << "\" stroke=\"#ddd\"/>\n"
      << "<text x=\"" << svg_number(px(d)) << "\" y=\"" << top + ph + 18
      << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(ymin); d <= static_cast<int>(ymax); ++d) {
    o << "<line x1=\"" << left << "\" y1=\"" << svg_number(py(d)) << "\" x2=\"" << left + pw
      << "\" y2=\"" << svg_number(py(d)) << "\" stroke=\"#ddd\"/>\n"
      << "<text x=\"" << left - 8 << "\" y=\"" << svg_number(py(d) + 4)
      << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n"
    << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10
    << "\" text-anchor=\"middle\">neurons m</text>\n"
    << "<text transform=\"translate(18," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << xml_escape(y_label) << "</text>\n";
  double legend_y = top + 10;
  for (const auto& s : series) {
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      points += svg_number(px(std::log10(s.x[i]))) + ',' + svg_number(py(std::log10(s.y[i]))) + ' ';
    }
    o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\""
      << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << points << "\"/>\n";
    o << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << legend_y << "\" x2=\"" << left + pw + 36
      << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
      << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n"
      << "<text x=\"" << left + pw + 42 << "\" y=\"" << legend_y + 4 << "\">" << xml_escape(s.label)
      << "</text>\n";
    legend_y += 20;
  }
  o << "</svg>\n";
  return o.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

void emit_report(const SweepResult& result, const std::filesystem::path& out_dir) {
  if (result.rows.empty()) throw EmptyRequest("emit_report: no rows");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  write_text_file(out_dir / "sweep.csv", sweep_csv(result.rows));

  std::string timing = "m,seed,wall_ms\n";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    timing += std::to_string(result.rows[i].m) + ',' + std::to_string(result.rows[i].seed) + ',' +
              format_double(result.measured_wall_ms.size() > i ? result.measured_wall_ms[i] : 0.0) + '\n';
  }
  write_text_file(out_dir / "timing.csv", timing);

  // Medians per width, in m_list order.
  std::map<int, std::vector<const SweepRow*>> by_m;
  for (const auto& r : result.rows) by_m[r.m].push_back(&r);
  std::vector<double> ms, med_f, med_g2, med_ginf, rhs_f, rhs_g2, rhs_ginf;
  json medians = json::array();
  std::size_t failures = 0;
  for (const auto& [m, rows] : by_m) {
    std::vector<double> ef, eg, egi;
    for (const SweepRow* r : rows) {
      if (!r->ok) {
        ++failures;
        continue;
      }
      ef.push_back(r->err_f);
      eg.push_back(r->err_g2);
      egi.push_back(r->err_ginf);
    }
    ms.push_back(m);
    med_f.push_back(median(ef));
    med_g2.push_back(median(eg));
    med_ginf.push_back(median(egi));
    rhs_f.push_back(rows.front()->rhs_f);
    rhs_g2.push_back(rows.front()->rhs_g2);
    rhs_ginf.push_back(rows.front()->rhs_ginf);
    medians.push_back({{"m", m}, {"median_err_f", med_f.back()}, {"median_err_g2", med_g2.back()},
                       {"median_err_ginf", med_ginf.back()}, {"successful_rows", ef.size()}});
  }

  json bounds = bound_report_object(result.report, result.config.m_list, result.config.delta,
                                    FunctionBoundForm::grouped);
  bounds["sweep"] = json::parse(sweep_config_to_json(result.config));
  bounds["sweep"]["ridge_applied"] = result.config.ridge > 0.0;
  bounds["medians"] = std::move(medians);
  bounds["failed_rows"] = failures;
  write_text_file(out_dir / "bounds.json", bounds.dump(2) + "\n");

  write_text_file(out_dir / "vmod.csv", vmod_csv());

  write_text_file(out_dir / "function_error.svg",
                  loglog_svg("Function approximation error", "sup |f_N - f|",
                             {{"median error", "#1f77b4", ms, med_f, false},
                              {"bound", "#d62728", ms, rhs_f, true}}));
  write_text_file(out_dir / "gradient_error.svg",
                  loglog_svg("Gradient approximation error", "sup ||grad f_N - grad f||",
                             {{"median 2-norm error", "#1f77b4", ms, med_g2, false},
                              {"median inf-norm error", "#2ca02c", ms, med_ginf, false},
                              {"2-norm bound", "#d62728", ms, rhs_g2, true},
                              {"inf-norm bound", "#ff7f0e", ms, rhs_ginf, true}}));
}

std::string rho_json(const FourierProfile& profile, const std::string& target, const RhoGrid& grid) {
  json j;
  j["target"] = target;
  j["rho_hat"] = profile.rho_hat;
  j["k"] = profile.k;
  j["argmax_omega"] = profile.argmax_omega;
  j["grids"] = {{"x_half_width", grid.x_half_width},
                {"x_step", grid.x_step},
                {"omega_max", grid.omega_max},
                {"omega_step", grid.omega_step},
                {"omega_points", profile.omega_grid.size()}};
  j["edge_diagnostic"] = {{"edge_value", profile.edge_value},
                          {"edge_ratio", profile.edge_ratio},
                          {"tail_bound", profile.tail_bound},
                          {"max_conjugate_asymmetry", profile.max_conjugate_asymmetry},
                          {"kind", "empirical certificate"}};
  return j.dump(2) + "\n";
}

std::string rho_csv(const FourierProfile& profile) {
  std::string out = "omega,abs_fhat,weighted\n";
  for (std::size_t i = 0; i < profile.omega_grid.size(); ++i) {
    out += format_double(profile.omega_grid[i]) + ',' + format_double(std::abs(profile.f_hat[i])) + ',' +
           format_double(profile.weighted[i]) + '\n';
  }
  return out;
}

}  // namespace certirelu
