#include "splc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace splc {

std::string spline_to_json(const Spline& s) {
  nlohmann::json doc;
  doc["degree"] = s.degree();
  doc["knots"] = s.space().knots();
  doc["coefficients"] = s.control_points();
  return doc.dump(2);
}

Spline spline_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  return Spline(KnotVector(doc.at("knots").get<std::vector<double>>(), doc.at("degree").get<int>()),
                doc.at("coefficients").get<std::vector<double>>());
}

Spline read_spline_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return spline_from_json(buf.str());
}

void write_spline_file(const Spline& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  out << spline_to_json(s) << "\n";
}

SampleSet read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  SampleSet data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, y;
    if (row >> x >> y) {
      data.x.push_back(x);
      data.y.push_back(y);
    }
    // non-numeric rows (a header) are skipped
  }
  return data;
}

Spline samples_to_c0_cubic(const SampleSet& data) {
  const int m = static_cast<int>(data.x.size());
  if (m < 2) fail(errc::too_short, "need at least 2 samples");
  for (int i = 0; i + 1 < m; ++i) {
    if (!(data.x[i] < data.x[i + 1])) {
      fail(errc::duplicate_abscissa, "abscissas must be strictly increasing");
    }
  }
  std::vector<double> ks;
  for (int i = 0; i < 4; ++i) ks.push_back(data.x.front());
  for (int j = 1; j + 1 < m; ++j) {
    for (int i = 0; i < 3; ++i) ks.push_back(data.x[j]);
  }
  for (int i = 0; i < 4; ++i) ks.push_back(data.x.back());
  KnotVector kv(std::move(ks), 3);

  auto linear = [&](double x) {
    const auto it = std::upper_bound(data.x.begin(), data.x.end(), x);
    const int k = std::clamp(static_cast<int>(it - data.x.begin()) - 1, 0, m - 2);
    const double t = (x - data.x[k]) / (data.x[k + 1] - data.x[k]);
    return (1.0 - t) * data.y[k] + t * data.y[k + 1];
  };
  const std::vector<double> g = kv.greville();
  std::vector<double> c(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) c[i] = linear(g[i]);
  return Spline(std::move(kv), std::move(c));
}

void write_coarsen_csv(const CoarsenReport& report, std::ostream& out) {
  out << "step,breakpoint,multiplicity_before,epsilon,cumulative,dof\n";
  out.precision(17);
  int k = 1;
  for (const auto& s : report.steps) {
    out << k++ << ',' << s.breakpoint << ',' << s.multiplicity_before << ',' << s.epsilon << ','
        << s.cumulative << ',' << s.dof_after << "\n";
  }
}

void write_coarsen_csv(const CoarsenReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  write_coarsen_csv(report, out);
}

void write_heat_csv(const HeatRun& run, std::ostream& out) {
  out << "t,dof\n";
  out.precision(17);
  for (std::size_t k = 0; k < run.times.size(); ++k) {
    out << run.times[k] << ',' << run.dofs[k] << "\n";
  }
}

void write_heat_csv(const HeatRun& run, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  write_heat_csv(run, out);
}

RealFunction builtin_function(const std::string& name) {
  if (name == "runge") return [](double x) { return 1.0 / (1.0 + x * x); };
  if (name == "root5") {
    return [](double x) { return std::copysign(std::pow(std::abs(x), 0.2), x); };
  }
  if (name == "heat-u0") {
    return [](double x) {
      return 1.0 + std::sin(std::pow(x, 7.0 / 20.0) * std::exp(11.0 * x / 50.0));
    };
  }
  throw std::invalid_argument("unknown builtin function: " + name);
}

std::pair<double, double> builtin_domain(const std::string& name) {
  if (name == "runge") return {-5.0, 5.0};
  if (name == "root5") return {-1.0, 1.0};
  if (name == "heat-u0") return {0.0, 10.0};
  throw std::invalid_argument("unknown builtin function: " + name);
}

}  // namespace splc
