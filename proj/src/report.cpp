#include "fournls/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fournls {

PowerLawFit fit_decay_rate(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_decay_rate: x and y differ in length");
  if (x.size() < 3) throw std::invalid_argument("fit_decay_rate: need at least 3 rows");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0)) throw std::domain_error("fit_decay_rate: nonpositive x in row " + std::to_string(i));
    if (!(y[i] > 0.0)) throw std::domain_error("fit_decay_rate: nonpositive y in row " + std::to_string(i));
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) mx += lx[i], my += ly[i];
  mx /= double(n), my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::domain_error("fit_decay_rate: all x identical");
  const double slope = sxy / sxx;
  PowerLawFit fit;
  fit.rate = -slope;
  fit.intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / double(n));
  return fit;
}

std::vector<double> ExperimentReport::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] != name) continue;
    std::vector<double> out;
    out.reserve(table.size());
    for (const auto& row : table) out.push_back(row.at(c));
    return out;
  }
  throw std::out_of_range("report has no column " + name);
}

Json ExperimentReport::to_json(bool deterministic) const {
  Json j;
  j["kind"] = kind;
  j["params"] = params;
  j["columns"] = columns;
  j["table"] = table;
  if (fitted)
    j["fitted"] = {{"rate", fitted->rate}, {"intercept", fitted->intercept}, {"residual", fitted->residual}};
  else
    j["fitted"] = nullptr;
  j["summary"] = summary;
  j["artifacts"] = artifacts;
  long long stamp = 0;
  if (!deterministic)
    stamp = std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count();
  j["timestamp"] = stamp;
  return j;
}

std::string ExperimentReport::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  char buf[40];
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

}  // namespace fournls
