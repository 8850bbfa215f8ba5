#include "hc/report.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace hc::report {

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string classification_cell(const solver::SolutionRecord& rec) {
  std::string cell = solver::to_string(rec.cls);
  if (rec.tangency) cell += "+tangency";
  return cell;
}

std::string records_csv(const std::vector<solver::SweepPoint>& points) {
  int widest = 0;
  for (const auto& p : points) widest = std::max(widest, p.count);

  std::ostringstream out;
  out << "lambda,count";
  for (int j = 1; j <= widest; ++j)
    out << ",sol" << j << "_a,sol" << j << "_b,sol" << j << "_class";
  out << "\n";

  for (const auto& p : points) {
    out << format_double(p.lambda) << "," << p.count;
    for (const auto& rec : p.records)
      out << "," << format_double(rec.x(0)) << "," << format_double(rec.x(1))
          << "," << classification_cell(rec);
    for (int j = static_cast<int>(p.records.size()); j < widest; ++j)
      out << ",,,";
    out << "\n";
  }
  return out.str();
}

std::string sweep_csv(const solver::SweepReport& report) {
  return records_csv(report.points);
}

}  // namespace hc::report
