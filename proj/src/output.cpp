#include "tanhsim/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "tanhsim/errors.hpp"

namespace tanhsim {
namespace {

std::ofstream open_for_write(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

void write_grid_csv(const std::filesystem::path& path, const std::vector<AxisSpec>& axes,
                    const Eigen::MatrixXd& values) {
  if (axes.empty() || axes.size() > 2) throw InvalidArgument("csv: need one or two axes");
  std::ofstream out = open_for_write(path, std::ios::out | std::ios::binary);
  out << "axis1,axis2,value\n";
  const AxisSpec& a1 = axes[0];
  for (int i = 0; i < a1.count; ++i) {
    if (axes.size() == 1) {
      out << format_value(a1.value(i)) << ',' << ',' << format_value(values(i, 0)) << '\n';
      continue;
    }
    const AxisSpec& a2 = axes[1];
    for (int j = 0; j < a2.count; ++j) {
      out << format_value(a1.value(i)) << ',' << format_value(a2.value(j)) << ',' << format_value(values(i, j))
          << '\n';
    }
  }
  if (!out) throw Error("write failed: " + path.string());
}

PgmScale write_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& values) {
  if (values.size() == 0) throw InvalidArgument("pgm: empty image");
  const PgmScale scale{values.minCoeff(), values.maxCoeff()};
  const double span = scale.max - scale.min;
  std::vector<unsigned char> pixels;
  pixels.reserve(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      const double level = span > 0.0 ? std::round(255.0 * (values(i, j) - scale.min) / span) : 0.0;
      pixels.push_back(static_cast<unsigned char>(std::clamp(level, 0.0, 255.0)));
    }
  }
  std::ofstream out = open_for_write(path, std::ios::out | std::ios::binary);
  out << "P5\n" << values.cols() << ' ' << values.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (!out) throw Error("write failed: " + path.string());
  return scale;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_for_write(path, std::ios::out | std::ios::binary);
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace tanhsim
