#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Dense>

#include "tanhsim/scan.hpp"

namespace tanhsim {

/// printf "%.12e".
std::string format_value(double v);

/// Header `axis1,axis2,value`, one row per grid cell, first axis outermost.
/// 1-D data leaves the axis2 field empty.
void write_grid_csv(const std::filesystem::path& path, const std::vector<AxisSpec>& axes,
                    const Eigen::MatrixXd& values);

struct PgmScale {
  double min;
  double max;
};

/// Binary 8-bit P5 image, one row per point of the first axis, linearly
/// mapping [min, max] onto [0, 255]. A constant map is written as zeros.
PgmScale write_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& values);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace tanhsim
