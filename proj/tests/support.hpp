#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "mfbath/su2.hpp"
#include "mfbath/two_qubit.hpp"

namespace testing {

using mfbath::cdouble;
using mfbath::Mat2;
using mfbath::Mat4;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline cdouble gaussian_c() {
  std::normal_distribution<double> n;
  return {n(rng()), n(rng())};
}

inline mfbath::PureState2Q random_state() {
  return mfbath::PureState2Q::normalized({gaussian_c(), gaussian_c(), gaussian_c(), gaussian_c()});
}

/// Random full-rank-ish mixed state G G^H / tr.
inline mfbath::TwoQubitDensity random_mixed(int rank = 4) {
  Eigen::Matrix<cdouble, 4, Eigen::Dynamic> g(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = gaussian_c();
  Mat4 rho = g * g.adjoint();
  rho /= rho.trace();
  return {rho};
}

/// exp(M) by a plain Taylor sum, M a 2x2 complex matrix.
inline Mat2 taylor_exp(const Mat2& m, int terms = 40) {
  Mat2 sum = Mat2::Identity();
  Mat2 term = Mat2::Identity();
  for (int k = 1; k < terms; ++k) {
    term = term * m / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

/// Random SU(2) element exp(i n.sigma), built from its own Taylor sum.
inline Mat2 random_su2() {
  Mat2 sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, cdouble(0, -1), cdouble(0, 1), 0;
  sz << 1, 0, 0, -1;
  const Mat2 h = uniform(-2, 2) * sx + uniform(-2, 2) * sy + uniform(-2, 2) * sz;
  return taylor_exp(cdouble(0, 1) * h, 60);
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Concurrence straight from the definition: square roots of the
/// eigenvalues of rho (sy x sy) rho^* (sy x sy), no Jacobi involved.
inline double concurrence_direct(const Mat4& rho) {
  Mat4 yy = Mat4::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Mat4 r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat4> es(r);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

struct Csv {
  std::string header;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> cells;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw std::runtime_error("no column " + name);
  }
  std::vector<double> values(const std::string& name) const {
    const auto c = col(name);
    std::vector<double> out;
    for (const auto& r : cells) out.push_back(std::stod(r[c]));
    return out;
  }
};

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

inline Csv parse_csv(const std::string& text) {
  Csv csv;
  std::stringstream ss(text);
  std::getline(ss, csv.header);
  std::string line;
  std::getline(ss, line);
  csv.columns = split(line, ',');
  while (std::getline(ss, line))
    if (!line.empty()) csv.cells.push_back(split(line, ','));
  return csv;
}

}  // namespace testing
