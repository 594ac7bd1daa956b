#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <numbers>

namespace tiqs {

using cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using MatR = Eigen::MatrixXd;
using VecR = Eigen::VectorXd;
using SpC = Eigen::SparseMatrix<cplx>;
using SpR = Eigen::SparseMatrix<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Hz -> rad/s
inline constexpr double angular(double hz) { return two_pi * hz; }
inline constexpr double kHz(double v) { return two_pi * v * 1e3; }
inline constexpr double MHz(double v) { return two_pi * v * 1e6; }

}  // namespace tiqs
