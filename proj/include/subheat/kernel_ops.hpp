#pragma once

#include <Eigen/Dense>
#include <vector>

namespace subheat {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Table assembly K(i,j) = sum_k w_k phi(i,k) phi(j,k) and kernel application
// (Kf)_i = sum_j K(i,j) f_j cell. phi is stored [point][mode].

namespace parallel {
Eigen::MatrixXd assemble_table(const RowMatrix& phi, const std::vector<double>& w);
std::vector<double> apply_table(const Eigen::MatrixXd& table, const std::vector<double>& f, double cell);
/// Spectral application: c = phi^T f cell, then phi (w .* c).
std::vector<double> apply_spectral(const RowMatrix& phi, const std::vector<double>& w, const std::vector<double>& f,
                                   double cell);
}  // namespace parallel

// Plain loops, one thread, fixed summation order. Kept as the reference the
// parallel versions are tested against.
namespace serial {
Eigen::MatrixXd assemble_table(const RowMatrix& phi, const std::vector<double>& w);
std::vector<double> apply_table(const Eigen::MatrixXd& table, const std::vector<double>& f, double cell);
std::vector<double> apply_spectral(const RowMatrix& phi, const std::vector<double>& w, const std::vector<double>& f,
                                   double cell);
}  // namespace serial

}  // namespace subheat
