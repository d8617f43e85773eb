#include "subheat/kernel_ops.hpp"

#include "subheat/error.hpp"

namespace subheat {

namespace parallel {

Eigen::MatrixXd assemble_table(const RowMatrix& phi, const std::vector<double>& w) {
    const Eigen::Index N = phi.rows(), K = phi.cols();
    if (static_cast<Eigen::Index>(w.size()) != K) fail_config("assemble_table", "weight count mismatch");
    Eigen::Map<const Eigen::VectorXd> wv(w.data(), K);
    RowMatrix scaled = phi * wv.asDiagonal();
    Eigen::MatrixXd table(N, N);
    // each output entry is written by exactly one thread, so the result does
    // not depend on the thread count
#pragma omp parallel for schedule(dynamic, 4)
    for (Eigen::Index i = 0; i < N; ++i) {
        Eigen::VectorXd col = phi.bottomRows(N - i) * scaled.row(i).transpose();
        for (Eigen::Index j = i; j < N; ++j) {
            table(j, i) = col(j - i);
            table(i, j) = col(j - i);
        }
    }
    return table;
}

std::vector<double> apply_table(const Eigen::MatrixXd& table, const std::vector<double>& f, double cell) {
    const Eigen::Index N = table.rows();
    if (static_cast<Eigen::Index>(f.size()) != N) fail_config("apply_table", "shape mismatch");
    std::vector<double> out(N);
    Eigen::Map<const Eigen::VectorXd> fv(f.data(), N);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < N; ++i) out[i] = table.col(i).dot(fv) * cell;  // table is symmetric
    return out;
}

std::vector<double> apply_spectral(const RowMatrix& phi, const std::vector<double>& w, const std::vector<double>& f,
                                   double cell) {
    const Eigen::Index N = phi.rows(), K = phi.cols();
    if (static_cast<Eigen::Index>(f.size()) != N || static_cast<Eigen::Index>(w.size()) != K)
        fail_config("apply_spectral", "shape mismatch");
    Eigen::Map<const Eigen::VectorXd> fv(f.data(), N);
    Eigen::VectorXd c(K);
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < K; ++k) c(k) = phi.col(k).dot(fv) * cell * w[k];
    std::vector<double> out(N);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < N; ++i) out[i] = phi.row(i).dot(c);
    return out;
}

}  // namespace parallel

namespace serial {

Eigen::MatrixXd assemble_table(const RowMatrix& phi, const std::vector<double>& w) {
    const Eigen::Index N = phi.rows(), K = phi.cols();
    if (static_cast<Eigen::Index>(w.size()) != K) fail_config("assemble_table", "weight count mismatch");
    Eigen::MatrixXd table(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = i; j < N; ++j) {
            double s = 0.0;
            for (Eigen::Index k = 0; k < K; ++k) s += w[k] * phi(i, k) * phi(j, k);
            table(i, j) = s;
            table(j, i) = s;
        }
    return table;
}

std::vector<double> apply_table(const Eigen::MatrixXd& table, const std::vector<double>& f, double cell) {
    const Eigen::Index N = table.rows();
    if (static_cast<Eigen::Index>(f.size()) != N) fail_config("apply_table", "shape mismatch");
    std::vector<double> out(N, 0.0);
    for (Eigen::Index i = 0; i < N; ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < N; ++j) s += table(i, j) * f[j];
        out[i] = s * cell;
    }
    return out;
}

std::vector<double> apply_spectral(const RowMatrix& phi, const std::vector<double>& w, const std::vector<double>& f,
                                   double cell) {
    const Eigen::Index N = phi.rows(), K = phi.cols();
    if (static_cast<Eigen::Index>(f.size()) != N || static_cast<Eigen::Index>(w.size()) != K)
        fail_config("apply_spectral", "shape mismatch");
    std::vector<double> c(K, 0.0), out(N, 0.0);
    for (Eigen::Index k = 0; k < K; ++k) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < N; ++i) s += phi(i, k) * f[i];
        c[k] = s * cell * w[k];
    }
    for (Eigen::Index i = 0; i < N; ++i) {
        double s = 0.0;
        for (Eigen::Index k = 0; k < K; ++k) s += phi(i, k) * c[k];
        out[i] = s;
    }
    return out;
}

}  // namespace serial

}  // namespace subheat
