#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace oracles {

std::vector<long double> softmax_rowl(const nodenet::EmbeddingModel& model, int center) {
    const auto n = static_cast<std::size_t>(model.input_weights.rows());
    const auto d = model.input_weights.cols();
    std::vector<long double> u(n, 0.0L);
    long double umax = -1e4900L;
    for (std::size_t j = 0; j < n; ++j) {
        long double dot = 0.0L;
        for (Eigen::Index k = 0; k < d; ++k) {
            dot += static_cast<long double>(model.input_weights(center, k)) *
                   static_cast<long double>(model.output_weights(static_cast<Eigen::Index>(j), k));
        }
        u[j] = dot;
        if (dot > umax) umax = dot;
    }
    long double z = 0.0L;
    for (auto& v : u) {
        v = std::exp(v - umax);
        z += v;
    }
    for (auto& v : u) v /= z;
    return u;
}

long double pair_lossl(const nodenet::EmbeddingModel& model, int center, int context) {
    auto p = softmax_rowl(model, center);
    return -std::log(p[static_cast<std::size_t>(context)]);
}

FdGradients fd_gradients(const nodenet::EmbeddingModel& model, int center, int context, double h) {
    FdGradients out;
    out.input = nodenet::RowMat::Zero(model.input_weights.rows(), model.input_weights.cols());
    out.output = nodenet::RowMat::Zero(model.output_weights.rows(), model.output_weights.cols());

    nodenet::EmbeddingModel probe = model;
    auto central = [&](double& cell) {
        const double saved = cell;
        cell = saved + h;
        const long double up = pair_lossl(probe, center, context);
        cell = saved - h;
        const long double dn = pair_lossl(probe, center, context);
        cell = saved;
        return static_cast<double>((up - dn) / (2.0L * static_cast<long double>(h)));
    };

    for (Eigen::Index i = 0; i < probe.input_weights.rows(); ++i)
        for (Eigen::Index k = 0; k < probe.input_weights.cols(); ++k)
            out.input(i, k) = central(probe.input_weights(i, k));
    for (Eigen::Index j = 0; j < probe.output_weights.rows(); ++j)
        for (Eigen::Index k = 0; k < probe.output_weights.cols(); ++k)
            out.output(j, k) = central(probe.output_weights(j, k));
    return out;
}

CovPca cov_pca(const nodenet::RowMat& points) {
    const auto n = points.rows();
    Eigen::MatrixXd centered = points;
    centered.rowwise() -= points.colwise().mean();

    Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    // eigenvalues come out ascending
    Eigen::VectorXd lambda = eig.eigenvalues().reverse();
    Eigen::MatrixXd vecs = eig.eigenvectors().rowwise().reverse();

    CovPca out{};
    const double total = lambda.sum();
    out.explained[0] = lambda(0) / total;
    out.explained[1] = lambda(1) / total;

    Eigen::MatrixXd basis = vecs.leftCols(2);
    Eigen::MatrixXd residual = centered - centered * basis * basis.transpose();
    out.residual_fro = residual.norm();
    out.total_fro = centered.norm();
    return out;
}

}  // namespace oracles
