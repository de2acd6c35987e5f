#pragma once

// Independent reference implementations used to check the production code.
// Everything here is written for clarity, not speed, and deliberately avoids
// the code paths under test (long double accumulation, covariance
// eigendecomposition instead of SVD, central finite differences).

#include <nodenet/skipgram.hpp>

#include <vector>

namespace oracles {

// Softmax over W_out * W_in.row(center), accumulated in long double.
std::vector<long double> softmax_rowl(const nodenet::EmbeddingModel& model, int center);

// -log p(context | center) in long double.
long double pair_lossl(const nodenet::EmbeddingModel& model, int center, int context);

// Central finite-difference gradient of the pair loss with respect to every
// entry of W_in and W_out.
struct FdGradients {
    nodenet::RowMat input;
    nodenet::RowMat output;
};
FdGradients fd_gradients(const nodenet::EmbeddingModel& model, int center, int context,
                         double h = 1e-5);

// Rank-2 PCA facts derived from an eigendecomposition of the sample
// covariance matrix (the production code goes through an SVD instead).
struct CovPca {
    double explained[2];       // eigenvalue shares of the top two components
    double residual_fro;       // Frobenius norm of X_centered minus its rank-2 projection
    double total_fro;          // Frobenius norm of X_centered
};
CovPca cov_pca(const nodenet::RowMat& points);

}  // namespace oracles
