#include "nodenet/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "nodenet/errors.hpp"
#include "nodenet/io_util.hpp"

namespace nodenet {

Projection2D pca_project(const RowMat& vectors) {
    const auto n = vectors.rows();
    const auto d = vectors.cols();
    if (n < 3) throw InputError("pca: need at least 3 points");
    if (d < 2) throw InputError("pca: need at least 2 dimensions");
    if (!vectors.allFinite()) throw NumericError("pca: non-finite input");

    RowMat centered = vectors;
    centered.rowwise() -= vectors.colwise().mean();

    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double total = sv.array().square().sum();
    if (!(total > 0.0))
        throw NumericError("pca: degenerate data (all points identical)");

    Eigen::MatrixXd v2 = svd.matrixV().leftCols(2);
    for (int k = 0; k < 2; ++k) {
        Eigen::Index argmax;
        v2.col(k).cwiseAbs().maxCoeff(&argmax);
        if (v2(argmax, k) < 0.0) v2.col(k) = -v2.col(k);
    }

    Projection2D out;
    out.coords = centered * v2;
    out.explained[0] = sv(0) * sv(0) / total;
    out.explained[1] = sv.size() > 1 ? sv(1) * sv(1) / total : 0.0;
    return out;
}

NetworkStats network_stats(const EdgeList& edges) {
    NetworkStats stats;
    stats.n_nodes = edges.n_nodes;
    stats.n_edges = edges.edges.size();
    stats.degrees.assign(edges.n_nodes, 0);
    for (const auto& e : edges.edges) {
        if (e.source < 0 || e.target >= edges.n_nodes)
            throw InputError("network stats: edge endpoint out of range");
        ++stats.degrees[e.source];
        ++stats.degrees[e.target];
    }
    double sum = 0.0;
    for (int deg : stats.degrees) {
        ++stats.degree_histogram[deg];
        if (deg == 0) ++stats.isolated_count;
        stats.max_degree = std::max(stats.max_degree, deg);
        sum += deg;
    }
    const double n = stats.n_nodes;
    stats.isolated_pct = n > 0 ? 100.0 * stats.isolated_count / n : 0.0;
    stats.density = n > 1 ? 2.0 * static_cast<double>(stats.n_edges) / (n * (n - 1.0)) : 0.0;
    stats.mean_degree = n > 0 ? sum / n : 0.0;
    return stats;
}

SeparationReport community_separation(const RowMat& vectors, const std::vector<int>& communities,
                                      SeparationMetric metric) {
    const auto n = vectors.rows();
    if (static_cast<Eigen::Index>(communities.size()) != n)
        throw InputError("separation: community labels do not cover all nodes");
    if (n == 0) throw InputError("separation: empty vector set");

    int n_comm = 0;
    for (int c : communities) {
        if (c < 0) throw InputError("separation: negative community id");
        n_comm = std::max(n_comm, c + 1);
    }
    std::vector<int> counts(n_comm, 0);
    for (int c : communities) ++counts[c];
    for (int c = 0; c < n_comm; ++c)
        if (counts[c] == 0)
            throw InputError("separation: community " + std::to_string(c) + " has zero members");

    RowMat centroids = RowMat::Zero(n_comm, vectors.cols());
    for (Eigen::Index i = 0; i < n; ++i) centroids.row(communities[i]) += vectors.row(i);
    for (int c = 0; c < n_comm; ++c) centroids.row(c) /= counts[c];

    auto distance = [&](const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) {
        if (metric == SeparationMetric::euclidean) return (a - b).norm();
        const double na = a.norm(), nb = b.norm();
        if (!(na > 0.0) || !(nb > 0.0))
            throw NumericError("separation: zero-norm vector under the cosine metric");
        return 1.0 - a.dot(b) / (na * nb);
    };

    SeparationReport report;
    report.centroid_distances.resize(n_comm, n_comm);
    for (int a = 0; a < n_comm; ++a)
        for (int b = 0; b < n_comm; ++b)
            report.centroid_distances(a, b) =
                a == b ? 0.0 : distance(centroids.row(a), centroids.row(b));

    report.nearest.resize(n);
    int hits = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        int best = 0;
        double best_d = distance(vectors.row(i), centroids.row(0));
        for (int c = 1; c < n_comm; ++c) {
            const double dist = distance(vectors.row(i), centroids.row(c));
            if (dist < best_d) {
                best_d = dist;
                best = c;
            }
        }
        report.nearest[i] = best;
        if (best == communities[i]) ++hits;
    }
    report.purity = static_cast<double>(hits) / static_cast<double>(n);
    return report;
}

std::vector<SweepRow> threshold_sweep(const SimilarityView& sim, std::vector<double> grid) {
    for (double tau : grid)
        if (!(tau > 0.0 && tau < 1.0))
            throw ConfigError("threshold sweep: grid values must lie in (0, 1)");
    std::sort(grid.begin(), grid.end());

    // All positive pair weights, descending. Walking thresholds from high to
    // low lets each edge be added exactly once.
    std::vector<double> weights;
    std::vector<std::pair<int, int>> ends;
    for (int i = 0; i < sim.n(); ++i)
        for (const auto& nb : sim.positive_neighbors(i))
            if (nb.id > i) {
                weights.push_back(nb.sim);
                ends.emplace_back(i, nb.id);
            }
    std::vector<std::size_t> order(weights.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });

    std::vector<SweepRow> rows(grid.size());
    std::vector<int> degree(sim.n(), 0);
    std::size_t added = 0;
    int connected = 0;
    std::size_t pos = 0;
    for (std::size_t g = grid.size(); g-- > 0;) {
        const double tau = grid[g];
        while (pos < order.size() && weights[order[pos]] > tau) {
            const auto& [a, b] = ends[order[pos]];
            if (degree[a]++ == 0) ++connected;
            if (degree[b]++ == 0) ++connected;
            ++added;
            ++pos;
        }
        const int isolated = sim.n() - connected;
        rows[g] = {tau, added, isolated,
                   sim.n() > 0 ? 100.0 * isolated / sim.n() : 0.0};
    }
    return rows;
}

void write_projection(const Projection2D& projection, const std::vector<std::string>& labels,
                      const std::vector<std::string>& community_names,
                      const std::filesystem::path& path) {
    auto out = open_output(path);
    out << format_header("projection", 1) << '\n';
    out << "# explained_variance," << format_double(projection.explained[0]) << ','
        << format_double(projection.explained[1]) << '\n';
    const bool with_comm = !community_names.empty();
    out << (with_comm ? "label,x,y,community\n" : "label,x,y\n");
    for (Eigen::Index i = 0; i < projection.coords.rows(); ++i) {
        out << labels[i] << ',' << format_double(projection.coords(i, 0)) << ','
            << format_double(projection.coords(i, 1));
        if (with_comm) out << ',' << community_names[i];
        out << '\n';
    }
    if (!out) throw InputError("write failed: " + path.string());
}

void write_projection_svg(const Projection2D& projection, const std::vector<int>& communities,
                          const std::filesystem::path& path) {
    static const char* palette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
                                    "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd"};
    const auto n = projection.coords.rows();
    double xmin = projection.coords.col(0).minCoeff(), xmax = projection.coords.col(0).maxCoeff();
    double ymin = projection.coords.col(1).minCoeff(), ymax = projection.coords.col(1).maxCoeff();
    const double xspan = xmax > xmin ? xmax - xmin : 1.0;
    const double yspan = ymax > ymin ? ymax - ymin : 1.0;

    auto out = open_output(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
           "viewBox=\"0 0 1000 1000\">\n";
    out << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = 40.0 + 920.0 * (projection.coords(i, 0) - xmin) / xspan;
        const double y = 960.0 - 920.0 * (projection.coords(i, 1) - ymin) / yspan;
        const char* color =
            communities.empty() ? palette[0] : palette[communities[i] % 10];
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\" fill-opacity=\"0.7\"/>\n",
                      x, y, color);
        out << buf;
    }
    out << "</svg>\n";
    if (!out) throw InputError("write failed: " + path.string());
}

void write_network_stats(const NetworkStats& stats, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << format_header("network-stats", 1) << '\n';
    out << "metric,value\n";
    out << "n_nodes," << stats.n_nodes << '\n';
    out << "n_edges," << stats.n_edges << '\n';
    out << "density," << format_double(stats.density) << '\n';
    out << "isolated_count," << stats.isolated_count << '\n';
    out << "isolated_pct," << format_double(stats.isolated_pct) << '\n';
    out << "mean_degree," << format_double(stats.mean_degree) << '\n';
    out << "max_degree," << stats.max_degree << '\n';
    if (!out) throw InputError("write failed: " + path.string());
}

void write_degree_histogram(const NetworkStats& stats, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << format_header("degree-histogram", 1) << '\n';
    out << "degree,count\n";
    for (const auto& [degree, count] : stats.degree_histogram)
        out << degree << ',' << count << '\n';
    if (!out) throw InputError("write failed: " + path.string());
}

void write_threshold_sweep(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << format_header("threshold-sweep", 1) << '\n';
    out << "threshold,remaining_edges,isolated_nodes,isolated_pct\n";
    for (const auto& row : rows)
        out << format_double(row.threshold) << ',' << row.remaining_edges << ','
            << row.isolated_nodes << ',' << format_double(row.isolated_pct) << '\n';
    if (!out) throw InputError("write failed: " + path.string());
}

void write_separation(const SeparationReport& report,
                      const std::vector<std::string>& community_names, SeparationMetric metric,
                      const std::filesystem::path& path) {
    auto out = open_output(path);
    out << format_header("separation", 1) << '\n';
    out << "metric," << (metric == SeparationMetric::cosine ? "cosine" : "euclidean") << '\n';
    out << "purity," << format_double(report.purity) << '\n';
    out << "community";
    for (const auto& name : community_names) out << ',' << name;
    out << '\n';
    for (Eigen::Index a = 0; a < report.centroid_distances.rows(); ++a) {
        out << community_names[a];
        for (Eigen::Index b = 0; b < report.centroid_distances.cols(); ++b)
            out << ',' << format_double(report.centroid_distances(a, b));
        out << '\n';
    }
    if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace nodenet
