#include <doctest.h>

#include <nodenet/analysis.hpp>
#include <nodenet/errors.hpp>
#include <nodenet/rng.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <fstream>

using namespace nodenet;

namespace {

RowMat random_points(int n, int d, std::uint64_t seed, double lo = -2.0, double hi = 2.0) {
    Rng rng(seed);
    RowMat m(n, d);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) m(i, k) = rng.uniform(lo, hi);
    return m;
}

// Two tight, well-separated blobs of `per` points each in d dims.
RowMat two_blobs(int per, int d, std::uint64_t seed) {
    Rng rng(seed);
    RowMat m(2 * per, d);
    for (int i = 0; i < 2 * per; ++i) {
        const double center = i < per ? 5.0 : -5.0;
        for (int k = 0; k < d; ++k) m(i, k) = center + rng.uniform(-0.3, 0.3);
    }
    return m;
}

}  // namespace

TEST_CASE("collinear points collapse onto the first component") {
    RowMat pts(5, 3);
    for (int i = 0; i < 5; ++i) {
        pts(i, 0) = 1.0 * i;
        pts(i, 1) = 2.0 * i;
        pts(i, 2) = -1.0 * i;
    }
    auto proj = pca_project(pts);
    CHECK(proj.explained[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(proj.explained[1] == doctest::Approx(0.0).epsilon(1e-10));
    for (int i = 0; i < 5; ++i) CHECK(proj.coords(i, 1) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("projecting 2-d data is an isometry") {
    auto pts = random_points(12, 2, 41);
    auto proj = pca_project(pts);
    CHECK(proj.explained[0] + proj.explained[1] == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
            const double orig = (pts.row(i) - pts.row(j)).norm();
            const double got = (proj.coords.row(i) - proj.coords.row(j)).norm();
            REQUIRE(got == doctest::Approx(orig).epsilon(1e-9));
        }
}

TEST_CASE("rank-2 reconstruction error matches the covariance oracle") {
    auto pts = random_points(50, 5, 42);
    auto proj = pca_project(pts);
    auto ref = oracles::cov_pca(pts);

    CHECK(proj.explained[0] == doctest::Approx(ref.explained[0]).epsilon(1e-10));
    CHECK(proj.explained[1] == doctest::Approx(ref.explained[1]).epsilon(1e-10));
    CHECK(proj.explained[0] >= proj.explained[1]);

    // The projection is orthogonal, so the residual is the Pythagorean gap
    // between total and projected mass.
    RowMat centered = pts;
    centered.rowwise() -= pts.colwise().mean();
    const double total_sq = centered.squaredNorm();
    const double kept_sq = proj.coords.squaredNorm();
    const double residual = std::sqrt(std::max(0.0, total_sq - kept_sq));
    CHECK(residual == doctest::Approx(ref.residual_fro).epsilon(1e-8));
    CHECK(std::sqrt(total_sq) == doctest::Approx(ref.total_fro).epsilon(1e-12));
}

TEST_CASE("component signs follow the largest-loading convention deterministically") {
    auto pts = random_points(30, 4, 43);
    auto a = pca_project(pts);
    auto b = pca_project(pts);
    CHECK(a.coords == b.coords);
}

TEST_CASE("degenerate projections raise errors") {
    CHECK_THROWS_AS(pca_project(RowMat::Zero(2, 3)), InputError);   // too few points
    CHECK_THROWS_AS(pca_project(RowMat::Zero(5, 1)), InputError);   // too few dims
    CHECK_THROWS_AS(pca_project(RowMat::Constant(6, 3, 2.5)), NumericError);  // rank 0
    RowMat bad = RowMat::Zero(4, 3);
    bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(pca_project(bad), NumericError);
}

TEST_CASE("network stats on hand fixtures") {
    SUBCASE("empty graph") {
        EdgeList empty;
        empty.n_nodes = 10;
        auto stats = network_stats(empty);
        CHECK(stats.n_edges == 0);
        CHECK(stats.isolated_count == 10);
        CHECK(stats.isolated_pct == doctest::Approx(100.0));
        CHECK(stats.density == 0.0);
        CHECK(stats.max_degree == 0);
        CHECK(stats.degree_histogram.at(0) == 10);
    }
    SUBCASE("complete graph on five nodes") {
        EdgeList k5;
        k5.n_nodes = 5;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) k5.edges.push_back({i, j, 1.0});
        auto stats = network_stats(k5);
        CHECK(stats.n_edges == 10);
        CHECK(stats.density == doctest::Approx(1.0));
        CHECK(stats.isolated_count == 0);
        CHECK(stats.mean_degree == doctest::Approx(4.0));
        CHECK(stats.degree_histogram.at(4) == 5);
    }
    SUBCASE("triangle plus an isolated node") {
        EdgeList tri;
        tri.n_nodes = 4;
        tri.edges = {{0, 1, 0.9}, {0, 2, 0.8}, {1, 2, 0.7}};
        auto stats = network_stats(tri);
        CHECK(stats.n_edges == 3);
        CHECK(stats.density == doctest::Approx(0.5));
        CHECK(stats.isolated_count == 1);
        CHECK(stats.isolated_pct == doctest::Approx(25.0));
        CHECK(stats.degrees == std::vector<int>{2, 2, 2, 0});
        CHECK(stats.degree_histogram.at(2) == 3);
        CHECK(stats.degree_histogram.at(0) == 1);
        int mass = 0;
        for (auto [deg, count] : stats.degree_histogram) mass += count;
        CHECK(mass == 4);
    }
}

TEST_CASE("well separated blobs have purity one under both metrics") {
    auto pts = two_blobs(6, 4, 51);
    std::vector<int> communities(12, 0);
    for (int i = 6; i < 12; ++i) communities[i] = 1;

    for (auto metric : {SeparationMetric::cosine, SeparationMetric::euclidean}) {
        auto rep = community_separation(pts, communities, metric);
        CHECK(rep.purity == doctest::Approx(1.0));
        REQUIRE(rep.centroid_distances.rows() == 2);
        CHECK(rep.centroid_distances(0, 0) == doctest::Approx(0.0));
        CHECK(rep.centroid_distances(0, 1) > 0.0);
        CHECK(rep.centroid_distances(0, 1) == rep.centroid_distances(1, 0));
    }
}

TEST_CASE("a single community has purity one by definition") {
    auto pts = random_points(8, 3, 52);
    auto rep = community_separation(pts, std::vector<int>(8, 0));
    CHECK(rep.purity == doctest::Approx(1.0));
}

TEST_CASE("shuffled labels on separated clusters drive purity toward chance") {
    const int per = 40;
    auto pts = two_blobs(per, 3, 53);
    std::vector<int> labels(2 * per);
    for (int i = 0; i < 2 * per; ++i) labels[i] = i < per ? 0 : 1;

    Rng rng(54);
    double total = 0.0;
    const int shuffles = 100;
    for (int s = 0; s < shuffles; ++s) {
        auto shuffled = labels;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.index(i)]);
        total += community_separation(pts, shuffled, SeparationMetric::euclidean).purity;
    }
    const double mean_purity = total / shuffles;
    CHECK(mean_purity > 0.4);
    CHECK(mean_purity < 0.6);
}

TEST_CASE("purity is invariant under rotation and uniform scaling") {
    auto pts = two_blobs(10, 3, 55);
    std::vector<int> communities(20, 0);
    for (int i = 10; i < 20; ++i) communities[i] = 1;

    // Rotate about the z axis by an arbitrary angle, then scale.
    const double a = 0.73;
    Eigen::Matrix3d rot;
    rot << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
    RowMat moved = (pts * rot.transpose()) * 3.7;

    auto before = community_separation(pts, communities);
    auto after = community_separation(moved, communities);
    CHECK(before.purity == doctest::Approx(after.purity));
    CHECK(before.nearest == after.nearest);
}

TEST_CASE("separation rejects empty communities and zero vectors under cosine") {
    auto pts = random_points(6, 3, 56);
    std::vector<int> labels = {0, 0, 0, 2, 2, 2};  // community 1 has no members
    CHECK_THROWS_AS(community_separation(pts, labels), InputError);

    RowMat with_zero = RowMat::Zero(4, 3);
    with_zero(0, 0) = 1.0;
    with_zero(1, 0) = 1.0;
    with_zero(3, 1) = 1.0;  // row 2 stays zero
    CHECK_THROWS_AS(
        community_separation(with_zero, std::vector<int>{0, 0, 1, 1}, SeparationMetric::cosine),
        NumericError);
}

TEST_CASE("threshold sweep agrees with direct evaluation and is monotone") {
    auto sim = SimilarityView::from_vectors(fixtures::random_vectors(25, 4, 57));

    auto rows = threshold_sweep(sim, {0.6, 0.2, 0.4, 0.8});  // unsorted on purpose
    REQUIRE(rows.size() == 4);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].threshold > rows[k - 1].threshold);  // ascending output
        CHECK(rows[k].remaining_edges <= rows[k - 1].remaining_edges);
        CHECK(rows[k].isolated_pct >= rows[k - 1].isolated_pct);
    }

    for (const auto& row : rows) {
        auto direct = gte(sim, row.threshold);
        auto stats = network_stats(direct);
        CHECK(row.remaining_edges == direct.edges.size());
        CHECK(row.isolated_nodes == stats.isolated_count);
        CHECK(row.isolated_pct == doctest::Approx(stats.isolated_pct));
    }

    CHECK_THROWS_AS(threshold_sweep(sim, {0.5, 1.2}), ConfigError);
    CHECK(threshold_sweep(sim, {}).empty());
}

TEST_CASE("analysis files carry headers and hand-checkable rows") {
    fixtures::TempDir tmp("analysis");

    EdgeList tri;
    tri.n_nodes = 4;
    tri.edges = {{0, 1, 0.9}, {0, 2, 0.8}, {1, 2, 0.7}};
    auto stats = network_stats(tri);

    write_network_stats(stats, tmp.file("stats.csv"));
    std::ifstream in(tmp.file("stats.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "# network-stats v1");

    write_degree_histogram(stats, tmp.file("hist.csv"));
    std::ifstream hin(tmp.file("hist.csv"));
    std::getline(hin, line);
    CHECK(line == "# degree-histogram v1");
    std::getline(hin, line);
    CHECK(line == "degree,count");
    std::getline(hin, line);
    CHECK(line == "0,1");
    std::getline(hin, line);
    CHECK(line == "2,3");

    auto pts = two_blobs(5, 3, 58);
    auto proj = pca_project(pts);
    std::vector<std::string> names;
    std::vector<int> communities;
    for (int i = 0; i < 10; ++i) {
        names.push_back("n" + std::to_string(i));
        communities.push_back(i < 5 ? 0 : 1);
    }
    write_projection_svg(proj, communities, tmp.file("proj.svg"));
    std::ifstream svg(tmp.file("proj.svg"));
    std::string body((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
    CHECK(body.find("<svg") != std::string::npos);
    CHECK(body.find("circle") != std::string::npos);
}
