#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "robinlayer/linalg.hpp"

using namespace robinlayer::linalg;

namespace {

struct Builder {
    std::size_t n;
    std::vector<std::size_t> rows, cols;
    std::vector<double> vals;
    std::vector<double> dense;

    explicit Builder(std::size_t n_) : n(n_), dense(n_ * n_, 0.0) {}

    void add(std::size_t i, std::size_t j, double v) {
        rows.push_back(i);
        cols.push_back(j);
        vals.push_back(v);
        dense[i * n + j] += v;
        if (i != j) {
            rows.push_back(j);
            cols.push_back(i);
            vals.push_back(v);
            dense[j * n + i] += v;
        }
    }

    SparseSym sparse() const { return SparseSym::from_triplets(n, rows, cols, vals); }
};

Builder diag_matrix(const std::vector<double>& d) {
    Builder b(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) b.add(i, i, d[i]);
    return b;
}

// 1D Dirichlet Laplacian on n interior nodes, spacing h
Builder dirichlet_fd(std::size_t n, double h) {
    Builder b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b.add(i, i, 2.0 / (h * h));
        if (i + 1 < n) b.add(i, i + 1, -1.0 / (h * h));
    }
    return b;
}

}  // namespace

TEST_CASE("dense_eigh on diag(3,1,2)") {
    auto res = dense_eigh(diag_matrix({3.0, 1.0, 2.0}).dense, 3);
    REQUIRE(res.eigenvalues.size() == 3);
    CHECK(res.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(res.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(res.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("dense_eigh on [[0,1],[1,0]]") {
    Builder b(2);
    b.add(0, 1, 1.0);
    auto res = dense_eigh(b.dense, 2);
    CHECK(res.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(res.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("trace invariance on a random symmetric matrix") {
    const std::size_t n = 60;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Builder b(n);
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = uni(rng);
        trace += d;
        b.add(i, i, d);
        for (std::size_t j = i + 1; j < n; ++j)
            if (uni(rng) > 0.6) b.add(i, j, uni(rng));
    }
    auto res = dense_eigh(b.dense, n);
    double sum = 0.0;
    for (double lam : res.eigenvalues) sum += lam;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-10));
}

TEST_CASE("dense_eigh matches 1D Dirichlet FD closed form") {
    const std::size_t n = 80;
    const double h = 1.0 / double(n + 1);
    auto res = dense_eigh(dirichlet_fd(n, h).dense, n);
    for (std::size_t j = 1; j <= n; ++j) {
        const double exact = 2.0 * (1.0 - std::cos(double(j) * M_PI * h)) / (h * h);
        CHECK(std::abs(res.eigenvalues[j - 1] - exact) < 1e-9 * exact);
    }
}

TEST_CASE("lanczos_lowest on diag(1..1000)") {
    std::vector<double> d(1000);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = double(i + 1);
    Builder b(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) b.add(i, i, d[i]);
    auto res = lanczos_lowest(b.sparse(), 5, 1e-10);
    REQUIRE(res.eigenvalues.size() == 5);
    for (std::size_t j = 0; j < 5; ++j)
        CHECK(res.eigenvalues[j] == doctest::Approx(double(j + 1)).epsilon(1e-9));
}

TEST_CASE("lanczos agrees with dense on a random sparse 200x200") {
    const std::size_t n = 200;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Builder b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b.add(i, i, 3.0 + uni(rng));
        if (i + 1 < n) b.add(i, i + 1, uni(rng));
        if (i + 7 < n) b.add(i, i + 7, 0.5 * uni(rng));
    }
    auto dres = dense_eigh(b.dense, n);
    auto lres = lanczos_lowest(b.sparse(), 6, 1e-11);
    for (std::size_t j = 0; j < 6; ++j)
        CHECK(std::abs(lres.eigenvalues[j] - dres.eigenvalues[j]) < 1e-8);
}

TEST_CASE("lanczos is deterministic") {
    auto A = dirichlet_fd(500, 1.0 / 501.0).sparse();
    auto r1 = lanczos_lowest(A, 4, 1e-10);
    auto r2 = lanczos_lowest(A, 4, 1e-10);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(r1.eigenvalues[j] == r2.eigenvalues[j]);  // bit identical
}

TEST_CASE("weighted lanczos solves the generalized problem") {
    // A x = lambda M x with diagonal M: compare against a dense solve of the
    // explicitly folded matrix M^{-1/2} A M^{-1/2}.
    const std::size_t n = 300;
    const double h = 1.0 / double(n + 1);
    auto b = dirichlet_fd(n, h);
    std::vector<double> mass(n);
    for (std::size_t i = 0; i < n; ++i) mass[i] = 1.0 + 0.5 * std::sin(double(i));
    auto lres = lanczos_lowest_weighted(b.sparse(), mass, 3, 1e-11);

    std::vector<double> folded(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            folded[i * n + j] = b.dense[i * n + j] / std::sqrt(mass[i] * mass[j]);
    auto dres = dense_eigh(folded, n);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(lres.eigenvalues[j] ==
              doctest::Approx(dres.eigenvalues[j]).epsilon(1e-8));
}

TEST_CASE("sparse apply matches the dense product") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const std::size_t n = 40;
    Builder b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b.add(i, i, uni(rng));
        if (i + 2 < n) b.add(i, i + 2, uni(rng));
    }
    auto A = b.sparse();
    CHECK(A.symmetric_probe());
    std::vector<double> x(n);
    for (auto& v : x) v = uni(rng);
    auto y = A.apply(x);
    for (std::size_t i = 0; i < n; ++i) {
        double want = 0.0;
        for (std::size_t j = 0; j < n; ++j) want += b.dense[i * n + j] * x[j];
        CHECK(y[i] == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("restarted runs recover the closed-form laplacian spectrum") {
    // n large enough that the basis window fills and the solver restarts;
    // the discrete Dirichlet Laplacian has a tiny relative gap, so this is
    // the restart stress case. Closed form: 2(1 - cos(j pi h))/h^2.
    const std::size_t n = 1000;
    const double h = 1.0 / double(n + 1);
    auto b = dirichlet_fd(n, h);
    auto res = lanczos_lowest(b.sparse(), 3, 1e-4, 40000);
    CHECK(res.iterations > 250);  // would fit in one window otherwise
    const double pi = 3.14159265358979323846;
    for (std::size_t j = 0; j < 3; ++j) {
        const double want =
            2.0 * (1.0 - std::cos(double(j + 1) * pi * h)) / (h * h);
        CHECK(res.converged[j]);
        CHECK(res.eigenvalues[j] == doctest::Approx(want).epsilon(1e-9));
    }
}
