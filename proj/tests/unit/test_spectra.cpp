#include <doctest.h>

#include <tsa/errors.hpp>
#include <tsa/spectra.hpp>

#include "../support/small_network.hpp"

#include <random>

using namespace tsa;
using namespace tsa::testing;

namespace {

UtcSeconds t(std::int64_t s) { return UtcSeconds{Seconds{s}}; }

GramEigen gram_of(const std::vector<std::vector<double>>& h) { return gram(Matrix::from_rows(h)); }

GramEigen from_j(const std::vector<std::vector<double>>& j) { return gram_from_j(Matrix::from_rows(j)); }

std::vector<std::string> ids(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back("S" + std::to_string(i));
    }
    return out;
}

Matrix random_h(std::mt19937_64& rng, std::size_t g, std::size_t x) {
    std::uniform_int_distribution<int> sparse(0, 3);
    std::uniform_int_distribution<std::int64_t> secs(0, 36000);
    Matrix h(g, x);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t k = 0; k < x; ++k) {
            h(i, k) = sparse(rng) == 0 ? static_cast<double>(secs(rng)) : 0.0;
        }
    }
    return h;
}

}  // namespace

TEST_CASE("spectrum matrix entries") {
    SUBCASE("single window") {
        const auto h = spectrum_matrix("C", {"G"}, {"X"}, {{{t(100), t(700)}}}, 1);
        CHECK(h.values == std::vector<std::int64_t>{600});
        CHECK(h.global_window == GlobalWindow{t(100), t(700)});
    }
    SUBCASE("clipped to an explicit global window") {
        const auto h = spectrum_matrix("C", {"G"}, {"X"}, {{{t(100), t(700)}}}, {t(400), t(1000)}, 1);
        CHECK(h.values == std::vector<std::int64_t>{300});
    }
    SUBCASE("multiples of alpha") {
        const auto h = spectrum_matrix("C", {"G"}, {"X", "Y"}, {{{t(0), t(100)}}, {{t(3), t(9)}}}, 5);
        CHECK(h.values == std::vector<std::int64_t>{100, 5});
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(spectrum_matrix("C", {"G"}, {"X", "Y"}, {{{t(0), t(100)}}}, 1), DimensionError);
    }
    SUBCASE("no windows") {
        CHECK_THROWS_AS(spectrum_matrix("C", {"G"}, {"X"}, {{}}, 1), EmptyNetworkError);
    }
}

TEST_CASE("spectrum matrix of a computed network matches dense bit counting") {
    const auto set = compute_spectra(small_stations(), small_satellites(8), small_span(3), {});
    const auto h = spectrum_matrix(set, "C");
    const auto dense = spectrum_matrix_dense(set, "C");
    CHECK(h.values == dense.values);
    CHECK(h.global_window == dense.global_window);
    for (const auto v : h.values) {
        CHECK(v >= 0);
        CHECK(v <= h.global_window.duration().count());
    }
    CHECK(h.rows() == 3);
    CHECK(h.cols() == 8);
}

TEST_CASE("gram examples") {
    SUBCASE("identity") {
        const auto g = gram_of({{1, 0}, {0, 1}});
        CHECK(g.J == Matrix::identity(2));
        CHECK(g.eigenvalues == std::vector<double>{1.0, 1.0});
    }
    SUBCASE("single station") {
        const auto g = gram_of({{3, 4}});
        CHECK(g.J == Matrix::from_rows({{25}}));
        CHECK(g.eigenvalues == std::vector<double>{25.0});
    }
    SUBCASE("redundant stations") {
        const auto g = gram_of({{1, 1}, {1, 1}});
        CHECK(g.eigenvalues[0] == doctest::Approx(4.0));
        CHECK(std::fabs(g.eigenvalues[1]) < 1e-14);
    }
    SUBCASE("integer H is exact") {
        SpectrumMatrix h;
        h.station_ids = {"A", "B"};
        h.satellite_ids = {"X", "Y"};
        h.values = {5'184'000, 1, 3, 5'184'000};  // 60 days in seconds
        const auto j = gram_matrix(h);
        CHECK(j(0, 0) == 5'184'000.0 * 5'184'000.0 + 1.0);
        CHECK(j(0, 1) == j(1, 0));
        CHECK(j(0, 1) == 5'184'000.0 * 3.0 + 5'184'000.0);
    }
    CHECK_THROWS_AS(gram_of({}), DimensionError);
}

TEST_CASE("ranking examples") {
    SUBCASE("decoupled stations") {
        const auto r = rank_stations(from_j({{100, 0}, {0, 1}}), ids(2));
        CHECK(r.dominant == 0);
        CHECK(r.isolated == 1);
    }
    SUBCASE("degenerate spectrum falls through to id order") {
        const auto r = rank_stations(from_j({{2, 0}, {0, 2}}), ids(2));
        CHECK(r.dominant == 0);
        CHECK(r.isolated == 1);
        CHECK(r.leading_multiplicity == 2);
    }
    SUBCASE("silent station is isolated") {
        const auto j = Matrix::from_rows({{4, 0, 2}, {0, 0, 0}, {2, 0, 9}});
        const auto r = rank_stations(gram_from_j(j), ids(3));
        CHECK(r.isolated == 1);
        CHECK(r.dominant == 2);
        // brute force: leading eigenvector of the 2x2 block [[4,2],[2,9]]
        const double l = (13.0 + std::sqrt(25.0 + 16.0)) / 2.0;
        const double v0 = 2.0, v2 = l - 4.0;
        CHECK(r.scores[2].score == doctest::Approx(v2 / std::hypot(v0, v2)));
    }
    SUBCASE("single station is both") {
        const auto r = rank_stations(from_j({{7}}), ids(1));
        CHECK(r.dominant == 0);
        CHECK(r.isolated == 0);
    }
    SUBCASE("diagonal J ranks by J_ii") {
        std::mt19937_64 rng(1);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 2 + rng() % 10;
            Matrix j(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                j(i, i) = static_cast<double>(rng() % 1000);
            }
            const auto r = rank_stations(gram_from_j(j), ids(n));
            std::size_t best = 0;
            for (std::size_t i = 1; i < n; ++i) {
                if (j(i, i) > j(best, best)) {
                    best = i;
                }
            }
            CHECK(r.dominant == best);
        }
    }
    CHECK_THROWS_AS(rank_stations(from_j({{1}}), ids(2)), DimensionError);
}

TEST_CASE("Gram properties on random spectrum matrices") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t g = 1 + rng() % 40;
        const std::size_t x = 1 + rng() % 200;
        const auto h = random_h(rng, g, x);
        const auto ge = gram(h);
        CAPTURE(trial);
        CHECK(ge.J == ge.J.transpose());
        const double fro = ge.J.frobenius_norm();
        const double lmax = ge.eigenvalues.front();
        CHECK(ge.eigenvalues.back() >= -1e-10 * lmax);
        double sum = 0.0;
        for (const auto l : ge.eigenvalues) {
            sum += l;
        }
        CHECK(std::fabs(sum - ge.J.trace()) <= 1e-8 * std::max(1.0, ge.J.trace()));
        for (std::size_t k = 0; k < g; ++k) {
            double r = 0.0;
            for (std::size_t i = 0; i < g; ++i) {
                double s = -ge.eigenvalues[k] * ge.eigenvectors(i, k);
                for (std::size_t m = 0; m < g; ++m) {
                    s += ge.J(i, m) * ge.eigenvectors(m, k);
                }
                r += s * s;
            }
            CHECK(std::sqrt(r) <= 1e-8 * fro);
        }
        CHECK((ge.eigenvectors.transpose() * ge.eigenvectors - Matrix::identity(g)).frobenius_norm() <= 1e-8);

        // scaling H scales lambda by s^2 and keeps the ranking
        const double s = 0.5 + static_cast<double>(rng() % 1000) / 100.0;
        Matrix hs = h;
        for (std::size_t i = 0; i < g; ++i) {
            for (std::size_t k = 0; k < x; ++k) {
                hs(i, k) *= s;
            }
        }
        const auto gs = gram(hs);
        for (std::size_t k = 0; k < g; ++k) {
            CHECK(std::fabs(gs.eigenvalues[k] - s * s * ge.eigenvalues[k]) <= 1e-9 * s * s * lmax);
        }
        const auto r1 = rank_stations(ge, ids(g));
        const auto r2 = rank_stations(gs, ids(g));
        CHECK(r1.dominant == r2.dominant);
        CHECK(r1.isolated == r2.isolated);
    }
}

TEST_CASE("intra analysis end to end") {
    const auto set = compute_spectra(small_stations(), small_satellites(10), small_span(2), {});
    const auto res = run_intra(set, "C");
    CHECK(res.h.rows() == 3);
    CHECK(res.ranking.scores.size() == 3);
    CHECK(res.dense_memory_bits ==
          doctest::Approx(3.0 * 10.0 * static_cast<double>(res.h.global_window.duration().count())));
    // the dominant station has a top-2 row norm of H
    std::vector<double> norms;
    for (std::size_t i = 0; i < 3; ++i) {
        double s = 0.0;
        for (std::size_t x = 0; x < res.h.cols(); ++x) {
            s += static_cast<double>(res.h.at(i, x)) * static_cast<double>(res.h.at(i, x));
        }
        norms.push_back(s);
    }
    const auto smaller = std::count_if(norms.begin(), norms.end(), [&](double v) { return v > norms[res.ranking.dominant]; });
    CHECK(smaller <= 1);

    SUBCASE("single station") {
        std::vector<GroundStation> one{small_stations()[1]};
        const auto r = run_intra(compute_spectra(one, small_satellites(10), small_span(2), {}), "C");
        CHECK(r.ranking.dominant_id == "TOK");
        CHECK(r.ranking.isolated_id == "TOK");
    }
    SUBCASE("no visibility") {
        const auto none = compute_spectra(small_stations(), small_satellites(10), small_span(2), {90.5, 1, 30});
        CHECK_THROWS_AS(run_intra(none, "C"), EmptyNetworkError);
    }
    SUBCASE("unknown constellation") {
        CHECK_THROWS_AS(run_intra(set, "nope"), EmptyNetworkError);
    }
}
