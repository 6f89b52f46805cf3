#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

#include "doctest.h"
#include "helpers.hpp"
#include "prodmat/ensemble.hpp"
#include "prodmat/rng.hpp"

using namespace prodmat;

TEST_CASE("counter rng is a pure function of seed, stream and index") {
    const auto a = counter_uniform2(42, 3, 17);
    const auto b = counter_uniform2(42, 3, 17);
    CHECK(a[0] == b[0]);
    CHECK(a[1] == b[1]);
    CHECK(counter_uniform2(42, 3, 18)[0] != a[0]);
    CHECK(counter_uniform2(42, 4, 17)[0] != a[0]);
    CHECK(counter_uniform2(43, 3, 17)[0] != a[0]);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto u = counter_uniform2(7, 0, i);
        CHECK(u[0] > 0.0);
        CHECK(u[0] <= 1.0);
        CHECK(u[1] > 0.0);
        CHECK(u[1] <= 1.0);
    }
}

TEST_CASE("gaussian counter draws have standard moments") {
    const int N = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < N; ++i) {
        const auto g = counter_gauss2(11, 1, std::uint64_t(i));
        sum += g[0] + g[1];
        sq += g[0] * g[0] + g[1] * g[1];
    }
    const double mean = sum / (2 * N), var = sq / (2 * N) - mean * mean;
    CHECK(std::abs(mean) < 6.0 / std::sqrt(2.0 * N));
    CHECK(std::abs(var - 1.0) < 6.0 * std::sqrt(2.0 / (2.0 * N)));
}

TEST_CASE("substream derivation separates trials") {
    std::vector<std::uint64_t> seen;
    for (std::uint64_t t = 0; t < 1000; ++t) seen.push_back(derive_substream_seed(5, t));
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
    CHECK(derive_substream_seed(5, 0) != derive_substream_seed(6, 0));
}

TEST_CASE("make_profile validates the size chain") {
    const auto prof = make_profile({3, 4, 5});
    CHECK(prof.m == 2);
    CHECK(prof.n() == 3);
    CHECK(prof.p_last() == 5);
    CHECK(prof.y[0] == doctest::Approx(0.75));
    CHECK(prof.y[1] == doctest::Approx(0.6));
    CHECK_THROWS_AS(make_profile({5, 4}), std::invalid_argument);
    CHECK_THROWS_AS(make_profile({3}), std::invalid_argument);
    CHECK_THROWS_AS(make_profile({0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(make_profile({}), std::invalid_argument);
}

TEST_CASE("entry laws parse, print and bound") {
    for (const char* name : {"gaussian", "cgaussian", "rademacher", "threepoint"})
        CHECK(law_name(parse_law(name)) == name);
    CHECK_THROWS_AS(parse_law("weibull"), std::invalid_argument);
    CHECK(!parse_law("gaussian").bound().has_value());
    CHECK(!parse_law("cgaussian").bound().has_value());
    CHECK(parse_law("rademacher").bound().value() == 1.0);
    CHECK(parse_law("threepoint", 5.0).bound().value() == 5.0);
    CHECK(parse_law("cgaussian").is_complex());
    CHECK(!parse_law("threepoint").is_complex());
    CHECK_THROWS_AS(make_law(LawKind::three_point_heavy, 0.5), std::invalid_argument);
}

TEST_CASE("sample_chain produces the requested shapes with sign entries") {
    const auto prof = make_profile({3, 4, 5});
    const auto set = sample_chain(prof, parse_law("rademacher"), 7);
    REQUIRE(set.raw.size() == 2);
    CHECK(set.raw[0].rows() == 3);
    CHECK(set.raw[0].cols() == 4);
    CHECK(set.raw[1].rows() == 4);
    CHECK(set.raw[1].cols() == 5);
    for (const auto& M : set.raw)
        for (Eigen::Index j = 0; j < M.rows(); ++j)
            for (Eigen::Index k = 0; k < M.cols(); ++k) {
                CHECK(M(j, k).imag() == 0.0);
                CHECK(std::abs(M(j, k).real()) == 1.0);
            }

    const auto again = sample_chain(prof, parse_law("rademacher"), 7);
    for (std::size_t v = 0; v < set.raw.size(); ++v) CHECK(set.raw[v] == again.raw[v]);
    const auto other = sample_chain(prof, parse_law("rademacher"), 8);
    CHECK(set.raw[0] != other.raw[0]);
}

TEST_CASE("sampled laws have mean 0 and variance 1 at scale") {
    const auto prof = make_profile({200, 200});
    const double N = 200.0 * 200.0;
    struct Row {
        const char* name;
        double var_of_square;  // Var(|X|^2), sets the scale of the variance estimate
    };
    // gaussian: E X^4 = 3; cgaussian: E|X|^4 = 2; rademacher: exact; threepoint: a^2 - 1
    for (const Row row : {Row{"gaussian", 2.0}, Row{"cgaussian", 1.0}, Row{"rademacher", 0.0},
                          Row{"threepoint", 24.0}}) {
        const auto law = parse_law(row.name, 5.0);
        const auto set = sample_chain(prof, law, 1);
        std::complex<double> mean = 0.0;
        double var = 0.0;
        std::complex<double> second = 0.0;
        for (Eigen::Index j = 0; j < 200; ++j)
            for (Eigen::Index k = 0; k < 200; ++k) {
                const auto x = set.raw[0](j, k);
                mean += x;
                var += std::norm(x);
                second += x * x;
                if (!law.is_complex()) CHECK(x.imag() == 0.0);
            }
        mean /= N;
        const double raw_second = var / N;
        var = raw_second - std::norm(mean);
        CHECK(std::abs(mean) < 6.0 / std::sqrt(N));
        if (row.var_of_square == 0.0)
            CHECK(std::abs(raw_second - 1.0) < 1e-12);  // |X|^2 = 1 identically
        else
            CHECK(std::abs(var - 1.0) < 6.0 * std::sqrt(row.var_of_square / N));
        if (law.is_complex()) CHECK(std::abs(second / N) < 0.05);  // circular: E X^2 = 0
    }
}

TEST_CASE("three-point law hits its advertised probabilities") {
    const auto set = sample_chain(make_profile({200, 200}), parse_law("threepoint", 5.0), 2);
    int plus = 0, minus = 0, zero = 0;
    for (Eigen::Index j = 0; j < 200; ++j)
        for (Eigen::Index k = 0; k < 200; ++k) {
            const double x = set.raw[0](j, k).real();
            if (x == 5.0)
                ++plus;
            else if (x == -5.0)
                ++minus;
            else {
                CHECK(x == 0.0);
                ++zero;
            }
        }
    // each spike has expectation 40000/50 = 800, sd ~ 28
    CHECK(std::abs(plus - 800) < 170);
    CHECK(std::abs(minus - 800) < 170);
    CHECK(plus + minus + zero == 40000);
}

TEST_CASE("lindeberg functional matches hand values") {
    Eigen::MatrixXcd one(1, 1);
    one(0, 0) = 3.0;
    const auto tiny = manual_set({one});
    CHECK(lindeberg_functional(tiny, 2.0) == 9.0);  // |3| >= 2*sqrt(1), sum/n^2 = 9
    CHECK(lindeberg_functional(tiny, 4.0) == 0.0);
    CHECK_THROWS_AS(lindeberg_functional(tiny, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lindeberg_functional(tiny, -1.0), std::invalid_argument);

    const auto rad = sample_chain(make_profile({16, 16}), parse_law("rademacher"), 3);
    CHECK(lindeberg_functional(rad, 0.5) == 0.0);  // threshold 2 > 1
    CHECK(lindeberg_functional(rad, 0.25) == 1.0);  // threshold 1 keeps every entry
}

TEST_CASE("lindeberg functional agrees with a brute-force oracle") {
    const auto prof = make_profile({20, 30, 25});
    const auto set = sample_chain(prof, parse_law("gaussian"), 11);
    const double n = 20.0;
    for (const double tau : {1e-300, 0.05, 0.1, 0.2, 0.5}) {
        double worst = 0.0;
        for (const auto& M : set.raw) {
            double sum = 0.0;
            for (Eigen::Index j = 0; j < M.rows(); ++j)
                for (Eigen::Index k = 0; k < M.cols(); ++k)
                    if (std::abs(M(j, k)) >= tau * std::sqrt(n)) sum += std::norm(M(j, k));
            worst = std::max(worst, sum / (n * n));
        }
        CHECK(lindeberg_functional(set, tau) == doctest::Approx(worst).epsilon(1e-12));
    }
    double prev = lindeberg_functional(set, 0.01);
    for (double tau = 0.02; tau <= 1.0; tau += 0.01) {
        const double cur = lindeberg_functional(set, tau);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
}

TEST_CASE("truncation level selection walks the dyadic grid") {
    const auto zero_set = manual_set({Eigen::MatrixXcd::Zero(4, 4)});
    CHECK(select_truncation_level(zero_set) == std::ldexp(1.0, -40));

    // rademacher, n = 64: threshold tau*8 reaches the entries exactly at tau = 1/8,
    // so 1/4 is the smallest level whose functional still vanishes
    const auto rad = sample_chain(make_profile({64, 64}), parse_law("rademacher"), 4);
    CHECK(select_truncation_level(rad) == 0.25);

    const auto gauss = sample_chain(make_profile({400, 400}), parse_law("gaussian"), 5);
    const double tau = select_truncation_level(gauss);
    CHECK(tau > 0.0);
    CHECK(lindeberg_functional(gauss, tau) <= tau * tau * tau);
    if (tau < 1.0 && tau > std::ldexp(1.0, -40)) {
        const double below = 0.5 * tau;
        CHECK(lindeberg_functional(gauss, below) > below * below * below);
    }
}

TEST_CASE("truncate_and_center: identity case subtracts only the sample mean") {
    const auto rad = sample_chain(make_profile({16, 16}), parse_law("rademacher"), 6);
    const auto out = truncate_and_center(rad, 1.0, 1.0);  // threshold 4 > every |entry|
    for (std::size_t v = 0; v < rad.raw.size(); ++v) {
        const std::complex<double> mean = rad.raw[v].sum() / double(rad.raw[v].size());
        const Eigen::MatrixXcd expect = rad.raw[v].array() - mean;
        CHECK((out.raw[v] - expect).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("truncate_and_center: vanishing threshold zeroes everything") {
    const auto rad = sample_chain(make_profile({8, 8}), parse_law("rademacher"), 6);
    const auto out = truncate_and_center(rad, 1.0, 1e-300);
    CHECK(out.raw[0].cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(truncate_and_center(rad, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(truncate_and_center(rad, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("truncate_and_center: one outlier, worked 2x2 example") {
    Eigen::MatrixXcd M(2, 2);
    M << 10.0, 1.0, -1.0, 2.0;
    const auto set = manual_set({M});
    // c*tau*sqrt(2) = 5: the 10 goes to 0, survivors {0,1,-1,2} have mean 1/2
    const auto out = truncate_and_center(set, 1.0, 5.0 / std::sqrt(2.0));
    CHECK(out.raw[0](0, 0).real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(out.raw[0](0, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.raw[0](1, 0).real() == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(out.raw[0](1, 1).real() == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("truncate_and_center is idempotent at a fixed threshold") {
    const auto set = sample_chain(make_profile({30, 30}), parse_law("gaussian"), 9);
    const double tau = select_truncation_level(set);
    const auto once = truncate_and_center(set, 1.0, tau);
    const auto twice = truncate_and_center(once, 1.0, tau);
    for (std::size_t v = 0; v < once.raw.size(); ++v)
        CHECK((twice.raw[v] - once.raw[v]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("truncation never touches a bounded law under a high threshold") {
    const auto set = sample_chain(make_profile({25, 25}), parse_law("threepoint", 5.0), 10);
    const auto out = truncate_and_center(set, 1.0, 2.0);  // threshold 10 > bound 5
    const std::complex<double> mean = set.raw[0].sum() / double(set.raw[0].size());
    const Eigen::MatrixXcd expect = set.raw[0].array() - mean;
    CHECK((out.raw[0] - expect).cwiseAbs().maxCoeff() == 0.0);
}
