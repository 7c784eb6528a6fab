#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fuzzquant/indicators.hpp"
#include "fuzzquant/quantizer.hpp"

using namespace fq;

namespace {

std::mt19937_64 rng(991);

Signal random_signal(size_t len, double lo = 0.0, double hi = 255.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    Signal s;
    s.values.resize(len);
    for (auto& v : s.values)
        v = d(rng);
    return s;
}

Quantization try_quantize(const Signal& s, int k) {
    try {
        return kmeans_quantize(s, k);
    } catch (const Error&) {
        return {};
    }
}

} // namespace

TEST_CASE("crisp indicator is the label vector of the partition") {
    Quantization q;
    q.k = 2;
    q.centroids = {1.0, 3.0};
    q.labels = {1, 1, 2, 2};
    CHECK(crisp_indicator(q) == std::vector<int32_t>{1, 1, 2, 2});
}

TEST_CASE("3-means indicators stay within {1,2,3}") {
    const Signal s = random_signal(200);
    const auto q = kmeans_quantize(s, 3);
    for (int32_t label : crisp_indicator(q)) {
        CHECK(label >= 1);
        CHECK(label <= 3);
    }
}

TEST_CASE("symbol re-encoding preserves the partition") {
    Signal s{{0.0, 0.1, 10.0, 10.2, 20.5, 20.6}};
    auto q = kmeans_quantize(s, 3);
    q.symbols = std::vector<std::string>{"10", "20", "30"};
    const auto symbols = crisp_symbols(q);
    REQUIRE(symbols.size() == q.labels.size());
    CHECK(symbols.front() == "10");
    // identical partition: same symbol iff same label
    for (size_t i = 0; i < symbols.size(); ++i)
        for (size_t j = 0; j < symbols.size(); ++j)
            CHECK((symbols[i] == symbols[j]) == (q.labels[i] == q.labels[j]));
}

TEST_CASE("fuzzy indicator anchors: centroids and decision midpoints") {
    const Signal base = random_signal(64, 0.0, 100.0);
    const auto q = kmeans_quantize(base, 3);

    // probe signal of exact centroids and exact midpoints
    Signal probes;
    for (double c : q.centroids)
        probes.values.push_back(c);
    const auto bounds = decision_boundaries(q.centroids);
    for (double m : bounds)
        probes.values.push_back(m);

    Quantization probe_q = q;
    probe_q.labels.assign(probes.values.size(), 0);
    for (size_t i = 0; i < probes.values.size(); ++i) {
        int32_t label = 1;
        for (double m : bounds)
            label += probes.values[i] > m ? 1 : 0;
        probe_q.labels[i] = label;
    }

    const auto cfi = fuzzy_indicator(probes, probe_q);
    const auto fib = boundary_indicator(cfi, probe_q.labels);
    for (size_t i = 0; i < q.centroids.size(); ++i) {
        CHECK(cfi[i] == static_cast<double>(i + 1)); // exact full membership
        CHECK(fib[i] == 0.0);
    }
    for (size_t i = 0; i < bounds.size(); ++i) {
        const size_t at = q.centroids.size() + i;
        CHECK(cfi[at] == static_cast<double>(probe_q.labels[at]) + 0.5);
        CHECK(fib[at] == 1.0);
    }
}

TEST_CASE("fuzzy indicator is monotone over a dense sweep") {
    const Signal base = random_signal(128, 0.0, 255.0);
    const auto q = kmeans_quantize(base, 4);
    const auto bounds = decision_boundaries(q.centroids);

    Signal sweep;
    for (int i = 0; i <= 2000; ++i)
        sweep.values.push_back(-10.0 + i * (275.0 / 2000.0));
    Quantization sweep_q = q;
    sweep_q.labels.assign(sweep.values.size(), 0);
    for (size_t i = 0; i < sweep.values.size(); ++i) {
        int32_t label = 1;
        for (double m : bounds)
            label += sweep.values[i] > m ? 1 : 0;
        sweep_q.labels[i] = label;
    }
    const auto cfi = fuzzy_indicator(sweep, sweep_q);
    for (size_t i = 1; i < cfi.size(); ++i)
        REQUIRE(cfi[i] >= cfi[i - 1]);
    // clamped to full membership beyond the outermost centroids
    CHECK(cfi.front() == 1.0);
    CHECK(cfi.back() == static_cast<double>(q.k));
}

TEST_CASE("fuzzy indicator rejects degenerate centroids") {
    Quantization q;
    q.k = 2;
    q.centroids = {3.0, 3.0};
    q.labels = {1, 2};
    try {
        fuzzy_indicator(Signal{{1.0, 5.0}}, q);
        FAIL("expected DegenerateCentroids");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateCentroids);
    }
}

TEST_CASE("boundary indicator") {
    SUBCASE("zero where cfi equals cci") {
        const std::vector<double> cfi = {1.0, 2.0, 3.0};
        const std::vector<int32_t> cci = {1, 2, 3};
        CHECK(boundary_indicator(cfi, cci) == std::vector<double>{0.0, 0.0, 0.0});
    }
    SUBCASE("one at half offsets") {
        CHECK(boundary_indicator({1.5}, {1}) == std::vector<double>{1.0});
    }
    SUBCASE("matches an independent elementwise pass") {
        const Signal s = random_signal(333);
        const auto q = kmeans_quantize(s, 3);
        const auto ind = make_indicators(s, q);
        for (size_t i = 0; i < ind.fib.size(); ++i)
            REQUIRE(ind.fib[i] == 2.0 * std::fabs(ind.cfi[i] - ind.cci[i]));
    }
    SUBCASE("length mismatch") {
        try {
            boundary_indicator({1.0, 2.0}, {1});
            FAIL("expected LengthMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::LengthMismatch);
        }
    }
}

TEST_CASE("verify_triplet accepts pipeline output and flags tampering") {
    const Signal s = random_signal(100);
    const auto q = kmeans_quantize(s, 3);
    auto ind = make_indicators(s, q);

    CHECK(verify_triplet(ind, &s).ok);

    SUBCASE("tampered fib breaks the identity") {
        ind.fib[7] += 0.1;
        const auto report = verify_triplet(ind);
        CHECK(!report.ok);
        REQUIRE(!report.violations.empty());
        CHECK(report.violations.front().rule == "fib-identity");
        CHECK(report.violations.front().index == 7);
    }
    SUBCASE("tampered cfi breaks round-back") {
        ind.cfi[3] = ind.cci[3] + 0.7;
        ind.fib = boundary_indicator(ind.cfi, ind.cci); // keep the identity intact
        const auto report = verify_triplet(ind);
        CHECK(!report.ok);
        bool found = false;
        for (const auto& v : report.violations)
            if (v.rule == "round-back" && v.index == 3)
                found = true;
        CHECK(found);
    }
}

TEST_CASE("round-back identity: cfi rounds to cci with the stored label as tie hint") {
    for (int round = 0; round < 50; ++round) {
        const Signal s = random_signal(80);
        std::uniform_int_distribution<int> kd(2, 5);
        const auto q = try_quantize(s, kd(rng));
        if (q.k == 0)
            continue;
        const auto ind = make_indicators(s, q);
        for (size_t i = 0; i < ind.cfi.size(); ++i) {
            const double delta = ind.cfi[i] - ind.cci[i];
            REQUIRE(std::fabs(delta) <= 0.5);
            if (std::fabs(delta) < 0.5)
                REQUIRE(static_cast<int32_t>(std::lround(ind.cfi[i])) == ind.cci[i]);
        }
    }
}

TEST_CASE("symbol invariance: bijective re-encoding leaves residuals and fib unchanged") {
    const Signal s = random_signal(120);
    const auto q = kmeans_quantize(s, 3);
    const auto ind = make_indicators(s, q);

    Quantization renamed = q;
    renamed.symbols = std::vector<std::string>{"alpha", "beta", "gamma"};
    const auto ind2 = make_indicators(s, renamed);

    CHECK(ind.cci == ind2.cci);
    CHECK(ind.cfi == ind2.cfi);
    CHECK(ind.fib == ind2.fib);

    const auto symbols = crisp_symbols(renamed);
    for (size_t i = 0; i < symbols.size(); ++i)
        for (size_t j = 0; j < symbols.size(); ++j)
            CHECK((symbols[i] == symbols[j]) == (ind.cci[i] == ind.cci[j]));
}
