#include "covroc/error.hpp"
#include "covroc/normal_dist.hpp"
#include "covroc/roc.hpp"
#include "covroc/simulation.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace covroc;

namespace {

SamplePairs pairs(std::vector<double> z, std::vector<double> m, Population pop = Population::NonDiseased_X) {
    SamplePairs d;
    d.covariates = std::move(z);
    d.markers = std::move(m);
    d.population = pop;
    return d;
}

std::vector<double> random_ints(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> d(0, 6);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

FunctionCurves model1_truth() { return sim::SimScenario::make(sim::ScenarioKind::NormalNoise).true_curves(); }

}  // namespace

TEST_SUITE("roc_estimators") {

TEST_CASE("Mann-Whitney small cases") {
    CHECK(mann_whitney(std::vector{1.0, 2.0}, std::vector{3.0, 4.0}) == 1.0);
    CHECK(mann_whitney(std::vector{0.0}, std::vector{0.0}) == 1.0);
    CHECK(mann_whitney(std::vector{1.0, 3.0}, std::vector{2.0, 4.0}) == 0.75);
    CHECK_THROWS_AS(mann_whitney(std::vector<double>{}, std::vector{1.0}), EmptySample);
}

TEST_CASE("Mann-Whitney against the double loop, with the tie identity") {
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 200; ++rep) {
        const auto x = random_ints(rng, 1 + rep % 9);
        const auto y = random_ints(rng, 1 + (rep * 7) % 11);
        CHECK(mann_whitney(x, y) == ref::mann_whitney(x, y));
        double ties = 0;
        for (double a : x)
            for (double b : y) ties += a == b;
        const double mn = static_cast<double>(x.size() * y.size());
        CHECK(mann_whitney(x, y) + mann_whitney(y, x) == doctest::Approx(1.0 + ties / mn).epsilon(1e-14));
    }
}

TEST_CASE("normal closed form") {
    const auto same = FunctionCurves::constant(2.0, 2.0, 1.3, 0.4);
    CHECK(std::abs(auc_normal(same, 0.0).value - 0.5) <= 1e-12);
    const auto one = FunctionCurves::constant(1.0, 1.0 + std::sqrt(3.0), 1.0, 2.0);
    CHECK(std::abs(auc_normal(one, 0.0).value - 0.8413447461) <= 1e-9);
    const double truth = ref::phi(std::sqrt(2.5) / std::sqrt(1.8 + 2.0 * ref::phi(0.0)));
    CHECK(auc_normal(model1_truth(), 3.0).value == doctest::Approx(truth).epsilon(1e-13));
    CHECK(truth == doctest::Approx(0.8277).epsilon(1e-4));

    const auto low = FunctionCurves::constant(1.0, 0.0, 1.0, 1.0);
    const auto raw = auc_normal(low, 0.0, false);
    const auto clamped = auc_normal(low, 0.0, true);
    CHECK(raw.value < 0.5);
    CHECK_FALSE(raw.clamped);
    CHECK(clamped.value == 0.5);
    CHECK(clamped.clamped);
}

TEST_CASE("normal sensitivity and specificity") {
    const auto c = FunctionCurves::constant(1.0, 3.0, 0.5, 2.0);
    CHECK(sens_spec_normal(c, 0.0, 3.0).sensitivity == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sens_spec_normal(c, 0.0, 1.0).specificity == doctest::Approx(0.5).epsilon(1e-15));
    const auto far = sens_spec_normal(c, 0.0, 1e6);
    CHECK(far.sensitivity == 0.0);
    CHECK(far.specificity == 1.0);
    const auto mid = sens_spec_normal(c, 0.0, 2.2);
    CHECK(mid.sensitivity == doctest::Approx(ref::phi(0.8 / std::sqrt(2.0))).epsilon(1e-13));
    CHECK(mid.specificity == doctest::Approx(ref::phi(1.2 / std::sqrt(0.5))).epsilon(1e-13));
}

TEST_CASE("normal ROC curve") {
    const auto diag = FunctionCurves::constant(0.0, 0.0, 1.7, 1.7);
    std::vector<double> fpr;
    for (int k = 1; k <= 99; ++k) fpr.push_back(k / 100.0);
    for (const auto& p : roc_curve_normal(diag, 0.0, fpr)) {
        CHECK(p.sensitivity == doctest::Approx(p.false_positive_rate).epsilon(1e-12));
    }
    const auto at_half = roc_curve_normal(diag, 0.0, std::vector{0.5});
    CHECK(at_half[0].sensitivity == doctest::Approx(0.5).epsilon(1e-15));

    const auto truth = model1_truth();
    const auto pts = roc_curve_normal(truth, 3.0, fpr);
    for (std::size_t k = 1; k < pts.size(); ++k) CHECK(pts[k].sensitivity >= pts[k - 1].sensitivity);
    CHECK(std::abs(roc_area(pts) - auc_normal(truth, 3.0).value) < 2e-3);

    std::vector<double> fine;
    for (int k = 1; k <= 999; ++k) fine.push_back(k / 1000.0);
    CHECK(std::abs(roc_area(roc_curve_normal(truth, 3.0, fine)) - auc_normal(truth, 3.0).value) < 2e-4);
    CHECK_THROWS_AS(roc_curve_normal(truth, 3.0, std::vector{0.5, 0.4}), InvalidArgument);
    CHECK_THROWS_AS(roc_curve_normal(truth, 3.0, std::vector{0.0, 0.4}), InvalidArgument);
}

TEST_CASE("standardized residuals invert the generating model") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> e(0.0, 1.0);
    std::uniform_real_distribution<double> u(1.0, 5.0);
    const auto sc = sim::SimScenario::make(sim::ScenarioKind::NormalNoise);
    const auto truth = sc.true_curves();
    std::vector<double> zx, x, ex, zy, y, ey;
    for (int i = 0; i < 30; ++i) {
        zx.push_back(u(rng));
        ex.push_back(e(rng));
        x.push_back(sc.mean_x(zx.back()) + std::sqrt(sc.var_x(zx.back())) * ex.back());
        zy.push_back(u(rng));
        ey.push_back(e(rng));
        y.push_back(sc.mean_y(zy.back()) + std::sqrt(sc.var_y(zy.back())) * ey.back());
    }
    const auto xd = pairs(zx, x);
    const auto yd = pairs(zy, y, Population::Diseased_Y);
    const auto r = standardized_residuals(xd, yd, truth);
    for (std::size_t i = 0; i < 30; ++i) {
        CHECK(r.eps_x[i] == doctest::Approx(ex[i]).epsilon(1e-10));
        CHECK(r.eps_y[i] == doctest::Approx(ey[i]).epsilon(1e-10));
    }

    // working sample at an observed covariate recovers that observation
    const auto ws = working_sample(r, truth, zx[3]);
    CHECK(ws.x_values[3] == doctest::Approx(x[3]).epsilon(1e-12));
    CHECK(ws.x_values.size() == 30);
    CHECK(ws.y_values.size() == 30);

    // fitted curves: pointwise formula oracle
    const FittedCurves fit = fit_all(xd, yd, 1, Bandwidths{1.5, 1.5, 2.0, 2.0}, Kernel{});
    const auto rf = standardized_residuals(xd, yd, fit);
    const auto wf = working_sample(rf, fit, 3.0);
    for (std::size_t i = 0; i < 30; ++i) {
        const double eps = (x[i] - fit.mean_x(zx[i])) / std::sqrt(fit.var_x(zx[i]));
        CHECK(rf.eps_x[i] == doctest::Approx(eps).epsilon(1e-13));
        CHECK(wf.x_values[i] == doctest::Approx(fit.mean_x(3.0) + std::sqrt(fit.var_x(3.0)) * eps).epsilon(1e-13));
    }
}

TEST_CASE("constant curves: residuals are raw markers, working samples are shifts") {
    const auto xd = pairs({0.1, 0.2, 0.3}, {1.0, -2.0, 0.5});
    const auto yd = pairs({0.4, 0.5}, {3.0, 0.0}, Population::Diseased_Y);
    const auto r = standardized_residuals(xd, yd, FunctionCurves::constant(0.0, 0.0, 1.0, 1.0));
    CHECK(r.eps_x == xd.markers);
    CHECK(r.eps_y == yd.markers);
    const auto ws = working_sample(r, FunctionCurves::constant(10.0, -1.0, 1.0, 1.0), 0.7);
    CHECK(ws.x_values == std::vector{11.0, 8.0, 10.5});
    CHECK(ws.y_values == std::vector{2.0, -1.0});
}

TEST_CASE("CAMWE with constant true curves is the Mann-Whitney statistic") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> e(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> zx, x, zy, y;
        for (int i = 0; i < 15 + rep % 5; ++i) {
            zx.push_back(u(rng));
            x.push_back(std::round(4.0 * e(rng)) / 4.0);
        }
        for (int j = 0; j < 12 + rep % 7; ++j) {
            zy.push_back(u(rng));
            y.push_back(std::round(4.0 * (0.5 + e(rng))) / 4.0);
        }
        const auto c = FunctionCurves::constant(0.3, 1.1, 2.0, 0.7);
        const auto est = camwe(pairs(zx, x), pairs(zy, y, Population::Diseased_Y), c, 0.5);
        CHECK(est.value == mann_whitney(x, y));
    }
}

TEST_CASE("identical samples with identical curves") {
    const std::vector<double> z = {0.1, 0.4, 0.5, 0.8, 0.9};
    const std::vector<double> m = {1.3, -0.2, 0.7, 2.1, 0.0};
    const auto xd = pairs(z, m);
    const auto yd = pairs(z, m, Population::Diseased_Y);
    const auto c = FunctionCurves([](double t) { return t; }, [](double t) { return t; },
                                  [](double t) { return 1.0 + t; }, [](double t) { return 1.0 + t; });
    const auto ws = working_sample(standardized_residuals(xd, yd, c), c, 0.6);
    CHECK(camwe(xd, yd, c, 0.6).value == ref::mann_whitney(ws.x_values, ws.y_values));
    CHECK(camwe(xd, yd, c, 0.6).value == doctest::Approx((25.0 + 5.0) / 50.0).epsilon(1e-15));
}

TEST_CASE("CAMWE shift-scale invariance") {
    const auto sc = sim::SimScenario::make(sim::ScenarioKind::NormalNoise);
    const auto data = sim::generate(sc, 31);
    const FittedCurves fit = fit_all(data.first, data.second, 1, Bandwidths{1.0, 1.0, 1.5, 1.5}, Kernel{});
    const auto r = standardized_residuals(data.first, data.second, fit);
    for (double z : {1.5, 3.0, 4.2}) {
        const CurveValues at = evaluate_curves(fit, z);
        const double base = mann_whitney(working_sample(r, at, z).x_values, working_sample(r, at, z).y_values);
        for (double a : {-3.0, 0.0, 17.0}) {
            for (double s : {0.25, 1.0, 4.0}) {
                const CurveValues moved{a + s * at.f, a + s * at.g, s * s * at.v1, s * s * at.v2};
                const auto ws = working_sample(r, moved, z);
                CHECK(mann_whitney(ws.x_values, ws.y_values) == base);
            }
        }
    }
}

TEST_CASE("empirical sensitivity and specificity") {
    const WorkingSample ws{0.0, {1.0, 2.0, 3.0, 4.0, 5.0}, {2.0, 4.0, 6.0, 8.0, 10.0}};
    const auto below = sens_spec_camwe(ws, -100.0);
    CHECK(below.sensitivity == 1.0);
    CHECK(below.specificity == 0.0);
    const auto above = sens_spec_camwe(ws, 100.0);
    CHECK(above.sensitivity == 0.0);
    CHECK(above.specificity == 1.0);
    const auto med = sens_spec_camwe(ws, 6.0);
    CHECK(med.sensitivity == 3.0 / 5.0);
    CHECK(med.specificity == 5.0 / 5.0);
    const auto two = sens_spec_camwe(ws, 2.0);
    CHECK(two.sensitivity == 1.0);
    CHECK(two.specificity == 2.0 / 5.0);
}

TEST_CASE("empirical ROC curve") {
    const auto single = roc_curve_camwe(WorkingSample{0.0, {0.0}, {1.0}});
    REQUIRE(single.size() == 3);
    CHECK(single[0].false_positive_rate == 0.0);
    CHECK(single[0].sensitivity == 0.0);
    CHECK(single[1].false_positive_rate == 0.0);
    CHECK(single[1].sensitivity == 1.0);
    CHECK(single[2].false_positive_rate == 1.0);
    CHECK(single[2].sensitivity == 1.0);
    CHECK(std::isinf(single[0].threshold));

    const auto sep = roc_curve_camwe(WorkingSample{0.0, {0.0, 1.0, 2.0}, {5.0, 6.0}});
    CHECK(std::any_of(sep.begin(), sep.end(),
                      [](const RocPoint& p) { return p.false_positive_rate == 0.0 && p.sensitivity == 1.0; }));

    std::mt19937_64 rng(12);
    std::normal_distribution<double> e(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        WorkingSample ws{0.0, {}, {}};
        for (int i = 0; i < 10; ++i) ws.x_values.push_back(e(rng));
        for (int j = 0; j < 10; ++j) ws.y_values.push_back(0.8 + e(rng));
        const auto pts = roc_curve_camwe(ws);
        for (std::size_t k = 1; k < pts.size(); ++k) {
            CHECK(pts[k].sensitivity >= pts[k - 1].sensitivity);
            CHECK(pts[k].false_positive_rate >= pts[k - 1].false_positive_rate);
        }
        CHECK(roc_area(pts) == doctest::Approx(ref::mann_whitney(ws.x_values, ws.y_values)).epsilon(1e-12));
    }
    // tied integer samples: the sweep keeps the closed-at-zero convention
    for (int rep = 0; rep < 20; ++rep) {
        WorkingSample ws{0.0, random_ints(rng, 8), random_ints(rng, 6)};
        CHECK(roc_area(roc_curve_camwe(ws)) ==
              doctest::Approx(ref::mann_whitney(ws.x_values, ws.y_values)).epsilon(1e-12));
    }
}

TEST_CASE("Youden index") {
    const auto sep = youden_index(WorkingSample{0.0, {0.0, 1.0, 2.0}, {5.0, 6.0}});
    CHECK(sep.index == 1.0);
    CHECK(sep.threshold == 2.0);  // the smallest pooled value achieving the maximum
    const auto tie = youden_index(WorkingSample{0.0, {0.0}, {0.0}});
    CHECK(tie.index == 1.0);
    CHECK(tie.threshold == 0.0);

    std::mt19937_64 rng(44);
    std::normal_distribution<double> e(0.0, 1.0);
    for (int rep = 0; rep < 30; ++rep) {
        WorkingSample ws{0.0, {}, {}};
        for (int i = 0; i < 10; ++i) ws.x_values.push_back(rep % 2 ? std::round(e(rng)) : e(rng));
        for (int j = 0; j < 10; ++j) ws.y_values.push_back(rep % 2 ? std::round(1 + e(rng)) : 1 + e(rng));
        std::vector<double> pooled = ws.x_values;
        pooled.insert(pooled.end(), ws.y_values.begin(), ws.y_values.end());
        double best = -2.0, best_c = 0.0;
        for (double c : pooled) {
            double q = 0, p = 0;
            for (double y : ws.y_values) q += y >= c;
            for (double x : ws.x_values) p += x <= c;
            const double yi = q / 10.0 + p / 10.0 - 1.0;
            if (yi > best || (yi == best && c < best_c)) {
                best = yi;
                best_c = c;
            }
        }
        const auto got = youden_index(ws);
        CHECK(got.index == doctest::Approx(best).epsilon(1e-15));
        CHECK(got.threshold == best_c);
    }
}

TEST_CASE("bivariate kernel estimator") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> e(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x, y;
    for (int i = 0; i < 10; ++i) {
        x.push_back(e(rng));
        y.push_back(0.5 + e(rng));
    }
    const auto flat_x = pairs(std::vector<double>(10, 0.3), x);
    const auto flat_y = pairs(std::vector<double>(10, 0.3), y, Population::Diseased_Y);
    CHECK(auc_bivariate_kernel(flat_x, flat_y, 0.2, 0.5, Kernel{}, 0.3).value ==
          doctest::Approx(mann_whitney(x, y)).epsilon(1e-15));
    CHECK_THROWS_AS(auc_bivariate_kernel(flat_x, flat_y, 0.2, 0.2, Kernel{}, 2.0), ZeroDenominator);
    CHECK_THROWS_AS(auc_bivariate_kernel(flat_x, flat_y, 0.0, 0.2, Kernel{}, 0.3), InvalidArgument);

    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> zx, zy;
        for (int i = 0; i < 10; ++i) {
            zx.push_back(u(rng));
            zy.push_back(u(rng));
        }
        const auto xd = pairs(zx, x);
        const auto yd = pairs(zy, y, Population::Diseased_Y);
        for (double z : {0.2, 0.5, 0.8}) {
            const auto ref = ref::kernel_auc(zx, x, zy, y, 0.3, 0.4, z);
            if (!ref) {
                CHECK_THROWS_AS(auc_bivariate_kernel(xd, yd, 0.3, 0.4, Kernel{}, z), ZeroDenominator);
                continue;
            }
            const double got = auc_bivariate_kernel(xd, yd, 0.3, 0.4, Kernel{}, z).value;
            CHECK(std::abs(got - *ref) <= 1e-12);
            // permutation invariance
            SamplePairs px = xd;
            std::reverse(px.covariates.begin(), px.covariates.end());
            std::reverse(px.markers.begin(), px.markers.end());
            CHECK(std::abs(auc_bivariate_kernel(px, yd, 0.3, 0.4, Kernel{}, z).value - got) <= 1e-14);
        }
    }
}

TEST_CASE("estimator names round trip") {
    for (auto e : {AucEstimator::NormalClosedForm, AucEstimator::Camwe, AucEstimator::BivariateKernel,
                   AucEstimator::MannWhitneyUnadjusted}) {
        CHECK(estimator_from_name(estimator_name(e)) == e);
    }
    CHECK_THROWS_AS(estimator_from_name("logistic"), InvalidArgument);
}

}  // TEST_SUITE
