#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "fracmix/verify.hpp"

using namespace fracmix;
using namespace fracmix::verify;

namespace {

OperatorParams fast_params() {
    OperatorParams p;
    p.h = 0.01;
    p.inner_refine = 20;
    p.quad_tol = 1e-7;
    return p;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("first-order system residuals pass in both regimes") {
    const auto time_spec = compound::make_spec(jumplaws::make_pa(0.5, 1.0), 0.6);
    const auto rt = kolmogorov_residuals(time_spec, 3, {0.5, 1.0}, fast_params());
    CHECK(rt.system_id == SystemId::FirstOrderTime);
    CHECK(rt.pass);
    CHECK_FALSE(rt.exploratory);
    CHECK(rt.calibration > 0.0);
    CHECK(rt.tolerance_used == doctest::Approx(5.0 * rt.calibration));
    CHECK(rt.max_abs_residual() <= rt.tolerance_used);

    const auto space_spec = compound::make_spec(jumplaws::make_pa(0.5, 1.0), 1.5);
    const auto rs = kolmogorov_residuals(space_spec, 2, {0.5, 1.0}, fast_params());
    CHECK(rs.system_id == SystemId::FirstOrderSpace);
    CHECK(rs.pass);
}

TEST_CASE("recursion system matches the geometric jump structure") {
    const auto spec = compound::make_spec(jumplaws::make_pa(0.4, 1.0), 0.7);
    const auto r = pa_recursion_residuals(spec, 3, {0.8}, fast_params());
    CHECK(r.system_id == SystemId::PaRecursionTime);
    CHECK(r.pass);

    const auto pig = compound::make_spec(jumplaws::make_pig(1.0, 1.0), 0.7);
    CHECK_THROWS_AS(pa_recursion_residuals(pig, 3, {0.8}, fast_params()), std::invalid_argument);
}

TEST_CASE("two-parameter systems at eta = 1") {
    const auto pa = compound::make_spec(jumplaws::make_pa(0.4, 1.0), 0.7);
    const auto r = two_param_residuals(pa, TwoParamFamily::PA, 3, {0.8}, fast_params());
    CHECK(r.system_id == SystemId::PaTwoParamTime);
    CHECK(r.pass);

    const auto pig = compound::make_spec(jumplaws::make_pig(1.0, 1.0), 0.7);
    CHECK_THROWS_AS(two_param_residuals(pig, TwoParamFamily::PIG, 1, {0.8}, fast_params()),
                    std::invalid_argument);
}

TEST_CASE("grid alignment is enforced") {
    const auto spec = compound::make_spec(jumplaws::make_pa(0.5, 1.0), 0.6);
    OperatorParams p = fast_params();
    CHECK_THROWS_AS(kolmogorov_residuals(spec, 2, {0.505}, p), std::invalid_argument);
    CHECK_THROWS_AS(kolmogorov_residuals(spec, 2, {0.0}, p), std::invalid_argument);
    CHECK_THROWS_AS(kolmogorov_residuals(spec, 2, {-0.5}, p), std::invalid_argument);
}

TEST_CASE("second fractional order below one is exploratory") {
    const auto spec = compound::make_spec(jumplaws::make_pa(0.5, 1.0), 0.6, 0.8);
    CHECK_THROWS_AS(kolmogorov_residuals(spec, 2, {0.5}, fast_params()), std::invalid_argument);

    OperatorParams p = fast_params();
    p.mc_samples = 20000;
    p.h = 0.25;
    const auto r = two_param_residuals(spec, TwoParamFamily::PA, 2, {0.5, 0.75}, p);
    CHECK(r.exploratory);
    CHECK(r.tolerance_used == doctest::Approx(0.5));
}

TEST_CASE("counting-process operator system") {
    const auto r = spacefrac_op_residuals(1.0, 1.5, 3, {0.5, 1.0}, fast_params());
    CHECK(r.system_id == SystemId::SpaceCountingOp);
    CHECK(r.pass);
}

TEST_CASE("alternative space form is flagged exploratory") {
    const auto spec = compound::make_spec(jumplaws::make_pa(0.5, 1.0), 1.5);
    const auto r = space_alt_form_residuals(spec, 2, {0.5}, fast_params());
    CHECK(r.system_id == SystemId::SpaceAltForm);
    CHECK(r.exploratory);

    const auto time_spec = compound::make_spec(jumplaws::make_pa(0.5, 1.0), 0.6);
    CHECK_THROWS_AS(space_alt_form_residuals(time_spec, 2, {0.5}, fast_params()),
                    std::invalid_argument);
}

TEST_CASE("residual report serialization") {
    const auto spec = compound::make_spec(jumplaws::make_pa(0.5, 1.0), 0.6);
    const auto r = kolmogorov_residuals(spec, 2, {0.5}, fast_params());
    const auto j = r.to_json();
    for (const char* key : {"system_id", "k_max", "t_grid", "residuals", "params", "calibration",
                            "tolerance", "pass", "exploratory"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["system_id"] == "first-order-time");
    CHECK(j["residuals"].size() == 3);  // k = 0..2
}

TEST_CASE("transform checks pass and are deterministic") {
    const auto a = transform_checks(2024, 20000);
    const auto b = transform_checks(2024, 20000);
    CHECK(a.pass);
    CHECK(a.max_abs_z == b.max_abs_z);
    REQUIRE(a.entries.size() == b.entries.size());
    REQUIRE(a.entries.size() == 12);
    for (size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].mc_mean == b.entries[i].mc_mean);
        CHECK(std::isfinite(a.entries[i].z));
    }
    const auto j = a.to_json();
    for (const char* key : {"seed", "n_samples", "max_abs_z", "pass", "checks"}) {
        CHECK(j.contains(key));
    }
    CHECK_THROWS_AS(transform_checks(1, 1), std::invalid_argument);
}

}  // TEST_SUITE
