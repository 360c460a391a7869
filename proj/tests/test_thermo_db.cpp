#include <cmath>
#include <random>

#include "doctest.h"
#include "flametemp/errors.hpp"
#include "flametemp/thermo_db.hpp"

using namespace flametemp;

namespace {

const ThermoDatabase& gri() { return bundled_gri30(); }
const ThermoDatabase& patched()
{
    static const ThermoDatabase db = apply_n2_patch(bundled_gri30());
    return db;
}

// Independent evaluation straight from the raw coefficients with std::pow.
double raw_h_RT(const std::array<double, 7>& a, double T)
{
    double h = a[5] / T;
    for (int k = 0; k < 5; ++k)
        h += a[k] * std::pow(T, k) / (k + 1);
    return h;
}

double raw_s_R(const std::array<double, 7>& a, double T)
{
    double s = a[0] * std::log(T) + a[6];
    for (int k = 1; k < 5; ++k)
        s += a[k] * std::pow(T, k) / k;
    return s;
}

} // namespace

TEST_CASE("cp_R of argon is constant 2.5")
{
    const auto& ar = gri().at("AR");
    CHECK(cp_R(ar, 1500.0).value == doctest::Approx(2.5).epsilon(1e-15));
    CHECK_FALSE(cp_R(ar, 1500.0).extrapolated);
    CHECK(ar.poly.low[1] == 0.0);
    CHECK(ar.poly.low[4] == 0.0);
}

TEST_CASE("extrapolation flag follows the fitted range")
{
    const auto& co2 = gri().at("CO2");
    CHECK(cp_R(co2, 6000.0).extrapolated);
    CHECK(h_RT(co2, 6000.0).extrapolated);
    CHECK_FALSE(h_RT(co2, co2.poly.t_max).extrapolated);
    CHECK_FALSE(h_RT(co2, co2.poly.t_min).extrapolated);
    CHECK(h_RT(co2, co2.poly.t_min - 1e-9).extrapolated);
    CHECK(s_R(co2, 100.0).extrapolated);
    // Extrapolation uses the nearest subrange polynomial unchanged.
    CHECK(h_RT(co2, 6000.0).value == doctest::Approx(raw_h_RT(co2.poly.high, 6000.0)).epsilon(1e-14));
    CHECK(h_RT(co2, 100.0).value == doctest::Approx(raw_h_RT(co2.poly.low, 100.0)).epsilon(1e-14));
}

TEST_CASE("non-positive temperatures are domain errors")
{
    const auto& n2 = gri().at("N2");
    CHECK_THROWS_AS(cp_R(n2, 0.0), DomainError);
    CHECK_THROWS_AS(h_RT(n2, -5.0), DomainError);
    CHECK_THROWS_AS(s_R(n2, 0.0), DomainError);
    CHECK_THROWS_AS(g_RT(n2, std::nan("")), DomainError);
    CHECK_THROWS_AS(h_molar(n2, 0.0), DomainError);
}

TEST_CASE("standard formation enthalpies at 298.15 K")
{
    // Published standard values: CO2 -393.51, H2O(g) -241.83, CH4 -74.6 kJ/mol.
    CHECK(h_molar(gri().at("CO2"), 298.15).value == doctest::Approx(-393.5e3).epsilon(0.5e3 / 393.5e3));
    CHECK(h_molar(gri().at("H2O"), 298.15).value == doctest::Approx(-241.8e3).epsilon(0.5e3 / 241.8e3));
    CHECK(std::abs(h_molar(gri().at("CH4"), 298.15).value + 74.6e3) <= 0.5e3);
}

TEST_CASE("standard entropies at 298.15 K")
{
    // Published standard values: O2 205.15, Ar 154.85 J/(mol K).
    CHECK(std::abs(s_R(gri().at("O2"), 298.15).value * kGasConstant - 205.1) <= 0.5);
    CHECK(std::abs(s_R(gri().at("AR"), 298.15).value * kGasConstant - 154.8) <= 0.5);
}

TEST_CASE("g_RT identities")
{
    const auto& ar = gri().at("AR");
    const auto g = g_RT(ar, 298.15);
    CHECK(std::abs(h_RT(ar, 298.15).value) < 1e-12);
    CHECK(g.value == doctest::Approx(-s_R(ar, 298.15).value).epsilon(1e-12));

    const auto& n2 = gri().at("N2");
    const double expected = raw_h_RT(n2.poly.high, 3000.0) - raw_s_R(n2.poly.high, 3000.0);
    CHECK(g_RT(n2, 3000.0).value == doctest::Approx(expected).epsilon(1e-13));
    CHECK(g_RT(n2, 3000.0).value == doctest::Approx(-28.37232629497125).epsilon(1e-12));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> temp(200.0, 6000.0);
    for (const auto& sp : gri().species()) {
        const double T = temp(rng);
        const auto gv = g_RT(sp, T);
        CHECK(gv.value == h_RT(sp, T).value - s_R(sp, T).value);
        CHECK(gv.extrapolated == (h_RT(sp, T).extrapolated || s_R(sp, T).extrapolated));
    }
}

TEST_CASE("h_molar is h_RT times R T")
{
    for (const auto& sp : gri().species()) {
        const double T = 1234.5;
        CHECK(h_molar(sp, T).value / (kGasConstant * T) == doctest::Approx(h_RT(sp, T).value).epsilon(1e-14));
    }
}

TEST_CASE("N2 patch zeroes the reference enthalpy")
{
    const auto& raw = gri().at("N2");
    CHECK(raw.poly.low[5] == -1020.8999);
    // Oracle: R * (a6_original - a6_patched) = 8.314510 * 0.17198
    CHECK(std::abs(h_molar(raw, 298.15).value - 1.430) <= 0.05);
    CHECK(std::abs(h_molar(raw, 298.15).value - kGasConstant * 0.17198) <= 1e-3);

    const auto& fixed = patched().at("N2");
    CHECK(fixed.poly.low[5] == kPatchedN2LowA6);
    CHECK(std::abs(h_molar(fixed, 298.15).value) <= 0.05);
    CHECK(std::abs(h_RT(fixed, 298.15).value) <= 2e-5);

    SUBCASE("idempotent and local")
    {
        CHECK(apply_n2_patch(patched()) == patched());
        for (std::size_t i = 0; i < gri().size(); ++i)
            if (gri()[i].name != "N2")
                CHECK(gri()[i] == patched()[i]);
        CHECK(patched().at("N2").poly.high == raw.poly.high);
    }

    SUBCASE("requires N2")
    {
        const ThermoDatabase only_ar({gri().at("AR")});
        CHECK_THROWS_AS(apply_n2_patch(only_ar), PatchError);
    }
}

TEST_CASE("subrange continuity at t_mid for every species")
{
    constexpr double eps = 1e-6;
    for (const auto& sp : gri().species()) {
        const double tm = sp.poly.t_mid;
        CAPTURE(sp.name);
        CHECK(std::abs(h_RT(sp, tm - eps).value - h_RT(sp, tm + eps).value) <= 1e-3);
        CHECK(std::abs(cp_R(sp, tm - eps).value - cp_R(sp, tm + eps).value) <= 1e-3);
        CHECK(std::abs(s_R(sp, tm - eps).value - s_R(sp, tm + eps).value) <= 1e-3);
    }
    const auto& n2 = gri().at("N2");
    CHECK(std::abs(cp_R(n2, 1000.0 - eps).value - cp_R(n2, 1000.0 + eps).value) <= 1e-3);
}

TEST_CASE("enthalpy derivative matches Cp")
{
    std::mt19937 rng(2024);
    for (const auto& sp : gri().species()) {
        std::uniform_real_distribution<double> temp(sp.poly.t_min + 1.0, sp.poly.t_max - 1.0);
        for (int i = 0; i < 20; ++i) {
            double T = temp(rng);
            if (std::abs(T - sp.poly.t_mid) < 1.0)
                T += 2.0;
            const double dT = 1e-3;
            const double d = (h_RT(sp, T + dT).value * (T + dT) - h_RT(sp, T - dT).value * (T - dT)) / (2 * dT);
            const double cp = cp_R(sp, T).value;
            CAPTURE(sp.name);
            CAPTURE(T);
            CHECK(std::abs(d - cp) <= 1e-6 * std::abs(cp));
        }
    }
}

TEST_CASE("Cp is positive over every fitted range")
{
    for (const auto& sp : gri().species()) {
        for (int i = 0; i <= 100; ++i) {
            const double T = sp.poly.t_min + (sp.poly.t_max - sp.poly.t_min) * i / 100.0;
            CHECK(cp_R(sp, T).value > 0.0);
        }
    }
}

TEST_CASE("database lookup is case-insensitive and exact")
{
    const auto& db = gri();
    CHECK(db.find("n2") == db.find("N2"));
    CHECK(db.at("ar").name == "AR");
    CHECK_FALSE(db.find("XE").has_value());
    CHECK_THROWS_AS(db.index_of("XE"), UnknownSpecies);
    for (std::size_t i = 0; i < db.size(); ++i)
        CHECK(db.index_of(db[i].name) == i);
}

TEST_CASE("database rejects invalid records")
{
    auto ar = gri().at("AR");
    CHECK_THROWS_AS(ThermoDatabase({ar, ar}), DuplicateSpecies);
    auto bad = ar;
    bad.composition.clear();
    CHECK_THROWS_AS(ThermoDatabase({bad}), InvalidInput);
    bad = ar;
    bad.poly.t_mid = bad.poly.t_max + 1.0;
    CHECK_THROWS_AS(ThermoDatabase({bad}), InvalidInput);
}

TEST_CASE("molar masses from bundled atomic weights")
{
    CHECK(*molar_mass(gri().at("CH4")) == doctest::Approx(16.043).epsilon(1e-4));
    CHECK(*molar_mass(gri().at("AR")) == doctest::Approx(39.95));
    CHECK_FALSE(atomic_weight("XE").has_value());
}
