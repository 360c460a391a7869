#include <cmath>

#include "doctest.h"
#include "flametemp/errors.hpp"
#include "flametemp/stoich.hpp"

using namespace flametemp;

namespace {

const ThermoDatabase& db() { return bundled_gri30(); }

double fraction_of(const std::vector<OxidizerComponent>& parts, const std::string& name)
{
    for (const auto& p : parts)
        if (p.species == name)
            return p.mole_fraction;
    return 0.0;
}

} // namespace

TEST_CASE("oxidizer compositions are normalized")
{
    for (auto ox : {Oxidizer::PureO2, Oxidizer::Air3, Oxidizer::Air4}) {
        double sum = 0.0;
        for (const auto& p : oxidizer_composition(ox))
            sum += p.mole_fraction;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(oxidizer_composition(ox).front().species == "O2");
    }
    const auto air3 = oxidizer_composition(Oxidizer::Air3);
    CHECK(fraction_of(air3, "N2") / fraction_of(air3, "O2") == doctest::Approx(78.0 / 21.0));
    CHECK(fraction_of(air3, "AR") / fraction_of(air3, "O2") == doctest::Approx(1.0 / 21.0));
    const auto air4 = oxidizer_composition(Oxidizer::Air4);
    CHECK(fraction_of(air4, "CO2") / fraction_of(air4, "O2") == doctest::Approx(0.0319 / 20.9476));
}

TEST_CASE("oxidizer names")
{
    CHECK(parse_oxidizer("AIR3") == Oxidizer::Air3);
    CHECK(parse_oxidizer("o2") == Oxidizer::PureO2);
    CHECK(parse_oxidizer("air4") == Oxidizer::Air4);
    CHECK_FALSE(parse_oxidizer("h2o").has_value());
    CHECK(to_string(Oxidizer::Air4) == "air4");
}

TEST_CASE("fuel specs from the database")
{
    const auto ch4 = FuelSpec::from_database(db(), "ch4");
    CHECK(ch4.carbon == 1.0);
    CHECK(ch4.hydrogen == 4.0);
    CHECK(ch4.oxygen_demand() == 2.0);
    const auto h2 = FuelSpec::from_database(db(), "H2");
    CHECK(h2.carbon == 0.0);
    CHECK(h2.oxygen_demand() == 0.5);
    CHECK(FuelSpec::from_database(db(), "C3H8").oxygen_demand() == 5.0);
    CHECK_THROWS_AS(FuelSpec::from_database(db(), "CH3OH"), UnsupportedFuel);
    CHECK_THROWS_AS(FuelSpec::from_database(db(), "C"), UnsupportedFuel);
    CHECK_THROWS_AS(FuelSpec::from_database(db(), "XE"), UnknownSpecies);
}

TEST_CASE("stoichiometric reactants")
{
    const auto ch4 = FuelSpec::from_database(db(), "CH4");
    const auto mix = stoichiometric_reactants(ch4, Oxidizer::Air3, 1.0, 298.15, 101325.0);
    CHECK(mix.moles_of("CH4") == 1.0);
    CHECK(mix.moles_of("O2") == 2.0);
    CHECK(mix.moles_of("N2") == doctest::Approx(2.0 * 78.0 / 21.0).epsilon(1e-14));
    CHECK(mix.moles_of("AR") == doctest::Approx(2.0 / 21.0).epsilon(1e-14));
    for (const auto& e : mix.entries)
        CHECK(e.temperature == 298.15);

    const auto oxy = stoichiometric_reactants(FuelSpec::from_database(db(), "H2"), Oxidizer::PureO2, 3.0, 300.0,
                                              2e5);
    CHECK(oxy.entries.size() == 2);
    CHECK(oxy.moles_of("O2") == 1.5);
    CHECK(oxy.pressure == 2e5);
    CHECK_THROWS_AS(stoichiometric_reactants(ch4, Oxidizer::PureO2, 0.0, 298.15, 101325.0), InvalidInput);
}

TEST_CASE("element totals are conserved by complete combustion")
{
    for (auto ox : {Oxidizer::PureO2, Oxidizer::Air3, Oxidizer::Air4}) {
        for (const char* fuel : {"CH4", "H2", "C2H6"}) {
            const auto reactants =
                stoichiometric_reactants(FuelSpec::from_database(db(), fuel), ox, 1.7, 298.15, 101325.0);
            const auto products = complete_products(reactants, db());
            const auto before = element_totals(reactants, db());
            const auto after = element_totals(products, db());
            REQUIRE(before.size() == after.size());
            for (const auto& [el, n] : before)
                CHECK(after.at(el) == doctest::Approx(n).epsilon(1e-14));
            CHECK(products.moles_of("O2") <= 1e-12);
        }
    }
}

TEST_CASE("complete products of stoichiometric methane in air")
{
    const auto reactants =
        stoichiometric_reactants(FuelSpec::from_database(db(), "CH4"), Oxidizer::Air3, 1.0, 298.15, 101325.0);
    const auto p = complete_products(reactants, db());
    CHECK(p.moles_of("CO2") == 1.0);
    CHECK(p.moles_of("H2O") == 2.0);
    CHECK(p.moles_of("N2") == reactants.moles_of("N2"));
    CHECK(p.moles_of("AR") == reactants.moles_of("AR"));
    CHECK(p.moles_of("CH4") == 0.0);
}

TEST_CASE("lean mixtures keep surplus oxygen; rich mixtures are rejected")
{
    MixtureSpec lean{{{"H2", 1.0}, {"O2", 1.0}}};
    const auto p = complete_products(lean, db());
    CHECK(p.moles_of("O2") == 0.5);
    CHECK(p.moles_of("H2O") == 1.0);

    MixtureSpec rich{{{"CH4", 1.0}, {"O2", 1.5}}};
    CHECK_THROWS_AS(complete_products(rich, db()), RichMixtureError);

    MixtureSpec odd{{{"CH3OH", 1.0}, {"O2", 3.0}}};
    CHECK_THROWS_AS(complete_products(odd, db()), UnsupportedFuel);
}

TEST_CASE("mixture enthalpy")
{
    MixtureSpec mix{{{"CH4", 1.0, 298.15}, {"O2", 2.0, 298.15}}};
    CHECK(mixture_enthalpy(mix, db()).value ==
          doctest::Approx(h_molar(db().at("CH4"), 298.15).value + 2.0 * h_molar(db().at("O2"), 298.15).value));

    // Each entry at its own temperature unless overridden.
    MixtureSpec hot{{{"N2", 1.0, 1000.0}, {"AR", 2.0, 500.0}}};
    const double own = h_molar(db().at("N2"), 1000.0).value + 2.0 * h_molar(db().at("AR"), 500.0).value;
    CHECK(mixture_enthalpy(hot, db()).value == doctest::Approx(own));
    const double at_600 = h_molar(db().at("N2"), 600.0).value + 2.0 * h_molar(db().at("AR"), 600.0).value;
    CHECK(mixture_enthalpy(hot, db(), 600.0).value == doctest::Approx(at_600));
    CHECK_FALSE(mixture_enthalpy(hot, db()).extrapolated);
    CHECK(mixture_enthalpy(hot, db(), 6000.0).extrapolated);

    // Argon: Cp = 5/2 R exactly.
    MixtureSpec ar{{{"AR", 1.0}}};
    CHECK(mixture_enthalpy(ar, db(), 1298.15).value == doctest::Approx(2.5 * kGasConstant * 1000.0).epsilon(1e-12));
}

TEST_CASE("mixture validation")
{
    CHECK_THROWS_AS(MixtureSpec{}.validate(), InvalidInput);
    CHECK_THROWS_AS((MixtureSpec{{{"N2", -1.0}}}.validate()), InvalidInput);
    CHECK_THROWS_AS((MixtureSpec{{{"N2", 1.0, 0.0}}}.validate()), InvalidInput);
    CHECK_THROWS_AS((MixtureSpec{{{"N2", 0.0}}}.validate()), InvalidInput);
    MixtureSpec neg_p{{{"N2", 1.0}}, -1.0};
    CHECK_THROWS_AS(neg_p.validate(), InvalidInput);
    MixtureSpec ok{{{"N2", 1.0}, {"n2", 2.0}}};
    CHECK(ok.moles_of("N2") == 3.0);
    CHECK(ok.scaled(2.0).total_moles() == 6.0);
}
