import math

import pytest

import flametemp as ft


def test_bundled_database():
    db = ft.bundled_gri30()
    assert len(db) == 53
    assert "N2" in db
    assert db["HCNO"].poly.t_mid == 1382.0
    assert db.elements == ["AR", "C", "H", "N", "O"]


def test_properties_and_patch():
    value, extrapolated = ft.cp_R("AR", 1500.0)
    assert value == pytest.approx(2.5)
    assert not extrapolated
    raw = ft.bundled_gri30()
    assert ft.h_molar("N2", 298.15, db=raw)[0] == pytest.approx(1.430, abs=0.05)
    assert abs(ft.h_molar("N2", 298.15, db=ft.apply_n2_patch(raw))[0]) <= 0.05
    assert ft.h_RT("CO2", 6000.0)[1]


def test_round_trip_and_parse_error():
    db = ft.bundled_gri30()
    again, warnings = ft.parse_thermo_text(ft.serialize_thermo(db))
    assert again == db
    assert warnings == []
    with pytest.raises(ft.ParseError):
        ft.parse_thermo_text("")
    with pytest.raises(ft.Error):
        ft.parse_thermo_text("THERMO\nEND\n")


def test_complete_combustion():
    reactants = ft.stoichiometric_reactants("CH4", "air3")
    result = ft.solve_aft_complete(reactants, db=ft.apply_n2_patch(ft.bundled_gri30()))
    assert result["T"] == pytest.approx(2330.55, abs=0.01)
    assert result["products"]["CO2"] == pytest.approx(1.0)
    with pytest.raises(ft.RichMixtureError):
        ft.complete_products([("CH4", 1.0, 298.15), ("O2", 1.0, 298.15)])


def test_equilibrium_tp():
    sol = ft.equilibrate_tp({"H": 2.0, "O": 1.0}, 3000.0, species=["H2O", "H2", "O2"])
    assert sol["mole_fractions"]["H2O"] == pytest.approx(0.79535059, abs=1e-6)
    assert sol["max_element_residual"] <= 1e-10
    with pytest.raises(ft.UnknownSpecies):
        ft.equilibrate_tp({"H": 2.0}, 3000.0, species=["XE"])


def test_cases_and_table():
    r = ft.run_case("h2", "o2", "equilibrium")
    assert r["t_ad_K"] == pytest.approx(3076.92, abs=0.5)
    assert r["reference"]["cearun_K"] == 3074.51
    rows = ft.run_table()
    assert len(rows) == 8
    assert all("t_ad_K" in row for row in rows)
    refs = ft.reference_table()
    assert [x["mode"] for x in refs].count("equilibrium") == 4
    assert math.isclose(ft.deviation_percent(3052.06, 3050.12), 0.0636, rel_tol=1e-2)
    with pytest.raises(ft.InvalidInput):
        ft.run_case("c8h18")
