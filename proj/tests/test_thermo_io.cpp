#include <string>

#include "doctest.h"
#include "flametemp/errors.hpp"
#include "flametemp/thermo_db.hpp"

using namespace flametemp;

namespace {

// AR record copied from the bundled file.
const std::string kArBlock =
    "AR                120186AR  1               G   300.000  5000.000 1000.00      1\n"
    " 2.50000000E+00 0.00000000E+00 0.00000000E+00 0.00000000E+00 0.00000000E+00    2\n"
    "-7.45375000E+02 4.36600000E+00 2.50000000E+00 0.00000000E+00 0.00000000E+00    3\n"
    " 0.00000000E+00 0.00000000E+00-7.45375000E+02 4.36600000E+00                   4\n";

std::string replace_line(const std::string& block, int index, const std::string& line)
{
    std::string out;
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        const auto end = block.find('\n', pos);
        out += (i == index ? line : block.substr(pos, end - pos)) + "\n";
        pos = end + 1;
    }
    return out;
}

int parse_error_line(const std::string& text)
{
    try {
        parse_thermo_text(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST_CASE("bundled GRI-Mech 3.0 file")
{
    const auto& db = bundled_gri30();
    CHECK(db.size() == 53);
    CHECK(db.elements() == std::vector<std::string>{"AR", "C", "H", "N", "O"});
    const auto& ar = db.at("AR");
    CHECK(ar.composition == std::map<std::string, double>{{"AR", 1.0}});
    for (int k = 1; k <= 4; ++k)
        CHECK(ar.poly.low[k] == 0.0);
    CHECK(db.at("HCNO").poly.t_mid == 1382.0);
    CHECK(db.at("HOCN").poly.t_mid == 1368.0);
    CHECK(db.at("HNCO").poly.t_mid == 1478.0);
    int thousand = 0;
    for (const auto& sp : db.species())
        thousand += sp.poly.t_mid == 1000.0 ? 1 : 0;
    CHECK(thousand == 50);
    CHECK(db.at("H2").note == "TPIS78");
    CHECK(db.at("CO2").poly.t_max == 3500.0);
    CHECK(db.at("N2").poly.t_max == 5000.0);
}

TEST_CASE("parse a single block")
{
    std::vector<std::string> warnings;
    const auto db = parse_thermo_text("THERMO\n   300.000  1000.000  5000.000\n" + kArBlock + "END\n", &warnings);
    CHECK(warnings.empty());
    REQUIRE(db.size() == 1);
    const auto& ar = db[0];
    CHECK(ar.name == "AR");
    CHECK(ar.phase == 'G');
    CHECK(ar.poly.t_min == 300.0);
    CHECK(ar.poly.t_max == 5000.0);
    CHECK(ar.poly.low[5] == -745.375);
    CHECK(ar.poly.high[6] == 4.366);
    CHECK(ar.source_line == 3);
}

TEST_CASE("comments, blank lines, ragged tails and trailing content")
{
    std::string block = kArBlock;
    // Trailing whitespace after the marker column.
    block.insert(block.find('\n'), "    ");
    const std::string text = "! header comment\nTHERMO ALL\n   300.000  1000.000  5000.000\n\n" + block +
                             "END\nthis is ignored\n";
    CHECK(parse_thermo_text(text).size() == 1);
}

TEST_CASE("blank T_mid falls back to the global default")
{
    const std::string line1 = "XX                test  AR  1               G   300.000  5000.000              1";
    const auto text = "THERMO\n   300.000  1100.000  5000.000\n" + replace_line(kArBlock, 0, line1) + "END\n";
    CHECK(parse_thermo_text(text)[0].poly.t_mid == 1100.0);
    // Without a header the built-in 1000 K default applies.
    CHECK(parse_thermo_text(replace_line(kArBlock, 0, line1))[0].poly.t_mid == 1000.0);
}

TEST_CASE("fifth element slot and fractional counts")
{
    const std::string line1 = "ODD               test  C   1H 1.5O   1N   1G   300.000  5000.000 1000.00AR  1 1";
    const auto db = parse_thermo_text(replace_line(kArBlock, 0, line1));
    CHECK(db[0].composition == std::map<std::string, double>{{"AR", 1}, {"C", 1}, {"H", 1.5}, {"N", 1}, {"O", 1}});
    CHECK(parse_thermo_text(serialize_thermo(db)) == db);
}

TEST_CASE("missing END is tolerated with a warning")
{
    std::vector<std::string> warnings;
    CHECK(parse_thermo_text(kArBlock, &warnings).size() == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("END") != std::string::npos);
}

TEST_CASE("parse errors carry line numbers")
{
    CHECK_THROWS_AS(parse_thermo_text(""), ParseError);
    CHECK_THROWS_AS(parse_thermo_text("THERMO\n   300.000  1000.000  5000.000\nEND\n"), ParseError);

    SUBCASE("short line")
    {
        const auto text = replace_line(kArBlock, 2, "-7.45375000E+02 4.36600000E+00 2.50000000E+00");
        CHECK(parse_error_line(text) == 3);
    }
    SUBCASE("bad number")
    {
        const auto text = replace_line(
            kArBlock, 1, " 2.5000000xE+00 0.00000000E+00 0.00000000E+00 0.00000000E+00 0.00000000E+00    2");
        CHECK(parse_error_line(text) == 2);
    }
    SUBCASE("wrong marker order")
    {
        const auto text = replace_line(
            kArBlock, 2, "-7.45375000E+02 4.36600000E+00 2.50000000E+00 0.00000000E+00 0.00000000E+00    4");
        CHECK(parse_error_line(text) == 3);
    }
    SUBCASE("truncated block")
    {
        const auto text = "THERMO\n   300.000  1000.000  5000.000\n" + kArBlock.substr(0, 2 * 81);
        CHECK(parse_error_line(text) == 4);
    }
    SUBCASE("duplicate species")
    {
        try {
            parse_thermo_text(kArBlock + kArBlock + "END\n");
            FAIL("expected DuplicateSpecies");
        } catch (const DuplicateSpecies& e) {
            CHECK(e.name() == "AR");
            CHECK(e.line() == 5);
        }
    }
    SUBCASE("inverted temperature range")
    {
        const std::string line1 = "AR                120186AR  1               G  5000.000   300.000 1000.00      1";
        CHECK(parse_error_line(replace_line(kArBlock, 0, line1)) == 1);
    }
}

TEST_CASE("round trip of the bundled database")
{
    const auto& db = bundled_gri30();
    const auto text = serialize_thermo(db);
    const auto again = parse_thermo_text(text);
    CHECK(again == db);
    CHECK(serialize_thermo(again) == text);
}

TEST_CASE("round trip of values that fit the fixed columns")
{
    auto ar = bundled_gri30().at("AR");
    ar.poly.low[2] = 1.23456789e-7;
    ar.poly.high[0] = -2.50000001e+3;
    ar.poly.t_mid = 1000.125;
    ar.poly.t_max = 6000.5;
    const ThermoDatabase db({ar});
    CHECK(parse_thermo_text(serialize_thermo(db)) == db);
}

TEST_CASE("coefficients with more digits than the field are rounded")
{
    auto ar = bundled_gri30().at("AR");
    ar.poly.low[2] = 1.234567890123e-7;
    const auto back = parse_thermo_text(serialize_thermo(ThermoDatabase({ar})))[0];
    CHECK(back.poly.low[2] != ar.poly.low[2]);
    CHECK(back.poly.low[2] == doctest::Approx(ar.poly.low[2]).epsilon(1e-8));
}

TEST_CASE("serialized layout")
{
    const ThermoDatabase db({bundled_gri30().at("AR")});
    const auto text = serialize_thermo(db);
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto end = text.find('\n', pos);
        lines.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    REQUIRE(lines.size() == 7); // THERMO, ranges, 4 record lines, END
    for (int i = 2; i < 6; ++i) {
        CHECK(lines[i].size() == 80);
        CHECK(lines[i][79] == static_cast<char>('1' + (i - 2)));
    }
    CHECK(lines.back() == "END");
}

TEST_CASE("serialized N2 patch value")
{
    const auto text = serialize_thermo(apply_n2_patch(bundled_gri30()));
    CHECK(text.find("-1.02107188E+03") != std::string::npos);
    CHECK(parse_thermo_text(text).at("N2").poly.low[5] == -1021.07188);
}

TEST_CASE("serialize rejects names longer than 18 characters")
{
    auto ar = bundled_gri30().at("AR");
    ar.name = "ABCDEFGHIJKLMNOPQRS";
    CHECK_THROWS_AS(serialize_thermo(ThermoDatabase({ar})), SerializeError);
}
