// CHEMKIN THERMO reader/writer. Column layout (1-based):
//   line 1: name 1-18, note 19-24, four (element, count) pairs 25-44, phase 45,
//           T_min 46-55, T_max 56-65, T_mid 66-73, optional fifth pair 74-78, '1' at 80
//   lines 2-4: 15-column coefficients a1H..a5H | a6H a7H a1L..a3L | a4L..a7L, markers 2,3,4

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flametemp/errors.hpp"
#include "flametemp/thermo_db.hpp"

namespace flametemp {

namespace {

constexpr std::size_t kMarkerColumn = 80;

struct Line {
    std::string_view text;
    int number;
};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

bool is_comment_or_blank(std::string_view s)
{
    auto t = trim(s);
    return t.empty() || t.front() == '!';
}

bool starts_with_keyword(std::string_view s, std::string_view keyword)
{
    auto t = to_upper(trim(s));
    return t.rfind(keyword, 0) == 0;
}

/// Columns [first, last] (1-based, inclusive); short lines yield the available part.
std::string_view columns(std::string_view line, std::size_t first, std::size_t last)
{
    if (line.size() < first)
        return {};
    return line.substr(first - 1, std::min(last, line.size()) - first + 1);
}

double parse_number(std::string_view field, int line, const char* what)
{
    auto t = trim(field);
    if (t.empty())
        throw ParseError(std::string("empty numeric field (") + what + ")", line);
    std::string buf(t);
    for (auto& c : buf)
        if (c == 'D' || c == 'd')
            c = 'E';
    const char* begin = buf.data();
    if (*begin == '+')
        ++begin;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, buf.data() + buf.size(), value);
    if (ec != std::errc() || ptr != buf.data() + buf.size() || !std::isfinite(value))
        throw ParseError(std::string("cannot parse ") + what + " from '" + buf + "'", line);
    return value;
}

void require_marker(const Line& l, char marker)
{
    // Trailing whitespace is tolerated, so measure the trimmed length.
    auto content = l.text.substr(0, l.text.find_last_not_of(" \t\r") + 1);
    if (content.size() < kMarkerColumn)
        throw ParseError("line shorter than " + std::to_string(kMarkerColumn) +
                             " columns (expected marker '" + marker + "' in column 80)",
                         l.number);
    if (l.text[kMarkerColumn - 1] != marker)
        throw ParseError(std::string("expected line marker '") + marker + "' in column 80, found '" +
                             l.text[kMarkerColumn - 1] + "'",
                         l.number);
}

void add_element(SpeciesRecord& sp, std::string_view symbol_field, std::string_view count_field,
                 int line)
{
    auto symbol = to_upper(trim(symbol_field));
    if (symbol.empty())
        return;
    if (trim(count_field).empty())
        throw ParseError("element '" + symbol + "' has no atom count", line);
    const double count = parse_number(count_field, line, "element count");
    if (count == 0.0)
        return;
    if (count < 0.0)
        throw ParseError("negative atom count for element '" + symbol + "'", line);
    sp.composition[symbol] += count;
}

struct GlobalRange {
    double t_low = 300.0;
    double t_mid = 1000.0;
    double t_high = 5000.0;
    bool present = false;
};

double temperature_field(std::string_view field, std::optional<double> fallback, int line,
                         const char* what)
{
    if (trim(field).empty()) {
        if (fallback)
            return *fallback;
        throw ParseError(std::string("missing ") + what, line);
    }
    return parse_number(field, line, what);
}

SpeciesRecord parse_block(const std::array<Line, 4>& block, const GlobalRange& global)
{
    const auto& first = block[0];
    require_marker(first, '1');
    for (int k = 1; k < 4; ++k)
        require_marker(block[k], static_cast<char>('1' + k));

    SpeciesRecord sp;
    sp.source_line = first.number;
    auto name_field = trim(columns(first.text, 1, 18));
    sp.name = to_upper(name_field.substr(0, name_field.find_first_of(" \t")));
    if (sp.name.empty())
        throw ParseError("missing species name in columns 1-18", first.number);
    sp.note = std::string(trim(columns(first.text, 19, 24)));

    for (std::size_t pair = 0; pair < 4; ++pair) {
        const std::size_t col = 25 + 5 * pair;
        add_element(sp, columns(first.text, col, col + 1), columns(first.text, col + 2, col + 4),
                    first.number);
    }
    add_element(sp, columns(first.text, 74, 75), columns(first.text, 76, 78), first.number);
    if (sp.composition.empty())
        throw ParseError("species '" + sp.name + "' has no elements", first.number);

    auto phase = columns(first.text, 45, 45);
    sp.phase = phase.empty() ? ' ' : static_cast<char>(std::toupper(static_cast<unsigned char>(phase[0])));

    auto fb = [&](double v) { return global.present ? std::optional<double>(v) : std::nullopt; };
    sp.poly.t_min = temperature_field(columns(first.text, 46, 55), fb(global.t_low), first.number, "T_min");
    sp.poly.t_max = temperature_field(columns(first.text, 56, 65), fb(global.t_high), first.number, "T_max");
    sp.poly.t_mid = temperature_field(columns(first.text, 66, 73), global.t_mid, first.number, "T_mid");
    if (!(sp.poly.t_min < sp.poly.t_mid && sp.poly.t_mid < sp.poly.t_max))
        throw ParseError("species '" + sp.name + "' violates T_min < T_mid < T_max", first.number);

    std::array<double, 14> c{};
    std::size_t k = 0;
    for (int li = 1; li < 4; ++li) {
        const int fields = li == 3 ? 4 : 5;
        for (int f = 0; f < fields; ++f, ++k) {
            const std::size_t col = 1 + 15 * static_cast<std::size_t>(f);
            c[k] = parse_number(columns(block[li].text, col, col + 14), block[li].number, "coefficient");
        }
    }
    std::copy(c.begin(), c.begin() + 7, sp.poly.high.begin());
    std::copy(c.begin() + 7, c.end(), sp.poly.low.begin());
    return sp;
}

std::vector<Line> split_lines(std::string_view text)
{
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto l = text.substr(pos, end - pos);
        if (!l.empty() && l.back() == '\r')
            l.remove_suffix(1);
        lines.push_back({l, ++number});
        pos = end + 1;
    }
    return lines;
}

} // namespace

ThermoDatabase parse_thermo_text(std::string_view text, std::vector<std::string>* warnings)
{
    const auto lines = split_lines(text);
    std::size_t i = 0;
    auto next_significant = [&]() -> const Line* {
        while (i < lines.size() && is_comment_or_blank(lines[i].text))
            ++i;
        return i < lines.size() ? &lines[i] : nullptr;
    };

    GlobalRange global;
    if (const Line* l = next_significant(); l != nullptr && starts_with_keyword(l->text, "THERMO")) {
        ++i;
        const Line* range = next_significant();
        if (range == nullptr)
            throw ParseError("missing global temperature line after THERMO", l->number);
        std::istringstream in{std::string(range->text)};
        std::string a, b, c;
        in >> a >> b >> c;
        global.t_low = parse_number(a, range->number, "global T_low");
        global.t_mid = parse_number(b, range->number, "global T_mid");
        global.t_high = parse_number(c, range->number, "global T_high");
        global.present = true;
        ++i;
    }

    std::vector<SpeciesRecord> records;
    bool saw_end = false;
    while (const Line* l = next_significant()) {
        if (starts_with_keyword(l->text, "END")) {
            saw_end = true;
            break;
        }
        std::array<Line, 4> block;
        block[0] = *l;
        ++i;
        for (int k = 1; k < 4; ++k) {
            const Line* cont = next_significant();
            if (cont == nullptr)
                throw ParseError("unexpected end of input inside species block started at line " +
                                     std::to_string(block[0].number),
                                 lines.empty() ? 0 : lines.back().number);
            block[k] = *cont;
            ++i;
        }
        records.push_back(parse_block(block, global));
    }

    if (records.empty())
        throw ParseError("no species records found", 0);
    if (!saw_end && warnings != nullptr)
        warnings->push_back("thermo data has no END line; input may be truncated");

    try {
        return ThermoDatabase(std::move(records));
    } catch (const InvalidInput& e) {
        throw ParseError(e.what(), 0);
    }
}

ThermoDatabase load_thermo_file(const std::filesystem::path& path, std::vector<std::string>* warnings)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open thermo file '" + path.string() + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_thermo_text(ss.str(), warnings);
}

// ---------------------------------------------------------------------------

namespace {

bool round_trips(const std::string& s, double value)
{
    double back = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
    return ec == std::errc() && ptr == s.data() + s.size() && back == value;
}

std::string shortest(double value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string right_align(const std::string& s, std::size_t width)
{
    return std::string(width - s.size(), ' ') + s;
}

/// Preferred printf form when it is exact, otherwise the shortest exact form.
std::string fit_number(double value, const char* preferred, std::size_t width, const std::string& what)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, preferred, value);
    std::string s = buf;
    if (s.size() <= width && round_trips(s, value))
        return right_align(s, width);
    std::string exact = shortest(value);
    if (exact.size() <= width)
        return right_align(exact, width);
    if (s.size() <= width && what == "coefficient")
        return right_align(s, width);
    throw SerializeError(what + " " + exact + " does not fit a " + std::to_string(width) + "-column field");
}

std::string element_pair(const std::string& symbol, double count, const std::string& species)
{
    if (symbol.size() > 2)
        throw SerializeError("element symbol '" + symbol + "' of " + species + " exceeds 2 characters");
    std::string sym = symbol;
    sym.resize(2, ' ');
    if (count == std::floor(count) && count < 1000.0) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "%3d", static_cast<int>(count));
        return sym + buf;
    }
    return sym + fit_number(count, "%3g", 3, "atom count of " + species);
}

void write_line(std::ostringstream& out, std::string body, char marker)
{
    body.resize(kMarkerColumn - 1, ' ');
    out << body << marker << '\n';
}

} // namespace

std::string serialize_thermo(const ThermoDatabase& db)
{
    std::ostringstream out;
    out << "THERMO ALL\n";
    out << "   300.000  1000.000  5000.000\n";
    for (const auto& sp : db.species()) {
        if (sp.name.size() > 18)
            throw SerializeError("species name '" + sp.name + "' exceeds 18 characters");
        if (sp.note.size() > 6)
            throw SerializeError("note of species '" + sp.name + "' exceeds 6 characters");
        if (sp.composition.size() > 5)
            throw SerializeError("species '" + sp.name + "' has more than 5 elements");

        std::string l1 = sp.name;
        l1.resize(18, ' ');
        std::string note = sp.note;
        note.resize(6, ' ');
        l1 += note;
        std::string fifth;
        std::size_t n = 0;
        for (const auto& [el, count] : sp.composition) {
            auto pair = element_pair(el, count, sp.name);
            if (n++ < 4)
                l1 += pair;
            else
                fifth = pair;
        }
        l1.resize(44, ' ');
        l1 += sp.phase;
        l1 += fit_number(sp.poly.t_min, "%.3f", 10, "T_min");
        l1 += fit_number(sp.poly.t_max, "%.3f", 10, "T_max");
        l1 += fit_number(sp.poly.t_mid, "%.2f", 8, "T_mid");
        if (!fifth.empty())
            l1 += fifth;
        write_line(out, l1, '1');

        std::array<double, 14> c{};
        std::copy(sp.poly.high.begin(), sp.poly.high.end(), c.begin());
        std::copy(sp.poly.low.begin(), sp.poly.low.end(), c.begin() + 7);
        std::size_t k = 0;
        for (int li = 0; li < 3; ++li) {
            std::string body;
            const int fields = li == 2 ? 4 : 5;
            for (int f = 0; f < fields; ++f, ++k)
                body += fit_number(c[k], "%.8E", 15, "coefficient");
            write_line(out, body, static_cast<char>('2' + li));
        }
    }
    out << "END\n";
    return out.str();
}

} // namespace flametemp
