#include "helix/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>

#include "helix/error.hpp"

namespace helix {
namespace {

constexpr NaceMap make_default_nace_map() {
    struct Range {
        int lo, hi;
        std::uint8_t group;
    };
    constexpr Range ranges[] = {
        {1, 3, 1},   {5, 39, 2},  {41, 43, 3}, {45, 56, 4}, {58, 63, 5},
        {64, 66, 6}, {68, 68, 7}, {69, 82, 8}, {84, 88, 9}, {90, 99, 10},
    };
    NaceMap map{};
    for (const auto& r : ranges)
        for (int code = r.lo; code <= r.hi; ++code) map[static_cast<std::size_t>(code)] = r.group;
    return map;
}

constexpr NaceMap kDefaultNaceMap = make_default_nace_map();

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) return std::nullopt;
    }
    return value;
}

struct ColumnIndex {
    std::size_t firm_id, municipality, nace2, employees, turnover, foreign_share;
    std::size_t width;
};

ColumnIndex locate_columns(const std::vector<std::string>& header, const CsvSchema& schema) {
    auto find = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trim(header[i]) == name) return i;
        throw MissingColumn(name);
    };
    ColumnIndex idx{};
    idx.firm_id = find(schema.firm_id);
    idx.municipality = find(schema.municipality_code);
    idx.nace2 = find(schema.nace2);
    idx.employees = find(schema.employees);
    idx.turnover = find(schema.turnover);
    idx.foreign_share = find(schema.foreign_share);
    idx.width = header.size();
    return idx;
}

// Either returns a record or throws MalformedRow for this line.
FirmRecord parse_row(const std::vector<std::string>& fields, const ColumnIndex& idx, std::size_t line) {
    if (fields.size() != idx.width)
        throw MalformedRow(line, "expected " + std::to_string(idx.width) + " fields, found " +
                                     std::to_string(fields.size()));
    FirmRecord rec;
    rec.firm_id = std::string(trim(fields[idx.firm_id]));
    rec.municipality_code = std::string(trim(fields[idx.municipality]));
    if (rec.municipality_code.empty()) throw MalformedRow(line, "empty municipality_code");

    const auto nace = parse_number<int>(fields[idx.nace2]);
    if (!nace) throw MalformedRow(line, "nace2 is not an integer: '" + fields[idx.nace2] + "'");
    if (*nace < 1 || *nace > 99) throw MalformedRow(line, "nace2 outside 01-99: " + std::to_string(*nace));
    rec.nace2 = *nace;

    const auto employees = parse_number<std::int64_t>(fields[idx.employees]);
    if (!employees) throw MalformedRow(line, "employees is not an integer: '" + fields[idx.employees] + "'");
    if (*employees < 0) throw MalformedRow(line, "negative employees: " + std::to_string(*employees));
    rec.employees = *employees;

    const auto turnover = parse_number<double>(fields[idx.turnover]);
    if (!turnover) throw MalformedRow(line, "turnover is not numeric: '" + fields[idx.turnover] + "'");
    if (*turnover < 0) throw MalformedRow(line, "negative turnover");
    rec.turnover = *turnover;

    try {
        rec.foreign_share = parse_fraction_or_percent(fields[idx.foreign_share]);
    } catch (const InvalidConfig& e) {
        throw MalformedRow(line, std::string("foreign_share: ") + e.what());
    }
    return rec;
}

// Walks the data rows of a CSV stream; `on_row` receives (line number, fields).
void for_each_row(std::istream& source, const CsvSchema& schema,
                  const std::function<void(std::size_t, const std::vector<std::string>&,
                                           const ColumnIndex&)>& on_row) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<ColumnIndex> idx;
    while (std::getline(source, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (!idx) {
            idx = locate_columns(fields, schema);
            continue;
        }
        on_row(line_no, fields, *idx);
    }
    if (!idx) throw MissingColumn(schema.firm_id);
}

}  // namespace

const NaceMap& default_nace_map() { return kDefaultNaceMap; }

void ClassificationConfig::validate() const {
    if (!(foreign_cutoff > 0.0 && foreign_cutoff <= 1.0))
        throw InvalidConfig("foreign_cutoff must lie in (0, 1]");
    if (size_bin_edges.empty() || size_bin_edges.front() != 0)
        throw InvalidConfig("size_bin_edges must start at 0");
    if (!std::is_sorted(size_bin_edges.begin(), size_bin_edges.end(), std::less_equal<>{}) ||
        std::adjacent_find(size_bin_edges.begin(), size_bin_edges.end()) != size_bin_edges.end())
        throw InvalidConfig("size_bin_edges must be strictly increasing");
    if (size_bin_edges.size() > 255) throw InvalidConfig("too many size bins");
    for (auto g : nace_map)
        if (g > kTechGroupCount) throw InvalidConfig("technology group outside 1-10");
}

std::string size_class_label(const ClassificationConfig& config, SizeClass cls) {
    const auto& e = config.size_bin_edges;
    const std::size_t k = cls.index;
    if (k + 1 >= e.size()) return ">=" + std::to_string(e.back());
    if (e[k + 1] - e[k] == 1) return std::to_string(e[k]);
    return std::to_string(e[k]) + "-" + std::to_string(e[k + 1] - 1);
}

SizeClass size_class_of(std::int64_t employees, const ClassificationConfig& config) {
    const auto& e = config.size_bin_edges;
    // Last edge <= employees; bins are [e_k, e_{k+1}) with the final bin open.
    const auto it = std::upper_bound(e.begin(), e.end(), employees);
    if (it == e.begin()) throw InvalidConfig("employee count below the first size edge");
    return SizeClass{static_cast<std::uint8_t>(std::distance(e.begin(), it) - 1)};
}

ClassifiedFirm classify(const FirmRecord& record, const ClassificationConfig& config) {
    if (record.nace2 < 1 || record.nace2 > 99) throw UnmappedNace(record.nace2);
    const auto group = config.nace_map[static_cast<std::size_t>(record.nace2)];
    if (group == 0) throw UnmappedNace(record.nace2);

    ClassifiedFirm firm;
    firm.g = record.municipality_code;
    firm.o = size_class_of(record.employees, config);
    firm.t = TechGroup{group};
    firm.ownership = record.foreign_share >= config.foreign_cutoff ? Ownership::Foreign : Ownership::Domestic;
    firm.turnover = record.turnover;
    return firm;
}

std::vector<ClassifiedFirm> classify_all(std::span<const FirmRecord> records, const ClassificationConfig& config) {
    std::vector<ClassifiedFirm> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(classify(r, config));
    return out;
}

std::vector<FirmRecord> parse_firm_records(std::istream& source, const CsvSchema& schema) {
    std::vector<FirmRecord> records;
    for_each_row(source, schema, [&](std::size_t line, const auto& fields, const ColumnIndex& idx) {
        records.push_back(parse_row(fields, idx, line));
    });
    return records;
}

ValidationResult validate_firm_records(std::istream& source, const CsvSchema& schema,
                                       const ClassificationConfig& config) {
    ValidationResult result;
    for_each_row(source, schema, [&](std::size_t line, const auto& fields, const ColumnIndex& idx) {
        ++result.rows;
        try {
            (void)classify(parse_row(fields, idx, line), config);
        } catch (const MalformedRow& e) {
            result.issues.push_back({line, "MalformedRow: " + e.reason()});
        } catch (const UnmappedNace& e) {
            result.issues.push_back({line, "UnmappedNace: " + std::to_string(e.code())});
        }
    });
    return result;
}

double parse_fraction_or_percent(std::string_view text) {
    text = trim(text);
    bool percent = false;
    if (!text.empty() && text.back() == '%') {
        percent = true;
        text = trim(text.substr(0, text.size() - 1));
    }
    const auto value = parse_number<double>(text);
    if (!value) throw InvalidConfig("not a number: '" + std::string(text) + "'");
    const double fraction = percent ? *value / 100.0 : *value;
    if (fraction < 0.0 || fraction > 1.0) throw InvalidConfig("fraction outside [0, 1]: '" + std::string(text) + "'");
    return fraction;
}

ToolConfig parse_tool_config(std::istream& in) {
    ToolConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& why) {
        throw InvalidConfig("config line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) fail("expected key = value");
        const auto key = trim(body.substr(0, eq));
        const auto value = trim(body.substr(eq + 1));

        if (key == "foreign_cutoff") {
            try {
                cfg.classification.foreign_cutoff = parse_fraction_or_percent(value);
            } catch (const InvalidConfig& e) {
                fail(e.what());
            }
        } else if (key == "size_bin_edges") {
            std::vector<std::int64_t> edges;
            for (const auto& part : split_csv_line(value)) {
                const auto v = parse_number<std::int64_t>(part);
                if (!v) fail("bad size edge '" + part + "'");
                edges.push_back(*v);
            }
            cfg.classification.size_bin_edges = std::move(edges);
        } else if (key.starts_with("nace.")) {
            const auto code = parse_number<int>(key.substr(5));
            const auto group = parse_number<int>(value);
            if (!code || *code < 1 || *code > 99) fail("bad NACE code in '" + std::string(key) + "'");
            if (!group || *group < 0 || *group > kTechGroupCount) fail("technology group must be 0-10");
            cfg.classification.nace_map[static_cast<std::size_t>(*code)] = static_cast<std::uint8_t>(*group);
        } else if (key.starts_with("column.")) {
            const auto which = key.substr(7);
            std::string name(value);
            if (which == "firm_id") cfg.schema.firm_id = name;
            else if (which == "municipality_code") cfg.schema.municipality_code = name;
            else if (which == "nace2") cfg.schema.nace2 = name;
            else if (which == "employees") cfg.schema.employees = name;
            else if (which == "turnover_nok") cfg.schema.turnover = name;
            else if (which == "foreign_share") cfg.schema.foreign_share = name;
            else fail("unknown column '" + std::string(which) + "'");
        } else {
            fail("unknown key '" + std::string(key) + "'");
        }
    }
    try {
        cfg.classification.validate();
    } catch (const InvalidConfig& e) {
        fail(e.what());
    }
    return cfg;
}

}  // namespace helix
