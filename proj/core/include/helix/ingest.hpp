#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace helix {

/// One raw firm row as it appears in the source CSV.
struct FirmRecord {
    std::string firm_id;
    std::string municipality_code;
    int nace2 = 0;
    std::int64_t employees = 0;
    double turnover = 0.0;       // NOK
    double foreign_share = 0.0;  // fraction in [0, 1]

    bool operator==(const FirmRecord&) const = default;
};

enum class Ownership : std::uint8_t { Domestic, Foreign };

/// Index into ClassificationConfig::size_bin_edges. With the default edges the
/// eight classes are 0, 1-4, 5-9, 10-19, 20-49, 50-99, 100-249, 250+.
struct SizeClass {
    std::uint8_t index = 0;
    auto operator<=>(const SizeClass&) const = default;
};

/// High-level NACE Rev. 2 aggregation group, 1..10.
struct TechGroup {
    std::uint8_t value = 0;
    auto operator<=>(const TechGroup&) const = default;
};

inline constexpr int kTechGroupCount = 10;

struct ClassifiedFirm {
    std::string g;  // municipality, opaque
    SizeClass o;
    TechGroup t;
    Ownership ownership = Ownership::Domestic;
    double turnover = 0.0;

    bool operator==(const ClassifiedFirm&) const = default;
};

/// Two-digit NACE code -> technology group. Entry 0 means "no group".
using NaceMap = std::array<std::uint8_t, 100>;

/// The ten-group aggregation of two-digit NACE Rev. 2 codes:
///   1: 01-03  2: 05-39  3: 41-43  4: 45-56  5: 58-63
///   6: 64-66  7: 68     8: 69-82  9: 84-88  10: 90-99
/// Codes 04, 40, 44, 57, 67, 83 and 89 are unmapped.
const NaceMap& default_nace_map();

struct ClassificationConfig {
    double foreign_cutoff = 0.20;
    std::vector<std::int64_t> size_bin_edges{0, 1, 5, 10, 20, 50, 100, 250};
    NaceMap nace_map = default_nace_map();

    /// Throws InvalidConfig when the cutoff is outside (0,1] or the edges are
    /// not strictly increasing from 0.
    void validate() const;
};

/// Human-readable label for a size bin, e.g. "0", "1-4", ">=250".
std::string size_class_label(const ClassificationConfig& config, SizeClass cls);

/// Column names used to locate the required fields in the CSV header.
struct CsvSchema {
    std::string firm_id = "firm_id";
    std::string municipality_code = "municipality_code";
    std::string nace2 = "nace2";
    std::string employees = "employees";
    std::string turnover = "turnover_nok";
    std::string foreign_share = "foreign_share";
};

/// Strict CSV ingest: any bad row aborts with MalformedRow, a missing header
/// column with MissingColumn. Quoted fields ("a,b" and "" escapes) are honoured.
std::vector<FirmRecord> parse_firm_records(std::istream& source, const CsvSchema& schema = {});

/// Lenient variant used by `validate`: collects every row-level problem
/// (including unmapped NACE codes) instead of stopping at the first.
struct RowIssue {
    std::size_t line = 0;
    std::string message;
};

struct ValidationResult {
    std::size_t rows = 0;
    std::vector<RowIssue> issues;
    bool clean() const noexcept { return issues.empty(); }
};

ValidationResult validate_firm_records(std::istream& source, const CsvSchema& schema,
                                       const ClassificationConfig& config);

SizeClass size_class_of(std::int64_t employees, const ClassificationConfig& config);

ClassifiedFirm classify(const FirmRecord& record, const ClassificationConfig& config = {});

std::vector<ClassifiedFirm> classify_all(std::span<const FirmRecord> records,
                                         const ClassificationConfig& config = {});

/// Key-value configuration file:
///
///     # comment
///     foreign_cutoff = 0.20          (or 20%)
///     size_bin_edges = 0,1,5,10,20,50,100,250
///     nace.40 = 2                     (add or override a single code)
///     column.turnover_nok = revenue   (rename a CSV column)
///
/// Unknown keys are rejected.
struct ToolConfig {
    ClassificationConfig classification;
    CsvSchema schema;
};

ToolConfig parse_tool_config(std::istream& in);

/// Accepts "0.2", "20%" or "20 %" and returns a fraction.
double parse_fraction_or_percent(std::string_view text);

}  // namespace helix
