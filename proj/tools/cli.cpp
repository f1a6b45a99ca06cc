#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "helix/cube.hpp"
#include "helix/decomp.hpp"
#include "helix/error.hpp"
#include "helix/ingest.hpp"
#include "helix/json_io.hpp"
#include "helix/stats.hpp"
#include "helix/synthlab.hpp"

#ifndef HELIX_VERSION
#define HELIX_VERSION "0.0.0"
#endif

namespace helix::cli {
namespace {

using nlohmann::json;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open '" + path + "' for reading");
    return in;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open '" + path + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw IoFailure("write to '" + path + "' failed");
}

ToolConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    auto in = open_input(path);
    try {
        return parse_tool_config(in);
    } catch (const InvalidConfig& e) {
        throw UsageFailure(path + ": " + e.what());
    }
}

// Canonical text of every setting that can change a result.
std::string canonical_config(const ToolConfig& cfg, const std::string& extra) {
    std::ostringstream s;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", cfg.classification.foreign_cutoff);
    s << "foreign_cutoff=" << buf << '\n' << "size_bin_edges=";
    for (auto e : cfg.classification.size_bin_edges) s << e << ',';
    s << "\nnace=";
    for (auto g : cfg.classification.nace_map) s << int(g) << ',';
    const auto& sc = cfg.schema;
    s << "\ncolumns=" << sc.firm_id << ',' << sc.municipality_code << ',' << sc.nace2 << ',' << sc.employees << ','
      << sc.turnover << ',' << sc.foreign_share << '\n'
      << extra;
    return s.str();
}

LogBase parse_log_base(const std::string& text) {
    if (text == "2") return LogBase::Two;
    if (text == "e") return LogBase::E;
    if (text == "10") return LogBase::Ten;
    throw UsageFailure("--log-base must be 2, e or 10");
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(part, &used));
            if (part.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw UsageFailure(std::string("bad number in ") + what + ": '" + part + "'");
        }
    }
    if (out.empty()) throw UsageFailure(std::string(what) + " is empty");
    return out;
}

TurnoverLaw parse_turnover_law(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    if (colon == std::string::npos) throw UsageFailure("--turnover-law expects uniform:LO,HI or lognormal:MU,SIGMA");
    const auto params = parse_number_list(text.substr(colon + 1), "--turnover-law");
    if (params.size() != 2) throw UsageFailure("--turnover-law takes exactly two parameters");
    if (kind == "uniform") return TurnoverLaw::uniform(params[0], params[1]);
    if (kind == "lognormal") return TurnoverLaw::lognormal(params[0], params[1]);
    throw UsageFailure("unknown turnover law '" + kind + "'");
}

std::vector<ClassifiedFirm> load_and_classify(const std::string& input, const ToolConfig& cfg) {
    auto in = open_input(input);
    const auto records = parse_firm_records(in, cfg.schema);
    return classify_all(records, cfg.classification);
}

json tech_group_chi_square(const ContingencyCube& cube) {
    const auto tech = marginalize(cube, Dims::t());
    TwoRowTable table;
    json groups = json::array();
    for (const auto& [key, c] : tech.counts) {
        table.columns.push_back({c.nat, c.intl});
        groups.push_back(cube.axes().t[key.t]);
    }
    try {
        auto j = to_json(chi_square_homogeneity(table));
        j["rows"] = {"domestic", "foreign"};
        j["columns"] = std::move(groups);
        j["table"] = json::array();
        for (const auto& col : table.columns) j["table"].push_back({col[0], col[1]});
        return j;
    } catch (const DegenerateTable& e) {
        return {{"undefined", e.what()}};
    }
}

// ---------------------------------------------------------------- commands

struct ValidateArgs {
    std::string input, config;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
    const auto cfg = load_config(a.config);
    auto in = open_input(a.input);
    ValidationResult result;
    try {
        result = validate_firm_records(in, cfg.schema, cfg.classification);
    } catch (const MissingColumn& e) {
        out << a.input << ": " << e.what() << '\n';
        return kValidationFailure;
    }
    out << result.rows << " rows, " << result.issues.size() << " errors\n";
    for (const auto& issue : result.issues) out << "line " << issue.line << ": " << issue.message << '\n';
    return result.clean() ? kSuccess : kValidationFailure;
}

struct ComputeArgs {
    std::string input, config, output, log_base = "2", cutoff;
};

int cmd_compute(const ComputeArgs& a, std::ostream& out) {
    auto cfg = load_config(a.config);
    if (!a.cutoff.empty()) {
        try {
            cfg.classification.foreign_cutoff = parse_fraction_or_percent(a.cutoff);
            cfg.classification.validate();
        } catch (const InvalidConfig& e) {
            throw UsageFailure(std::string("--foreign-cutoff: ") + e.what());
        }
    }
    const auto base = parse_log_base(a.log_base);

    std::vector<ClassifiedFirm> firms;
    try {
        firms = load_and_classify(a.input, cfg);
        if (firms.empty()) throw EmptyDataset();
    } catch (const IoFailure&) {
        throw;
    } catch (const Error& e) {
        out << a.input << ": " << e.what() << '\n';
        return kValidationFailure;
    }

    const auto report = region_report(firms, cfg.classification, base);
    const auto cube = build_cube(firms, cfg.classification);

    RunManifest manifest;
    manifest.command = "compute";
    manifest.inputs = {a.input};
    if (!a.config.empty()) manifest.inputs.push_back(a.config);
    manifest.config_hash = fnv1a_hex(canonical_config(cfg, "log_base=" + a.log_base + '\n'));
    manifest.tool_version = HELIX_VERSION;
    manifest.timestamp = utc_timestamp();

    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["manifest"] = manifest.to_json(false);
    doc["units"] = {{"entropy", log_base_unit(base)}, {"turnover", "NOK"}};
    doc["classification"] = {{"foreign_cutoff", cfg.classification.foreign_cutoff},
                             {"size_bin_edges", cfg.classification.size_bin_edges}};
    doc["axes"] = {{"G", cube.axes().g}, {"O", cube.axes().o}, {"T", cube.axes().t}};
    doc["report"] = to_json(report);
    doc["chi_square_tech_groups"] = tech_group_chi_square(cube);

    write_file(a.output, doc.dump(2) + "\n");
    write_file(a.output + ".manifest.json", manifest.to_json(true).dump(2) + "\n");

    const auto& d = report.decomposition;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu firms (%zu foreign): T_GOT = %.6f, T_nat = %.6f, T_int = %.6f %s\n",
                  report.firm_count, report.foreign_count, d.t_got, d.t_nat, d.t_int, log_base_unit(base));
    out << buf;
    return kSuccess;
}

struct SweepArgs {
    SynthParams params;
    std::string shares, turnover_law = "lognormal:16,1.5", output;
};

int cmd_sweep(SweepArgs a, std::ostream& out) {
    const auto shares = parse_number_list(a.shares, "--shares");
    for (std::size_t i = 0; i < shares.size(); ++i) {
        if (shares[i] < 0.0 || shares[i] > 1.0) throw UsageFailure("--shares values must lie in [0, 1]");
        if (i > 0 && !(shares[i] > shares[i - 1])) throw UsageFailure("--shares must be strictly increasing");
    }
    a.params.turnover_law = parse_turnover_law(a.turnover_law);
    try {
        a.params.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageFailure(e.what());
    }

    const auto curve = sweep_foreign_share(a.params, shares);
    std::ostringstream csv;
    write_sweep_csv(csv, curve);
    write_file(a.output, csv.str());

    const auto& p = a.params;
    std::ostringstream canon;
    canon << "n_firms=" << p.n_firms << "\nmunicipalities=" << p.n_municipalities << "\nsize_classes="
          << p.n_size_classes << "\ntech_groups=" << p.n_tech_groups << "\ncoupling=" << p.coupling
          << "\nturnover_law=" << a.turnover_law << "\nshares=" << a.shares << '\n';

    RunManifest manifest;
    manifest.command = "sweep";
    manifest.config_hash = fnv1a_hex(canon.str());
    manifest.tool_version = HELIX_VERSION;
    manifest.timestamp = utc_timestamp();
    manifest.seed = p.seed;
    auto side = manifest.to_json(true);
    side["params"] = {{"n_firms", p.n_firms},
                      {"n_municipalities", p.n_municipalities},
                      {"n_size_classes", p.n_size_classes},
                      {"n_tech_groups", p.n_tech_groups},
                      {"coupling", p.coupling},
                      {"turnover_law", a.turnover_law},
                      {"shares", shares}};
    side["monotonicity_violations"] = {{"t_ratio", curve.t_ratio_violations}, {"r_ratio", curve.r_ratio_violations}};
    write_file(a.output + ".manifest.json", side.dump(2) + "\n");

    out << curve.points.size() << " points written to " << a.output << "; t_ratio monotonicity violations: "
        << curve.t_ratio_violations << '\n';
    return kSuccess;
}

struct ChisqArgs {
    std::string table;
    bool json_output = false;
};

// "a,b,c;d,e,f" -> two rows of k counts.
TwoRowTable parse_table(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_number_list(row, "--table"));
    if (rows.size() != 2) throw UsageFailure("--table needs exactly two rows separated by ';'");
    if (rows[0].size() != rows[1].size()) throw UsageFailure("--table rows differ in length");
    TwoRowTable t;
    for (std::size_t j = 0; j < rows[0].size(); ++j) {
        std::array<std::uint64_t, 2> col{};
        for (int r = 0; r < 2; ++r) {
            const double v = rows[static_cast<std::size_t>(r)][j];
            if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v)))
                throw UsageFailure("--table entries must be non-negative integers");
            col[static_cast<std::size_t>(r)] = static_cast<std::uint64_t>(v);
        }
        t.columns.push_back(col);
    }
    return t;
}

int cmd_chisq(const ChisqArgs& a, std::ostream& out) {
    const auto table = parse_table(a.table);
    ChiSquareResult r;
    try {
        r = chi_square_homogeneity(table);
    } catch (const DegenerateTable& e) {
        out << "degenerate table: " << e.what() << '\n';
        return kValidationFailure;
    }
    if (a.json_output) {
        out << to_json(r).dump(2) << '\n';
    } else {
        char buf[128];
        std::snprintf(buf, sizeof buf, "statistic = %.6f, dof = %d, p = %.6g\n", r.statistic, r.dof, r.p_value);
        out << buf;
    }
    return kSuccess;
}

}  // namespace

json RunManifest::to_json(bool with_timestamp) const {
    json j{{"command", command},
           {"inputs", inputs},
           {"config_hash", config_hash},
           {"tool_version", tool_version}};
    if (with_timestamp) j["timestamp"] = timestamp;
    if (seed) j["seed"] = *seed;
    return j;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Triple-Helix synergy toolkit: entropy decomposition of firm populations", "helix"};
    app.require_subcommand(1);
    app.set_version_flag("--version", HELIX_VERSION);

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "Check a firm CSV against the ingest contract");
    validate->add_option("input", va.input, "Firm CSV")->required();
    validate->add_option("-c,--config", va.config, "Key-value config file");

    ComputeArgs ca;
    auto* compute = app.add_subcommand("compute", "Entropy profile, synergy decomposition and turnover ratios");
    compute->add_option("input", ca.input, "Firm CSV")->required();
    compute->add_option("-o,--output", ca.output, "Report JSON path")->required();
    compute->add_option("-c,--config", ca.config, "Key-value config file");
    compute->add_option("--log-base", ca.log_base, "2, e or 10")->capture_default_str();
    compute->add_option("--foreign-cutoff", ca.cutoff, "Fraction (0.20) or percent (20%)");

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "Foreign-share sweep over a synthetic population");
    sweep->add_option("--n-firms", sa.params.n_firms)->capture_default_str();
    sweep->add_option("--municipalities", sa.params.n_municipalities)->capture_default_str();
    sweep->add_option("--size-classes", sa.params.n_size_classes)->capture_default_str();
    sweep->add_option("--tech-groups", sa.params.n_tech_groups)->capture_default_str();
    sweep->add_option("--coupling", sa.params.coupling)->capture_default_str();
    sweep->add_option("--turnover-law", sa.turnover_law, "uniform:LO,HI or lognormal:MU,SIGMA")
        ->capture_default_str();
    sweep->add_option("--seed", sa.params.seed)->capture_default_str();
    sweep->add_option("--shares", sa.shares, "Strictly increasing comma-separated fractions")->required();
    sweep->add_option("-o,--output", sa.output, "CSV path")->required();

    ChisqArgs xa;
    auto* chisq = app.add_subcommand("chisq", "Chi-square homogeneity test on a 2 x k table");
    chisq->add_option("--table", xa.table, "Rows separated by ';', e.g. 10,20;20,10")->required();
    chisq->add_flag("--json", xa.json_output);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << HELIX_VERSION << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsageError;
    }

    try {
        if (validate->parsed()) return cmd_validate(va, out);
        if (compute->parsed()) return cmd_compute(ca, out);
        if (sweep->parsed()) return cmd_sweep(sa, out);
        if (chisq->parsed()) return cmd_chisq(xa, out);
    } catch (const UsageFailure& e) {
        auto* active = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << "error: " << e.what() << "\n\n" << active->help();
        return kUsageError;
    } catch (const IoFailure& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    }
    return kUsageError;
}

}  // namespace helix::cli
