#include "helix/json_io.hpp"

#include <stdexcept>

namespace helix {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

const char* log_base_unit(LogBase base) {
    switch (base) {
        case LogBase::Two: return "bits";
        case LogBase::E: return "nats";
        case LogBase::Ten: return "hartleys";
    }
    return "?";
}

json cube_to_json(const ContingencyCube& cube) {
    json cells = json::array();
    for (const auto& [key, c] : cube.cells())
        cells.push_back({{"g", key.g}, {"o", key.o}, {"t", key.t}, {"nat", c.nat}, {"int", c.intl}});
    return {{"axes", {{"G", cube.axes().g}, {"O", cube.axes().o}, {"T", cube.axes().t}}},
            {"cells", std::move(cells)}};
}

ContingencyCube cube_from_json(const json& j) {
    CubeAxes axes;
    const auto& a = j.at("axes");
    a.at("G").get_to(axes.g);
    a.at("O").get_to(axes.o);
    a.at("T").get_to(axes.t);

    CellMap cells;
    for (const auto& c : j.at("cells")) {
        const CellKey key{c.at("g").get<std::uint32_t>(), c.at("o").get<std::uint32_t>(),
                          c.at("t").get<std::uint32_t>()};
        const OwnershipCounts counts{c.value("nat", std::uint64_t{0}), c.value("int", std::uint64_t{0})};
        if (!cells.emplace(key, counts).second) throw std::invalid_argument("duplicate cell in cube JSON");
    }
    return ContingencyCube(std::move(axes), std::move(cells));
}

json to_json(const EntropyProfile& p) {
    return {{"H_G", p.h_g},   {"H_O", p.h_o},   {"H_T", p.h_t},    {"H_GO", p.h_go},
            {"H_GT", p.h_gt}, {"H_OT", p.h_ot}, {"H_GOT", p.h_got}};
}

json to_json(const SynergyDecomposition& d) {
    json terms = json::object();
    for (std::size_t i = 0; i < kAllDims.size(); ++i) {
        const auto& t = d.terms[i];
        terms["H_" + kAllDims[i].name()] = {
            {"total", t.h_total}, {"nat", t.h_nat}, {"int", t.h_int}, {"interaction", t.h_tilde}};
    }
    return {{"T_GOT", d.t_got},           {"T_nat", d.t_nat},      {"T_int", d.t_int},
            {"T_int_pure", d.t_int_pure}, {"T_tilde", d.t_tilde},  {"terms", std::move(terms)}};
}

json to_json(const ChiSquareResult& r) {
    return {{"statistic", r.statistic}, {"dof", r.dof}, {"p_value", r.p_value}};
}

json to_json(const RegionReport& r) {
    json undefined = json::array();
    auto note = [&](const char* name, const std::optional<double>& v) {
        if (!v) undefined.push_back(name);
        return optional_number(v);
    };
    json out;
    out["firm_count"] = r.firm_count;
    out["foreign_count"] = r.foreign_count;
    out["entropy_profile"] = to_json(r.profile);
    out["decomposition"] = to_json(r.decomposition);
    out["subsample_synergy"] = {{"T_nat_subsample", note("T_nat_subsample", r.t_nat_subsample)},
                                {"T_int_subsample", note("T_int_subsample", r.t_int_subsample)}};
    out["turnover"] = {{"R", r.r_total}, {"R_int", r.r_int}, {"R_nat", r.r_nat}};
    out["ratios"] = {{"R_int_over_R", note("R_int_over_R", r.r_ratio)},
                     {"R_int_over_R_nat", note("R_int_over_R_nat", r.r_int_over_r_nat)},
                     {"T_int_over_T_GOT", note("T_int_over_T_GOT", r.t_ratio)},
                     {"efficiency", note("efficiency", r.efficiency)}};
    out["undefined"] = std::move(undefined);
    return out;
}

}  // namespace helix
