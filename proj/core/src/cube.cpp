#include "helix/cube.hpp"

#include <algorithm>
#include <stdexcept>

#include "helix/error.hpp"

namespace helix {
namespace {

CellKey project(const CellKey& key, Dims dims) {
    return CellKey{dims.contains(Axis::G) ? key.g : 0u, dims.contains(Axis::O) ? key.o : 0u,
                   dims.contains(Axis::T) ? key.t : 0u};
}

void require_valid(Dims dims) {
    if (!dims.valid()) throw std::invalid_argument("dimension subset must be a non-empty subset of {G,O,T}");
}

template <typename T>
std::uint32_t index_of(const std::vector<T>& sorted, const T& value) {
    return static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), value) - sorted.begin());
}

template <typename T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::string Dims::name() const {
    std::string s;
    if (contains(Axis::G)) s += 'G';
    if (contains(Axis::O)) s += 'O';
    if (contains(Axis::T)) s += 'T';
    return s;
}

ContingencyCube::ContingencyCube(CubeAxes axes, CellMap cells) : axes_(std::move(axes)) {
    for (auto& [key, counts] : cells) {
        if (key.g >= axes_.g.size() || key.o >= axes_.o.size() || key.t >= axes_.t.size())
            throw std::out_of_range("cube cell key outside the axis label lists");
        if (counts.total() == 0) continue;
        total_nat_ += counts.nat;
        total_int_ += counts.intl;
        cells_.emplace(key, counts);
    }
    total_ = total_nat_ + total_int_;
    if (total_ == 0) throw EmptyDataset();
}

std::uint64_t MarginalCounts::total() const {
    std::uint64_t sum = 0;
    for (const auto& [key, c] : counts) sum += c.total();
    return sum;
}

ContingencyCube build_cube(std::span<const ClassifiedFirm> firms, const ClassificationConfig& config) {
    if (firms.empty()) throw EmptyDataset();

    std::vector<std::string> g;
    std::vector<SizeClass> o;
    std::vector<TechGroup> t;
    for (const auto& f : firms) {
        g.push_back(f.g);
        o.push_back(f.o);
        t.push_back(f.t);
    }
    sort_unique(g);
    sort_unique(o);
    sort_unique(t);

    CellMap cells;
    for (const auto& f : firms) {
        auto& c = cells[CellKey{index_of(g, f.g), index_of(o, f.o), index_of(t, f.t)}];
        (f.ownership == Ownership::Foreign ? c.intl : c.nat) += 1;
    }

    CubeAxes axes;
    axes.g = std::move(g);
    for (auto s : o) axes.o.push_back(size_class_label(config, s));
    for (auto x : t) axes.t.push_back(std::to_string(x.value));
    return ContingencyCube(std::move(axes), std::move(cells));
}

MarginalCounts marginalize(const ContingencyCube& cube, Dims dims) {
    require_valid(dims);
    MarginalCounts out{dims, {}};
    for (const auto& [key, c] : cube.cells()) {
        auto& slot = out.counts[project(key, dims)];
        slot.nat += c.nat;
        slot.intl += c.intl;
    }
    return out;
}

MarginalCounts marginalize(const MarginalCounts& marginal, Dims dims) {
    require_valid(dims);
    if (!dims.subset_of(marginal.dims))
        throw std::invalid_argument("cannot project " + marginal.dims.name() + " onto " + dims.name());
    MarginalCounts out{dims, {}};
    for (const auto& [key, c] : marginal.counts) {
        auto& slot = out.counts[project(key, dims)];
        slot.nat += c.nat;
        slot.intl += c.intl;
    }
    return out;
}

ContingencyCube swap_ownership(const ContingencyCube& cube) {
    CellMap cells;
    for (const auto& [key, c] : cube.cells()) cells.emplace(key, OwnershipCounts{c.intl, c.nat});
    return ContingencyCube(cube.axes(), std::move(cells));
}

}  // namespace helix
