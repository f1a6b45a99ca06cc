#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "helix/ingest.hpp"

namespace helix {

enum class Axis : std::uint8_t { G = 0, O = 1, T = 2 };

/// Non-empty subset of {G, O, T}, stored as a bitmask.
class Dims {
public:
    static constexpr std::uint8_t kG = 1, kO = 2, kT = 4;

    constexpr Dims() = default;
    constexpr explicit Dims(std::uint8_t mask) : mask_(mask) {}

    static constexpr Dims g() { return Dims{kG}; }
    static constexpr Dims o() { return Dims{kO}; }
    static constexpr Dims t() { return Dims{kT}; }
    static constexpr Dims go() { return Dims{kG | kO}; }
    static constexpr Dims gt() { return Dims{kG | kT}; }
    static constexpr Dims ot() { return Dims{kO | kT}; }
    static constexpr Dims got() { return Dims{kG | kO | kT}; }

    constexpr std::uint8_t mask() const { return mask_; }
    constexpr bool valid() const { return mask_ != 0 && mask_ < 8; }
    constexpr bool contains(Axis a) const { return (mask_ >> static_cast<int>(a)) & 1u; }
    constexpr bool subset_of(Dims other) const { return (mask_ & ~other.mask_) == 0; }
    constexpr int size() const { return (mask_ & 1) + ((mask_ >> 1) & 1) + ((mask_ >> 2) & 1); }

    std::string name() const;  // "G", "GO", ...
    auto operator<=>(const Dims&) const = default;

private:
    std::uint8_t mask_ = 0;
};

/// The seven subsets in the order the ternary sum uses them.
inline constexpr std::array<Dims, 7> kAllDims{Dims::g(),  Dims::o(),  Dims::t(),  Dims::go(),
                                              Dims::gt(), Dims::ot(), Dims::got()};

/// Indices into the per-axis label lists. Dropped dimensions are 0 in a
/// marginal key.
struct CellKey {
    std::uint32_t g = 0, o = 0, t = 0;
    auto operator<=>(const CellKey&) const = default;
};

struct OwnershipCounts {
    std::uint64_t nat = 0;
    std::uint64_t intl = 0;
    std::uint64_t total() const noexcept { return nat + intl; }
    bool operator==(const OwnershipCounts&) const = default;
};

using CellMap = std::map<CellKey, OwnershipCounts>;

struct CubeAxes {
    std::vector<std::string> g, o, t;
    bool operator==(const CubeAxes&) const = default;
};

/// Sparse (G,O,T) firm counts split by ownership. Immutable once built; cells
/// with zero count in both splits are never stored.
class ContingencyCube {
public:
    /// Validates that every key indexes into `axes`; drops all-zero cells.
    /// Throws EmptyDataset if the total is zero.
    ContingencyCube(CubeAxes axes, CellMap cells);

    const CubeAxes& axes() const noexcept { return axes_; }
    const CellMap& cells() const noexcept { return cells_; }
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t total_nat() const noexcept { return total_nat_; }
    std::uint64_t total_int() const noexcept { return total_int_; }

    bool operator==(const ContingencyCube&) const = default;

private:
    CubeAxes axes_;
    CellMap cells_;
    std::uint64_t total_ = 0, total_nat_ = 0, total_int_ = 0;
};

struct MarginalCounts {
    Dims dims;
    CellMap counts;

    std::uint64_t total() const;
    bool operator==(const MarginalCounts&) const = default;
};

/// Axes hold the observed categories in sorted order (size classes and
/// technology groups sorted numerically).
ContingencyCube build_cube(std::span<const ClassifiedFirm> firms, const ClassificationConfig& config = {});

MarginalCounts marginalize(const ContingencyCube& cube, Dims dims);

/// Further projection of an existing marginal; `dims` must be a subset of
/// `marginal.dims`.
MarginalCounts marginalize(const MarginalCounts& marginal, Dims dims);

/// Same cube with the nat/int split exchanged in every cell.
ContingencyCube swap_ownership(const ContingencyCube& cube);

}  // namespace helix
