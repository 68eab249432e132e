#include "leraylab/io.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace leray {
namespace {

constexpr char kMagic[8] = {'L', 'E', 'R', 'A', 'Y', 'F', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;

struct Header {
    char magic[8];
    std::uint32_t version;
    std::uint32_t dim;
    std::uint32_t n;
    std::uint32_t ncomp;
    double box_length;
    double alpha;
    double time;
    char pad[16];
};
static_assert(sizeof(Header) == 64, "snapshot header must be 64 bytes");

}  // namespace

void write_snapshot(const std::string& path, const SpectralField& f, const SnapshotMeta& meta) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);

    Header h{};
    std::memcpy(h.magic, kMagic, 8);
    h.version = kVersion;
    h.dim = f.grid().dim;
    h.n = f.grid().n;
    h.ncomp = f.components();
    h.box_length = f.grid().box_length;
    h.alpha = meta.alpha;
    h.time = meta.time;
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));

    const auto phys = f.to_physical();
    for (const auto& comp : phys)
        out.write(reinterpret_cast<const char*>(comp.data()),
                  static_cast<std::streamsize>(comp.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

LoadedSnapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kMagic, 8) != 0 || h.version != kVersion)
        throw std::runtime_error("read_snapshot: bad header in " + path);
    if (h.dim < 1 || h.dim > 3 || h.n < 4) throw std::runtime_error("read_snapshot: corrupt header");

    Grid grid = make_grid(static_cast<int>(h.dim), static_cast<int>(h.n), h.box_length);
    Rank rank = Rank::Scalar;
    if (h.ncomp == static_cast<std::uint32_t>(grid.dim)) rank = Rank::Vector;
    else if (h.ncomp == static_cast<std::uint32_t>(grid.dim * grid.dim)) rank = Rank::Tensor;
    else if (h.ncomp != 1) throw std::runtime_error("read_snapshot: unsupported component count");

    std::vector<std::vector<double>> vals(h.ncomp, std::vector<double>(grid.size()));
    for (auto& comp : vals) {
        in.read(reinterpret_cast<char*>(comp.data()),
                static_cast<std::streamsize>(comp.size() * sizeof(double)));
        if (!in) throw std::runtime_error("read_snapshot: truncated payload in " + path);
    }
    LoadedSnapshot snap{SpectralField::from_physical(grid, rank, vals), {h.alpha, h.time}};
    return snap;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << header << "\n";
    out << std::setprecision(17);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

}  // namespace leray
