#include "homog/field/kl_cache.hpp"

#include <bit>
#include <cstdint>
#include <fstream>

namespace homog::field {

namespace {

constexpr std::uint64_t kMagic = 0x484f4d4f474b4c31ull;  // "HOMOGKL1"

static_assert(std::endian::native == std::endian::little,
              "KL cache I/O assumes a little-endian host");

void put_u64(std::ofstream& os, std::uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

bool get_u64(std::ifstream& is, std::uint64_t& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return bool(is);
}

}  // namespace

void save_kl_cache(const std::string& path, const KlDecomposition& kl) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot open KL cache for writing: " + path);
  put_u64(os, kMagic);
  put_u64(os, covariance_spec_hash(kl.spec, kl.mode_tolerance));
  put_u64(os, grid_hash(kl.grid));
  put_u64(os, kl.mode_count());
  put_u64(os, kl.grid.cell_count());
  os.write(reinterpret_cast<const char*>(kl.eigenvalues.data()),
           static_cast<std::streamsize>(kl.eigenvalues.size() * sizeof(double)));
  os.write(reinterpret_cast<const char*>(kl.modes.data()),
           static_cast<std::streamsize>(kl.modes.size() * sizeof(double)));
  if (!os) throw ConfigError("short write to KL cache: " + path);
}

std::optional<KlDecomposition> load_kl_cache(const std::string& path,
                                             const CovarianceSpec& spec,
                                             const GridSpec& grid,
                                             double mode_tolerance) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  std::uint64_t magic = 0, spec_h = 0, grid_h = 0, k = 0, n = 0;
  if (!get_u64(is, magic) || !get_u64(is, spec_h) || !get_u64(is, grid_h) ||
      !get_u64(is, k) || !get_u64(is, n))
    return std::nullopt;
  if (magic != kMagic || spec_h != covariance_spec_hash(spec, mode_tolerance) ||
      grid_h != grid_hash(grid) || n != grid.cell_count())
    return std::nullopt;

  KlDecomposition kl;
  kl.grid = grid;
  kl.spec = spec;
  kl.mode_tolerance = mode_tolerance;
  kl.eigenvalues.resize(k);
  kl.modes.resize(k * n);
  is.read(reinterpret_cast<char*>(kl.eigenvalues.data()),
          static_cast<std::streamsize>(k * sizeof(double)));
  is.read(reinterpret_cast<char*>(kl.modes.data()),
          static_cast<std::streamsize>(k * n * sizeof(double)));
  if (!is) return std::nullopt;
  return kl;
}

}  // namespace homog::field
