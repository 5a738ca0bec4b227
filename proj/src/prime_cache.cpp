#include <array>
#include <cstring>
#include <fstream>
#include <iterator>

#include "ps4/arith.hpp"
#include "ps4/error.hpp"

namespace ps4 {

namespace {

constexpr std::array<char, 4> kMagic{'P', 'S', '4', 'P'};

template <typename T>
void put_le(std::ostream& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

template <typename T>
bool get_le(std::istream& in, T& v) {
  v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    int c = in.get();
    if (c == EOF) return false;
    v |= static_cast<T>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return true;
}

}  // namespace

std::filesystem::path prime_cache_path(const std::filesystem::path& dir,
                                       std::uint64_t limit) {
  return dir / ("primes_" + std::to_string(limit) + ".ps4p");
}

void save_prime_cache(const PrimeTable& table,
                      const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write prime cache " + tmp.string());
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kPrimeCacheVersion);
    put_le<std::uint64_t>(out, table.limit());
    std::uint64_t prev = 0;
    for (std::uint32_t p : table.primes()) {
      std::uint64_t gap = p - prev;
      prev = p;
      do {
        auto byte = static_cast<unsigned char>(gap & 0x7f);
        gap >>= 7;
        if (gap) byte |= 0x80;
        out.put(static_cast<char>(byte));
      } while (gap);
    }
    if (!out) throw DomainError("short write on prime cache " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

std::optional<PrimeTable> load_prime_cache(const std::filesystem::path& file,
                                           std::uint64_t limit,
                                           const SieveOptions& options) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  std::uint32_t version = 0;
  std::uint64_t stored_limit = 0;
  if (!in || magic != kMagic || !get_le(in, version) ||
      version != kPrimeCacheVersion || !get_le(in, stored_limit) ||
      stored_limit != limit)
    return std::nullopt;

  std::vector<std::uint32_t> primes;
  std::uint64_t value = 0, gap = 0;
  unsigned shift = 0;
  for (int c = in.get(); c != EOF; c = in.get()) {
    gap |= static_cast<std::uint64_t>(c & 0x7f) << shift;
    if (c & 0x80) {
      shift += 7;
      if (shift > 35) return std::nullopt;
      continue;
    }
    value += gap;
    if (value > limit) return std::nullopt;
    primes.push_back(static_cast<std::uint32_t>(value));
    gap = 0;
    shift = 0;
  }
  if (shift != 0) return std::nullopt;
  return PrimeTable::from_primes(limit, std::move(primes), options);
}

}  // namespace ps4
