#pragma once

#include "ank/ext.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ank {

// Environment variable that overrides the cache root of any config.
inline constexpr const char* kCacheEnv = "ANK_CACHE_DIR";

// Plain key=value configuration; '#' starts a comment.
struct RunConfig
{
    int max_u = 24;
    int max_s = 8;
    int max_t = 8;
    std::size_t budget = kDefaultBlockBudget;
    std::filesystem::path cache_dir = ".ank-cache";
    std::string context = "sphere";  // sphere | mod2 | motivic
    std::string output;

    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::filesystem::path& file);
    // Keys that change computed results, in a fixed order. The cache directory
    // and output path are excluded.
    std::string canonical() const;
    std::uint64_t hash() const;
    // Applies kCacheEnv when set.
    void apply_environment();
    void set(const std::string& key, const std::string& value);
};

// FNV-1a, 64 bit.
std::uint64_t fnv1a(const std::uint8_t* data, std::size_t n, std::uint64_t seed = 0xcbf29ce484222325ULL);

// One cohomology block on disk. Layout, little-endian throughout:
//   "ANKV1" | u32 version | u64 config hash | i32 s, t, u | u32 basis count
//   | u32 rows | u32 words per row | rows x words u64 (bit rows over the block
//   basis, padded to 64 bits) | u32 representatives | per representative:
//   u32 terms, per term u8 slots, 16-byte prefix exponents, slots x 16-byte
//   word exponents | u64 FNV-1a of every preceding byte.
struct CacheRecord
{
    static constexpr std::uint32_t kVersion = 1;

    struct Term
    {
        std::array<std::uint8_t, kMaxSlots> prefix{};
        std::vector<std::array<std::uint8_t, kMaxSlots>> word;
        bool operator==(const Term&) const = default;
    };

    std::uint32_t version = kVersion;
    std::uint64_t config_hash = 0;
    int s = 0, t = 0, u = 0;
    std::uint32_t basis_count = 0;
    std::vector<BitVec> rows;
    std::vector<std::vector<Term>> representatives;

    bool operator==(const CacheRecord&) const = default;

    std::vector<std::uint8_t> encode() const;
    // Throws CacheError on a bad magic, version, length or checksum.
    static CacheRecord decode(const std::vector<std::uint8_t>& bytes);

    static CacheRecord from_block(std::uint64_t config_hash, const ExtBlock& b, std::size_t basis_count);
    std::vector<Cochain<F2>> cochains(const PQAlgebroid& pq) const;
};

class BlockCache
{
public:
    BlockCache(std::filesystem::path root, std::uint64_t config_hash);

    const std::filesystem::path& directory() const { return dir_; }
    std::uint64_t config_hash() const { return hash_; }
    std::filesystem::path record_path(int s, int t, int u) const;
    // Missing, foreign-config and corrupted records are misses; corruption
    // adds a warning.
    std::optional<CacheRecord> load(int s, int t, int u, std::vector<std::string>* warnings = nullptr);
    // Write to a temporary file, then rename over the final name.
    void store(const CacheRecord& r);

    int hits = 0, misses = 0, corrupt = 0, writes = 0;

private:
    std::filesystem::path dir_;
    std::uint64_t hash_;
    int serial_ = 0;
};

struct BlockSummary
{
    MultiDegree degree;
    int dimension = 0;
    std::vector<std::string> representatives;
    bool from_cache = false;
};

// Every nonzero block of the region, read through the cache when one is given.
// A loaded record is accepted only after its representatives pass the cocycle
// and d^2 = 0 checks; otherwise it is recomputed and rewritten with a warning.
std::vector<BlockSummary> ext_region(ExtEngine& engine, const Region& region, BlockCache* cache,
                                     std::vector<std::string>* warnings = nullptr);

// Table with columns s, t, u, stem, dimension, representatives.
std::string format_ext_table(const std::vector<BlockSummary>& blocks);

}  // namespace ank
