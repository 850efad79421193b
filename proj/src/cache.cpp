#include "ank/cache.hpp"

#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace ank {

namespace fs = std::filesystem;

// ---- RunConfig -------------------------------------------------------------

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long parse_number(const std::string& key, const std::string& v)
{
    std::size_t used = 0;
    long x = 0;
    try {
        x = std::stol(v, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != v.size() || x < 0)
        throw ConfigError(fmt::format("{} expects a nonnegative integer, got '{}'", key, v));
    return x;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value)
{
    if (key == "max_u")
        max_u = static_cast<int>(parse_number(key, value));
    else if (key == "max_s")
        max_s = static_cast<int>(parse_number(key, value));
    else if (key == "max_t")
        max_t = static_cast<int>(parse_number(key, value));
    else if (key == "budget")
        budget = static_cast<std::size_t>(parse_number(key, value));
    else if (key == "cache_dir")
        cache_dir = value;
    else if (key == "context") {
        if (value != "sphere" && value != "mod2" && value != "motivic")
            throw ConfigError(fmt::format("context must be sphere, mod2 or motivic, got '{}'", value));
        context = value;
    } else if (key == "output")
        output = value;
    else
        throw ConfigError(fmt::format("unknown config key '{}'", key));
}

RunConfig RunConfig::parse(const std::string& text)
{
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(fmt::format("config line {} is not key=value", n));
        c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

RunConfig RunConfig::load(const fs::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw ConfigError(fmt::format("cannot read config file {}", file.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string RunConfig::canonical() const
{
    return fmt::format("max_u={}\nmax_s={}\nmax_t={}\nbudget={}\ncontext={}\n", max_u, max_s, max_t, budget, context);
}

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t n, std::uint64_t h)
{
    for (std::size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t RunConfig::hash() const
{
    const std::string c = canonical();
    return fnv1a(reinterpret_cast<const std::uint8_t*>(c.data()), c.size());
}

void RunConfig::apply_environment()
{
    if (const char* env = std::getenv(kCacheEnv); env && *env)
        cache_dir = env;
}

// ---- CacheRecord -----------------------------------------------------------

namespace {

constexpr char kMagic[5] = {'A', 'N', 'K', 'V', '1'};

class Writer
{
public:
    void raw(const void* p, std::size_t n)
    {
        auto b = static_cast<const std::uint8_t*>(p);
        out.insert(out.end(), b, b + n);
    }
    template <class T>
    void le(T v)
    {
        using U = std::make_unsigned_t<T>;
        U x = static_cast<U>(v);
        for (std::size_t i = 0; i < sizeof(T); ++i)
            out.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
    }
    std::vector<std::uint8_t> out;
};

class Reader
{
public:
    Reader(const std::vector<std::uint8_t>& b, std::size_t end) : b_(b), end_(end) {}
    void raw(void* p, std::size_t n)
    {
        need(n);
        std::copy(b_.begin() + static_cast<std::ptrdiff_t>(pos_), b_.begin() + static_cast<std::ptrdiff_t>(pos_ + n),
                  static_cast<std::uint8_t*>(p));
        pos_ += n;
    }
    template <class T>
    T le()
    {
        using U = std::make_unsigned_t<T>;
        need(sizeof(T));
        U x = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i)
            x |= static_cast<U>(static_cast<U>(b_[pos_ + i]) << (8 * i));
        pos_ += sizeof(T);
        return static_cast<T>(x);
    }
    std::size_t pos() const { return pos_; }

private:
    void need(std::size_t n) const
    {
        if (pos_ + n > end_)
            throw CacheError("cache record is truncated");
    }
    const std::vector<std::uint8_t>& b_;
    std::size_t end_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> CacheRecord::encode() const
{
    Writer w;
    w.raw(kMagic, sizeof kMagic);
    w.le<std::uint32_t>(version);
    w.le<std::uint64_t>(config_hash);
    w.le<std::int32_t>(s);
    w.le<std::int32_t>(t);
    w.le<std::int32_t>(u);
    w.le<std::uint32_t>(basis_count);
    w.le<std::uint32_t>(static_cast<std::uint32_t>(rows.size()));
    const std::uint32_t words = (basis_count + 63) / 64;
    w.le<std::uint32_t>(words);
    for (const auto& r : rows) {
        if (r.size() != basis_count)
            throw CacheError("bit row length differs from the basis count");
        for (std::uint32_t i = 0; i < words; ++i)
            w.le<std::uint64_t>(r.words()[i]);
    }
    w.le<std::uint32_t>(static_cast<std::uint32_t>(representatives.size()));
    for (const auto& rep : representatives) {
        w.le<std::uint32_t>(static_cast<std::uint32_t>(rep.size()));
        for (const auto& term : rep) {
            w.le<std::uint8_t>(static_cast<std::uint8_t>(term.word.size()));
            w.raw(term.prefix.data(), kMaxSlots);
            for (const auto& g : term.word)
                w.raw(g.data(), kMaxSlots);
        }
    }
    const std::uint64_t sum = fnv1a(w.out.data(), w.out.size());
    w.le<std::uint64_t>(sum);
    return std::move(w.out);
}

CacheRecord CacheRecord::decode(const std::vector<std::uint8_t>& bytes)
{
    if (bytes.size() < sizeof kMagic + 8)
        throw CacheError("cache record is truncated");
    const std::size_t body = bytes.size() - 8;
    std::uint64_t stored = 0;
    for (std::size_t i = 0; i < 8; ++i)
        stored |= static_cast<std::uint64_t>(bytes[body + i]) << (8 * i);
    if (fnv1a(bytes.data(), body) != stored)
        throw CacheError("cache record checksum mismatch");

    Reader r(bytes, body);
    char magic[5];
    r.raw(magic, sizeof magic);
    if (!std::equal(magic, magic + 5, kMagic))
        throw CacheError("not an ANKV1 record");
    CacheRecord c;
    c.version = r.le<std::uint32_t>();
    if (c.version != kVersion)
        throw CacheError(fmt::format("unsupported cache record version {}", c.version));
    c.config_hash = r.le<std::uint64_t>();
    c.s = r.le<std::int32_t>();
    c.t = r.le<std::int32_t>();
    c.u = r.le<std::int32_t>();
    c.basis_count = r.le<std::uint32_t>();
    const auto nrows = r.le<std::uint32_t>();
    const auto words = r.le<std::uint32_t>();
    if (words != (c.basis_count + 63) / 64)
        throw CacheError("row width disagrees with the basis count");
    for (std::uint32_t i = 0; i < nrows; ++i) {
        BitVec v(c.basis_count);
        for (std::uint32_t j = 0; j < words; ++j)
            v.words()[j] = r.le<std::uint64_t>();
        // Padding bits must be zero.
        if (c.basis_count % 64 && words && (v.words().back() >> (c.basis_count % 64)))
            throw CacheError("nonzero padding in a bit row");
        c.rows.push_back(std::move(v));
    }
    const auto nreps = r.le<std::uint32_t>();
    for (std::uint32_t i = 0; i < nreps; ++i) {
        const auto nterms = r.le<std::uint32_t>();
        std::vector<Term> rep;
        for (std::uint32_t j = 0; j < nterms; ++j) {
            Term term;
            const auto slots = r.le<std::uint8_t>();
            r.raw(term.prefix.data(), kMaxSlots);
            term.word.resize(slots);
            for (auto& g : term.word)
                r.raw(g.data(), kMaxSlots);
            rep.push_back(std::move(term));
        }
        c.representatives.push_back(std::move(rep));
    }
    if (r.pos() != body)
        throw CacheError("trailing bytes in cache record");
    return c;
}

CacheRecord CacheRecord::from_block(std::uint64_t config_hash, const ExtBlock& b, std::size_t basis_count)
{
    CacheRecord c;
    c.config_hash = config_hash;
    c.s = b.degree.s;
    c.t = b.degree.t;
    c.u = b.degree.u;
    c.basis_count = static_cast<std::uint32_t>(basis_count);
    c.rows = b.rep_vectors;
    for (const auto& z : b.representatives) {
        std::vector<Term> rep;
        for (const auto& [k, coef] : z.terms()) {
            Term term;
            term.prefix = k.prefix.e;
            for (const auto& g : k.word)
                term.word.push_back(g.e);
            rep.push_back(std::move(term));
        }
        c.representatives.push_back(std::move(rep));
    }
    return c;
}

std::vector<Cochain<F2>> CacheRecord::cochains(const PQAlgebroid& pq) const
{
    auto mono = [](const RingContext& ctx, const std::array<std::uint8_t, kMaxSlots>& e) {
        Monomial m;
        m.e = e;
        for (std::size_t i = ctx.variables().size(); i < kMaxSlots; ++i)
            if (e[i])
                throw CacheError("cache record uses a slot outside the ring");
        m.deg = static_cast<std::uint16_t>(ctx.degree(m));
        return m;
    };
    std::vector<Cochain<F2>> out;
    for (const auto& rep : representatives) {
        Cochain<F2> z(pq.prefix_ctx(), pq.word_ctx());
        for (const auto& term : rep) {
            Word w;
            for (const auto& g : term.word)
                w.push_back(mono(*pq.word_ctx(), g));
            z.add(mono(*pq.prefix_ctx(), term.prefix), w, F2::one());
        }
        out.push_back(std::move(z));
    }
    return out;
}

// ---- BlockCache ------------------------------------------------------------

BlockCache::BlockCache(fs::path root, std::uint64_t config_hash)
    : dir_(std::move(root) / fmt::format("{:016x}", config_hash)), hash_(config_hash)
{
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec)
        throw CacheError(fmt::format("cannot create cache directory {}: {}", dir_.string(), ec.message()));
}

fs::path BlockCache::record_path(int s, int t, int u) const
{
    return dir_ / fmt::format("{}_{}_{}.ankv1", s, t, u);
}

std::optional<CacheRecord> BlockCache::load(int s, int t, int u, std::vector<std::string>* warnings)
{
    const fs::path p = record_path(s, t, u);
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        ++misses;
        return std::nullopt;
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        CacheRecord r = CacheRecord::decode(bytes);
        if (r.config_hash != hash_) {
            ++misses;
            return std::nullopt;
        }
        if (r.s != s || r.t != t || r.u != u)
            throw CacheError("record tridegree differs from its file name");
        ++hits;
        return r;
    } catch (const CacheError& e) {
        ++corrupt;
        ++misses;
        if (warnings)
            warnings->push_back(fmt::format("discarding cache record {}: {}", p.string(), e.what()));
        return std::nullopt;
    }
}

void BlockCache::store(const CacheRecord& r)
{
    const auto bytes = r.encode();
    const fs::path final_path = record_path(r.s, r.t, r.u);
    const fs::path tmp = final_path.string() + fmt::format(".tmp.{}.{}", static_cast<long>(::getpid()), serial_++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw CacheError(fmt::format("cannot write {}", tmp.string()));
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw CacheError(fmt::format("short write to {}", tmp.string()));
    }
    std::error_code ec;
    fs::rename(tmp, final_path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw CacheError(fmt::format("cannot publish {}", final_path.string()));
    }
    ++writes;
}

// ---- cached region ----------------------------------------------------------

namespace {

// Trust but verify: representatives must be cocycles and d^2 must vanish on
// each of their terms.
std::optional<std::string> verify_record(const PQAlgebroid& pq, const CacheRecord& r, const std::vector<Cochain<F2>>& reps)
{
    if (r.rows.size() != reps.size())
        return "row and representative counts differ";
    for (const auto& z : reps) {
        if (z.is_zero())
            return "zero representative";
        if (z.length() != r.s)
            return "representative of the wrong length";
        if (!differential(pq, z).is_zero())
            return "representative is not a cocycle";
        for (const auto& [k, c] : z.terms()) {
            Cochain<F2> x(pq.prefix_ctx(), pq.word_ctx());
            x.add(k, c);
            if (!differential(pq, differential(pq, x)).is_zero())
                return "d^2 != 0 on a representative term";
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<BlockSummary> ext_region(ExtEngine& engine, const Region& region, BlockCache* cache,
                                     std::vector<std::string>* warnings)
{
    const PQAlgebroid& pq = engine.algebroid();
    std::vector<BlockSummary> out;
    for (int u = 0; u <= std::min(region.max_u, engine.max_u()); u += 2)
        for (int s = 0; s <= region.max_s; ++s)
            for (int t = 0; t <= region.max_t; ++t) {
                if (!region.contains(s, t, u) || u < 2 * s)
                    continue;
                BlockSummary b;
                b.degree = MultiDegree{s, t, u, std::nullopt};
                std::optional<std::vector<Cochain<F2>>> reps;
                if (cache)
                    if (auto rec = cache->load(s, t, u, warnings)) {
                        try {
                            auto cs = rec->cochains(pq);
                            if (auto why = verify_record(pq, *rec, cs)) {
                                if (warnings)
                                    warnings->push_back(fmt::format("recomputing ({},{},{}): {}", s, t, u, *why));
                                ++cache->corrupt;
                            } else {
                                reps = std::move(cs);
                                b.from_cache = true;
                            }
                        } catch (const Error& e) {
                            if (warnings)
                                warnings->push_back(fmt::format("recomputing ({},{},{}): {}", s, t, u, e.what()));
                            ++cache->corrupt;
                        }
                    }
                if (!reps) {
                    const ExtBlock& e = engine.ext(s, t, u);
                    reps = e.representatives;
                    if (cache)
                        cache->store(CacheRecord::from_block(cache->config_hash(), e, engine.block(s, t, u).size()));
                }
                b.dimension = static_cast<int>(reps->size());
                for (const auto& z : *reps)
                    b.representatives.push_back(z.str());
                if (b.dimension > 0)
                    out.push_back(std::move(b));
            }
    return out;
}

std::string format_ext_table(const std::vector<BlockSummary>& blocks)
{
    std::string out = "s\tt\tu\tstem\tdimension\trepresentatives\n";
    for (const auto& b : blocks) {
        std::string reps;
        for (const auto& r : b.representatives)
            reps += (reps.empty() ? "" : " ; ") + r;
        out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", b.degree.s, b.degree.t, b.degree.u, b.degree.stem(), b.dimension, reps);
    }
    return out;
}

}  // namespace ank
