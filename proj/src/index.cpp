#include "awl1/index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "awl1/errors.hpp"
#include "awl1/rng.hpp"

namespace awl1 {

namespace {

constexpr char kMagic[4] = {'A', 'W', 'L', '1'};
constexpr std::uint32_t kFormatVersion = 1;

// Composite key over the K per-function hashes: FNV-1a offset basis
// seeds the accumulator, each hash is folded through the SplitMix64
// finalizer. A key clash between different hash tuples only adds false
// candidates, which exact re-ranking filters out.
constexpr std::uint64_t kKeySeed = 0xcbf29ce484222325ULL;

std::uint64_t fold_key(std::uint64_t acc, std::int64_t h) {
    return mix64(acc ^ static_cast<std::uint64_t>(h));
}

// --- little-endian primitives -------------------------------------------

void put_bytes(std::ostream& out, const void* data, std::size_t n) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

template <typename T>
void put_uint(std::ostream& out, T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    put_bytes(out, buf, sizeof(T));
}

void put_f64(std::ostream& out, double v) { put_uint(out, std::bit_cast<std::uint64_t>(v)); }

void get_bytes(std::istream& in, void* data, std::size_t n) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (in.gcount() != static_cast<std::streamsize>(n)) {
        throw IoError("truncated index file");
    }
}

template <typename T>
T get_uint(std::istream& in) {
    unsigned char buf[sizeof(T)];
    get_bytes(in, buf, sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_uint<std::uint64_t>(in)); }

}  // namespace

void IndexParams::validate() const {
    if (dim == 0) throw std::invalid_argument("dim must be positive");
    if (num_hashes == 0 || num_tables == 0) {
        throw std::invalid_argument("num_hashes and num_tables must be positive");
    }
    if (num_hashes > std::numeric_limits<std::uint16_t>::max() ||
        num_tables > std::numeric_limits<std::uint16_t>::max()) {
        throw std::invalid_argument("num_hashes and num_tables must fit in 16 bits");
    }
    const QuantizationGrid checked = QuantizationGrid::create(grid.lower, grid.upper, grid.t);
    if (checked.steps != grid.steps) {
        throw std::invalid_argument("grid steps inconsistent with bounds and resolution");
    }
    if (grid.steps > kMaxGridSteps) {
        throw std::invalid_argument("grid steps exceed the cap of " +
                                    std::to_string(kMaxGridSteps) +
                                    "; choose a smaller resolution t");
    }
    if (variant.tag == Variant::L2) {
        if (!(variant.window > 0.0)) throw std::invalid_argument("l2 variant requires a window");
    } else if (variant.window != 0.0) {
        throw std::invalid_argument("theta variant takes no window");
    }
}

void Index::derive_functions() {
    functions_.clear();
    functions_.reserve(static_cast<std::size_t>(params_.num_tables) * params_.num_hashes);
    for (std::uint32_t l = 0; l < params_.num_tables; ++l) {
        for (std::uint32_t k = 0; k < params_.num_hashes; ++k) {
            auto rng = make_stream(params_.seed, l, k);
            functions_.push_back(sample_hash(params_.variant, params_.grid.steps, params_.dim, rng));
        }
    }
}

std::uint64_t Index::table_key(const GridPoint& x, const WeightVector* w,
                               std::uint32_t table) const {
    std::uint64_t key = kKeySeed;
    const std::size_t base = static_cast<std::size_t>(table) * params_.num_hashes;
    for (std::uint32_t k = 0; k < params_.num_hashes; ++k) {
        const HashFunctionSpec& spec = functions_[base + k];
        key = fold_key(key, w ? hash_point(spec, x, *w) : hash_point(spec, x));
    }
    return key;
}

Index Index::build(const std::vector<RealPoint>& data, const IndexParams& params) {
    params.validate();
    if (data.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("dataset exceeds 32-bit point ids");
    }

    Index index;
    index.params_ = params;
    index.count_ = data.size();
    index.reals_.reserve(data.size() * params.dim);
    index.grids_.reserve(data.size() * params.dim);

    for (std::size_t row = 0; row < data.size(); ++row) {
        if (data[row].dim() != params.dim) {
            throw std::invalid_argument("row " + std::to_string(row) + ": expected " +
                                        std::to_string(params.dim) + " coordinates, got " +
                                        std::to_string(data[row].dim()));
        }
        try {
            const GridPoint g = quantize(data[row], params.grid);
            index.grids_.insert(index.grids_.end(), g.coords.begin(), g.coords.end());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("row " + std::to_string(row) + ": " + e.what());
        }
        index.reals_.insert(index.reals_.end(), data[row].coords.begin(), data[row].coords.end());
    }

    index.derive_functions();
    index.tables_.resize(params.num_tables);
    // Function-major hashing: each prefix table stays cache-hot while the
    // coordinate arena streams through once per hash function.
    const auto n = static_cast<std::uint32_t>(index.count_);
    std::vector<std::uint64_t> keys;
    for (std::uint32_t l = 0; l < params.num_tables; ++l) {
        keys.assign(n, kKeySeed);
        for (std::uint32_t k = 0; k < params.num_hashes; ++k) {
            const HashFunctionSpec& spec =
                index.functions_[static_cast<std::size_t>(l) * params.num_hashes + k];
            for (std::uint32_t id = 0; id < n; ++id) {
                const std::span<const std::uint32_t> coords(
                    index.grids_.data() + static_cast<std::size_t>(id) * params.dim, params.dim);
                keys[id] = fold_key(keys[id], hash_point(spec, coords));
            }
        }
        Table& table = index.tables_[l];
        for (std::uint32_t id = 0; id < n; ++id) table[keys[id]].push_back(id);
    }
    return index;
}

RealPoint Index::real_point(std::uint32_t id) const {
    const auto* base = reals_.data() + static_cast<std::size_t>(id) * params_.dim;
    return RealPoint{std::vector<double>(base, base + params_.dim)};
}

GridPoint Index::grid_point(std::uint32_t id) const {
    const auto* base = grids_.data() + static_cast<std::size_t>(id) * params_.dim;
    return GridPoint{std::vector<std::uint32_t>(base, base + params_.dim)};
}

namespace {

void check_query(const RealPoint& q, const WeightVector& w, std::uint32_t dim) {
    if (q.dim() != dim || w.dim() != dim) {
        throw std::invalid_argument("query dimension mismatch: index has dim " +
                                    std::to_string(dim));
    }
}

}  // namespace

std::optional<std::uint32_t> Index::query_near(const RealPoint& q, const WeightVector& w,
                                               double r1, double r2, QueryStats* stats) const {
    check_query(q, w, params_.dim);
    const auto [r1_grid, r2_grid] = box_radii_to_grid(r1, r2, w, params_.grid.t);
    if (!(r1_grid < r2_grid)) {
        throw std::invalid_argument(
            "radius gap collapses on the grid (r1_grid >= r2_grid); increase t or widen r2 - r1");
    }
    const GridPoint g = quantize(q, params_.grid);

    QueryStats local;
    QueryStats& st = stats ? *stats : local;
    st = {};
    const std::uint64_t max_evals = 3ULL * params_.num_tables;
    std::vector<bool> seen(count_, false);
    std::optional<std::uint32_t> result;

    for (std::uint32_t l = 0; l < params_.num_tables && !result; ++l) {
        const auto it = tables_[l].find(table_key(g, &w, l));
        if (it == tables_[l].end()) continue;
        ++st.buckets_probed;
        for (const std::uint32_t id : it->second) {
            if (seen[id]) continue;
            seen[id] = true;
            ++st.candidates_examined;
            if (weighted_manhattan(real_point(id), q, w) <= r2) {
                result = id;
                break;
            }
            if (st.candidates_examined >= max_evals) return std::nullopt;
        }
    }
    return result;
}

std::optional<std::pair<std::uint32_t, double>> Index::query_top1(const RealPoint& q,
                                                                  const WeightVector& w,
                                                                  std::uint32_t budget,
                                                                  QueryStats* stats) const {
    check_query(q, w, params_.dim);
    if (budget == 0) throw std::invalid_argument("candidate budget must be positive");
    const GridPoint g = quantize(q, params_.grid);

    QueryStats local;
    QueryStats& st = stats ? *stats : local;
    st = {};
    std::vector<bool> seen(count_, false);
    std::optional<std::pair<std::uint32_t, double>> best;

    for (std::uint32_t l = 0; l < params_.num_tables; ++l) {
        const auto it = tables_[l].find(table_key(g, &w, l));
        if (it == tables_[l].end()) continue;
        ++st.buckets_probed;
        for (const std::uint32_t id : it->second) {
            if (seen[id]) continue;
            seen[id] = true;
            const double dist = weighted_manhattan(real_point(id), q, w);
            ++st.candidates_examined;
            if (!best || dist < best->second || (dist == best->second && id < best->first)) {
                best = {id, dist};
            }
            if (st.candidates_examined >= budget) return best;
        }
    }
    return best;
}

void Index::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");

    put_bytes(out, kMagic, sizeof(kMagic));
    put_uint(out, kFormatVersion);
    put_uint(out, static_cast<std::uint8_t>(params_.variant.tag));
    if (params_.variant.tag == Variant::L2) put_f64(out, params_.variant.window);
    put_uint(out, params_.dim);
    put_uint(out, params_.grid.steps);
    put_f64(out, params_.grid.lower);
    put_f64(out, params_.grid.upper);
    put_f64(out, params_.grid.t);
    put_uint(out, static_cast<std::uint16_t>(params_.num_hashes));
    put_uint(out, static_cast<std::uint16_t>(params_.num_tables));
    put_uint(out, params_.seed);
    put_uint(out, count_);

    for (std::uint64_t id = 0; id < count_; ++id) {
        const std::size_t base = static_cast<std::size_t>(id) * params_.dim;
        for (std::uint32_t i = 0; i < params_.dim; ++i) put_f64(out, reals_[base + i]);
        for (std::uint32_t i = 0; i < params_.dim; ++i) put_uint(out, grids_[base + i]);
    }

    // Buckets sorted by key so identical builds serialize identically.
    std::vector<std::uint64_t> keys;
    for (const Table& table : tables_) {
        keys.clear();
        keys.reserve(table.size());
        for (const auto& [key, bucket] : table) keys.push_back(key);
        std::sort(keys.begin(), keys.end());
        put_uint(out, static_cast<std::uint64_t>(keys.size()));
        for (const std::uint64_t key : keys) {
            const Bucket& bucket = table.at(key);
            put_uint(out, key);
            put_uint(out, static_cast<std::uint32_t>(bucket.size()));
            for (const std::uint32_t id : bucket) put_uint(out, id);
        }
    }
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

Index Index::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");

    char magic[4];
    get_bytes(in, magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw IoError("not an index file: expected magic \"AWL1\"");
    }
    const auto version = get_uint<std::uint32_t>(in);
    if (version != kFormatVersion) {
        throw IoError("unsupported index format version " + std::to_string(version) +
                      " (expected " + std::to_string(kFormatVersion) + ")");
    }

    Index index;
    const auto tag = get_uint<std::uint8_t>(in);
    if (tag == static_cast<std::uint8_t>(Variant::L2)) {
        index.params_.variant = HashVariant::l2(get_f64(in));
    } else if (tag == static_cast<std::uint8_t>(Variant::Theta)) {
        index.params_.variant = HashVariant::theta();
    } else {
        throw IoError("unknown hash variant tag " + std::to_string(tag));
    }
    index.params_.dim = get_uint<std::uint32_t>(in);
    const auto steps = get_uint<std::uint32_t>(in);
    const double lower = get_f64(in);
    const double upper = get_f64(in);
    const double t = get_f64(in);
    index.params_.num_hashes = get_uint<std::uint16_t>(in);
    index.params_.num_tables = get_uint<std::uint16_t>(in);
    index.params_.seed = get_uint<std::uint64_t>(in);
    index.params_.grid = QuantizationGrid{lower, upper, t, steps};
    index.params_.validate();
    index.count_ = get_uint<std::uint64_t>(in);
    if (index.count_ > std::numeric_limits<std::uint32_t>::max()) {
        throw IoError("index point count exceeds 32-bit ids");
    }

    const std::size_t total = static_cast<std::size_t>(index.count_) * index.params_.dim;
    index.reals_.resize(total);
    index.grids_.resize(total);
    for (std::uint64_t id = 0; id < index.count_; ++id) {
        const std::size_t base = static_cast<std::size_t>(id) * index.params_.dim;
        for (std::uint32_t i = 0; i < index.params_.dim; ++i) index.reals_[base + i] = get_f64(in);
        for (std::uint32_t i = 0; i < index.params_.dim; ++i) {
            index.grids_[base + i] = get_uint<std::uint32_t>(in);
        }
    }

    index.tables_.resize(index.params_.num_tables);
    for (Table& table : index.tables_) {
        const auto buckets = get_uint<std::uint64_t>(in);
        table.reserve(buckets);
        for (std::uint64_t b = 0; b < buckets; ++b) {
            const auto key = get_uint<std::uint64_t>(in);
            const auto size = get_uint<std::uint32_t>(in);
            Bucket bucket(size);
            for (auto& id : bucket) {
                id = get_uint<std::uint32_t>(in);
                if (id >= index.count_) throw IoError("bucket references out-of-range point id");
            }
            table.emplace(key, std::move(bucket));
        }
    }

    // Hash functions are never serialized; the seed re-derives them,
    // which keeps files small and functions consistent with the tables.
    index.derive_functions();
    return index;
}

}  // namespace awl1
