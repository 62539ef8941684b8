#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "retmem/embedding.hpp"

namespace retmem {

struct LshParams {
    std::size_t tables = 8;  // L
    std::size_t bits = 16;   // k, signature bits per table
    std::uint64_t seed = 42;
};

struct NearestHit {
    std::string term;
    double cosine = 0.0;
};

struct LshStats {
    std::size_t tables = 0;
    std::size_t bits = 0;
    std::size_t entries_alive = 0;
    std::size_t entries_total = 0;
    std::size_t buckets = 0;      // across all tables
    std::size_t max_bucket = 0;   // largest bucket membership
};

// Random-hyperplane LSH over term embeddings, bucketed per column so a
// substitute can only come from the column it has to land in. Hyperplanes are
// fixed at construction from the seed; identical seeds give identical
// signatures everywhere.
//
// Concurrency contract: any number of concurrent const calls; insert/erase
// require exclusive access.
class LshIndex {
public:
    LshIndex(std::size_t dimension, LshParams params);

    std::size_t dimension() const { return dimension_; }
    const LshParams& params() const { return params_; }

    // bit j of the result is 1 iff dot(e, hyperplane[table][j]) >= 0
    std::uint64_t signature(const Embedding& e, std::size_t table) const;

    // Registers (column, term, e) in every table. Idempotent per (column, term).
    void insert(int column, std::string_view term, const Embedding& e);

    // Drops a term from one column. Returns false when it was not present.
    bool erase(int column, std::string_view term);

    // Best-cosine candidate from the buckets e falls into, restricted to the
    // column; empty when nothing reaches the threshold. Ties go to the term
    // inserted first.
    std::optional<NearestHit> nearest(int column, const Embedding& e, double threshold) const;

    // Same lookup, but also reports how many candidates were scored. Used by
    // the probe-size sanity checks.
    struct Probe {
        std::optional<NearestHit> hit;
        std::size_t candidates_examined = 0;
    };
    Probe nearest_probe(int column, const Embedding& e, double threshold) const;

    LshStats stats() const;

private:
    void check_dimension(const Embedding& e) const;
    std::uint64_t bucket_key(int column, std::uint64_t sig) const;

    struct Entry {
        int column;
        std::string term;
        Embedding embedding;
        bool alive = true;
    };

    std::size_t dimension_;
    LshParams params_;
    std::vector<std::vector<double>> hyperplanes_;  // [table * bits + j][dim]
    std::vector<std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>> buckets_;
    std::vector<Entry> entries_;  // insertion order; erased entries stay as tombstones
    std::map<std::pair<int, std::string>, std::uint32_t> live_;
};

}  // namespace retmem
