#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "retmem/embedder.hpp"
#include "retmem/lsh_index.hpp"
#include "retmem/triplet.hpp"

namespace retmem {

struct MemoryStats {
    std::size_t triplets = 0;
    std::array<std::size_t, 3> vocabulary_sizes{};
    LshStats lsh;
};

// The triplet table plus everything needed to answer partial-triplet queries:
// per-column exact-match indices over normalized terms and the LSH fuzzy
// index over term embeddings.
//
// Concurrency: resolve_query and the other const members may run from any
// number of threads at once; write and snapshot_load take exclusive access.
class MemoryStore {
public:
    MemoryStore(MemoryConfig config, std::shared_ptr<const Embedder> embedder,
                LshParams lsh_params = {});

    // Stores a triplet and returns its sequence number. An exact duplicate
    // under AppendAll is a no-op returning the existing seq; under
    // SupersedeByArg1Rel any stored triplet with the same normalized (t1, t2)
    // is removed first.
    std::uint64_t write(std::string_view t1, std::string_view t2, std::string_view t3);

    // Exact match per slot where possible, fuzzy substitution through the LSH
    // index otherwise. A slot that cannot be resolved makes the whole result
    // empty.
    QueryResult resolve_query(const TripletQuery& query) const;

    std::size_t snapshot_save(const std::filesystem::path& path) const;
    std::size_t snapshot_load(const std::filesystem::path& path);

    std::size_t size() const;
    std::vector<Triplet> dump() const;  // seq order
    MemoryStats stats() const;
    std::vector<std::string> column_vocabulary(int column) const;  // normalized terms

    const MemoryConfig& config() const { return config_; }
    const Embedder& embedder() const { return *embedder_; }

private:
    struct Row {
        Triplet triplet;
        std::array<std::string, 3> norm;
    };

    void insert_row(Row row);                      // callers hold the write lock
    void remove_row(std::uint64_t seq);
    void unindex_term(int column, const std::string& norm, std::uint64_t seq);
    std::vector<std::uint64_t> seqs_matching(const std::array<std::optional<std::string>, 3>&
                                                 resolved) const;

    MemoryConfig config_;
    std::shared_ptr<const Embedder> embedder_;

    mutable std::shared_mutex mutex_;
    std::map<std::uint64_t, Row> rows_;  // keyed by seq, so iteration is seq order
    std::uint64_t next_seq_ = 0;
    // normalized term -> seqs of rows holding it in that column (sorted)
    std::array<std::unordered_map<std::string, std::vector<std::uint64_t>>, 3> column_index_;
    LshIndex lsh_;
};

}  // namespace retmem
