#include "retmem/memory_store.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "retmem/text.hpp"

namespace retmem {

MemoryStore::MemoryStore(MemoryConfig config, std::shared_ptr<const Embedder> embedder,
                         LshParams lsh_params)
    : config_(config),
      embedder_(std::move(embedder)),
      lsh_(embedder_->dimension(), lsh_params) {
    if (config_.fuzzy_threshold < 0.0 || config_.fuzzy_threshold > 1.0)
        throw Error(ErrorCode::Config, "fuzzy_threshold must be in [0, 1]");
}

std::uint64_t MemoryStore::write(std::string_view t1, std::string_view t2,
                                 std::string_view t3) {
    const std::array<std::string_view, 3> surface{t1, t2, t3};
    std::array<std::string, 3> norm;
    for (int i = 0; i < 3; ++i) {
        if (std::string v = term_wire_violation(surface[i]); !v.empty())
            throw Error(ErrorCode::ReservedDelimiter,
                        "t" + std::to_string(i + 1) + ": " + v);
        norm[i] = normalize_term(surface[i]);
        if (norm[i].empty())
            throw Error(ErrorCode::EmptyTerm,
                        "t" + std::to_string(i + 1) + " normalizes to empty");
    }

    std::unique_lock lock(mutex_);

    // exact duplicate is a no-op under either policy
    for (std::uint64_t seq : seqs_matching({norm[0], norm[1], norm[2]}))
        return seq;

    if (config_.conflict_policy == ConflictPolicy::SupersedeByArg1Rel) {
        std::vector<std::uint64_t> stale = seqs_matching({norm[0], norm[1], std::nullopt});
        for (std::uint64_t seq : stale) remove_row(seq);
    }

    Row row;
    row.triplet = Triplet{std::string(t1), std::string(t2), std::string(t3), next_seq_++};
    row.norm = std::move(norm);
    std::uint64_t seq = row.triplet.seq;
    insert_row(std::move(row));
    return seq;
}

void MemoryStore::insert_row(Row row) {
    for (int i = 0; i < 3; ++i) {
        auto& postings = column_index_[i][row.norm[i]];
        if (postings.empty())
            lsh_.insert(i + 1, row.norm[i], embedder_->embed(row.norm[i]));
        postings.push_back(row.triplet.seq);
    }
    std::uint64_t seq = row.triplet.seq;
    rows_.emplace(seq, std::move(row));
}

void MemoryStore::remove_row(std::uint64_t seq) {
    auto it = rows_.find(seq);
    if (it == rows_.end()) return;
    for (int i = 0; i < 3; ++i) unindex_term(i, it->second.norm[i], seq);
    rows_.erase(it);
}

void MemoryStore::unindex_term(int column, const std::string& norm, std::uint64_t seq) {
    auto it = column_index_[column].find(norm);
    if (it == column_index_[column].end()) return;
    auto& postings = it->second;
    postings.erase(std::remove(postings.begin(), postings.end(), seq), postings.end());
    if (postings.empty()) {
        // the term no longer occurs in this column, so the fuzzy index must
        // stop offering it as a substitute
        column_index_[column].erase(it);
        lsh_.erase(column + 1, norm);
    }
}

std::vector<std::uint64_t> MemoryStore::seqs_matching(
    const std::array<std::optional<std::string>, 3>& resolved) const {
    // intersect the posting lists of the present slots, smallest first
    const std::vector<std::uint64_t>* smallest = nullptr;
    for (int i = 0; i < 3; ++i) {
        if (!resolved[i]) continue;
        auto it = column_index_[i].find(*resolved[i]);
        if (it == column_index_[i].end()) return {};
        if (!smallest || it->second.size() < smallest->size()) smallest = &it->second;
    }
    if (!smallest) return {};

    std::vector<std::uint64_t> out;
    for (std::uint64_t seq : *smallest) {
        const Row& row = rows_.at(seq);
        bool ok = true;
        for (int i = 0; i < 3; ++i)
            if (resolved[i] && row.norm[i] != *resolved[i]) ok = false;
        if (ok) out.push_back(seq);
    }
    std::sort(out.begin(), out.end());
    return out;
}

QueryResult MemoryStore::resolve_query(const TripletQuery& query) const {
    query.validate();

    std::shared_lock lock(mutex_);

    const std::array<const std::optional<std::string>*, 3> slots{&query.q1, &query.q2,
                                                                 &query.q3};
    std::array<std::optional<std::string>, 3> resolved;
    QueryResult result;
    bool unresolvable = false;

    for (int i = 0; i < 3; ++i) {
        if (!*slots[i]) continue;
        std::string norm = normalize_term(**slots[i]);
        if (norm.empty()) {
            unresolvable = true;
            continue;
        }
        if (column_index_[i].count(norm)) {
            resolved[i] = std::move(norm);
            continue;
        }
        // no exact match: ask the fuzzy index for an alternative in this column
        auto hit = lsh_.nearest(i + 1, embedder_->embed(norm), config_.fuzzy_threshold);
        if (!hit) {
            unresolvable = true;
            continue;
        }
        result.substitutions.push_back(
            Substitution{i + 1, **slots[i], hit->term, hit->cosine});
        resolved[i] = hit->term;
    }

    if (unresolvable) return result;  // matches stay empty

    for (std::uint64_t seq : seqs_matching(resolved))
        result.matches.push_back(rows_.at(seq).triplet);
    return result;
}

std::size_t MemoryStore::snapshot_save(const std::filesystem::path& path) const {
    std::shared_lock lock(mutex_);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    for (const auto& [seq, row] : rows_) {
        nlohmann::json record = {{"seq", seq},
                                 {"t1", row.triplet.t1},
                                 {"t2", row.triplet.t2},
                                 {"t3", row.triplet.t3}};
        out << record.dump() << '\n';
    }
    out.flush();
    if (!out)
        throw Error(ErrorCode::Io, "write to " + path.string() + " failed");
    return rows_.size();
}

std::size_t MemoryStore::snapshot_load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open " + path.string() + " for reading");

    std::vector<Row> records;
    std::string line;
    std::size_t line_no = 0;
    std::uint64_t prev_seq = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw MalformedSnapshotError(line_no, e.what());
        }
        for (const char* field : {"seq", "t1", "t2", "t3"})
            if (!record.contains(field))
                throw MalformedSnapshotError(line_no, std::string("missing field ") + field);
        if (!record["seq"].is_number_unsigned())
            throw MalformedSnapshotError(line_no, "seq must be a non-negative integer");
        for (const char* field : {"t1", "t2", "t3"})
            if (!record[field].is_string())
                throw MalformedSnapshotError(line_no, std::string(field) + " must be a string");

        Row row;
        row.triplet = Triplet{record["t1"], record["t2"], record["t3"],
                              record["seq"].get<std::uint64_t>()};
        if (!records.empty() && row.triplet.seq <= prev_seq)
            throw MalformedSnapshotError(line_no, "seq values must be strictly increasing");
        prev_seq = row.triplet.seq;

        const std::array<const std::string*, 3> surfaces{&row.triplet.t1, &row.triplet.t2,
                                                         &row.triplet.t3};
        for (int i = 0; i < 3; ++i) {
            if (std::string v = term_wire_violation(*surfaces[i]); !v.empty())
                throw MalformedSnapshotError(line_no, v);
            row.norm[i] = normalize_term(*surfaces[i]);
            if (row.norm[i].empty())
                throw MalformedSnapshotError(line_no, "term normalizes to empty");
        }
        records.push_back(std::move(row));
    }

    std::unique_lock lock(mutex_);
    rows_.clear();
    for (auto& idx : column_index_) idx.clear();
    lsh_ = LshIndex(embedder_->dimension(), lsh_.params());
    next_seq_ = 0;

    for (Row& row : records) {
        next_seq_ = row.triplet.seq + 1;
        insert_row(std::move(row));
    }
    return rows_.size();
}

std::size_t MemoryStore::size() const {
    std::shared_lock lock(mutex_);
    return rows_.size();
}

std::vector<Triplet> MemoryStore::dump() const {
    std::shared_lock lock(mutex_);
    std::vector<Triplet> out;
    out.reserve(rows_.size());
    for (const auto& [seq, row] : rows_) out.push_back(row.triplet);
    return out;
}

MemoryStats MemoryStore::stats() const {
    std::shared_lock lock(mutex_);
    MemoryStats s;
    s.triplets = rows_.size();
    for (int i = 0; i < 3; ++i) s.vocabulary_sizes[i] = column_index_[i].size();
    s.lsh = lsh_.stats();
    return s;
}

std::vector<std::string> MemoryStore::column_vocabulary(int column) const {
    if (column < 1 || column > 3)
        throw Error(ErrorCode::Config, "column must be 1, 2 or 3");
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    out.reserve(column_index_[column - 1].size());
    for (const auto& [term, postings] : column_index_[column - 1]) out.push_back(term);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace retmem
