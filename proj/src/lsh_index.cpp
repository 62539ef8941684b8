#include "retmem/lsh_index.hpp"

#include <algorithm>
#include <cmath>

#include "retmem/rng.hpp"

namespace retmem {

LshIndex::LshIndex(std::size_t dimension, LshParams params)
    : dimension_(dimension), params_(params) {
    if (dimension_ == 0)
        throw Error(ErrorCode::Config, "index dimension must be positive");
    if (params_.tables == 0 || params_.bits == 0 || params_.bits > 56)
        throw Error(ErrorCode::Config, "lsh tables must be >= 1 and bits in [1, 56]");

    Rng rng(params_.seed);
    hyperplanes_.reserve(params_.tables * params_.bits);
    for (std::size_t i = 0; i < params_.tables * params_.bits; ++i) {
        std::vector<double> h(dimension_);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (double& v : h) {
                v = rng.normal();
                norm2 += v * v;
            }
        } while (norm2 <= 0.0);
        double inv = 1.0 / std::sqrt(norm2);
        for (double& v : h) v *= inv;
        hyperplanes_.push_back(std::move(h));
    }
    buckets_.resize(params_.tables);
}

void LshIndex::check_dimension(const Embedding& e) const {
    if (e.dimension() != dimension_)
        throw Error(ErrorCode::DimensionMismatch,
                    "embedding has dimension " + std::to_string(e.dimension()) +
                        ", index expects " + std::to_string(dimension_));
}

std::uint64_t LshIndex::signature(const Embedding& e, std::size_t table) const {
    check_dimension(e);
    if (table >= params_.tables)
        throw Error(ErrorCode::Config, "table index out of range");
    std::uint64_t sig = 0;
    const std::vector<double>* planes = &hyperplanes_[table * params_.bits];
    for (std::size_t j = 0; j < params_.bits; ++j) {
        double dot = 0.0;
        const std::vector<double>& h = planes[j];
        for (std::size_t i = 0; i < dimension_; ++i) dot += e[i] * h[i];
        if (dot >= 0.0) sig |= (1ULL << j);
    }
    return sig;
}

std::uint64_t LshIndex::bucket_key(int column, std::uint64_t sig) const {
    return (static_cast<std::uint64_t>(column) << 56) | sig;
}

void LshIndex::insert(int column, std::string_view term, const Embedding& e) {
    check_dimension(e);
    auto key = std::make_pair(column, std::string(term));
    if (live_.count(key)) return;

    auto idx = static_cast<std::uint32_t>(entries_.size());
    entries_.push_back(Entry{column, std::string(term), e, true});
    live_.emplace(std::move(key), idx);
    for (std::size_t t = 0; t < params_.tables; ++t)
        buckets_[t][bucket_key(column, signature(e, t))].push_back(idx);
}

bool LshIndex::erase(int column, std::string_view term) {
    auto it = live_.find(std::make_pair(column, std::string(term)));
    if (it == live_.end()) return false;
    entries_[it->second].alive = false;  // bucket lists keep the tombstone
    live_.erase(it);
    return true;
}

std::optional<NearestHit> LshIndex::nearest(int column, const Embedding& e,
                                            double threshold) const {
    return nearest_probe(column, e, threshold).hit;
}

LshIndex::Probe LshIndex::nearest_probe(int column, const Embedding& e,
                                        double threshold) const {
    check_dimension(e);
    std::vector<std::uint32_t> candidates;
    for (std::size_t t = 0; t < params_.tables; ++t) {
        auto it = buckets_[t].find(bucket_key(column, signature(e, t)));
        if (it == buckets_[t].end()) continue;
        for (std::uint32_t idx : it->second)
            if (entries_[idx].alive) candidates.push_back(idx);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    Probe probe;
    probe.candidates_examined = candidates.size();
    double best = -2.0;
    std::uint32_t best_idx = 0;
    for (std::uint32_t idx : candidates) {
        double c = cosine(e, entries_[idx].embedding);
        if (c > best) {  // candidates are in insertion order, so '>' keeps the earliest on ties
            best = c;
            best_idx = idx;
        }
    }
    if (best >= threshold && !candidates.empty())
        probe.hit = NearestHit{entries_[best_idx].term, best};
    return probe;
}

LshStats LshIndex::stats() const {
    LshStats s;
    s.tables = params_.tables;
    s.bits = params_.bits;
    s.entries_alive = live_.size();
    s.entries_total = entries_.size();
    for (const auto& table : buckets_) {
        s.buckets += table.size();
        for (const auto& [key, members] : table)
            s.max_bucket = std::max(s.max_bucket, members.size());
    }
    return s;
}

}  // namespace retmem
