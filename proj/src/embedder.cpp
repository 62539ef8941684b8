#include "retmem/embedder.hpp"

#include <mutex>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "retmem/text.hpp"

namespace retmem {

namespace {

constexpr char32_t kBoundary = 0x1F;  // padding sentinel around the term

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
    std::uint64_t h = 0xCBF29CE484222325ULL ^ (seed * 0x100000001B3ULL);
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

TrigramEmbedder::TrigramEmbedder(std::size_t dimension, std::uint64_t seed)
    : dimension_(dimension), seed_(seed) {
    if (dimension_ == 0)
        throw Error(ErrorCode::Config, "embedder dimension must be positive");
}

Embedding TrigramEmbedder::embed(std::string_view term) const {
    std::string norm = normalize_term(term);
    if (norm.empty())
        throw Error(ErrorCode::EmptyTerm, "cannot embed a term that normalizes to empty");

    std::vector<char32_t> cps;
    cps.push_back(kBoundary);
    for (char32_t cp : utf8_decode(norm)) cps.push_back(cp);
    cps.push_back(kBoundary);

    std::vector<double> acc(dimension_, 0.0);
    std::string trigram;
    for (std::size_t i = 0; i + 2 < cps.size(); ++i) {
        trigram.clear();
        utf8_append(trigram, cps[i]);
        utf8_append(trigram, cps[i + 1]);
        utf8_append(trigram, cps[i + 2]);
        std::uint64_t h = fnv1a64(trigram, seed_);
        std::size_t bucket = static_cast<std::size_t>(h % dimension_);
        double sign = (h >> 63) ? -1.0 : 1.0;
        acc[bucket] += sign;
    }

    double norm2 = 0.0;
    for (double v : acc) norm2 += v * v;
    if (norm2 <= 0.0) {
        // all contributions cancelled; fall back to a deterministic axis
        acc[fnv1a64(norm, seed_) % dimension_] = 1.0;
        norm2 = 1.0;
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (double& v : acc) v *= inv;
    return Embedding(std::move(acc));
}

struct ExternalEmbedder::Impl {
    httplib::Client client;
    std::mutex mutex;

    explicit Impl(const ExternalEmbedderConfig& cfg) : client(cfg.endpoint) {
        int sec = static_cast<int>(cfg.timeout_seconds);
        int usec = static_cast<int>((cfg.timeout_seconds - sec) * 1e6);
        client.set_connection_timeout(sec, usec);
        client.set_read_timeout(sec, usec);
    }
};

ExternalEmbedder::ExternalEmbedder(ExternalEmbedderConfig config)
    : config_(std::move(config)), impl_(std::make_unique<Impl>(config_)) {
    if (config_.dimension == 0)
        throw Error(ErrorCode::Config, "embedder dimension must be positive");
    if (config_.endpoint.empty())
        throw Error(ErrorCode::Config, "external embedder requires an endpoint");
}

ExternalEmbedder::~ExternalEmbedder() = default;

Embedding ExternalEmbedder::embed(std::string_view term) const {
    std::string norm = normalize_term(term);
    if (norm.empty())
        throw Error(ErrorCode::EmptyTerm, "cannot embed a term that normalizes to empty");

    nlohmann::json request = {{"term", norm}};
    httplib::Result res = [&] {
        std::lock_guard lock(impl_->mutex);
        return impl_->client.Post("/embed", request.dump(), "application/json");
    }();
    if (!res || res->status != 200)
        throw Error(ErrorCode::ExternalEmbedderUnavailable,
                    "embedding provider unreachable: " + config_.endpoint);

    std::vector<double> values;
    try {
        nlohmann::json body = nlohmann::json::parse(res->body);
        values = body.at("embedding").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ExternalEmbedderUnavailable,
                    std::string("bad embedding response: ") + e.what());
    }
    if (values.size() != config_.dimension)
        throw Error(ErrorCode::DimensionMismatch,
                    "provider returned " + std::to_string(values.size()) +
                        " values, expected " + std::to_string(config_.dimension));

    double norm2 = 0.0;
    for (double v : values) norm2 += v * v;
    if (norm2 <= 0.0)
        throw Error(ErrorCode::ExternalEmbedderUnavailable, "provider returned a zero vector");
    double inv = 1.0 / std::sqrt(norm2);
    for (double& v : values) v *= inv;
    return Embedding(std::move(values));
}

std::shared_ptr<const Embedder> make_embedder(const EmbedderSpec& spec) {
    switch (spec.kind) {
        case EmbedderKind::DeterministicTrigram:
            return std::make_shared<TrigramEmbedder>(spec.dimension, spec.seed);
        case EmbedderKind::External:
            return std::make_shared<ExternalEmbedder>(
                ExternalEmbedderConfig{spec.endpoint, spec.dimension});
    }
    throw Error(ErrorCode::Config, "unknown embedder kind");
}

}  // namespace retmem
