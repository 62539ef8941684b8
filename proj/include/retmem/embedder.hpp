#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "retmem/embedding.hpp"

namespace retmem {

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::size_t dimension() const = 0;
    // Embeds the normalized form of the term; result has unit L2 norm.
    virtual Embedding embed(std::string_view term) const = 0;
};

// Hashed character-trigram embedder. Pure: the same input produces the same
// vector on every run and platform, which keeps the whole test suite hermetic.
class TrigramEmbedder final : public Embedder {
public:
    explicit TrigramEmbedder(std::size_t dimension = 64, std::uint64_t seed = 42);

    std::size_t dimension() const override { return dimension_; }
    Embedding embed(std::string_view term) const override;

private:
    std::size_t dimension_;
    std::uint64_t seed_;
};

// Remote embedding provider: term in, vector of `dimension` reals out, over
// the same transport as the remote generation backend. The response vector is
// L2-normalized here.
struct ExternalEmbedderConfig {
    std::string endpoint;        // origin, e.g. "http://127.0.0.1:8080"
    std::size_t dimension = 64;
    double timeout_seconds = 30.0;
};

class ExternalEmbedder final : public Embedder {
public:
    explicit ExternalEmbedder(ExternalEmbedderConfig config);
    ~ExternalEmbedder() override;

    std::size_t dimension() const override { return config_.dimension; }
    Embedding embed(std::string_view term) const override;

private:
    ExternalEmbedderConfig config_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

enum class EmbedderKind { DeterministicTrigram, External };

struct EmbedderSpec {
    EmbedderKind kind = EmbedderKind::DeterministicTrigram;
    std::size_t dimension = 64;
    std::uint64_t seed = 42;
    std::string endpoint;  // External only
};

std::shared_ptr<const Embedder> make_embedder(const EmbedderSpec& spec);

}  // namespace retmem
