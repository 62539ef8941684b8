#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "retmem/errors.hpp"

namespace retmem {

// Unit-norm vector representation of a term.
class Embedding {
public:
    Embedding() = default;
    explicit Embedding(std::vector<double> values) : values_(std::move(values)) {}

    std::size_t dimension() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    double dot(const Embedding& other) const {
        if (other.dimension() != dimension())
            throw Error(ErrorCode::DimensionMismatch, "embedding dimension mismatch");
        double s = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * other.values_[i];
        return s;
    }

    double norm() const {
        double s = 0.0;
        for (double v : values_) s += v * v;
        return std::sqrt(s);
    }

    bool operator==(const Embedding& other) const { return values_ == other.values_; }

private:
    std::vector<double> values_;
};

// cosine of two unit vectors is their dot product
inline double cosine(const Embedding& a, const Embedding& b) { return a.dot(b); }

}  // namespace retmem
