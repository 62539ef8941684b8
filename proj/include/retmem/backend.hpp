#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace retmem {

struct StopHints {
    std::vector<std::string> sequences;
};

// A pluggable text-completion engine. The controller calls generate with the
// full turn prefix; an empty continuation ends the turn. Implementations must
// be deterministic for identical prefixes when configured with a fixed seed.
class GenerationBackend {
public:
    virtual ~GenerationBackend() = default;
    virtual std::string generate(std::string_view prefix, const StopHints& hints) = 0;
    virtual std::string name() const = 0;
};

}  // namespace retmem
