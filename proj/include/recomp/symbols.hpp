#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "recomp/saturating.hpp"

namespace recomp {

using Letter = std::uint32_t;
using RuleId = std::uint32_t;

inline constexpr Letter kNoLetter = UINT32_C(0xffffffff);

/// Registry of live letters. Ids are dense; index i holds the weight of
/// letter i, the decompressed length of the input string it stands for.
/// Input terminals have weight 1. Fresh letters record the weight of the
/// string they replaced, so original positions stay recoverable after any
/// number of compression rounds.
class SymbolTable {
public:
    SymbolTable() = default;
    explicit SymbolTable(Letter alphabet) : weights_(alphabet, 1) {}

    Letter fresh(std::uint64_t weight) {
        weights_.push_back(weight);
        return static_cast<Letter>(weights_.size() - 1);
    }

    std::uint64_t weight(Letter a) const {
        assert(a < weights_.size());
        return weights_[a];
    }

    std::size_t size() const { return weights_.size(); }

    /// Rebuild with `count` letters whose weights are given by old ids via
    /// `old_of_new`; used when the alphabet is renumbered between phases.
    void remap(const std::vector<Letter>& old_of_new) {
        std::vector<std::uint64_t> next(old_of_new.size());
        for (std::size_t i = 0; i < old_of_new.size(); ++i) next[i] = weights_[old_of_new[i]];
        weights_ = std::move(next);
    }

private:
    std::vector<std::uint64_t> weights_;
};

}  // namespace recomp
