#pragma once

#include <cstdint>
#include <vector>

namespace recomp {

/// Stable LSD radix sort by a 64-bit key, byte passes, skipping passes whose
/// byte is constant across the input. Sorting cost stays linear in the input
/// plus the number of distinct key bytes actually used, which is what the
/// per-phase accounting of pair and block lists relies on.
template <class T, class KeyFn>
void radix_sort_by_key(std::vector<T>& v, KeyFn key) {
    if (v.size() < 2) return;
    std::uint64_t all_or = 0;
    for (const T& t : v) all_or |= key(t);
    std::vector<T> tmp(v.size());
    for (int pass = 0; pass < 8; ++pass) {
        const int shift = pass * 8;
        if (((all_or >> shift) & 0xff) == 0 && (all_or >> shift) != 0) continue;
        if ((all_or >> shift) == 0) break;
        std::uint32_t counts[257] = {0};
        for (const T& t : v) counts[((key(t) >> shift) & 0xff) + 1]++;
        bool single_bucket = false;
        for (int b = 0; b < 256; ++b) {
            if (counts[b + 1] == v.size()) { single_bucket = true; break; }
        }
        if (single_bucket) continue;
        for (int b = 0; b < 256; ++b) counts[b + 1] += counts[b];
        for (T& t : v) tmp[counts[(key(t) >> shift) & 0xff]++] = std::move(t);
        v.swap(tmp);
    }
}

}  // namespace recomp
