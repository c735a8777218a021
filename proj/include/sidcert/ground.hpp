#ifndef SIDCERT_GROUND_HPP
#define SIDCERT_GROUND_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sidcert/error.hpp"

namespace sidcert {

using Vertex = int;

/**
 * A subset of a ground set, encoded as a bitmask against the ground set's
 * fixed vertex order.  Bit i corresponds to the i-th vertex in that order.
 */
using Subset = std::uint64_t;

inline constexpr int kDefaultGroundCap = 16;
inline constexpr int kHardGroundCap = 63;

inline int popcount(Subset s) { return std::popcount(s); }
inline bool subset_le(Subset a, Subset b) { return (a & ~b) == 0; }

/** Iterates the set bits of a mask in ascending position order. */
inline std::vector<int> bit_positions(Subset s) {
    std::vector<int> out;
    while (s) {
        int b = std::countr_zero(s);
        out.push_back(b);
        s &= s - 1;
    }
    return out;
}

/**
 * DESIGN
 *   Vertex identifiers are opaque integers; a GroundSet pins an order on
 *   them once, and every subset is a bitmask relative to that order.  All
 *   set-function and complex code works with masks; identifiers only
 *   reappear at serialization boundaries.
 */
class GroundSet {
public:
    GroundSet() = default;

    explicit GroundSet(std::vector<Vertex> verts, int cap = kDefaultGroundCap)
        : verts_(std::move(verts)) {
        if (cap > kHardGroundCap) cap = kHardGroundCap;
        if (static_cast<int>(verts_.size()) > cap)
            throw SizeCapError("ground set of size " + std::to_string(verts_.size()) +
                               " exceeds cap " + std::to_string(cap));
        for (int i = 0; i < static_cast<int>(verts_.size()); ++i) {
            if (!index_.emplace(verts_[i], i).second)
                throw InvalidSubsetError("duplicate vertex id " + std::to_string(verts_[i]));
        }
    }

    int size() const { return static_cast<int>(verts_.size()); }
    bool contains(Vertex v) const { return index_.count(v) != 0; }

    int index_of(Vertex v) const {
        auto it = index_.find(v);
        if (it == index_.end())
            throw InvalidSubsetError("vertex " + std::to_string(v) + " not in ground set");
        return it->second;
    }

    Vertex vertex_at(int i) const { return verts_.at(i); }
    const std::vector<Vertex>& vertices() const { return verts_; }

    Subset full() const {
        return size() == 64 ? ~Subset(0) : ((Subset(1) << size()) - 1);
    }

    Subset subset(const std::vector<Vertex>& vs) const {
        Subset s = 0;
        for (Vertex v : vs) {
            Subset bit = Subset(1) << index_of(v);
            if (s & bit) throw InvalidSubsetError("repeated vertex " + std::to_string(v));
            s |= bit;
        }
        return s;
    }

    Subset singleton(Vertex v) const { return Subset(1) << index_of(v); }

    /** Elements of a mask in ground-set order (ascending for sorted grounds). */
    std::vector<Vertex> elements(Subset s) const {
        check_mask(s);
        std::vector<Vertex> out;
        for (int b : bit_positions(s)) out.push_back(verts_[b]);
        return out;
    }

    void check_mask(Subset s) const {
        if (!subset_le(s, full()))
            throw InvalidSubsetError("mask has bits outside the ground set");
    }

    std::string render(Subset s) const {
        std::string out = "{";
        bool first = true;
        for (Vertex v : elements(s)) {
            if (!first) out += ",";
            out += std::to_string(v);
            first = false;
        }
        return out + "}";
    }

    bool operator==(const GroundSet& o) const { return verts_ == o.verts_; }
    bool operator!=(const GroundSet& o) const { return !(*this == o); }

private:
    std::vector<Vertex> verts_;
    std::map<Vertex, int> index_;
};

/** Ground set 1..n in ascending order. */
inline GroundSet range_ground(int n, int cap = kDefaultGroundCap) {
    std::vector<Vertex> vs(n);
    for (int i = 0; i < n; ++i) vs[i] = i + 1;
    return GroundSet(std::move(vs), cap);
}

} // namespace sidcert

#endif
