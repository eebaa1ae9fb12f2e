#pragma once

#include <cstdint>
#include <vector>

namespace lyapdual {

// Fixed-universe bitset over node indices of one graph.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(uint32_t universe) : n_(universe), bits_((universe + 63) / 64, 0) {}

    static NodeSet full(uint32_t universe) {
        NodeSet s(universe);
        for (uint32_t i = 0; i < universe; ++i) s.insert(i);
        return s;
    }

    uint32_t universe() const { return n_; }

    bool contains(uint32_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
    void insert(uint32_t i) { bits_[i >> 6] |= uint64_t(1) << (i & 63); }
    void erase(uint32_t i) { bits_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    uint32_t count() const {
        uint32_t c = 0;
        for (uint64_t w : bits_) c += static_cast<uint32_t>(__builtin_popcountll(w));
        return c;
    }
    bool empty() const {
        for (uint64_t w : bits_)
            if (w) return false;
        return true;
    }

    bool operator==(const NodeSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }
    bool operator!=(const NodeSet& o) const { return !(*this == o); }

    bool subset_of(const NodeSet& o) const {
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~o.bits_[i]) return false;
        return true;
    }

    NodeSet& operator&=(const NodeSet& o) {
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
        return *this;
    }
    NodeSet& operator|=(const NodeSet& o) {
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
        return *this;
    }
    friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
    friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }

    // Ascending node indices.
    std::vector<uint32_t> to_indices() const {
        std::vector<uint32_t> out;
        out.reserve(count());
        for (uint32_t i = 0; i < n_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

private:
    uint32_t n_ = 0;
    std::vector<uint64_t> bits_;
};

}  // namespace lyapdual
