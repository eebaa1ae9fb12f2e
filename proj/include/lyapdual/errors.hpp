#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lyapdual {

// Signed traversal of one edge inside a witness cycle: (edge index, +1/-1).
using SignedEdge = std::pair<uint32_t, int>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A candidate block's maximal invariant subset is strictly larger than z.
struct NotIsolated : Error {
    std::vector<uint32_t> extra_nodes;  // members of Inv(block) \ z, by index
    explicit NotIsolated(std::string msg, std::vector<uint32_t> extra = {})
        : Error(std::move(msg)), extra_nodes(std::move(extra)) {}
};

// A cochain has a nonzero sum around a cycle where exactness was required.
struct NotExact : Error {
    std::vector<SignedEdge> witness_cycle;
    std::string cycle_sum;  // nonzero, "p/q"
    NotExact(std::string msg, std::vector<SignedEdge> cyc, std::string sum)
        : Error(std::move(msg)), witness_cycle(std::move(cyc)), cycle_sum(std::move(sum)) {}
};

// The class pairs to a cochain that is not exact near Z.
struct NotInHZ : Error {
    std::vector<SignedEdge> witness_cycle;
    std::string cycle_sum;
    NotInHZ(std::string msg, std::vector<SignedEdge> cyc, std::string sum)
        : Error(std::move(msg)), witness_cycle(std::move(cyc)), cycle_sum(std::move(sum)) {}
};

// Supplied (z, block) pair fails Inv(block) = z.
struct InvalidIsolation : Error {
    using Error::Error;
};

// Level cuts need integer cycle sums.
struct NonIntegralClass : Error {
    using Error::Error;
};

// A discretization sample moved more than half the fundamental domain.
struct StepTooLarge : Error {
    using Error::Error;
};

struct OperationCanceled : Error {
    using Error::Error;
};

}  // namespace lyapdual
