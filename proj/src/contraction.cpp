#include "mfp/contraction.hpp"

#include <array>

namespace mfp {

namespace detail {

std::uint64_t nth_prime(std::size_t index) {
    static const std::vector<std::uint64_t> primes = [] {
        std::vector<std::uint64_t> out;
        for (std::uint64_t c = 2; out.size() < 256; ++c) {
            bool prime = true;
            for (std::uint64_t p : out) {
                if (p * p > c) break;
                if (c % p == 0) {
                    prime = false;
                    break;
                }
            }
            if (prime) out.push_back(c);
        }
        return out;
    }();
    if (index >= primes.size()) throw ArgumentError("Halton sampling supports at most 128 coordinates");
    return primes[index];
}

}  // namespace detail

PairSource<Index> exhaustive_pairs(std::size_t n, std::size_t m) {
    const std::size_t tuples = checked_power(n, m, kPairEnumerationLimit);
    if (tuples > kPairEnumerationLimit / tuples) {
        throw ResourceError("n^(2m) pairs exceed the enumeration limit of " +
                            std::to_string(kPairEnumerationLimit));
    }
    return {true, [n, m, tuples](const PairSource<Index>::Visitor& visit) {
                std::vector<Tuple<Index>> all(tuples);
                for (Index c = 0; c < tuples; ++c) all[c] = decode_tuple(c, n, m);
                for (const auto& x : all) {
                    for (const auto& y : all) visit(x, y);
                }
            }};
}

std::string_view to_string(LiftVerdict v) noexcept {
    switch (v) {
        case LiftVerdict::Holds: return "holds";
        case LiftVerdict::Violated: return "violated";
        case LiftVerdict::HypothesisNotMet: return "hypothesis not met";
    }
    return "unknown";
}

}  // namespace mfp
