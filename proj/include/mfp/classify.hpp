#pragma once

#include "mfp/distance.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mfp {

/// Outcome of one class test on a finite table.
///
/// Counterexample layout per class:
///   Symmetric       (x, y)     with d(x,y) != d(y,x)
///   Quasimetric     (x, y, z)  with d(x,y) > d(x,z) + d(z,y)
///   Metric          the failing Symmetric or Quasimetric witness
///   SDistance       (x, y, z)  with d(x,z) + d(z,y) = 0 < d(x,y)
///   NDistance/FDistance (x, y, z) with d(x,y) = d(y,z) = 0 < d(x,z)
///   HDistance       (x, y, z)  with d(x,z) = d(y,z) = 0, x != y
///   CDistance       (x, p)     with d(x,p) = 0, x != p
struct ClassVerdict {
    bool evaluated = false;
    bool passed = false;
    std::vector<Index> counterexample;
    std::string note;

    friend bool operator==(const ClassVerdict&, const ClassVerdict&) = default;
};

/// The delta found for point x and threshold epsilon in the N-condition.
struct DeltaWitness {
    Index x = 0;
    double epsilon = 0.0;
    double delta = 0.0;

    friend bool operator==(const DeltaWitness&, const DeltaWitness&) = default;
};

/// The x-independent delta for epsilon in the F-condition.
struct UniformDeltaWitness {
    double epsilon = 0.0;
    double delta = 0.0;

    friend bool operator==(const UniformDeltaWitness&, const UniformDeltaWitness&) = default;
};

struct AxiomReport {
    std::size_t n = 0;
    /// Axiom (ii): d(x,y) + d(y,x) = 0 iff x = y. When false no class is evaluated.
    bool fundamental_ok = false;
    std::vector<Index> fundamental_witness;
    std::array<ClassVerdict, kAllDistanceClasses.size()> verdicts{};
    /// max over triples with positive denominator of d(x,y) / (d(x,z) + d(z,y));
    /// +inf when some zero denominator meets a positive numerator.
    std::optional<double> minimal_s;
    std::vector<DeltaWitness> n_delta_witness;
    std::vector<UniformDeltaWitness> f_delta_witness;

    const ClassVerdict& verdict(DistanceClass c) const {
        return verdicts[static_cast<std::size_t>(c)];
    }
    ClassVerdict& verdict(DistanceClass c) { return verdicts[static_cast<std::size_t>(c)]; }
    bool passes(DistanceClass c) const { return fundamental_ok && verdict(c).passed; }

    friend bool operator==(const AxiomReport&, const AxiomReport&) = default;
};

struct ClassifyOptions {
    /// Relative slack on the symmetry and triangle comparisons, absorbing
    /// rounding in materialized product tables.
    double rel_slack = 1e-12;
    /// Record the (x, epsilon, delta) grid for N and the (epsilon, delta) grid for F.
    bool record_delta_witness = true;
};

/// Exhaustive decision of every class in the hierarchy on a finite table.
AxiomReport classify_finite(const FiniteDistanceSpace& space, const ClassifyOptions& options = {});

/// True when the witness in `verdict` really violates class `c` in `space`.
/// Used to check classifier soundness independently of how the witness was found.
bool counterexample_violates(const FiniteDistanceSpace& space, DistanceClass c,
                             const std::vector<Index>& witness, double rel_slack = 1e-12);

/// Generic view of `space` declaring every class `report` passed, with
/// s = minimal_s when that is finite.
DistanceSpace<Index> classified_space(const FiniteDistanceSpace& space, const AxiomReport& report);

}  // namespace mfp
