#pragma once

#include <stdexcept>
#include <string>

namespace preserver {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Instance or solution text that fails structural validation.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Input violates a documented precondition (ranges, counts, duplicates).
struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// A demand pair whose target is unreachable from its source.
struct UnreachablePairError : Error {
  explicit UnreachablePairError(const std::string& what) : Error(what) {}
};

// Shortest-path enumeration exceeded the configured cap.
struct PathExplosionError : Error {
  explicit PathExplosionError(const std::string& what) : Error(what) {}
};

// A positive-weight cycle survived zero-weight component contraction.
// Indicates a corrupted local graph; cannot arise from valid inputs.
struct CyclicAfterContractionError : Error {
  explicit CyclicAfterContractionError(const std::string& what) : Error(what) {}
};

// Witness path that is not a shortest path of its pair.
struct NonShortestWitnessError : Error {
  explicit NonShortestWitnessError(const std::string& what) : Error(what) {}
};

// LP solver failed to find a feasible point.
struct LpInfeasibleError : Error {
  explicit LpInfeasibleError(const std::string& what) : Error(what) {}
};

// LP solver hit a numerical failure (cycling guard, unbounded pivot).
struct LpNumericalError : Error {
  explicit LpNumericalError(const std::string& what) : Error(what) {}
};

// Mismatched vector shapes passed to a mixing or decomposition step.
struct DimensionMismatchError : Error {
  explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

// Arc flow whose node imbalance is not a unit source-to-target flow.
struct NonConservingInputError : Error {
  explicit NonConservingInputError(const std::string& what) : Error(what) {}
};

// Reduction applied to an instance that is already directed.
struct AlreadyDirectedError : Error {
  explicit AlreadyDirectedError(const std::string& what) : Error(what) {}
};

// Bipartite instance whose partition cannot support the gadget build.
struct InvalidPartitionError : Error {
  explicit InvalidPartitionError(const std::string& what) : Error(what) {}
};

// Solution whose witness structure does not match the expected gadget paths.
struct StructureViolationError : Error {
  explicit StructureViolationError(const std::string& what) : Error(what) {}
};

// Generator parameters that cannot be satisfied.
struct InfeasibleParametersError : Error {
  explicit InfeasibleParametersError(const std::string& what) : Error(what) {}
};

}  // namespace preserver
