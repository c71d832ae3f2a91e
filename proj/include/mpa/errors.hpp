#pragma once

#include <stdexcept>
#include <string>

namespace mpa {

// Violated precondition of a library call.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A lattice set or matrix would exceed a configured size cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure: non-finite values, residual checks, factorization breakdown.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Energy too close to the spectrum to form a resolvent.
class ResonantEnergy : public NumericFailure {
public:
    ResonantEnergy(const std::string& what, double distance)
        : NumericFailure(what), distance_(distance) {}
    double distance() const { return distance_; }

private:
    double distance_;
};

// No admissible cover spacing exists for the requested scales.
class NoValidAlpha : public ContractError {
public:
    using ContractError::ContractError;
};

// The bad-region construction does not fit inside the parent box.
class RegionOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mpa
