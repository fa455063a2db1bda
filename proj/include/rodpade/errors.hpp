#pragma once

#include <stdexcept>
#include <string>

namespace rodpade
{

// A Laurent tail was not known to enough terms for the requested result.
struct InsufficientDepth : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroOperator : std::domain_error {
    ZeroOperator() : std::domain_error("operation undefined for the zero operator") {}
};

struct WeightOrderTooSmall : std::domain_error {
    explicit WeightOrderTooSmall(long d)
        : std::domain_error("weight order " + std::to_string(d) + " < 1; property (P) is undefined")
    {
    }
};

struct PropertyPFailure : std::domain_error {
    using std::domain_error::domain_error;
};

// The two determinant errors signal implementation bugs: the underlying
// theorems rule both outcomes out.
struct NonConstantDeterminant : std::logic_error {
    using std::logic_error::logic_error;
};

struct ZeroDeterminant : std::logic_error {
    using std::logic_error::logic_error;
};

struct DegenerateAlphas : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadBeta : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace rodpade
