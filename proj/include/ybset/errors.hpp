#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace ybset {

// Malformed input data (bad dimensions, out-of-range entries).
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// T = y -> f_y^{-1}(y) fails to be a bijection, or a component map is not one.
struct NondegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Right-action law violated; carries the witness pair.
struct BraidError : std::runtime_error {
    int x = -1, y = -1;
    BraidError(const std::string& msg, int x_, int y_)
        : std::runtime_error(msg), x(x_), y(y_) {}
};

// A configured budget (tuple count, group order, ring size) was exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Algebraic precondition failed (broken relation, incompatible maps).
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bundle generators do not separate base points.
struct FaithfulnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside the operation's domain.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inconsistent link diagram or move pattern mismatch.
struct DiagramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Assembled union failed validation; carries the failed flag and a witness.
struct UnionError : std::runtime_error {
    std::string flag;
    std::array<int, 3> witness{{-1, -1, -1}};
    UnionError(const std::string& msg, std::string flag_, std::array<int, 3> w)
        : std::runtime_error(msg), flag(std::move(flag_)), witness(w) {}
};

// A certified internal invariant failed; indicates a bug, never bad input.
struct InternalInvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace ybset
