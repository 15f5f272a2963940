#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confalg {

// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the expression parser; keeps the offset into the source string.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Two operands live in polynomial rings with different lambda contexts.
class ArityMismatch : public Error {
public:
    ArityMismatch(std::size_t lhs, std::size_t rhs)
        : Error("arity mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
    explicit ArityMismatch(const std::string& msg) : Error(msg) {}
};

// Two elements belong to structurally different free modules.
class ModuleMismatch : public Error {
public:
    explicit ModuleMismatch(const std::string& msg) : Error(msg) {}
};

// A lambda renaming sent two variables to the same slot.
class IndexCollision : public Error {
public:
    explicit IndexCollision(const std::string& msg) : Error(msg) {}
};

// The scalar multiplication table handed to the current-algebra builder
// fails associativity over the base field.
class NotAssociativeBase : public Error {
public:
    explicit NotAssociativeBase(const std::string& msg) : Error(msg) {}
};

// A matrix expected to be invertible over k[D] has non-unit determinant.
class NotInvertible : public Error {
public:
    explicit NotInvertible(const std::string& msg) : Error(msg) {}
};

// A cochain was evaluated or combined with data of the wrong degree or arity.
class DegreeMismatch : public Error {
public:
    explicit DegreeMismatch(const std::string& msg) : Error(msg) {}
};

// Insertion-slot index outside 0..m-1.
class SlotOutOfRange : public Error {
public:
    explicit SlotOutOfRange(const std::string& msg) : Error(msg) {}
};

// A semidirect-product construction received action tables that fail the
// bimodule axioms.
class InvalidBimodule : public Error {
public:
    explicit InvalidBimodule(const std::string& msg) : Error(msg) {}
};

// An equation system handed to the affine solver has a quadratic term.
class NotAffine : public Error {
public:
    explicit NotAffine(const std::string& msg) : Error(msg) {}
};

// An extension build was attempted from a triple failing the cocycle
// equations.
class InvalidCocycle : public Error {
public:
    explicit InvalidCocycle(const std::string& msg) : Error(msg) {}
};

// Malformed session input (bad JSON shape, dangling names, wrong ranks, ...).
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

// A lift construction received a witness map that fails its defining
// identities.
class InvalidWitness : public Error {
public:
    explicit InvalidWitness(const std::string& msg) : Error(msg) {}
};

// A map expected to restrict to the distinguished ideal sends part of it
// outside.
class DoesNotPreserveA : public Error {
public:
    explicit DoesNotPreserveA(const std::string& msg) : Error(msg) {}
};

// An operation defined only for extensions with trivial kernel multiplication
// was called on a non-abelian one.
class NotAbelian : public Error {
public:
    explicit NotAbelian(const std::string& msg) : Error(msg) {}
};

// An operation requiring a multiplicative (homomorphism) section was called
// on an extension whose stored section is not one.
class NotSplit : public Error {
public:
    explicit NotSplit(const std::string& msg) : Error(msg) {}
};

// A correspondence defined only for strict two-term structures (vanishing
// ternary bracket) received a non-strict one.
class NotStrict : public Error {
public:
    explicit NotStrict(const std::string& msg) : Error(msg) {}
};

// A correspondence defined only for skeletal two-term structures (zero
// differential) received a non-skeletal one.
class NotSkeletal : public Error {
public:
    explicit NotSkeletal(const std::string& msg) : Error(msg) {}
};

// A structure builder received a cochain that fails its cocycle equation.
class NotACocycle : public Error {
public:
    explicit NotACocycle(const std::string& msg) : Error(msg) {}
};

}  // namespace confalg
