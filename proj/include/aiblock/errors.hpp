#pragma once

#include <stdexcept>
#include <string>

namespace aiblock {

// Bad input: maps to CLI exit status 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class OverlapError : public InputError {
public:
    using InputError::InputError;
};

class CoverageError : public InputError {
public:
    using InputError::InputError;
};

class EmptyGroupError : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class IndexOutOfRange : public InputError {
public:
    using InputError::InputError;
};

class BlockTooLarge : public InputError {
public:
    using InputError::InputError;
};

class EmptySubset : public InputError {
public:
    using InputError::InputError;
};

class EmptyGrid : public InputError {
public:
    using InputError::InputError;
};

class InvalidG : public InputError {
public:
    using InputError::InputError;
};

class InvalidParam : public InputError {
public:
    using InputError::InputError;
};

class InvalidAlpha : public InvalidParam {
public:
    using InvalidParam::InvalidParam;
};

class IncompatibleDimension : public InputError {
public:
    using InputError::InputError;
};

// Corrupted pseudo-observations (madogram at or above 1/2).
class DegenerateMadogram : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Sampler produced something unusable: maps to CLI exit status 3.
class SamplerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace aiblock
