#pragma once

#include <stdexcept>
#include <string>

namespace fedlora {

// Shape disagreement between matrix/vector operands.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Label or index outside its valid range.
class IndexError : public std::out_of_range {
public:
    explicit IndexError(const std::string& what) : std::out_of_range(what) {}
};

// A scenario/configuration value that cannot be honored. Carries the field
// path ("perturbation.ratio") when raised during config validation.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A strategy invoked outside its contract (e.g. FedAvg aggregation over
// mixed-rank payloads).
class StrategyMisuseError : public std::logic_error {
public:
    explicit StrategyMisuseError(const std::string& what) : std::logic_error(what) {}
};

// Nominal/perturbed runs that cannot be paired method-by-method.
class PairingError : public std::runtime_error {
public:
    explicit PairingError(const std::string& what) : std::runtime_error(what) {}
};

// Trace schema version disagreement.
class VersionError : public std::runtime_error {
public:
    explicit VersionError(const std::string& what) : std::runtime_error(what) {}
};

// An evaluator fed a trace with nothing to evaluate.
class NoDataError : public std::runtime_error {
public:
    explicit NoDataError(const std::string& what) : std::runtime_error(what) {}
};

// Trace/report file I/O failure.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fedlora
