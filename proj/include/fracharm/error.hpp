#pragma once

#include <stdexcept>
#include <string>

namespace fracharm {

/// A computation produced NaN, failed to converge, or hit a corrupted table.
/// `op` names the operation so drivers can report it.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string op, const std::string& what)
        : std::runtime_error(op + ": " + what), op_(std::move(op)) {}
    const std::string& op() const { return op_; }

private:
    std::string op_;
};

}  // namespace fracharm
