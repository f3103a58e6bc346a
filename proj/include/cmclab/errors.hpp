#pragma once

#include <stdexcept>
#include <string>

namespace cmclab {

// Raised when an integration or fit fails its accuracy contract
// (conservation drift, plaquette holonomy, ill-conditioned Gram matrix).
// Parameter errors use std::invalid_argument.
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cmclab
