#pragma once

#include <stdexcept>
#include <string>

namespace frechet {

/// Malformed or out-of-range input: wrong space tag, invalid point payload,
/// parameter outside its domain, unparsable file. CLI exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two sphere points are antipodal, so the geodesic between them is not unique.
class NonUniqueGeodesic : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// An iterative solver ran out of budget. CLI exit code 3.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, double last_displacement, std::size_t iterations)
      : std::runtime_error(what), last_displacement_(last_displacement), iterations_(iterations) {}

  double last_displacement() const noexcept { return last_displacement_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double last_displacement_;
  std::size_t iterations_;
};

}  // namespace frechet
