#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ingarch {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;
using Index = Eigen::Index;

/// Observed counts are stored as signed 64-bit so differences stay well-defined.
using Count = std::int64_t;

/// Conditional family of an INGARCH model.
enum class Family { NoGe, GP, NB, Poisson };

std::string_view family_name(Family family);
/// Long display name, e.g. "NoGe-INGARCH".
std::string_view family_display_name(Family family);
Family parse_family(std::string_view name);

/// True for every family that carries a dispersion parameter (all but Poisson).
constexpr bool has_dispersion(Family family) { return family != Family::Poisson; }

/// Column/parameter name of the dispersion coordinate: phi, kappa or n.
std::string_view dispersion_name(Family family);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its family's admissible region.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The operation requires a (mean or second-order) stationary model.
class NonstationarySpec : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ingarch
