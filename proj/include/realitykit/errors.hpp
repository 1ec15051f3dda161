#pragma once

#include <stdexcept>
#include <string>

namespace realitykit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define REALITYKIT_DEFINE_ERROR(Name)          \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  }

REALITYKIT_DEFINE_ERROR(NotHermitian);
REALITYKIT_DEFINE_ERROR(InvalidState);
REALITYKIT_DEFINE_ERROR(DomainError);
REALITYKIT_DEFINE_ERROR(LayoutMismatch);
REALITYKIT_DEFINE_ERROR(BadRank);
REALITYKIT_DEFINE_ERROR(InvalidObservable);
REALITYKIT_DEFINE_ERROR(InvalidEnsemble);
REALITYKIT_DEFINE_ERROR(EpsilonOutOfRange);
REALITYKIT_DEFINE_ERROR(CannotDiscardObservableSubsystem);
REALITYKIT_DEFINE_ERROR(KernelViolation);
REALITYKIT_DEFINE_ERROR(AlphaOutOfRange);
REALITYKIT_DEFINE_ERROR(QOutOfRange);
REALITYKIT_DEFINE_ERROR(ParameterOutOfRange);
REALITYKIT_DEFINE_ERROR(ConfigError);

#undef REALITYKIT_DEFINE_ERROR

/// Raised when a minimization exhausts its restart budget without meeting
/// tolerance. Carries the best objective value reached.
class OptimizerNonConvergence : public Error {
 public:
  OptimizerNonConvergence(const std::string& what, double best_value)
      : Error("OptimizerNonConvergence: " + what), best_value_(best_value) {}
  double best_value() const noexcept { return best_value_; }

 private:
  double best_value_;
};

}  // namespace realitykit
