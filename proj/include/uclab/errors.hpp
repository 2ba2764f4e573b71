#ifndef UCLAB_ERRORS_HPP
#define UCLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uclab {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define UCLAB_DEFINE_ERROR(Name)                                                                   \
    class Name : public Error {                                                                    \
      public:                                                                                      \
        explicit Name(const std::string &what) : Error(#Name ": " + what) {}                       \
    }

UCLAB_DEFINE_ERROR(BadParameter);
UCLAB_DEFINE_ERROR(Overflow);
UCLAB_DEFINE_ERROR(OverflowGuard);
UCLAB_DEFINE_ERROR(SpectrumAtOne);
UCLAB_DEFINE_ERROR(WindowViolation);
UCLAB_DEFINE_ERROR(BudgetExceeded);
UCLAB_DEFINE_ERROR(NonLacunary);
UCLAB_DEFINE_ERROR(BreakpointBudget);
UCLAB_DEFINE_ERROR(PlacementFailure);
UCLAB_DEFINE_ERROR(DomainMismatch);
UCLAB_DEFINE_ERROR(MissingEntry);
UCLAB_DEFINE_ERROR(EmptyTable);

#undef UCLAB_DEFINE_ERROR

// Carries the offending config line (1-based, 0 when not tied to a line) and field.
class ConfigError : public Error {
  public:
    ConfigError(int line, std::string field, const std::string &what)
        : Error("ConfigError: line " + std::to_string(line) + ", field '" + field + "': " + what),
          line_(line), field_(std::move(field)) {}

    int line() const { return line_; }
    const std::string &field() const { return field_; }

  private:
    int line_;
    std::string field_;
};

} // namespace uclab

#endif
