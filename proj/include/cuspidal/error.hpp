#ifndef CUSPIDAL_ERROR_HPP
#define CUSPIDAL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cuspidal {

/** Error raised by every module; `kind()` is a short stable identifier. */
class Error : public std::runtime_error
{
public:
  Error(std::string kind, std::string const &what)
    : std::runtime_error(kind + ": " + what), kind_(std::move(kind))
  {}

  std::string const &kind() const { return kind_; }

private:
  std::string kind_;
};

} // namespace cuspidal

#endif // CUSPIDAL_ERROR_HPP
