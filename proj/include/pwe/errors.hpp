#ifndef PWE_ERRORS_HPP
#define PWE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pwe {

// Bad user input: malformed JSON, validation failures, unparsable numbers.
// The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A solver was invoked outside its contract (wrong structural class, size
// cap exceeded). The CLI maps this to exit code 3.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pwe

#endif
