#pragma once

#include <stdexcept>
#include <string>

namespace exsheaf {

enum class Errc {
    invalid_input,   // malformed document or out-of-range index
    shape_mismatch,  // class/atom does not fit the configuration
    precondition,    // operation called outside its domain
    unsupported,     // geometry or degree data the library does not model
    hypothesis,      // Mukai-style lemma hypotheses unmet
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace exsheaf
