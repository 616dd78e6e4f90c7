#ifndef KLAB_TEST_HELPERS_HPP
#define KLAB_TEST_HELPERS_HPP

#include <string>

#include "klab/ratfunc.hpp"

namespace klab_test {

inline klab::RatFunc rf(const std::string& s, const klab::FieldPtr& F) {
    return klab::parse_ratfunc(s, F);
}

inline klab::Poly pol(const std::string& s, const klab::FieldPtr& F) {
    return klab::parse_poly(s, F);
}

inline klab::Place pl(const std::string& s, const klab::FieldPtr& F) {
    return klab::parse_place(s, F);
}

} // namespace klab_test

#endif
