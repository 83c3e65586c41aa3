#pragma once

#include "xsec/random_gen.hpp"

namespace xsec::testsupport {

using xsec::QueryOptions;
using xsec::random_dtd;
using xsec::random_query;
using xsec::random_spec;

} // namespace xsec::testsupport
