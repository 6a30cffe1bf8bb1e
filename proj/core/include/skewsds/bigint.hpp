#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace skewsds {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace skewsds
