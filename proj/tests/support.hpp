#pragma once

#include <doctest.h>

#include "zgkn/error.hpp"

namespace zgkn::test {

/// Code of the SolverError thrown by fn; fails the check if nothing is thrown.
template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const SolverError& e) {
    return e.code();
  }
  FAIL("no SolverError thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace zgkn::test
