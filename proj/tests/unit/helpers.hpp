#pragma once

#include <doctest.h>

#include "tropharm/error.hpp"

// Checks that `expr` throws tropharm::Error with the given code.
#define CHECK_ERROR_CODE(expr, expected)                                   \
  do {                                                                     \
    bool thrown_ = false;                                                  \
    try {                                                                  \
      (void)(expr);                                                        \
    } catch (const ::tropharm::Error& e_) {                                \
      thrown_ = true;                                                      \
      CHECK_MESSAGE(e_.code() == (expected), ::tropharm::to_string(e_.code())); \
    }                                                                      \
    CHECK_MESSAGE(thrown_, "expected " << ::tropharm::to_string(expected)); \
  } while (false)

#include <Eigen/Dense>

/// Largest absolute entry; 0 for an empty matrix.
inline double max_abs(const Eigen::MatrixXd& m) { return m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0; }
