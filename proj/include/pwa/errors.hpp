// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pwa {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// geometry
class UnboundedRegion : public Error {
  public:
    using Error::Error;
};
class EmptyPolytope : public Error {
  public:
    using Error::Error;
};
class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

// splitting
class EmptyCollection : public Error {
  public:
    using Error::Error;
};
class LambdaOutOfRange : public Error {
  public:
    using Error::Error;
};

// system / closed loop
class OutsideRegion : public Error {
  public:
    using Error::Error;
};
class InputNotAdmissible : public Error {
  public:
    using Error::Error;
};
class NoAdmissibleInput : public Error {
  public:
    using Error::Error;
};

// file front-end
class ParseError : public Error {
  public:
    using Error::Error;
};
class ModelError : public Error {
  public:
    using Error::Error;
};
class SpecMisaligned : public Error {
  public:
    using Error::Error;
};
class DimensionUnsupported : public Error {
  public:
    using Error::Error;
};

} // namespace pwa
