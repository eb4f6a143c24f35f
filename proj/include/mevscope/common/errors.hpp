// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace mevscope {

//! Base of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Malformed input document. The message names the offending field.
class ParseError : public Error {
  public:
    using Error::Error;
};

//! Well-formed document that violates a schema invariant.
class SchemaError : public Error {
  public:
    using Error::Error;
};

class ConflictError : public Error {
  public:
    using Error::Error;
};

class NotFoundError : public Error {
  public:
    using Error::Error;
};

//! A bundle whose transactions cannot all be resolved to traces.
class IncompleteBundleError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class TrainingError : public Error {
  public:
    TrainingError(const std::string& what, std::size_t epoch) : Error(what), epoch_(epoch) {}
    [[nodiscard]] std::size_t epoch() const noexcept { return epoch_; }

  private:
    std::size_t epoch_;
};

class OverflowError : public Error {
  public:
    using Error::Error;
};

//! Transient transport failure; the caller may retry.
class RetryableError : public Error {
  public:
    using Error::Error;
};

//! A remote payload no longer matches the expected schema.
class AdapterError : public Error {
  public:
    using Error::Error;
};

}  // namespace mevscope
