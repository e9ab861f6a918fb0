/*
 * Copyright 2026 The ghk-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace ghk {

enum class ErrorKind {
  InvalidArgument,
  Precondition,
  Unsupported,
  Resource,
  Inconsistency,
  Config,
  Io,
};

/// Base of every exception thrown by the library. The C API maps `kind()`
/// onto its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& w) : Error(ErrorKind::InvalidArgument, w) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& w) : Error(ErrorKind::Precondition, w) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& w) : Error(ErrorKind::Unsupported, w) {}
};

/// Growth caps, scan bounds and other resource guards.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& w) : Error(ErrorKind::Resource, w) {}
};

class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& w) : Error(ErrorKind::Inconsistency, w) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};

}  // namespace ghk
