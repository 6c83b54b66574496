// error.hpp

// Copyright 2026 The sublm authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBLM_ERROR_HPP
#define SUBLM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sublm {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnreadableFile : public Error {
 public:
  explicit UnreadableFile(const std::string& what) : Error(what) {}
};

class MalformedSrt : public Error {
 public:
  MalformedSrt(std::size_t line, const std::string& reason)
      : Error("malformed srt at line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class RuleFileError : public Error {
 public:
  RuleFileError(const std::string& file, std::size_t line,
                const std::string& reason)
      : Error(file + ":" + std::to_string(line) + ": " + reason) {}
};

class EmptySentence : public Error {
 public:
  using Error::Error;
};

class MalformedCountLine : public Error {
 public:
  MalformedCountLine(std::size_t line, const std::string& reason)
      : Error("malformed count line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class OrderMismatch : public Error {
 public:
  using Error::Error;
};

class MalformedManifest : public Error {
 public:
  MalformedManifest(std::size_t line, const std::string& reason)
      : Error("malformed manifest at line " + std::to_string(line) + ": " +
              reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class MalformedArpa : public Error {
 public:
  MalformedArpa(std::size_t line, const std::string& reason)
      : Error("malformed arpa at line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class InsufficientStatistics : public Error {
 public:
  using Error::Error;
};

class NumberTooLarge : public Error {
 public:
  using Error::Error;
};

class EmptyDevSet : public Error {
 public:
  using Error::Error;
};

class AllZeroLikelihood : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

class EmptyReference : public Error {
 public:
  using Error::Error;
};

}  // namespace sublm

#endif  // SUBLM_ERROR_HPP
