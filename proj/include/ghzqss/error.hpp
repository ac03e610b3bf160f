// Copyright 2026 The ghzqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ghzqss {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
    virtual const char *kind() const noexcept {
        return "Error";
    }
};

class OverlappingQubits : public Error {
   public:
    OverlappingQubits() : Error("operands act on overlapping qubit sets") {
    }
    const char *kind() const noexcept override {
        return "OverlappingQubits";
    }
};

class NotBellExpressible : public Error {
   public:
    explicit NotBellExpressible(const std::string &why) : Error("state is not a uniform Bell product expansion: " + why) {
    }
    const char *kind() const noexcept override {
        return "NotBellExpressible";
    }
};

class EmptyState : public Error {
   public:
    EmptyState() : Error("all terms cancelled") {
    }
    const char *kind() const noexcept override {
        return "EmptyState";
    }
};

class NonUniformCoefficients : public Error {
   public:
    NonUniformCoefficients() : Error("merged terms do not share a common power-of-two magnitude") {
    }
    const char *kind() const noexcept override {
        return "NonUniformCoefficients";
    }
};

class IncompleteTranscript : public Error {
   public:
    explicit IncompleteTranscript(const std::string &why) : Error("incomplete transcript: " + why) {
    }
    const char *kind() const noexcept override {
        return "IncompleteTranscript";
    }
};

/// No candidate gate reproduces the kept terms.
class NoMatch : public Error {
   public:
    explicit NoMatch(const std::string &why) : Error("no gate matches: " + why) {
    }
    const char *kind() const noexcept override {
        return "NoMatch";
    }
};

/// More than one candidate gate reproduces the kept terms.
class Ambiguous : public Error {
   public:
    explicit Ambiguous(const std::string &why) : Error("ambiguous gate: " + why) {
    }
    const char *kind() const noexcept override {
        return "Ambiguous";
    }
};

class ParseError : public Error {
   public:
    explicit ParseError(const std::string &why) : Error("parse error: " + why) {
    }
    const char *kind() const noexcept override {
        return "ParseError";
    }
};

}  // namespace ghzqss
