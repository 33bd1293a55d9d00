// Copyright 2026 The tqstlab Authors
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

namespace tqst {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's preconditions (bad shapes, mismatched
/// photon numbers, out-of-range parameters). The CLI maps these to exit code 2.
class ContractError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Requested enumeration or kernel size is beyond the supported range.
class SizeError : public ContractError {
 public:
  using ContractError::ContractError;
};

class LayoutError : public ContractError {
 public:
  using ContractError::ContractError;
};

class ParameterError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// The programmed circuit essentially never yields a dual-rail-valid event.
class DegeneratePostselectionError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Noise-model inputs or outputs are mutually inconsistent (non-PSD Gram
/// matrix, model probabilities that admit no density matrix).
class ModelError : public ContractError {
 public:
  using ContractError::ContractError;
};

class NumericalConsistencyError : public ContractError {
 public:
  using ContractError::ContractError;
};

class SweepError : public ContractError {
 public:
  using ContractError::ContractError;
};

class AcquisitionError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Manifest hashes no longer match the files on disk.
class StaleDataError : public ContractError {
 public:
  using ContractError::ContractError;
};

class IoError : public ContractError {
 public:
  using ContractError::ContractError;
};

}  // namespace tqst
