/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The vranscale contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "vran/common/error.hpp"

namespace vran {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::UnsupportedConfig: return "unsupported-config";
    case ErrorCode::BackendUnavailable: return "backend-unavailable";
    case ErrorCode::CapabilityMismatch: return "capability-mismatch";
    case ErrorCode::ResourceExhausted: return "resource-exhausted";
    case ErrorCode::CalibrationFailed: return "calibration-failed";
    case ErrorCode::Capacity: return "capacity";
    case ErrorCode::EmptyInput: return "empty-input";
    case ErrorCode::WrongSlotKind: return "wrong-slot-kind";
    case ErrorCode::HarqBufferMissing: return "harq-buffer-missing";
    case ErrorCode::UnknownBackend: return "unknown-backend";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace vran
