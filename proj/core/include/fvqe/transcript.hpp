// Copyright 2026 The fvqe Authors
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

#ifndef FVQE_TRANSCRIPT_HPP
#define FVQE_TRANSCRIPT_HPP

#include <iosfwd>
#include <string>

#include "fvqe/vqe.hpp"

namespace fvqe {

// JSON lines: one object per iteration ({"label", "iteration", "energy",
// "theta", "rho_diag", "rho_pairs" as [k, l, value]}) followed by a summary object with "final": true. Output depends
// only on the run, so equal seeds give byte-identical transcripts.
void write_transcript(std::ostream& out, const VqeRun& run, const std::string& label);

}  // namespace fvqe

#endif  // FVQE_TRANSCRIPT_HPP
