// Copyright 2026 The EPSM Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace epsm {

// How data-parallel loops run. Serial is the reference path the parallel
// kernels are tested against.
struct Execution {
  int threads = 1;

  static Execution serial() { return {1}; }
  static Execution parallel(int threads) { return {threads < 1 ? 1 : threads}; }
  bool is_serial() const { return threads <= 1; }
};

}  // namespace epsm
