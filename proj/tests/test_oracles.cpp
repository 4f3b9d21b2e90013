// Copyright 2026 The kolmo Authors
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

#include "kolmo/error.hpp"
#include "kolmo/oracles.hpp"
#include "support.hpp"

using namespace kolmo;

TEST_CASE("every oracle passes") {
  REQUIRE(oracle::names().size() == 9);
  for (const auto& name : oracle::names()) {
    const oracle::Result r = oracle::run(name);
    CAPTURE(name);
    CAPTURE(r.error);
    CHECK(r.name == name);
    CHECK(!r.description.empty());
    CHECK(r.error <= r.tolerance);
    CHECK(r.pass);
  }
}

TEST_CASE("unknown oracle") {
  try {
    oracle::run("teapot");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validation);
  }
}
