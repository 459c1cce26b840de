// Copyright 2026 The vqint Authors
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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

// Deterministic seed derivation. Every random stream in the library comes from
// a 64-bit master seed plus a list of stream labels, so parallel and serial
// execution draw identical numbers.

namespace vqint {

/// One splitmix64 step; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Mixes a master seed with stream labels into a new seed.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> streams) noexcept;

/// 64-bit FNV-1a of a string.
std::uint64_t fnv1a(std::string_view text) noexcept;

/// A mt19937_64 whose full state is filled from splitmix64(derived seed).
std::mt19937_64 make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> streams = {});

}  // namespace vqint
