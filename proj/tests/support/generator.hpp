#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mol/slicing/pipeline.hpp"

namespace moltest {

/// A random, well-typed, terminating MOL program: a few classes (one may
/// override a parent method), acyclic calls, bounded loops, no division by
/// anything but non-zero literals.
std::string generate_program(std::uint64_t seed);

/// A random `C.m:<k>#v` criterion over statements of reachable methods.
std::string random_criterion(const mol::slicing::Analyses &a, std::mt19937_64 &rng);

} // namespace moltest
