#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mol/interp/interp.hpp"
#include "mol/slicing/slicer.hpp"

namespace mol::interp {

enum class VerdictKind { Pass, Counterexample, ReconstructionFailure };

const char *verdict_name(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Pass;
  std::string message;
  std::string source; // reconstructed program, when reconstruction succeeded
  std::vector<RunInput> counterexamples;
  std::size_t compared = 0;
  std::size_t skipped = 0; // original run did not finish normally
};

/// `n` input vectors over every `input` key of the program, drawn from a
/// seeded generator. Keys in `fixed` always take their fixed value.
std::vector<RunInput> random_inputs(const lang::ProgramIR &ir, std::size_t n, std::uint64_t seed,
                                    const std::map<std::string, std::int64_t> &fixed = {});

/// Slices `c` backward over `sdg`, rebuilds source from the slice, recompiles
/// it and compares criterion values against the original on every input.
Verdict check_slice(const slicing::Analyses &a, const slicing::Sdg &sdg, const slicing::SlicingCriterion &c,
                    const std::vector<RunInput> &inputs);

Verdict check_slice(const slicing::Analyses &a, const slicing::SlicingCriterion &c,
                    const std::vector<RunInput> &inputs);

/// SDG with edge `edge` of the summary-free graph deleted, summaries recomputed.
slicing::Sdg mutate_sdg(const slicing::Analyses &a, std::size_t edge);

} // namespace mol::interp
