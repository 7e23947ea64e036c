#pragma once

#include "gamma1lab/lattice.hpp"

// Serial reference mirrors of the lattice kernels, built directly on the
// exact-phase V-sum evaluator and the character group.  Slow by design;
// used to validate the fast kernels and as the benchmark baseline.

namespace g1lab::reference {

std::vector<lattice::PairAccum> sigma_reference(const lattice::Options& opt,
                                                const std::vector<lattice::Pair>& pairs);

lattice::CharLatticeResult char_reference(const lattice::Options& opt,
                                          const std::vector<lattice::PrimeTerm>& primes);

lattice::PairAccum eps_off_reference(const lattice::Options& opt, std::uint64_t p,
                                     std::uint64_t u_shift);

}  // namespace g1lab::reference
