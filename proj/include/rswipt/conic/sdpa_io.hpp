#pragma once

#include <iosfwd>
#include <string>

#include "rswipt/conic/sdp.hpp"

namespace rswipt::conic {

// SDPA sparse text format. Layout:
//   m            number of variables
//   nBlocks
//   n_1 ... n_B  block sizes (negative = diagonal block)
//   c_1 ... c_m
//   k b i j v    entry (i,j) (1-based, upper triangle) of block b of matrix k
// Matrix 0 is SDPA's constant term, which enters as sum_k y_k F_k - F0 >= 0,
// so it is written as the negation of our F0. Lines starting with '"' or '*'
// are comments. Output is UTF-8 with LF line endings.
void write_sdpa(std::ostream& os, const ConicProblem& problem);
std::string to_sdpa(const ConicProblem& problem);

// Throws ValidationError on malformed input.
ConicProblem read_sdpa(std::istream& is);
ConicProblem from_sdpa(const std::string& text);

}  // namespace rswipt::conic
