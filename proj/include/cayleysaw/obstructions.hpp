#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayleysaw/oracles.hpp"
#include "cayleysaw/words.hpp"

namespace cayleysaw {

// Least r >= 1 with base^r = 1 mod m, or 0 when gcd(base, m) != 1. m >= 2.
std::uint64_t multiplicative_order(std::uint64_t base, std::uint64_t m);
// Smallest prime factor of n >= 2.
std::uint64_t least_prime_factor(std::uint64_t n);

struct TorsionReport {
  unsigned depth = 0;  // every element of word length <= depth was examined
  std::uint64_t order_cap = 0;
  std::uint64_t elements_checked = 0;
  std::uint64_t max_order = 0;
  bool all_finite = false;
  bool all_powers_of_two = false;
  // First element whose order exceeded the cap.
  std::optional<std::string> inconclusive_word;
  std::string status;  // "evidence" or "inconclusive"
  std::string argument;
};

// Orders of every element in the radius-depth ball, computed with the word problem.
TorsionReport torsion_obstruction(const OraclePtr& o, unsigned depth, std::uint64_t order_cap);

using OrderTuple = std::array<std::uint64_t, 4>;

struct PrimeDescent {
  std::uint64_t p = 0;  // least prime factor of some o_s
  std::uint64_t r = 0;  // order of 2 mod p; divides p - 1 and the preceding o
  std::uint64_t q = 0;  // least prime factor of r, forced into the preceding o
  bool r_divides_p_minus_1 = false;
  bool descends = false;  // q < p
};

struct HigmanSearch {
  std::uint64_t bound = 0;
  std::vector<OrderTuple> solutions;
  // Pairs (x, y) with 1 < x, y <= B and y | 2^x - 1: the edges of the chain.
  std::uint64_t chain_edges = 0;
  std::uint64_t chains_explored = 0;
  // One entry per odd prime p <= B.
  std::vector<PrimeDescent> audit;
  bool audit_descends = false;  // every audited prime gives a smaller prime
  // Chain edges whose least prime of y was checked to force a smaller prime into x.
  std::uint64_t edges_audited = 0;
  bool edges_descend = false;
};

// Order tuples 1 < o_s <= B with o_b | 2^o_a - 1, o_c | 2^o_b - 1,
// o_d | 2^o_c - 1 and o_a | 2^o_d - 1.
HigmanSearch higman_quotient_search(std::uint64_t bound, unsigned workers = 1);

struct InvolutionObstruction {
  bool applicable = false;
  std::vector<std::string> generators;
  std::string argument;
};

InvolutionObstruction involution_ghf_obstruction(const Presentation& p);

}  // namespace cayleysaw
