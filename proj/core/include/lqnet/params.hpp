#pragma once

namespace lqnet {

// One-sided random chain: each player is linked to its right neighbour with
// probability p.
struct ChainParams {
  double epsilon = 1.0;
  double c = 0.0;
  double p = 1.0;
  double sigma = 1.0;
  double horizon = 1.0;

  void validate() const;
};

// Two-sided random chain. p mixes the right and left penalties, p1 and q1 are
// the right and left link probabilities.
struct TwoSidedParams {
  double epsilon = 1.0;
  double c = 0.0;
  double sigma = 1.0;
  double horizon = 1.0;
  double p = 0.5;
  double p1 = 1.0;
  double q1 = 1.0;

  double B() const { return p * p1 + (1.0 - p) * q1; }
  double w() const { return p * p1 / B(); }
  double v() const { return (1.0 - p) * q1 / B(); }
  void validate() const;
};

// Random M-ary tree: each child link is present with probability p.
struct TreeParams {
  int M = 2;
  double p = 1.0;
  double epsilon = 1.0;
  double c = 0.0;
  double sigma = 1.0;
  double horizon = 1.0;

  // Probability that a node has no children, (1-p)^M.
  double p0() const;
  void validate() const;
};

}  // namespace lqnet
