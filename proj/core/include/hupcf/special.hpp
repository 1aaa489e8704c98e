#pragma once

namespace hupcf {

/// Sum_{k>=0} (x+k)^{-m} for integer m >= 2 and x > 0 (Hurwitz zeta).
/// Euler-Maclaurin after pushing x past 24 by direct summation.
double hurwitz_tail(int m, double x);

/// digamma(x) for x > 0; used for exact sums of telescoping branch
/// lengths Sum_{j>J} [1/(2j-b) - 1/(2j-a)].
double digamma(double x);

/// Sum_{j in Z, j != 0} 1/(2j-t)^2 on ]-1,1[.
/// Closed form pi^2 / (4 sin^2(pi t/2)) - 1/t^2, with a series branch
/// near t = 0 where the two terms cancel.
double sum_branch_derivative(double t);

/// Sum over |j| > J of 1/(2j-t)^m for m in {2,3,4}, -1 < t <= 1.
struct BranchTails {
  double s2;
  double s3;
  double s4;
};
BranchTails branch_tails(int J, double t);

/// Exact length of Sum_{j>J} of the interval ]1/(2j-a), 1/(2j-b)]
/// images, i.e. (1/2)[digamma(J+1-a/2) - digamma(J+1-b/2)].
double branch_image_tail_length(int J, double a, double b);

} // namespace hupcf
