#pragma once

namespace reclink {

// How much conditioning on the realised size of file B changes the chance
// that the k-th sampled A record is also in B, given c of the first k-1 were.
// Modelled with the not-yet-seen overlap ~ Binomial(n_a - k, 1/2) (one fewer
// draw in the denominator) and the B-only count ~ Poisson(n_b):
//
//   ratio = sum_{l=0}^{n_b-(c+1)} Bin(n_a-k, 1/2)(l)     * Pois(n_b)(n_b-(c+1)-l)
//         / sum_{l=0}^{n_b-c}     Bin(n_a-(k-1), 1/2)(l) * Pois(n_b)(n_b-c-l)
//
// A ratio near 1 means the independence reading of the linkage prior is safe
// for these realisations. Computed in log space (lgamma + log-sum-exp), so it
// stays exact for sizes where naive probability products underflow.
// Returns 0 when the numerator support is empty (n_b < c + 1).
// Arguments must satisfy n_a >= 1, 1 <= k <= n_a, 0 <= c <= k - 1, n_b >= 0.
double capture_ratio(int n_a, int k, int c, int n_b);

}  // namespace reclink
