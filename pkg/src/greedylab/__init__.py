"""Greedy-type approximation classes on sequence spaces: norms, greedy and
Chebyshev-greedy errors, democracy functions, weights and embedding experiments."""
from .spaces import (SparseVector, SignedSet, SequenceSpace, Lp, SummingC0, DifferenceL1,
                     SchreierMod, MixNorm, make_space, indicator, project, partial_sum)
from .greedy import greedy_sets, gamma, beta, truncate, eta_p, a_p
from .chebyshev import chebyshev_project, chebyshev_grid, sigma, theta, constant_budget
from .democracy import h_r, h_l, h_restricted, extremal_indicator, characteristic_psi
from .weights import Weight, make_weight, dilation_indices, regularity_check, summing_weight
from .classes import ClassNormParams, class_norm, chain_check

__version__ = "0.1.0"
