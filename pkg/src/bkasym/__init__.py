"""Boundary asymptotics of Poisson and harmonic Bergman kernels.

Exact graded symbol calculus for the model domains {x_n > profile(|x'|^2)},
closed-form radial Fourier transforms with log bookkeeping, reference
kernels, and brute-force numerical oracles.
"""

__version__ = "0.1.0"
