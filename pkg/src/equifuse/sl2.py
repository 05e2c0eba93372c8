"""Modular data of the semisimple part of quantum sl2 at q = exp(i*pi/kappa).

Simple objects are indexed 0..delta with delta = kappa - 2; all of them are
self-dual.  The s-matrix is stored in its closed sine form.  The alternative
route through twists and fusion multiplicities (`s_from_twists`) is kept as
an independent consistency check, not as a constructor.
"""

from __future__ import annotations

import math

import numpy as np

from .arith import EPS, quantum_integer, twist


class Sl2Data:
    """s-matrix, twists, quantum dimensions and fusion tensor at level delta.

    Attributes
    ----------
    kappa, delta : int
        Root-of-unity order and level, delta = kappa - 2.
    s : (delta+1, delta+1) float array
        s[i, j] = sqrt(2/kappa) * sin((i+1)(j+1)*pi/kappa); symmetric, unitary.
    twists : complex array
        Ribbon scalars theta_i = q^(i(i+2)/2).
    dims : float array
        Quantum dimensions d_i = [i+1].
    n : (delta+1,)^3 int array
        Fusion multiplicities, all 0 or 1.
    p_plus, p_minus : complex
        Sums of theta_i^(+-1) * d_i^2 over all simples.
    big_d : float
        Positive root of p_plus * p_minus; s is the unitary normalization
        of big_d * s.
    """

    def __init__(self, kappa: int):
        if kappa < 3:
            raise ValueError(f"kappa must be at least 3, got {kappa}")
        self.kappa = kappa
        self.delta = kappa - 2
        idx = np.arange(self.delta + 1)
        self.twists = np.array([twist(i, kappa) for i in idx])
        self.dims = np.array([quantum_integer(i + 1, kappa) for i in idx])
        self.s = np.sqrt(2.0 / kappa) * np.sin(np.outer(idx + 1, idx + 1) * np.pi / kappa)

        i, j, k = np.meshgrid(idx, idx, idx, indexing="ij")
        allowed = (
            ((i + j + k) % 2 == 0)
            & (np.abs(i - j) <= k)
            & (k <= i + j)
            & (k <= 2 * self.delta - (i + j))
        )
        self.n = allowed.astype(np.int64)

        self.p_plus = complex(np.sum(self.twists * self.dims**2))
        self.p_minus = complex(np.sum(self.dims**2 / self.twists))
        prod = self.p_plus * self.p_minus
        if abs(prod.imag) > EPS * abs(prod):
            raise ValueError(f"p+ p- should be real, got {prod!r}")
        self.big_d = math.sqrt(prod.real)

    def _check_index(self, *indices: int) -> None:
        for i in indices:
            if not 0 <= i <= self.delta:
                raise ValueError(f"object index {i} outside 0..{self.delta}")

    def n_coeff(self, i: int, j: int, k: int) -> int:
        """Multiplicity of the k-th simple in i (x) j: 1 iff |i-j| <= k <= i+j,
        k <= 2*delta - (i+j) and i+j+k is even."""
        self._check_index(i, j, k)
        return int(self.n[i, j, k])

    def qdim(self, i: int) -> float:
        """Quantum dimension d_i = [i+1] = s[0, i]/s[0, 0]."""
        self._check_index(i)
        return float(self.dims[i])

    def dual(self, i: int) -> int:
        """Dual object index; every simple here is self-dual."""
        self._check_index(i)
        return i

    def verlinde_coeff(self, i: int, j: int, k: int) -> float:
        """Verlinde formula sum_p s[i,p] s[j,p] s[k*,p] / s[0,p]."""
        self._check_index(i, j, k)
        row = self.s[i] * self.s[j] * self.s[self.dual(k)] / self.s[0]
        return float(np.sum(row))

    def verlinde_tensor(self) -> np.ndarray:
        """All Verlinde coefficients at once, shape (delta+1,)^3."""
        return np.einsum("ip,jp,kp->ijk", self.s, self.s, self.s / self.s[0])

    def s_from_twists(self, i: int, j: int) -> complex:
        """s[i, j] recomputed from ribbon data:
        theta_i^-1 theta_j^-1 sum_k n[i*, j, k] theta_k d_k, divided by big_d."""
        self._check_index(i, j)
        total = np.sum(self.n[self.dual(i), j] * self.twists * self.dims)
        return complex(total / (self.twists[i] * self.twists[j]) / self.big_d)
