"""Graded basis of the extended Verlinde algebra of the type-D quotient:
tensor and convolution products, bilinear form, the twist operator, the
convolution-diagonalizing change of basis, and the s-matrix blocks.

Basis bookkeeping.  A basis element is a pair (class, flipped).  Unflipped
elements are the identity morphisms lambda; flipped elements are the basis
of the part twisted by the order-two symmetry and exist only for classes the
symmetry fixes, i.e. the plain X_i (the split pair X+/X- is exchanged).  The
flipped basis over the even classes is normalized so that convolving such an
element with itself gives 1/dim times the unflipped one; its s-pairings with
the odd classes are pinned to twice the corresponding sl2 entries.  The
residual sign freedom of each flipped element is harmless: every formula
evaluated here is quadratic in those pairings.

Supported numerically are the blocks graded (e,e), (a,e) and (e,a) in
(group, sector) order.  Operations that would need data on the remaining
block, or structure constants of the twisted tensor product, raise
UnsupportedCaseError instead of guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import EPS, gauss_sum_reciprocal, twist
from .errors import ConstructionError, InconsistencyError, UnsupportedCaseError
from .ring import MINUS, PLUS, TypeDRing
from .sl2 import Sl2Data

_PRUNE = 1e-15  # coefficient noise floor for ExtVector storage


@dataclass(frozen=True)
class GradedLabel:
    """Name of a graded basis element: a class label plus the flip flag."""

    cls: str
    flipped: bool = False

    def token(self) -> str:
        prefix = "al" if self.flipped else "l"
        return f"{prefix}:{self.cls.removeprefix('X')}"

    @classmethod
    def parse(cls, token: str) -> "GradedLabel":
        prefix, _, name = token.partition(":")
        if prefix not in ("l", "al") or not name:
            raise ValueError(f"bad graded label {token!r}; expected 'l:<i>' or 'al:<i>'")
        label = name if name in ("+", "-") else "X" + name
        label = {"+": PLUS, "-": MINUS}.get(label, label)
        return cls(label, flipped=(prefix == "al"))


def lam(x) -> "ExtVector":
    """Basis vector lambda_x (unflipped)."""
    return ExtVector({GradedLabel(_as_label(x)): 1.0})


def alam(x) -> "ExtVector":
    """Basis vector of the flipped partner of class x."""
    return ExtVector({GradedLabel(_as_label(x), flipped=True): 1.0})


def _as_label(x) -> str:
    if isinstance(x, str):
        return {"+": PLUS, "-": MINUS}.get(x, x)
    return f"X{int(x)}"


class ExtVector:
    """Finite complex linear combination of graded basis elements."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms: dict[GradedLabel, complex] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for label, c in items:
                self._accumulate(label, c)

    def _accumulate(self, label: GradedLabel, c: complex) -> None:
        value = self._terms.get(label, 0j) + complex(c)
        if abs(value) <= _PRUNE:
            self._terms.pop(label, None)
        else:
            self._terms[label] = value

    def coeff(self, label: GradedLabel) -> complex:
        return self._terms.get(label, 0j)

    def items(self):
        return self._terms.items()

    def labels(self):
        return self._terms.keys()

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "ExtVector") -> "ExtVector":
        out = ExtVector(self._terms)
        for label, c in other.items():
            out._accumulate(label, c)
        return out

    def __sub__(self, other: "ExtVector") -> "ExtVector":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "ExtVector":
        return ExtVector({label: scalar * c for label, c in self._terms.items()})

    def __neg__(self) -> "ExtVector":
        return (-1.0) * self

    def isclose(self, other: "ExtVector", tol: float = EPS) -> bool:
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coeff(k) - other.coeff(k)) < tol for k in keys)

    def __repr__(self) -> str:
        parts = [f"{c:.6g}*{label.token()}" for label, c in sorted(
            self._terms.items(), key=lambda kv: kv[0].token())]
        return "ExtVector(" + " + ".join(parts) + ")" if parts else "ExtVector(0)"


def _check_even_m(m: int) -> None:
    if m < 2 or m % 2:
        raise UnsupportedCaseError(f"only even m >= 2 is supported, got {m}")


def exceptional_diag(m: int) -> float:
    """Diagonal s-entry on the split pair, (s x+, x+) = (s x-, x-):
    (sqrt(2/kappa) + (-1)^(m/2)) / 2 with kappa = 4m + 2."""
    _check_even_m(m)
    kappa = 4 * m + 2
    return 0.5 * (math.sqrt(2.0 / kappa) + (-1.0) ** (m // 2))


def exceptional_cross(m: int) -> float:
    """Off-diagonal s-entry on the split pair, (s x+, x-):
    (sqrt(2/kappa) - (-1)^(m/2)) / 2.  Together with the diagonal entry it
    sums to the sl2 entry s[2m, 2m] the pair descends from."""
    _check_even_m(m)
    kappa = 4 * m + 2
    return 0.5 * (math.sqrt(2.0 / kappa) - (-1.0) ** (m // 2))


def exceptional_diag_via_twists(ext: "ExtData", tol: float = EPS) -> float:
    """The diagonal split-pair entry recomputed from ribbon data:
    theta_{2m}^(-2) * sum of theta * dim over the X+ (x) X+ decomposition,
    normalized by 1/D of the quotient.  Must be real."""
    ring = ext.ring
    row = ring.l[ring.plus, ring.plus]
    total = 0j
    for z in np.nonzero(row)[0]:
        total += row[z] * ext.theta_class(z) * ring.dims[z]
    value = total / twist(2 * ring.m, ring.kappa) ** 2 / ext.big_d_c
    if abs(value.imag) >= tol:
        raise InconsistencyError(f"twist-route entry is not real: {value!r}")
    return value.real


def exceptional_diag_via_gauss(m: int, tol: float = EPS) -> float:
    """The diagonal split-pair entry a third way: the alternating theta sum
    collapses to the quadratic Gauss sum S(8, kappa), which reciprocity
    evaluates from the eight-term S(kappa, 8).  Must be real."""
    _check_even_m(m)
    kappa = 4 * m + 2
    s8k = gauss_sum_reciprocal(8, kappa)
    unnormalized = (-1.0) ** m / (4.0 * math.sin(math.pi / kappa)) * (1.0 + 0.5 * s8k)
    value = unnormalized * 2.0 * math.sqrt(2.0 / kappa) * math.sin(math.pi / kappa)
    if abs(value.imag) >= tol:
        raise InconsistencyError(f"Gauss-route entry is not real: {value!r}")
    return value.real


class ExtData:
    """s-matrix blocks and normalization of the extended algebra.

    Attributes
    ----------
    ring : TypeDRing
    d : Sl2Data
        The sl2 data at the same kappa.
    e_labels : list of str
        Basis order of the untwisted identity block: X0, X2, ..., X+, X-.
    fixed_classes : list of int
        Even classes fixed by the flip, i.e. those carrying a flipped
        partner: 0, 2, ..., 2m-2.
    odd_classes : list of int
        1, 3, ..., 2m-1; the basis order of the odd-graded block.
    s_ee : (m+2, m+2) float array
        Pairings (s lambda_x, lambda_y): twice the sl2 entry between even
        classes, the sl2 middle row against the split pair, and the
        closed-form entries on the pair itself.  Symmetric unitary.
    s_ea : (m, m) float array
        Pairings (s lambda_j, flipped_p) for odd j against fixed even p,
        equal to twice the sl2 entry.
    big_d_c : float
        Normalization of the quotient: half the sl2 one.
    """

    def __init__(self, ring: TypeDRing, d: Sl2Data, tol: float = EPS):
        if ring.kappa != d.kappa:
            raise ValueError(f"kappa mismatch: ring has {ring.kappa}, sl2 data has {d.kappa}")
        self.ring = ring
        self.d = d
        self.m = m = ring.m
        self.kappa = ring.kappa
        self.fixed_classes = list(range(0, 2 * m, 2))
        self.odd_classes = list(range(1, 2 * m, 2))
        self.e_labels = [f"X{i}" for i in self.fixed_classes] + [PLUS, MINUS]
        self.e_index = {lab: a for a, lab in enumerate(self.e_labels)}

        s = d.s
        ee = np.zeros((m + 2, m + 2))
        for a, i in enumerate(self.fixed_classes):
            for b, j in enumerate(self.fixed_classes):
                ee[a, b] = 2.0 * s[i, j]
            ee[a, m] = ee[a, m + 1] = ee[m, a] = ee[m + 1, a] = s[2 * m, i]
        ee[m, m] = ee[m + 1, m + 1] = exceptional_diag(m)
        ee[m, m + 1] = ee[m + 1, m] = exceptional_cross(m)
        self.s_ee = ee
        self.s_ea = np.array(
            [[2.0 * s[j, p] for p in self.fixed_classes] for j in self.odd_classes]
        )
        self.big_d_c = d.big_d / 2.0

        err = np.max(np.abs(ee @ ee.T - np.eye(m + 2)))
        if err >= tol:
            raise ConstructionError(f"assembled block is not unitary (residual {err:.3e})")

    @classmethod
    def build(cls, m: int, tol: float = EPS) -> "ExtData":
        ring = TypeDRing(m)
        return cls(ring, Sl2Data(ring.kappa), tol=tol)

    # -- label helpers ----------------------------------------------------

    def _class_index(self, label: GradedLabel) -> int:
        idx = self.ring.index(label.cls)
        if label.flipped and idx >= 2 * self.m:
            # the flip exchanges the split pair, so X+/X- have no flipped partner
            raise UnsupportedCaseError(f"no flipped basis element for class {label.cls}")
        return idx

    def theta_class(self, x) -> complex:
        """Ribbon scalar of a class; the split pair inherits the middle one."""
        idx = self.ring.index(x)
        if idx >= 2 * self.m:
            return twist(2 * self.m, self.kappa)
        return twist(idx, self.kappa)

    def class_dim(self, x) -> float:
        return self.ring.qdim(x)

    # -- algebra operations ------------------------------------------------

    def tensor(self, x: ExtVector, y: ExtVector) -> ExtVector:
        """Tensor product.  Mixed flip components multiply to zero; a product
        of two flipped elements needs twisted structure constants and is
        rejected."""
        ring = self.ring
        out = ExtVector()
        for lx, cx in x.items():
            ix = self._class_index(lx)
            for ly, cy in y.items():
                iy = self._class_index(ly)
                if lx.flipped != ly.flipped:
                    continue
                if lx.flipped:
                    raise UnsupportedCaseError(
                        "tensor product of two flipped elements is outside numeric scope"
                    )
                row = ring.l[ix, iy]
                for z in np.nonzero(row)[0]:
                    out._accumulate(GradedLabel(ring.labels[z]), cx * cy * row[z])
        return out

    def convolve(self, x: ExtVector, y: ExtVector) -> ExtVector:
        """Convolution product on the untwisted grading.  Distinct classes
        annihilate; matching ones compose with the 1/dim normalization, and
        the flip flags add."""
        out = ExtVector()
        for lx, cx in x.items():
            self._require_untwisted_grading(lx)
            for ly, cy in y.items():
                self._require_untwisted_grading(ly)
                if lx.cls != ly.cls:
                    continue
                flipped = lx.flipped != ly.flipped
                out._accumulate(
                    GradedLabel(lx.cls, flipped), cx * cy / self.class_dim(lx.cls)
                )
        return out

    def _require_untwisted_grading(self, label: GradedLabel) -> None:
        self._class_index(label)
        if self.ring.sector(label.cls):
            raise UnsupportedCaseError(
                f"{label.token()} sits in the twisted grading; operation not defined there"
            )

    def change_basis(self, x: ExtVector) -> ExtVector:
        """Change to the convolution eigenbasis: on each (lambda_i, flipped_i)
        pair apply the block [[-1/2, 1/2], [1/2, 1/2]]; classes without a
        flipped partner are fixed.  Applying it twice halves a paired vector."""
        out = ExtVector()
        for label, c in x.items():
            self._require_untwisted_grading(label)
            if label.cls in (PLUS, MINUS):
                out._accumulate(label, c)
            elif label.flipped:
                out._accumulate(GradedLabel(label.cls), c / 2.0)
                out._accumulate(label, c / 2.0)
            else:
                out._accumulate(label, -c / 2.0)
                out._accumulate(GradedLabel(label.cls, flipped=True), c / 2.0)
        return out

    def change_basis_inverse(self, x: ExtVector) -> ExtVector:
        """Inverse of `change_basis`: the paired blocks invert to
        [[-1, 1], [1, 1]]."""
        out = ExtVector()
        for label, c in x.items():
            self._require_untwisted_grading(label)
            if label.cls in (PLUS, MINUS):
                out._accumulate(label, c)
            elif label.flipped:
                out._accumulate(GradedLabel(label.cls), c)
                out._accumulate(label, c)
            else:
                out._accumulate(label, -c)
                out._accumulate(GradedLabel(label.cls, flipped=True), c)
        return out

    def twist_op(self, x: ExtVector) -> ExtVector:
        """Multiply each coefficient by the ribbon scalar of its class.
        Elements graded by the odd sector would need a scalar the chosen
        basis never fixes, so they are rejected."""
        out = ExtVector()
        for label, c in x.items():
            self._require_untwisted_grading(label)
            out._accumulate(label, c * self.theta_class(label.cls))
        return out

    def pair(self, x: ExtVector, y: ExtVector) -> complex:
        """Symmetric bilinear form; the chosen basis is orthonormal and
        distinct graded components pair to zero."""
        return sum(
            (cx * y.coeff(label) for label, cx in x.items()),
            start=0j,
        )
