"""Simplicity verdicts for the torus-relation Cuntz-Pimsner algebra of (F, G).

The decision composes a short cascade of closed-form criteria with the
chain-based density decision:

  R0  a zero determinant is out of scope (the endomorphism is not onto);
  R1  two unimodular matrices generate nothing, hence never simple;
  R2  normalize (F, G) to (|det F| * I, D V U) through the adjugate and a
      Smith decomposition of adj(F) * G, a verdict-preserving move;
  R3  a dilation matrix against a unimodular partner is simple;
  R4  scalar-versus-triangular pairs obey the diagonal avoidance test;
  R5  otherwise density of the generated subgroup decides;
  R6  anything left is Unknown, with the deepest chain trace attached.

All reductions multiply on one side by a nonsingular matrix and preserve the
verdict, which the test suite exercises as the module's central property.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import chain as _chain
from .errors import DimensionMismatch, NotTriangular, SingularMatrix
from .intmat import IntMatrix, adjugate, det, snf, unimodular_inverse

SIMPLE = "Simple"
NOT_SIMPLE = "NotSimple"
UNKNOWN = "Unknown"


@dataclass
class Hypotheses:
    det_f: int
    det_g: int
    ker_f_size: Optional[int]
    ker_g_size: Optional[int]
    condition_L: Optional[bool]
    both_automorphisms: bool

    @property
    def f_injective(self) -> bool:
        return abs(self.det_f) == 1

    @property
    def g_injective(self) -> bool:
        return abs(self.det_g) == 1

    @property
    def f_surjective(self) -> bool:
        return self.det_f != 0

    @property
    def g_surjective(self) -> bool:
        return self.det_g != 0


@dataclass
class SimplicityVerdict:
    status: str
    rules_fired: list[tuple[str, str]]
    hypotheses: Hypotheses
    density: Optional[_chain.DensityVerdict]
    kirchberg_flag: bool
    witness: Optional[tuple[int, ...]] = None


def check_hypotheses(f: IntMatrix, g: IntMatrix) -> Hypotheses:
    """Determinants, kernel sizes, and the injectivity bookkeeping.

    Kernel sizes are |det|, finite exactly when the determinant is nonzero;
    zero determinants are reported rather than raised.
    """
    df, dg = det(f), det(g)
    return Hypotheses(
        det_f=df,
        det_g=dg,
        ker_f_size=abs(df) if df != 0 else None,
        ker_g_size=abs(dg) if dg != 0 else None,
        condition_L=condition_L(f, g) if df != 0 and dg != 0 else None,
        both_automorphisms=abs(df) == 1 and abs(dg) == 1,
    )


def condition_L(f: IntMatrix, g: IntMatrix) -> Optional[bool]:
    """Every loop has an exit, or None when that is not decidable here.

    True when G is not injective, and also when F is not injective (both
    maps are onto with finite kernels once determinants are nonzero). Both
    matrices unimodular leaves the question open: the loop quiver of a pair
    of automorphisms genuinely fails the condition, so no default is safe.
    """
    df, dg = det(f), det(g)
    if df == 0 or dg == 0:
        raise SingularMatrix("condition (L) test needs nonsingular matrices")
    if abs(dg) != 1:
        return True
    if abs(df) != 1:
        return True
    return None


def _charpoly(m: IntMatrix) -> list[int]:
    """Monic characteristic polynomial coefficients, highest degree first.

    Faddeev-LeVerrier recursion; the division by k is exact over Z.
    """
    d = m.dim
    coeffs = [1]
    mk = IntMatrix.scalar(d, 0)
    for k in range(1, d + 1):
        shift = IntMatrix.diagonal([coeffs[-1]] * d)
        mk = m @ IntMatrix(
            [
                [mk.rows[i][j] + shift.rows[i][j] for j in range(d)]
                for i in range(d)
            ]
        )
        tr = mk.trace()
        assert tr % k == 0
        coeffs.append(-(tr // k))
    return coeffs


def _schur_stable(low_coeffs: list[int]) -> bool:
    """All roots strictly inside the unit disk, exactly.

    Classic reduction: with b0 the constant and bn the leading coefficient,
    stability requires |b0| < |bn| and passes to (bn*p - b0*p~)/z where p~
    reverses the coefficients. Integer arithmetic throughout.
    """
    c = list(low_coeffs)
    n = len(c) - 1
    while n > 0:
        b0, bn = c[0], c[n]
        if abs(b0) >= abs(bn):
            return False
        c = [bn * c[i + 1] - b0 * c[n - 1 - i] for i in range(n)]
        n -= 1
    return True


def is_dilation(f: IntMatrix) -> bool:
    """Every eigenvalue has modulus strictly above 1, decided exactly.

    The reversed characteristic polynomial has the reciprocal roots, so the
    question becomes Schur stability of an integer polynomial; no floating
    point enters the decision.
    """
    if det(f) == 0:
        return False
    high_first = _charpoly(f)
    # x^d * p(1/x) has exactly these numbers as low-to-high coefficients
    return _schur_stable(high_first)


def triangular_criterion(n: int, g: IntMatrix) -> bool:
    """Diagonal avoidance test for the pair (n * I, G) with G triangular."""
    if not (g.is_upper_triangular() or g.is_lower_triangular()):
        raise NotTriangular("criterion applies to triangular matrices only")
    if det(g) == 0:
        raise SingularMatrix("criterion needs det(G) != 0")
    return all(abs(g.rows[j][j]) != n for j in range(g.dim))


def reduce_right(f: IntMatrix, g: IntMatrix, h: IntMatrix):
    """(F H, G H): right composition with a nonsingular map, verdict-preserving."""
    if det(h) == 0:
        raise SingularMatrix("reduction needs det(H) != 0")
    return f @ h, g @ h


def reduce_left(f: IntMatrix, g: IntMatrix, h: IntMatrix):
    """(H F, H G): left composition with a nonsingular map, verdict-preserving."""
    if det(h) == 0:
        raise SingularMatrix("reduction needs det(H) != 0")
    return h @ f, h @ g


def normalize(f: IntMatrix, g: IntMatrix):
    """Verdict-equivalent pair (|det F| * I, D V U) with adj(F) G = U D V.

    Returns (n, t, transcript); the transcript records each reduction
    applied. Sign flips of either matrix never change any lattice in the
    chain, so |det F| stands in for det F.
    """
    df = det(f)
    if df == 0 or det(g) == 0:
        raise SingularMatrix("normalization needs nonsingular matrices")
    prod = adjugate(f) @ g
    u, dmat, v = snf(prod)
    t = dmat @ v @ u
    transcript = [
        "left-compose with adj(F): (F, G) ~ (det F * I, adj(F) G)",
        "Smith rotation: (det F * I, U D V) ~ (det F * I, D V U)",
        f"sign normalization: det F = {df} replaced by {abs(df)}",
    ]
    return abs(df), t, transcript


def _scalar_of(m: IntMatrix) -> Optional[int]:
    c = m.scalar_value()
    return abs(c) if c is not None else None


def _verdict(
    status: str,
    rules: list[tuple[str, str]],
    hyp: Hypotheses,
    density=None,
    witness=None,
) -> SimplicityVerdict:
    kirchberg = status == SIMPLE and (abs(hyp.det_f) != 1 or abs(hyp.det_g) != 1)
    return SimplicityVerdict(status, rules, hyp, density, kirchberg, witness)


def decide(
    f: IntMatrix,
    g: IntMatrix,
    max_depth: Optional[int] = None,
    norm_bound: Optional[int] = None,
) -> SimplicityVerdict:
    """Run the rule cascade; the first definite answer wins.

    Every rule that contributes to the decision path is logged with a
    human-readable reason. Failures inside the chain fold into Unknown.
    """
    if f.dim != g.dim:
        raise DimensionMismatch("F and G must have equal dimensions")
    depth = max_depth if max_depth is not None else _chain.DEFAULT_MAX_DEPTH
    bound = norm_bound if norm_bound is not None else _chain.DEFAULT_NORM_BOUND
    hyp = check_hypotheses(f, g)
    rules: list[tuple[str, str]] = []

    if hyp.det_f == 0 or hyp.det_g == 0:
        rules.append(
            (
                "R0-scope",
                "zero determinant: the endomorphism is not onto, the "
                "criterion does not apply",
            )
        )
        return _verdict(UNKNOWN, rules, hyp)

    if hyp.both_automorphisms:
        rules.append(
            (
                "R1-automorphisms",
                "both matrices unimodular: the generated subgroup is trivial "
                "and never dense",
            )
        )
        return _verdict(NOT_SIMPLE, rules, hyp)

    if abs(hyp.det_g) == 1:
        cand = f @ unimodular_inverse(g)
        if is_dilation(cand):
            rules.append(
                (
                    "R3-dilation",
                    "G unimodular and F G^{-1} a dilation matrix",
                )
            )
            return _verdict(SIMPLE, rules, hyp)
    if abs(hyp.det_f) == 1:
        cand = g @ unimodular_inverse(f)
        if is_dilation(cand):
            rules.append(
                (
                    "R3-dilation",
                    "F unimodular and G F^{-1} a dilation matrix",
                )
            )
            return _verdict(SIMPLE, rules, hyp)

    n_f = _scalar_of(f)
    if n_f is not None and (g.is_upper_triangular() or g.is_lower_triangular()):
        if triangular_criterion(n_f, g):
            rules.append(
                (
                    "R4-triangular",
                    f"F = {n_f} * I and G triangular with no diagonal entry "
                    f"of modulus {n_f}",
                )
            )
            return _verdict(SIMPLE, rules, hyp)
    n_g = _scalar_of(g)
    if n_g is not None and (f.is_upper_triangular() or f.is_lower_triangular()):
        if triangular_criterion(n_g, f):
            rules.append(
                (
                    "R4-triangular",
                    f"G = {n_g} * I and F triangular with no diagonal entry "
                    f"of modulus {n_g} (pair swapped)",
                )
            )
            return _verdict(SIMPLE, rules, hyp)

    n, t, _transcript = normalize(f, g)
    rules.append(
        (
            "R2-normalize",
            f"reduced to ({n} * I, D V U) through adj(F) and a Smith "
            "decomposition",
        )
    )
    if t.is_upper_triangular() or t.is_lower_triangular():
        if triangular_criterion(n, t):
            rules.append(
                (
                    "R4-triangular",
                    f"normalized partner triangular with no diagonal entry "
                    f"of modulus {n}",
                )
            )
            return _verdict(SIMPLE, rules, hyp)

    dv = _chain.decide_density(f, g, max_depth=depth, norm_bound=bound)
    if dv.status == _chain.DENSE:
        rules.append(
            (
                "R5-density",
                f"generated subgroup dense (certificate at depth "
                f"{dv.depth_used})",
            )
        )
        return _verdict(SIMPLE, rules, hyp, density=dv)
    if dv.status == _chain.NOT_DENSE:
        rules.append(
            (
                "R5-density",
                f"generated subgroup not dense, witness character "
                f"{list(dv.witness)}",
            )
        )
        return _verdict(NOT_SIMPLE, rules, hyp, density=dv, witness=dv.witness)

    rules.append(("R6-unknown", dv.reason))
    return _verdict(UNKNOWN, rules, hyp, density=dv)
