"""Gap verification: oracle verdicts against engine distances.

A reduction family maps an instance to a curve pair; verification recomputes
the orthogonal-pair verdict by brute force, measures the exact distance of
the pair under the family's variant(s), and checks the gap contract: an
orthogonal pair forces distance <= 1, its absence forces >= 3.  The decision
procedure is exercised separately from the exact value (at eps = 1 for YES
and eps = 5/2 for NO), so a bug in either path cannot mask the other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple

from .engines import (
    decide_discrete_weak_frechet, decide_frechet, decide_partial_frechet,
    decide_weak_frechet, discrete_weak_frechet_exact, frechet_exact,
    partial_frechet_exact, weak_frechet_exact,
)
from .exactnum import fmt_exact
from .gadgets import (
    GadgetCurvePair, OVInstance, TrivialityClass, brute_force_ov,
    build_reduction, classify_instance, ov_instance,
)

_NO_EPS = Fraction(5, 2)

# exact_fn, decide_fn per distance variant
_VARIANT_OPS = {
    "partialF": (partial_frechet_exact, decide_partial_frechet),
    "F": (frechet_exact, decide_frechet),
    "dwF": (lambda p, q: discrete_weak_frechet_exact(p, q, endpoint_restricted=True),
            lambda p, q, e: decide_discrete_weak_frechet(p, q, e, endpoint_restricted=True)),
    "dwwF": (lambda p, q: discrete_weak_frechet_exact(p, q, endpoint_restricted=False),
             lambda p, q, e: decide_discrete_weak_frechet(p, q, e, endpoint_restricted=False)),
    "wF": (lambda p, q: weak_frechet_exact(p, q, endpoint_restricted=True),
           lambda p, q, e: decide_weak_frechet(p, q, e, endpoint_restricted=True)),
    "wwF": (lambda p, q: weak_frechet_exact(p, q, endpoint_restricted=False),
            lambda p, q, e: decide_weak_frechet(p, q, e, endpoint_restricted=False)),
}

FAMILY_VARIANTS = {
    "partial": ("partialF",),
    "frechet": ("F",),
    "weak1d": ("dwF", "dwwF"),
    "weak2d": ("wF", "wwF"),
}


@dataclass(frozen=True)
class GapReport:
    family: str
    label: str
    n: int
    m: int
    dim: int
    oracle_yes: bool
    witness: Optional[Tuple[int, int]]
    offset: Optional[int]  # (j - i) mod m for a YES witness
    distances: Dict[str, object]
    decisions_ok: Dict[str, bool]

    @property
    def passed(self) -> bool:
        # derived, never stored: YES => every distance <= 1, NO => every >= 3
        bound_ok = all((v <= 1) if self.oracle_yes else (v >= 3)
                       for v in self.distances.values())
        return bound_ok and all(self.decisions_ok.values())

    def rows(self):
        for variant in sorted(self.distances):
            yield {"family": self.family, "label": self.label,
                   "n": self.n, "m": self.m, "d": self.dim,
                   "oracle": "YES" if self.oracle_yes else "NO",
                   "variant": variant,
                   "distance": fmt_exact(self.distances[variant]),
                   "decision_ok": self.decisions_ok[variant],
                   "offset": "" if self.offset is None else self.offset}


def check_instance(inst: OVInstance, family: str, label: str = "",
                   pair: Optional[GadgetCurvePair] = None) -> GapReport:
    """Build (or reuse) the family's pair for inst and verify the gap."""
    witness = brute_force_ov(inst)
    yes = witness is not None
    if pair is None:
        pair = build_reduction(inst, family)
    distances = {}
    decisions_ok = {}
    for variant in FAMILY_VARIANTS[family]:
        exact_fn, decide_fn = _VARIANT_OPS[variant]
        distances[variant] = exact_fn(pair.p, pair.q)
        if yes:
            decisions_ok[variant] = decide_fn(pair.p, pair.q, 1)
        else:
            decisions_ok[variant] = not decide_fn(pair.p, pair.q, _NO_EPS)
    offset = ((witness[1] - witness[0]) % inst.m) if yes else None
    return GapReport(family, label, inst.n, inst.m, inst.dim, yes,
                     witness, offset, distances, decisions_ok)


def resolve_instance(inst: OVInstance) -> Tuple[TrivialityClass, Optional[Tuple[int, int]]]:
    """Shortcut verdicts for instances the reductions do not accept.

    An empty side has no pair; a zero vector is orthogonal to everything (the
    returned witness is some valid pair, not necessarily the first); at small
    fixed dimension plain enumeration is already cheap.
    """
    cls = classify_instance(inst)
    if cls is TrivialityClass.EMPTY_SIDE:
        return cls, None
    if cls is TrivialityClass.CONTAINS_ZERO_VECTOR:
        zero = (0,) * inst.dim
        if zero in inst.u_rows:
            return cls, (inst.u_rows.index(zero) + 1, 1)
        return cls, (1, inst.v_rows.index(zero) + 1)
    if cls is TrivialityClass.CONSTANT_DIMENSION:
        return cls, brute_force_ov(inst)
    return cls, brute_force_ov(inst)


# --- seeded generation ----------------------------------------------------------

def random_instance(n: int, m: int, d: int, seed, density: float = 0.5,
                    nontrivial: bool = False) -> OVInstance:
    """Deterministic instance from (parameters, seed).

    With nontrivial=True all-zero rows are rejected and resampled, which is
    impossible at density 0.
    """
    if not 0 <= density <= 1:
        raise ValueError("density must be in [0, 1]")
    if nontrivial and density == 0:
        raise ValueError("cannot sample nontrivial rows at density 0")
    rng = random.Random(seed)

    def row():
        while True:
            r = tuple(int(rng.random() < density) for _ in range(d))
            if not nontrivial or any(r):
                return r

    return ov_instance(d, [row() for _ in range(n)], [row() for _ in range(m)])


def _cell_seed(base_seed: int, n: int, m: int, d: int, s: int) -> int:
    return (((base_seed * 131 + n) * 131 + m) * 131 + d) * 10007 + s


def campaign_instances(seeds_per_cell: int = 25, base_seed: int = 0,
                       n_max: int = 6, d_min: int = 2, d_max: int = 5
                       ) -> Iterator[Tuple[str, OVInstance]]:
    """The default verification sweep: all (n, m, d) cells, fixed seeds."""
    for n in range(1, n_max + 1):
        for m in range(1, n_max + 1):
            for d in range(d_min, d_max + 1):
                for s in range(seeds_per_cell):
                    label = f"n{n}m{m}d{d}s{s}"
                    inst = random_instance(n, m, d, _cell_seed(base_seed, n, m, d, s),
                                           nontrivial=True)
                    yield label, inst
